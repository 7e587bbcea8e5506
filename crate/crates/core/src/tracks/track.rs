use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::kernel::{classify_isometry, Isometry, IsometryClass};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Start,
    Finish,
}

impl End {
    pub fn other(self) -> End {
        match self {
            End::Start => End::Finish,
            End::Finish => End::Start,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BranchEnd {
    pub branch: usize,
    pub end: End,
}

impl BranchEnd {
    pub fn new(branch: usize, end: End) -> Self {
        BranchEnd { branch, end }
    }
}

/// A branch of the track. Closed branches are loops with no switch ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    #[serde(default)]
    pub length: Option<f64>,
    #[serde(default)]
    pub closed: bool,
    /// Holonomy of a closed branch as `[a, b, c, d]`, each entry `[re, im]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holonomy: Option<[[f64; 2]; 4]>,
}

impl Branch {
    pub fn segment(length: f64) -> Self {
        Branch { length: Some(length), closed: false, holonomy: None }
    }

    pub fn unmeasured() -> Self {
        Branch { length: None, closed: false, holonomy: None }
    }

    pub fn closed(length: f64) -> Self {
        Branch { length: Some(length), closed: true, holonomy: None }
    }

    /// Closed branch whose length is the translation length of a
    /// loxodromic holonomy.
    pub fn closed_from_holonomy(g: &Isometry) -> Result<Self> {
        let m = g.matrix();
        let entries = [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]].map(|z| [z.re, z.im]);
        Ok(Branch { length: Some(translation_length(g)?), closed: true, holonomy: Some(entries) })
    }

    pub fn holonomy_isometry(&self) -> Result<Option<Isometry>> {
        match self.holonomy {
            None => Ok(None),
            Some(e) => {
                let z = e.map(|[re, im]| Complex64::new(re, im));
                Isometry::from_entries(z[0], z[1], z[2], z[3]).map(Some)
            }
        }
    }
}

/// Real translation length of a loxodromic element.
pub fn translation_length(g: &Isometry) -> Result<f64> {
    let cl = classify_isometry(g);
    match (cl.class, cl.complex_length) {
        (IsometryClass::Loxodromic, Some(z)) if z.re > 0.0 => Ok(z.re),
        (class, _) => Err(Error::Precondition(format!("holonomy is {class:?}, not loxodromic"))),
    }
}

/// Branch ends meeting at a switch, split by side.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Switch {
    pub incoming: Vec<BranchEnd>,
    pub outgoing: Vec<BranchEnd>,
}

impl Switch {
    pub fn new(incoming: Vec<BranchEnd>, outgoing: Vec<BranchEnd>) -> Self {
        Switch { incoming, outgoing }
    }
}

/// One complementary piece of a rectangle cut along the lamination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RectangleComponent {
    pub rectangle: usize,
    pub gap: usize,
    pub divergence_radius: u32,
}

impl RectangleComponent {
    pub fn new(rectangle: usize, gap: usize, divergence_radius: u32) -> Result<Self> {
        if divergence_radius < 1 {
            return Err(Error::Precondition("divergence radius must be at least 1".into()));
        }
        Ok(RectangleComponent { rectangle, gap, divergence_radius })
    }
}

/// Number of components at each divergence radius.
pub fn radius_histogram(components: &[RectangleComponent]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for c in components {
        *h.entry(c.divergence_radius).or_insert(0) += 1;
    }
    h
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainTrack {
    pub branches: Vec<Branch>,
    #[serde(default)]
    pub switches: Vec<Switch>,
    #[serde(default)]
    pub rectangles: Vec<RectangleComponent>,
}

impl TrainTrack {
    /// Checks that every branch end sits on at most one switch side, that
    /// closed branches touch no switch, and that radii are at least 1.
    /// Ends with no switch are free.
    pub fn new(branches: Vec<Branch>, switches: Vec<Switch>) -> Result<Self> {
        let t = TrainTrack { branches, switches, rectangles: Vec::new() };
        t.check()?;
        Ok(t)
    }

    pub fn with_rectangles(mut self, rectangles: Vec<RectangleComponent>) -> Result<Self> {
        self.rectangles = rectangles;
        self.check()?;
        Ok(self)
    }

    /// A single closed branch.
    pub fn annulus(length: f64) -> Self {
        TrainTrack { branches: vec![Branch::closed(length)], switches: Vec::new(), rectangles: Vec::new() }
    }

    fn check(&self) -> Result<()> {
        let mut seen = BTreeMap::new();
        for (s, sw) in self.switches.iter().enumerate() {
            for (side, ends) in [(0, &sw.incoming), (1, &sw.outgoing)] {
                for e in ends {
                    let b = self.branches.get(e.branch).ok_or_else(|| {
                        Error::MalformedTrack(format!("switch {s} names missing branch {}", e.branch))
                    })?;
                    if b.closed {
                        return Err(Error::MalformedTrack(format!("closed branch {} attached to switch {s}", e.branch)));
                    }
                    if let Some((s0, side0)) = seen.insert(*e, (s, side)) {
                        return Err(Error::MalformedTrack(format!(
                            "end {e:?} attached twice (switch {s0} side {side0}, switch {s} side {side})"
                        )));
                    }
                }
            }
        }
        for (i, b) in self.branches.iter().enumerate() {
            if let Some(l) = b.length {
                if !(l.is_finite() && l > 0.0) {
                    return Err(Error::MalformedTrack(format!("branch {i} has length {l}")));
                }
            }
        }
        if let Some(r) = self.rectangles.iter().find(|r| r.divergence_radius < 1) {
            return Err(Error::MalformedTrack(format!("rectangle {} has divergence radius 0", r.rectangle)));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    /// Switch index and side (`0` incoming, `1` outgoing) holding an end.
    pub fn attachment(&self, e: BranchEnd) -> Option<(usize, usize)> {
        self.switches.iter().enumerate().find_map(|(s, sw)| {
            if sw.incoming.contains(&e) {
                Some((s, 0))
            } else if sw.outgoing.contains(&e) {
                Some((s, 1))
            } else {
                None
            }
        })
    }

    /// Fills missing lengths of closed branches from their holonomy.
    pub fn resolve_lengths(&mut self) -> Result<()> {
        for b in &mut self.branches {
            if b.length.is_none() {
                if let Some(g) = b.holonomy_isometry()? {
                    b.length = Some(translation_length(&g)?);
                }
            }
        }
        Ok(())
    }
}
