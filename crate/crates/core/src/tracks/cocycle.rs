use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::track::{BranchEnd, End, TrainTrack};
use crate::{Error, Result};

pub const SWITCH_TOL: f64 = 1e-12;

/// Value ring of a cocycle. Circle values are stored as real lifts and only
/// reduced when compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    #[default]
    Real,
    Circle,
}

impl Ring {
    /// Distance between two values in this ring.
    pub fn gap(self, a: f64, b: f64) -> f64 {
        match self {
            Ring::Real => (a - b).abs(),
            Ring::Circle => {
                let d = (a - b).rem_euclid(2.0 * PI);
                d.min(2.0 * PI - d)
            }
        }
    }

    pub fn reduce(self, x: f64) -> f64 {
        match self {
            Ring::Real => x,
            Ring::Circle => x.rem_euclid(2.0 * PI),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransverseCocycle {
    pub weights: Vec<f64>,
    #[serde(default)]
    pub ring: Ring,
}

impl TransverseCocycle {
    pub fn new(weights: Vec<f64>, ring: Ring) -> Self {
        TransverseCocycle { weights, ring }
    }

    pub fn real(weights: Vec<f64>) -> Self {
        Self::new(weights, Ring::Real)
    }

    pub fn zero(n: usize) -> Self {
        Self::real(vec![0.0; n])
    }

    pub fn scale(&self, a: f64) -> Self {
        Self::new(self.weights.iter().map(|w| a * w).collect(), self.ring)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.weights.len() != other.weights.len() {
            return Err(Error::IndexMismatch(format!("{} vs {} weights", self.weights.len(), other.weights.len())));
        }
        if self.ring != other.ring {
            return Err(Error::Precondition("cocycles live in different rings".into()));
        }
        Ok(Self::new(self.weights.iter().zip(&other.weights).map(|(a, b)| a + b).collect(), self.ring))
    }

    pub fn weight(&self, e: &BranchEnd) -> f64 {
        self.weights[e.branch]
    }
}

/// Cocycle with nonnegative weights.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredLamination(TransverseCocycle);

impl MeasuredLamination {
    pub fn new(c: TransverseCocycle) -> Result<Self> {
        if let Some((i, w)) = c.weights.iter().enumerate().find(|(_, w)| !(**w >= 0.0)) {
            return Err(Error::Precondition(format!("weight {w} on branch {i} is negative")));
        }
        Ok(MeasuredLamination(c))
    }

    pub fn cocycle(&self) -> &TransverseCocycle {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrackReport {
    /// Signed `incoming - outgoing` per switch.
    pub defects: Vec<f64>,
    pub max_violation: f64,
    pub pass: bool,
}

fn check_index(t: &TrainTrack, c: &TransverseCocycle) -> Result<()> {
    if c.weights.len() != t.len() {
        return Err(Error::IndexMismatch(format!("{} weights for {} branches", c.weights.len(), t.len())));
    }
    Ok(())
}

pub fn validate_track(t: &TrainTrack, c: &TransverseCocycle) -> Result<TrackReport> {
    check_index(t, c)?;
    let defects: Vec<f64> = t
        .switches
        .iter()
        .map(|sw| {
            let a: f64 = sw.incoming.iter().map(|e| c.weight(e)).sum();
            let b: f64 = sw.outgoing.iter().map(|e| c.weight(e)).sum();
            a - b
        })
        .collect();
    let max_violation = defects.iter().fold(0.0f64, |m, d| m.max(c.ring.gap(*d, 0.0)));
    Ok(TrackReport { defects, max_violation, pass: max_violation <= SWITCH_TOL })
}

/// Sum of weights over the crossed branches, counted with multiplicity.
pub fn cocycle_eval(t: &TrainTrack, c: &TransverseCocycle, crossings: &[usize]) -> Result<f64> {
    check_index(t, c)?;
    let mut s = 0.0;
    for &b in crossings {
        s += c.weights.get(b).ok_or_else(|| Error::Crossing(format!("branch {b} is not in the track")))?;
    }
    Ok(s)
}

/// `Σ weight × length` over branches.
pub fn cocycle_length(t: &TrainTrack, c: &TransverseCocycle) -> Result<f64> {
    check_index(t, c)?;
    let mut s = 0.0;
    for (i, (b, w)) in t.branches.iter().zip(&c.weights).enumerate() {
        let l = b.length.ok_or(Error::MissingLength(i))?;
        s += w * l;
    }
    Ok(s)
}

/// One step of an oriented branch path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub branch: usize,
    pub forward: bool,
}

impl Step {
    pub fn new(branch: usize, forward: bool) -> Self {
        Step { branch, forward }
    }

    fn exit(self) -> BranchEnd {
        BranchEnd::new(self.branch, if self.forward { End::Finish } else { End::Start })
    }

    fn entry(self) -> BranchEnd {
        BranchEnd::new(self.branch, self.exit().end.other())
    }
}

/// Unit cocycle of a closed curve carried by the track, scaled by `w`.
/// Each consecutive pair of steps, wrapping around, must pass smoothly
/// through a switch.
pub fn scc_cocycle(t: &TrainTrack, curve: &[Step], w: f64) -> Result<TransverseCocycle> {
    if curve.is_empty() {
        return Err(Error::NotClosed("empty path".into()));
    }
    let n = curve.len();
    for (i, s) in curve.iter().enumerate() {
        let b = t.branches.get(s.branch).ok_or_else(|| Error::NotClosed(format!("branch {} missing", s.branch)))?;
        if b.closed {
            if n != 1 {
                return Err(Error::NotClosed(format!("closed branch {} inside a longer path", s.branch)));
            }
            continue;
        }
        let next = curve[(i + 1) % n];
        let out = t.attachment(s.exit());
        let inn = t.attachment(next.entry());
        match (out, inn) {
            (Some((s1, side1)), Some((s2, side2))) if s1 == s2 && side1 != side2 => {}
            _ => {
                return Err(Error::NotClosed(format!(
                    "step {i} (branch {}) does not continue into branch {}",
                    s.branch, next.branch
                )))
            }
        }
    }
    let mut weights = vec![0.0; t.len()];
    for s in curve {
        weights[s.branch] += w;
    }
    Ok(TransverseCocycle::real(weights))
}

/// Track file: the track fields together with optional weights.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrackFile {
    #[serde(flatten)]
    pub track: TrainTrack,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default)]
    pub ring: Ring,
}

impl TrackFile {
    pub fn from_json(s: &str) -> Result<Self> {
        let mut f: TrackFile = serde_json::from_str(s)?;
        f.track = TrainTrack::new(f.track.branches, f.track.switches)?.with_rectangles(f.track.rectangles)?;
        f.track.resolve_lengths()?;
        Ok(f)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn cocycle(&self) -> Option<TransverseCocycle> {
        self.weights.clone().map(|w| TransverseCocycle::new(w, self.ring))
    }
}
