use serde::{Deserialize, Serialize};

use super::prism::{prism_decompose, PrismDecomposition, APEX_FLOOR};
use super::rectangle::PleatedRectangle;
use crate::harness::{DeformationFamily, PolyPath};
use crate::kernel::Point;
use crate::{Error, Result};

/// Polynomial `Σ c_k t^k`.
pub fn poly(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

/// A leaf whose end fractions along the bottom and top sides move
/// polynomially, with a polynomial bend angle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeafPath {
    pub bottom: Vec<f64>,
    pub top: Vec<f64>,
    pub bend: Vec<f64>,
}

/// A family of pleated rectangles with two apexes. The chart lies in the
/// plane `x3 = 0`; corners are polynomial paths of the spatial coordinates
/// `(x1, x2)`, apexes polynomial paths of `(x1, x2, x3)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PleatScenario {
    pub label: String,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// `[P, Q, R, S]`, each a list of `[x1, x2]` coefficients.
    pub corners: [Vec<[f64; 2]>; 4],
    pub leaves: Vec<LeafPath>,
    pub x: Vec<[f64; 3]>,
    pub y: Vec<[f64; 3]>,
    #[serde(default)]
    pub t0: Option<f64>,
    #[serde(default)]
    pub h: Option<f64>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn default_epsilon() -> f64 {
    0.05
}

fn corner_at(c: &[[f64; 2]], t: f64) -> Point {
    let x1 = poly(&c.iter().map(|v| v[0]).collect::<Vec<_>>(), t);
    let x2 = poly(&c.iter().map(|v| v[1]).collect::<Vec<_>>(), t);
    Point::from_spatial([x1, x2, 0.0])
}

impl PleatScenario {
    pub fn rectangle_at(&self, t: f64) -> Result<PleatedRectangle> {
        let corners = [0, 1, 2, 3].map(|i| corner_at(&self.corners[i], t));
        let fracs: Vec<(f64, f64)> = self.leaves.iter().map(|l| (poly(&l.bottom, t), poly(&l.top, t))).collect();
        let bends = self.leaves.iter().map(|l| poly(&l.bend, t)).collect();
        PleatedRectangle::from_fractions(corners, &fracs, bends)
    }

    pub fn decomposition_at(&self, t: f64) -> Result<PrismDecomposition> {
        let r = self.rectangle_at(t)?;
        let x = PolyPath { coeffs: self.x.clone() }.at(t);
        let y = PolyPath { coeffs: self.y.clone() }.at(t);
        prism_decompose(&r, x, y, APEX_FLOOR)
    }

    pub fn degree(&self) -> u32 {
        let mut d = 0;
        let mut see = |n: usize| d = d.max(n.saturating_sub(1) as u32);
        self.corners.iter().for_each(|c| see(c.len()));
        self.leaves.iter().for_each(|l| [l.bottom.len(), l.top.len(), l.bend.len()].into_iter().for_each(&mut see));
        see(self.x.len());
        see(self.y.len());
        d
    }

    pub fn family(&self) -> DeformationFamily<PrismDecomposition> {
        let s = self.clone();
        DeformationFamily::new(self.label.clone(), self.epsilon, Some(self.degree()), move |t| s.decomposition_at(t))
    }

    /// The bend angles along the family.
    pub fn bend_family(&self) -> DeformationFamily<Vec<f64>> {
        let leaves = self.leaves.clone();
        DeformationFamily::new(self.label.clone(), self.epsilon, Some(self.degree()), move |t| {
            Ok(leaves.iter().map(|l| poly(&l.bend, t)).collect())
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: PleatScenario = serde_json::from_str(text)?;
        if s.x.is_empty() || s.y.is_empty() || s.corners.iter().any(Vec::is_empty) {
            return Err(Error::Parse("corner and apex paths need at least one coefficient".into()));
        }
        s.decomposition_at(s.t0.unwrap_or(0.0))?;
        Ok(s)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn jitter(rng: &mut impl rand::Rng, scale: f64) -> f64 {
    rng.gen_range(-scale..scale)
}

fn cubic(rng: &mut impl rand::Rng, c0: f64, scale: f64) -> Vec<f64> {
    vec![c0, jitter(rng, scale), jitter(rng, scale), jitter(rng, scale)]
}

fn sorted_fractions(rng: &mut impl rand::Rng, n: usize) -> Vec<f64> {
    // evenly spread slots with jitter keep neighbours at least a third of a slot apart
    let slot = 0.8 / n.max(1) as f64;
    (0..n).map(|i| 0.1 + slot * (i as f64 + 0.5 + jitter(rng, 0.33))).collect()
}

/// A seeded family with `n` leaves: cubic paths for corners, leaf ends,
/// bends and apexes, accepted only if every piece stays positively
/// oriented and non-flat on a grid of `[0, ε]`.
pub fn random_pleat_scenario(rng: &mut impl rand::Rng, label: impl Into<String>, n: usize) -> PleatScenario {
    let label = label.into();
    loop {
        let corner = |rng: &mut _, x1: f64, x2: f64| {
            vec![[x1 + jitter(rng, 0.05), x2 + jitter(rng, 0.05)], [jitter(rng, 0.3), jitter(rng, 0.3)], [jitter(rng, 0.3), jitter(rng, 0.3)], [jitter(rng, 0.3), jitter(rng, 0.3)]]
        };
        let corners = [corner(rng, -0.6, -0.35), corner(rng, 0.6, -0.35), corner(rng, -0.6, 0.35), corner(rng, 0.6, 0.35)];
        let bottom = sorted_fractions(rng, n);
        let top = sorted_fractions(rng, n);
        let leaves = (0..n)
            .map(|i| {
                let b0 = jitter(rng, 0.4);
                LeafPath { bottom: cubic(rng, bottom[i], 0.1), top: cubic(rng, top[i], 0.1), bend: cubic(rng, b0, 1.0) }
            })
            .collect();
        let apex = |rng: &mut _, c: [f64; 3]| {
            let mut v = vec![[c[0] + jitter(rng, 0.1), c[1] + jitter(rng, 0.1), c[2] + jitter(rng, 0.1)]];
            for _ in 0..3 {
                v.push([jitter(rng, 0.3), jitter(rng, 0.3), jitter(rng, 0.3)]);
            }
            v
        };
        let x = apex(rng, [0.0, -0.75, -0.4]);
        let y = apex(rng, [0.0, 0.0, -0.55]);
        let s = PleatScenario { label: label.clone(), epsilon: 0.05, corners, leaves, x, y, t0: None, h: None, tol: None, seed: None };
        if s.acceptable() {
            return s;
        }
    }
}

impl PleatScenario {
    fn acceptable(&self) -> bool {
        (0..=10).all(|i| {
            let t = self.epsilon * f64::from(i) / 10.0;
            self.decomposition_at(t).is_ok_and(|d| {
                (0..d.component_count()).all(|k| d.pyramid_sign(k) > 0.0 && d.tet_sign(k) > 0.0)
            })
        })
    }
}
