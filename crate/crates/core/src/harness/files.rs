use serde::{Deserialize, Serialize};

use super::family::{DeformationFamily, PolyPath};
use crate::error::{Error, Result};
use crate::kernel::Vertex;
use crate::schlafli::{PolyhedralSurfaceMap, Polyhedron, TET_FACES};

fn default_epsilon() -> f64 {
    0.05
}

fn degree(paths: &[Vec<[f64; 3]>]) -> u32 {
    paths.iter().map(|c| c.len().saturating_sub(1) as u32).max().unwrap_or(0)
}

fn paths(coeffs: &[Vec<[f64; 3]>]) -> Result<Vec<PolyPath>> {
    if coeffs.iter().any(Vec::is_empty) {
        return Err(Error::Parse("every vertex path needs at least one coefficient".into()));
    }
    Ok(coeffs.iter().map(|c| PolyPath { coeffs: c.clone() }).collect())
}

/// Run settings a scenario file may carry; command-line flags win.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct RunSettings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A polyhedron whose vertices follow polynomial paths in spatial
/// hyperboloid coordinates. Faces default to those of the tetrahedron.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyhedronFamilyFile {
    pub label: String,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// Per vertex, the coefficients `c_0, c_1, ...` of `Σ c_k t^k`.
    pub vertices: Vec<Vec<[f64; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<usize>>>,
    #[serde(flatten)]
    pub run: RunSettings,
}

impl PolyhedronFamilyFile {
    pub fn family(&self) -> Result<DeformationFamily<Polyhedron>> {
        let ps = paths(&self.vertices)?;
        let faces = self.faces.clone().unwrap_or_else(|| TET_FACES.iter().map(|f| f.to_vec()).collect());
        Ok(DeformationFamily::new(self.label.clone(), self.epsilon, Some(degree(&self.vertices)), move |t| {
            Polyhedron::new(ps.iter().map(|p| p.at(t)).collect(), faces.clone())
        }))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: Self = serde_json::from_str(text)?;
        f.family()?.at(f.run.t0.unwrap_or(0.0))?;
        Ok(f)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// A triangulated sphere with moving vertices, bounded by the cone from a
/// moving apex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceFamilyFile {
    pub label: String,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    pub triangles: Vec<[usize; 3]>,
    pub vertices: Vec<Vec<[f64; 3]>>,
    pub apex: Vec<[f64; 3]>,
    #[serde(flatten)]
    pub run: RunSettings,
}

impl SurfaceFamilyFile {
    pub fn family(&self) -> Result<DeformationFamily<PolyhedralSurfaceMap>> {
        let ps = paths(&self.vertices)?;
        let apex = paths(std::slice::from_ref(&self.apex))?.remove(0);
        let tri = self.triangles.clone();
        let deg = degree(&self.vertices).max(degree(std::slice::from_ref(&self.apex)));
        Ok(DeformationFamily::new(self.label.clone(), self.epsilon, Some(deg), move |t| {
            PolyhedralSurfaceMap::with_cone(tri.clone(), ps.iter().map(|p| p.at(t)).collect(), Vertex::Finite(apex.at(t)))
        }))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: Self = serde_json::from_str(text)?;
        f.family()?.at(f.run.t0.unwrap_or(0.0))?;
        Ok(f)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
