use super::polyhedron::{edge_data, EdgeDatum, Polyhedron};
use super::surface::PolyhedralSurfaceMap;
use crate::error::{Error, Result};
use crate::harness::fd::{fd_from_samples, unwrap_samples, FdEstimate, FdOptions};
use crate::harness::DeformationFamily;
use crate::kernel::compensated_sum;

/// One edge's contribution `l(e) ḃ(e)` to the volume derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeTerm {
    pub edge: (usize, usize),
    pub length: f64,
    pub angle: f64,
    pub rate: FdEstimate,
}

impl EdgeTerm {
    pub fn product(&self) -> f64 {
        self.length * self.rate.value
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchlafliTerms {
    pub terms: Vec<EdgeTerm>,
}

impl SchlafliTerms {
    /// `½ Σ l(e) ḃ(e)`.
    pub fn total(&self) -> f64 {
        0.5 * compensated_sum(self.terms.iter().map(EdgeTerm::product))
    }
}

/// Edge terms from edge data sampled along a family. Angles are followed
/// continuously from their value at `t0`.
pub(crate) fn terms_from_samples(samples: Vec<Vec<EdgeDatum>>, opts: &FdOptions) -> Result<SchlafliTerms> {
    let base = samples[0].clone();
    for s in &samples[1..] {
        if s.len() != base.len() || s.iter().zip(&base).any(|(x, y)| x.edge != y.edge) {
            return Err(Error::Precondition("combinatorics change along the family".into()));
        }
    }
    let mut angles: Vec<Vec<f64>> = samples.iter().map(|s| s.iter().map(|d| d.external_angle).collect()).collect();
    unwrap_samples(&mut angles)?;
    let rates = fd_from_samples(&angles, opts)?;
    Ok(SchlafliTerms {
        terms: base
            .iter()
            .zip(rates)
            .map(|(d, rate)| EdgeTerm { edge: d.edge, length: d.length, angle: d.external_angle, rate })
            .collect(),
    })
}

pub fn schlafli_terms(family: &DeformationFamily<Polyhedron>, t0: f64, opts: &FdOptions) -> Result<SchlafliTerms> {
    family.check_stencil(t0, opts)?;
    let samples = opts
        .sample_points(t0)
        .into_iter()
        .map(|t| family.at(t).and_then(|p| edge_data(&p)))
        .collect::<Result<Vec<_>>>()?;
    terms_from_samples(samples, opts)
}

/// `½ Σ_e l(e) ḃ(e)` over the edges of the polyhedron at `t0`, with the
/// angle rates taken as right derivatives by extrapolated finite
/// differences.
pub fn schlafli_derivative(family: &DeformationFamily<Polyhedron>, t0: f64, opts: &FdOptions) -> Result<f64> {
    Ok(schlafli_terms(family, t0, opts)?.total())
}

pub fn corollary2_terms(
    family: &DeformationFamily<PolyhedralSurfaceMap>,
    t0: f64,
    opts: &FdOptions,
) -> Result<SchlafliTerms> {
    family.check_stencil(t0, opts)?;
    let samples = opts
        .sample_points(t0)
        .into_iter()
        .map(|t| family.at(t).and_then(|s| s.edge_data()))
        .collect::<Result<Vec<_>>>()?;
    terms_from_samples(samples, opts)
}

/// `½ Σ l(e) ḃ(e)` over the surface edges only; the bounding chain does not
/// enter.
pub fn corollary2_derivative(
    family: &DeformationFamily<PolyhedralSurfaceMap>,
    t0: f64,
    opts: &FdOptions,
) -> Result<f64> {
    Ok(corollary2_terms(family, t0, opts)?.total())
}
