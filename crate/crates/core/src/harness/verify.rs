use super::fd::{fd_derivative, FdOptions};
use super::family::DeformationFamily;
use super::report::{SubCheck, Tolerance, VerificationReport};
use crate::error::Result;
use crate::schlafli::{corollary2_terms, internal_edge_check, schlafli_terms, PolyhedralSurfaceMap, Polyhedron, SchlafliTerms};
use crate::volume::chain_volume;

/// Tolerance for the closing-up of angles around chain edges.
pub const EDGE_SUM_TOL: f64 = 1e-9;

/// Deliberate damage to one edge term of the formula side, for negative
/// controls. Edge indices refer to the order of `SchlafliTerms::terms`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Corruption {
    None,
    /// Adds `delta` to the angle rate of one edge.
    AngleRate { edge: usize, delta: f64 },
    /// Adds `delta` to the length of one edge.
    Length { edge: usize, delta: f64 },
    /// Negates the angle rate of one edge.
    SignFlip { edge: usize },
}

impl Corruption {
    /// Applies the corruption and returns the gap it should open between the
    /// two sides.
    pub fn apply(&self, terms: &mut SchlafliTerms) -> f64 {
        match *self {
            Corruption::None => 0.0,
            Corruption::AngleRate { edge, delta } => {
                let t = &mut terms.terms[edge];
                t.rate.value += delta;
                0.5 * delta.abs() * t.length
            }
            Corruption::Length { edge, delta } => {
                let t = &mut terms.terms[edge];
                t.length += delta;
                0.5 * delta.abs() * t.rate.value.abs()
            }
            Corruption::SignFlip { edge } => {
                let t = &mut terms.terms[edge];
                t.rate.value = -t.rate.value;
                (t.length * t.rate.value).abs()
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Corruption::None => "none",
            Corruption::AngleRate { .. } => "angle-rate",
            Corruption::Length { .. } => "length",
            Corruption::SignFlip { .. } => "sign-flip",
        }
    }
}

fn finish(
    label: &str,
    lhs: f64,
    mut terms: SchlafliTerms,
    opts: &FdOptions,
    tol: Tolerance,
    corruption: Corruption,
) -> VerificationReport {
    let predicted = corruption.apply(&mut terms);
    let rhs = terms.total();
    let mut r = VerificationReport::new(label, lhs, rhs, opts.h, tol);
    if corruption != Corruption::None {
        r = r.with_note(format!("corruption {} predicts gap {predicted:.6e}", corruption.name()));
    }
    r
}

/// Finite-difference volume derivative of a deforming polyhedron against
/// `½ Σ l(e) ḃ(e)`.
pub fn verify_schlafli(
    family: &DeformationFamily<Polyhedron>,
    t0: f64,
    opts: &FdOptions,
    tol: Tolerance,
    corruption: Corruption,
) -> Result<VerificationReport> {
    family.check_stencil(t0, opts)?;
    let lhs = fd_derivative(|t| family.at(t)?.volume(), t0, opts)?.value;
    let terms = schlafli_terms(family, t0, opts)?;
    Ok(finish(&family.label, lhs, terms, opts, tol, corruption))
}

/// Finite-difference derivative of the bounding chain's volume against the
/// surface-edge formula, with the interior and surface angle sums of the
/// chain at `t0` attached.
pub fn verify_corollary2(
    family: &DeformationFamily<PolyhedralSurfaceMap>,
    t0: f64,
    opts: &FdOptions,
    tol: Tolerance,
    corruption: Corruption,
) -> Result<VerificationReport> {
    family.check_stencil(t0, opts)?;
    let lhs = fd_derivative(|t| Ok(chain_volume(&family.at(t)?.bounding_chain)), t0, opts)?.value;
    let terms = corollary2_terms(family, t0, opts)?;
    let surface = family.at(t0)?;
    let check = internal_edge_check(&surface.bounding_chain, &surface)?;
    Ok(finish(&family.label, lhs, terms, opts, tol, corruption)
        .with_check(SubCheck::within("interior edge angle sums mod 2π", check.max_interior_deviation, EDGE_SUM_TOL))
        .with_check(SubCheck::within("surface edge angle sums mod 2π", check.max_surface_deviation, EDGE_SUM_TOL)))
}
