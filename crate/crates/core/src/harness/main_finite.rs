use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;

use super::fd::{fd_derivative, FdOptions};
use super::family::DeformationFamily;
use super::report::{SubCheck, Tolerance, VerificationReport};
use super::verify::EDGE_SUM_TOL;
use crate::error::{Error, Result};
use crate::kernel::{geodesic_through, screw_motion, Point, Vec4, Vertex};
use crate::pleated::{fan_identity_check, grouped_term_sums, FanIdentityReport, GroupedTerms, PrismDecomposition, RATE_TOL};
use crate::schlafli::{corollary2_terms, internal_edge_check, Polyhedron, TET_FACES};
use crate::tracks::{cocycle_length, Branch, TrainTrack, TransverseCocycle};

/// Stated on every finite-pleating report.
pub const SURROGATE_NOTE: &str = "finite pleating surrogate: bending along irrational laminations and \
     convex cores of quasi-Fuchsian manifolds are not reproducible at this scale; those cases rest on \
     the finite scenarios and the invariants checked here";

/// Breakdown of a finite-pleating check.
#[derive(Debug, Clone)]
pub struct MainFiniteReport {
    pub report: VerificationReport,
    /// `½ l(ḃ)`: half the length of the bend-rate cocycle on the leaf track.
    pub leaf_term: f64,
    /// `½ Σ l(e) ḃ(e)` over the surface edges that are not leaves.
    pub boundary_term: f64,
    pub grouped: GroupedTerms,
    pub fans: FanIdentityReport,
}

/// Finite-difference volume derivative of the region cut out by a pleated
/// rectangle and two apexes, against half the length of the bend-rate
/// cocycle plus the Schläfli terms of the edges of the rectangle's boundary
/// and of the cones over it.
///
/// The bend rates come from `bends`, the prescribed angle paths, and the leaf
/// lengths from the track at `t0`; the geometric angles of the leaf edges
/// are checked against them separately.
pub fn verify_main_finite(
    family: &DeformationFamily<PrismDecomposition>,
    bends: &DeformationFamily<Vec<f64>>,
    t0: f64,
    opts: &FdOptions,
    tol: Tolerance,
) -> Result<MainFiniteReport> {
    family.check_stencil(t0, opts)?;
    let lhs = fd_derivative(|t| family.at(t)?.volume(), t0, opts)?.value;
    let base = family.at(t0)?;
    let n = base.rect.leaf_count();
    if bends.at(t0)?.len() != n {
        return Err(Error::IndexMismatch(format!("{} bend paths for {n} leaves", bends.at(t0)?.len())));
    }
    let rates = (0..n)
        .map(|j| Ok(fd_derivative(|t| Ok(bends.at(t)?[j]), t0, opts)?.value))
        .collect::<Result<Vec<f64>>>()?;
    let leaf_term = 0.5 * cocycle_length(&base.rect.leaf_track(), &TransverseCocycle::real(rates))?;

    let terms = corollary2_terms(&family.map(|d| d.surface()), t0, opts)?;
    let leaves = base.leaf_edges();
    let is_leaf = |e: (usize, usize)| leaves.iter().any(|&(a, b)| (a.min(b), a.max(b)) == e);
    let half_sum = |leaf: bool| {
        0.5 * crate::kernel::compensated_sum(terms.terms.iter().filter(|t| is_leaf(t.edge) == leaf).map(|t| t.product()))
    };
    let boundary_term = half_sum(false);
    let measured_leaf = half_sum(true);

    let grouped = grouped_term_sums(family, t0, opts)?;
    let fans = fan_identity_check(family, t0, opts)?;
    let surface = base.surface()?;
    let edges = internal_edge_check(&surface.bounding_chain, &surface)?;

    let mut report = VerificationReport::new(&family.label, lhs, leaf_term + boundary_term, opts.h, tol)
        .with_check(SubCheck::within("leaf edge angle rates vs bend rates", measured_leaf - leaf_term, RATE_TOL))
        .with_check(SubCheck::within("grouped piece terms vs volume derivative", grouped.total() - lhs, tol.abs))
        .with_check(SubCheck::within("interior edge angle sums mod 2π", edges.max_interior_deviation, EDGE_SUM_TOL));
    for c in &fans.checks {
        report = report.with_check(SubCheck { name: format!("fan: {}", c.name), ..c.clone() });
    }
    report = report
        .with_note(format!("leaf term {leaf_term:.12e}, boundary term {boundary_term:.12e}"))
        .with_note(SURROGATE_NOTE);
    Ok(MainFiniteReport { report, leaf_term, boundary_term, grouped, fans })
}

/// Tetrahedron with the given internal dihedral angles, `angles[i][j]`
/// along the edge where faces `i` and `j` meet (face `i` is opposite vertex
/// `i`). Built from the Gram matrix `-cos θ_ij`, which must have one
/// negative eigenvalue.
pub fn gram_tetrahedron(angles: &[[f64; 4]; 4]) -> Result<Polyhedron> {
    let g = Matrix4::from_fn(|i, j| if i == j { 1.0 } else { -angles[i][j].cos() });
    let eig = SymmetricEigen::new(g);
    let neg: Vec<usize> = (0..4).filter(|&k| eig.eigenvalues[k] < 0.0).collect();
    if neg.len() != 1 || eig.eigenvalues.iter().any(|l| l.abs() < 1e-12) {
        return Err(Error::Degenerate("angles are not those of a compact hyperbolic tetrahedron".into()));
    }
    // columns of the eigenbasis, the negative one first, give Minkowski coordinates
    let mut order = neg.clone();
    order.extend((0..4).filter(|k| *k != neg[0]));
    let normals: Vec<Vec4> = (0..4)
        .map(|i| Vec4::from_iterator(order.iter().map(|&k| eig.eigenvectors[(i, k)] * eig.eigenvalues[k].abs().sqrt())))
        .collect();
    let ginv = g.try_inverse().ok_or_else(|| Error::Degenerate("singular Gram matrix".into()))?;
    let duals: Vec<Vec4> = (0..4)
        .map(|i| {
            let w: Vec4 = (0..4).map(|k| normals[k] * ginv[(i, k)]).sum();
            if w[0] < 0.0 { -w } else { w }
        })
        .collect();
    let build = |mirror: f64| {
        let vs = duals.iter().map(|w| Point::from_timelike(Vec4::new(w[0], mirror * w[1], w[2], w[3]))).collect::<Result<_>>()?;
        Polyhedron::new(vs, TET_FACES.iter().map(|f| f.to_vec()).collect())
    };
    // a reflection fixes the orientation without relabelling vertices
    let tet = build(1.0)?;
    if tet.volume()? < 0.0 { build(-1.0) } else { Ok(tet) }
}

/// Internal angle of the symmetric base tetrahedron of the single-leaf
/// family, between the ideal and the Euclidean regular values.
pub const SINGLE_LEAF_ANGLE: f64 = 65.0 * std::f64::consts::PI / 180.0;

/// A tetrahedron bent along one edge: the edge between vertices 2 and 3 has
/// external angle `π - SINGLE_LEAF_ANGLE + t`, every other edge keeps the
/// base angle.
pub fn single_leaf_family() -> DeformationFamily<Polyhedron> {
    DeformationFamily::new("single closed leaf", 0.05, None, |t| {
        let mut a = [[SINGLE_LEAF_ANGLE; 4]; 4];
        a[0][1] = SINGLE_LEAF_ANGLE - t;
        a[1][0] = a[0][1];
        gram_tetrahedron(&a)
    })
}

/// Volume derivative of [`single_leaf_family`] against half the length of
/// the closed leaf carrying bend rate 1. The leaf is the quotient of the
/// bent edge's geodesic by the translation along it by the edge length, and
/// its length is read back off that translation.
pub fn verify_single_leaf(t0: f64, opts: &FdOptions, tol: Tolerance) -> Result<VerificationReport> {
    let family = single_leaf_family();
    family.check_stencil(t0, opts)?;
    let lhs = fd_derivative(|t| family.at(t)?.volume(), t0, opts)?.value;
    let tet = family.at(t0)?;
    let (a, b) = (tet.vertices[2], tet.vertices[3]);
    let axis = geodesic_through(&Vertex::Finite(a), &Vertex::Finite(b))?;
    let holonomy = screw_motion(&axis, Complex64::new(a.dist(&b), 0.0));
    let track = TrainTrack::new(vec![Branch::closed_from_holonomy(&holonomy)?], Vec::new())?;
    let rate = fd_derivative(Ok, t0, opts)?.value;
    let rhs = 0.5 * cocycle_length(&track, &TransverseCocycle::real(vec![rate]))?;
    Ok(VerificationReport::new(&family.label, lhs, rhs, opts.h, tol)
        .with_note(format!("leaf length {:.12}", a.dist(&b)))
        .with_note(SURROGATE_NOTE))
}
