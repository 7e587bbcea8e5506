//! Models of hyperbolic 3-space and the metric, angle and isometry
//! primitives built on them.

mod geodesic;
mod isometry;
mod minkowski;
mod plane;
mod point;

pub use geodesic::{geodesic_through, unit_tangent, Geodesic};
pub use isometry::{
    apply_isometry, classify_isometry, screw_motion, Classification, Isometry, IsometryClass, Mat2,
    Transform, PARABOLIC_TOL,
};
pub use minkowski::{
    compensated_sum, det4, flip_time, mink_cross, mink_inner, mink_norm_sq, normalize_spacelike, Vec4,
};
pub use plane::{dihedral_external, edge_external_angle, internal_angle, Plane, DEGENERACY_TOL};
pub use point::{convert_model, Coordinates, IdealPoint, Model, Point, Vertex};

/// Hyperbolic distance between two points.
pub fn distance(p: &Point, q: &Point) -> crate::error::Result<f64> {
    p.distance(q)
}
