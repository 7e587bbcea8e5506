use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use super::geodesic::Geodesic;
use super::minkowski::Vec4;
use super::plane::Plane;
use super::point::{IdealPoint, Point, Vertex};
use crate::error::{Error, Result};

pub type Mat2 = Matrix2<Complex64>;

/// Distance of the trace from `±2` below which an isometry is reported as
/// parabolic (or the identity).
pub const PARABOLIC_TOL: f64 = 1e-9;

/// Orientation-preserving isometry of H^3, stored as an element of SL(2,C)
/// acting on upper half-space, together with the induced Lorentz matrix on
/// hyperboloid coordinates. `m` and `-m` represent the same isometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    m: Mat2,
    lorentz: Matrix4<f64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn hermitian_of(x: &Vec4) -> Mat2 {
    Mat2::new(
        c(x[0] + x[3], 0.0),
        c(x[1], x[2]),
        c(x[1], -x[2]),
        c(x[0] - x[3], 0.0),
    )
}

fn vector_of(h: &Mat2) -> Vec4 {
    let a = h[(0, 0)].re;
    let d = h[(1, 1)].re;
    let b = h[(0, 1)];
    Vec4::new((a + d) / 2.0, b.re, b.im, (a - d) / 2.0)
}

fn lorentz_of(m: &Mat2) -> Matrix4<f64> {
    let adj = m.adjoint();
    let mut out = Matrix4::zeros();
    for k in 0..4 {
        let mut e = Vec4::zeros();
        e[k] = 1.0;
        let col = vector_of(&(m * hermitian_of(&e) * adj));
        out.set_column(k, &col);
    }
    out
}

impl Isometry {
    /// Builds the isometry of a nonsingular complex matrix, rescaled to
    /// determinant 1.
    pub fn from_matrix(m: Mat2) -> Result<Self> {
        let det = m.determinant();
        let scale = m.iter().fold(0.0f64, |s, z| s.max(z.norm()));
        if !(det.norm() > 1e-24 * scale * scale) || !det.norm().is_finite() {
            return Err(Error::Degenerate("singular Möbius matrix".into()));
        }
        let m = m / det.sqrt();
        Ok(Isometry { m, lorentz: lorentz_of(&m) })
    }

    pub fn from_entries(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> Result<Self> {
        Self::from_matrix(Mat2::new(a, b, cc, d))
    }

    pub fn identity() -> Self {
        Isometry { m: Mat2::identity(), lorentz: Matrix4::identity() }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn lorentz(&self) -> &Matrix4<f64> {
        &self.lorentz
    }

    pub fn trace(&self) -> Complex64 {
        self.m[(0, 0)] + self.m[(1, 1)]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let m = self.m * other.m;
        Isometry { m, lorentz: lorentz_of(&m) }
    }

    pub fn inverse(&self) -> Isometry {
        let m = &self.m;
        let inv = Mat2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]);
        Isometry { m: inv, lorentz: lorentz_of(&inv) }
    }

    /// Equality in PSL(2,C): `m ≈ m'` or `m ≈ -m'` entrywise.
    pub fn approx_eq(&self, other: &Isometry, tol: f64) -> bool {
        let plus = (self.m - other.m).iter().all(|z| z.norm() <= tol);
        let minus = (self.m + other.m).iter().all(|z| z.norm() <= tol);
        plus || minus
    }

    pub fn apply_vector(&self, x: &Vec4) -> Vec4 {
        self.lorentz * x
    }

    pub fn apply_point(&self, p: &Point) -> Point {
        Point::from_timelike(self.lorentz * p.coords()).expect("Lorentz image of a point is a point")
    }

    /// Möbius action on the boundary sphere.
    pub fn apply_ideal(&self, z: &IdealPoint) -> IdealPoint {
        let (p, q) = match *z {
            IdealPoint::Finite(w) => (w, c(1.0, 0.0)),
            IdealPoint::Infinity => (c(1.0, 0.0), c(0.0, 0.0)),
        };
        let m = &self.m;
        ideal_from_pair(m[(0, 0)] * p + m[(0, 1)] * q, m[(1, 0)] * p + m[(1, 1)] * q)
    }

    pub fn apply_vertex(&self, v: &Vertex) -> Vertex {
        match v {
            Vertex::Finite(p) => Vertex::Finite(self.apply_point(p)),
            Vertex::Ideal(z) => Vertex::Ideal(self.apply_ideal(z)),
        }
    }

    pub fn apply_geodesic(&self, g: &Geodesic) -> Geodesic {
        Geodesic::from_endpoints(self.apply_ideal(&g.start()), self.apply_ideal(&g.end()))
            .expect("isometries keep endpoints distinct")
    }

    pub fn apply_plane(&self, f: &Plane) -> Plane {
        Plane::from_normal(self.lorentz * f.normal()).expect("isometries keep normals spacelike")
    }
}

/// Boundary point of the projective vector `(p : q)`.
fn ideal_from_pair(p: Complex64, q: Complex64) -> IdealPoint {
    if q.norm() <= 1e-300 || q.norm() <= 1e-15 * p.norm() {
        IdealPoint::Infinity
    } else {
        IdealPoint::Finite(p / q)
    }
}

/// Anything isometries act on.
pub trait Transform: Sized {
    fn transformed_by(&self, g: &Isometry) -> Self;
}

impl Transform for Point {
    fn transformed_by(&self, g: &Isometry) -> Self {
        g.apply_point(self)
    }
}

impl Transform for IdealPoint {
    fn transformed_by(&self, g: &Isometry) -> Self {
        g.apply_ideal(self)
    }
}

impl Transform for Vertex {
    fn transformed_by(&self, g: &Isometry) -> Self {
        g.apply_vertex(self)
    }
}

impl Transform for Geodesic {
    fn transformed_by(&self, g: &Isometry) -> Self {
        g.apply_geodesic(self)
    }
}

impl Transform for Plane {
    fn transformed_by(&self, g: &Isometry) -> Self {
        g.apply_plane(self)
    }
}

pub fn apply_isometry<T: Transform>(g: &Isometry, x: &T) -> T {
    x.transformed_by(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryClass {
    Identity,
    Elliptic,
    Parabolic,
    Loxodromic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub class: IsometryClass,
    /// Oriented axis for elliptic and loxodromic elements: translation is
    /// toward `axis.end()` by `complex_length.re`.
    pub axis: Option<Geodesic>,
    /// `ℓ + iθ` with `ℓ ≥ 0` and `θ ∈ (-π, π]`.
    pub complex_length: Option<Complex64>,
    /// Ideal fixed point of a parabolic element.
    pub fixed_point: Option<IdealPoint>,
    /// Set when the trace is within `PARABOLIC_TOL` of `±2`.
    pub numerically_parabolic: bool,
}

/// Projective eigenvector of `m` for eigenvalue `lam`.
fn fixed_point(m: &Mat2, lam: Complex64) -> IdealPoint {
    let (a, b, cc, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    // kernel of [[a-λ, b], [c, d-λ]]: (b, λ-a) from the first row, (λ-d, c) from the second
    let r1 = (a - lam).norm() + b.norm();
    let r2 = cc.norm() + (d - lam).norm();
    if r1 >= r2 {
        ideal_from_pair(b, lam - a)
    } else {
        ideal_from_pair(lam - d, cc)
    }
}

fn wrap_angle(x: f64) -> f64 {
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

pub fn classify_isometry(g: &Isometry) -> Classification {
    let m = &g.m;
    let tr = g.trace();
    let near_two = (tr - 2.0).norm().min((tr + 2.0).norm()) <= PARABOLIC_TOL;
    if near_two {
        let sign = if tr.re >= 0.0 { 1.0 } else { -1.0 };
        let off = (m - Mat2::identity() * c(sign, 0.0)).iter().fold(0.0f64, |s, z| s.max(z.norm()));
        let exact = tr == c(2.0 * sign, 0.0);
        if off <= 1e-12 {
            return Classification {
                class: IsometryClass::Identity,
                axis: None,
                complex_length: Some(c(0.0, 0.0)),
                fixed_point: None,
                numerically_parabolic: !exact,
            };
        }
        return Classification {
            class: IsometryClass::Parabolic,
            axis: None,
            complex_length: None,
            fixed_point: Some(fixed_point(m, c(sign, 0.0))),
            numerically_parabolic: !exact,
        };
    }
    let disc = (tr * tr - 4.0).sqrt();
    let mut lam = (tr + disc) / 2.0;
    let mut other = (tr - disc) / 2.0;
    if lam.norm() < other.norm() {
        std::mem::swap(&mut lam, &mut other);
    }
    let mut z = 2.0 * lam.ln();
    let elliptic = tr.im.abs() <= 1e-12 * tr.norm().max(1.0) && tr.re.abs() < 2.0;
    if elliptic {
        // |λ| = 1; orient the axis so the rotation angle is positive
        z = c(0.0, z.im);
        if wrap_angle(z.im) < 0.0 {
            std::mem::swap(&mut lam, &mut other);
            z = -z;
        }
    }
    let z = c(z.re.max(0.0), wrap_angle(z.im));
    let axis = Geodesic::from_endpoints(fixed_point(m, other), fixed_point(m, lam)).ok();
    Classification {
        class: if elliptic { IsometryClass::Elliptic } else { IsometryClass::Loxodromic },
        axis,
        complex_length: Some(z),
        fixed_point: None,
        numerically_parabolic: false,
    }
}

/// Möbius matrix sending `0` to `start` and `∞` to `end`.
fn normalizer(axis: &Geodesic) -> Mat2 {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    match (axis.start(), axis.end()) {
        (IdealPoint::Finite(s), IdealPoint::Finite(e)) => Mat2::new(e, s, one, one),
        (IdealPoint::Finite(s), IdealPoint::Infinity) => Mat2::new(one, s, zero, one),
        (IdealPoint::Infinity, IdealPoint::Finite(e)) => Mat2::new(e, -one, one, zero),
        (IdealPoint::Infinity, IdealPoint::Infinity) => unreachable!("geodesic endpoints are distinct"),
    }
}

/// Translation by `Re z` toward `axis.end()` composed with rotation by
/// `Im z` about the axis.
pub fn screw_motion(axis: &Geodesic, z: Complex64) -> Isometry {
    let a = normalizer(axis);
    let ainv = a.try_inverse().expect("normalizer is invertible");
    let h = z / 2.0;
    let diag = Mat2::new(h.exp(), c(0.0, 0.0), c(0.0, 0.0), (-h).exp());
    Isometry::from_matrix(a * diag * ainv).expect("conjugate of a diagonal matrix")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_is_loxodromic_along_vertical_axis() {
        let g = Isometry::from_entries(c(0.5f64.exp(), 0.0), c(0.0, 0.0), c(0.0, 0.0), c((-0.5f64).exp(), 0.0)).unwrap();
        let k = classify_isometry(&g);
        assert_eq!(k.class, IsometryClass::Loxodromic);
        assert!((k.complex_length.unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        let axis = k.axis.unwrap();
        assert!(axis.start().approx_eq(&IdealPoint::finite(0.0, 0.0), 1e-12));
        assert_eq!(axis.end(), IdealPoint::Infinity);
        // translation by 1 along the axis moves the base point distance 1
        let p = Point::origin();
        assert!((g.apply_point(&p).dist(&p) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unipotent_is_parabolic_at_infinity() {
        let one = c(1.0, 0.0);
        let g = Isometry::from_entries(one, one, c(0.0, 0.0), one).unwrap();
        let k = classify_isometry(&g);
        assert_eq!(k.class, IsometryClass::Parabolic);
        assert_eq!(k.fixed_point, Some(IdealPoint::Infinity));
        assert!(!k.numerically_parabolic);
    }

    #[test]
    fn rotation_is_elliptic() {
        let t = PI / 3.0;
        let (cs, sn) = ((t / 2.0).cos(), (t / 2.0).sin());
        let g = Isometry::from_entries(c(cs, 0.0), c(sn, 0.0), c(-sn, 0.0), c(cs, 0.0)).unwrap();
        let k = classify_isometry(&g);
        assert_eq!(k.class, IsometryClass::Elliptic);
        assert!((k.complex_length.unwrap().im - t).abs() < 1e-12);
        assert!(k.complex_length.unwrap().re.abs() < 1e-12);
        // the axis is fixed pointwise
        let axis = k.axis.unwrap();
        let q = axis.point_at(0.3);
        assert!(g.apply_point(&q).dist(&q) < 1e-7);
    }

    #[test]
    fn lorentz_action_matches_mobius_on_boundary() {
        let g = Isometry::from_entries(c(1.0, 0.5), c(-0.3, 2.0), c(0.7, -0.1), c(0.2, 1.1)).unwrap();
        for z in [IdealPoint::finite(0.3, -1.2), IdealPoint::finite(0.0, 0.0), IdealPoint::Infinity] {
            let via_lorentz = IdealPoint::from_null(&g.apply_vector(&z.null_vector())).unwrap();
            assert!(via_lorentz.approx_eq(&g.apply_ideal(&z), 1e-12), "{z:?}");
        }
        assert!((g.lorentz().determinant() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn screw_round_trip_and_identity() {
        let axis = Geodesic::from_endpoints(IdealPoint::finite(-1.0, 0.4), IdealPoint::finite(2.0, 0.1)).unwrap();
        assert!(screw_motion(&axis, c(0.0, 0.0)).approx_eq(&Isometry::identity(), 1e-12));
        let z = c(0.8, -1.1);
        let k = classify_isometry(&screw_motion(&axis, z));
        assert!((k.complex_length.unwrap() - z).norm() < 1e-10);
        let ax = k.axis.unwrap();
        assert!(ax.start().approx_eq(&axis.start(), 1e-10) && ax.end().approx_eq(&axis.end(), 1e-10));
        let vert = Geodesic::from_endpoints(IdealPoint::finite(0.0, 0.0), IdealPoint::Infinity).unwrap();
        let d = screw_motion(&vert, c(1.0, 0.0));
        let want = Isometry::from_entries(c(0.5f64.exp(), 0.0), c(0.0, 0.0), c(0.0, 0.0), c((-0.5f64).exp(), 0.0)).unwrap();
        assert!(d.approx_eq(&want, 1e-12));
    }
}
