use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::minkowski::{mink_inner, Vec4};
use crate::error::{Error, Result};

/// Tolerance on `<x,x> = -1` for accepted hyperboloid input.
const HYPERBOLOID_TOL: f64 = 1e-9;

/// A point of hyperbolic 3-space in the hyperboloid model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point(Vec4);

impl Point {
    /// The base point `(1, 0, 0, 0)`, which is `(0, 0, 1)` in upper half-space.
    pub fn origin() -> Self {
        Point(Vec4::new(1.0, 0.0, 0.0, 0.0))
    }

    /// Accepts any future-pointing timelike vector and rescales it onto the
    /// hyperboloid.
    pub fn from_timelike(x: Vec4) -> Result<Self> {
        let n2 = mink_inner(&x, &x);
        if !(n2 < 0.0) || !(x[0] > 0.0) || !x.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidPoint(format!(
                "vector {:?} is not future timelike",
                x.as_slice()
            )));
        }
        Ok(Point(x / (-n2).sqrt()))
    }

    /// Accepts hyperboloid coordinates that already satisfy `<x,x> = -1`
    /// up to a small tolerance; renormalizes.
    pub fn from_hyperboloid(x: [f64; 4]) -> Result<Self> {
        let v = Vec4::from(x);
        let n2 = mink_inner(&v, &v);
        if (n2 + 1.0).abs() > HYPERBOLOID_TOL * v[0].powi(2).max(1.0) || v[0] <= 0.0 {
            return Err(Error::InvalidPoint(format!(
                "<x,x> = {n2}, x0 = {} for hyperboloid input",
                v[0]
            )));
        }
        Self::from_timelike(v)
    }

    /// Lift from the spatial coordinates `(x1, x2, x3)`; `x0` is solved for.
    pub fn from_spatial(s: [f64; 3]) -> Self {
        let r2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
        Point(Vec4::new((1.0 + r2).sqrt(), s[0], s[1], s[2]))
    }

    pub fn from_upper_half_space(u: f64, v: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) || !u.is_finite() || !v.is_finite() || !h.is_finite() {
            return Err(Error::InvalidPoint(format!(
                "upper half-space point ({u}, {v}, {h}) needs h > 0"
            )));
        }
        let s = h * h + u * u + v * v;
        Self::from_timelike(Vec4::new(
            (s + 1.0) / (2.0 * h),
            u / h,
            v / h,
            (s - 1.0) / (2.0 * h),
        ))
    }

    pub fn from_klein(k: [f64; 3]) -> Result<Self> {
        let r2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if !(r2 < 1.0) {
            return Err(Error::InvalidPoint(format!(
                "Klein point {k:?} is not inside the unit ball"
            )));
        }
        let s = (1.0 - r2).sqrt();
        Ok(Point(Vec4::new(1.0 / s, k[0] / s, k[1] / s, k[2] / s)))
    }

    #[inline]
    pub fn coords(&self) -> &Vec4 {
        &self.0
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn to_upper_half_space(&self) -> [f64; 3] {
        let h = 1.0 / (self.0[0] - self.0[3]);
        [self.0[1] * h, self.0[2] * h, h]
    }

    pub fn to_klein(&self) -> [f64; 3] {
        [
            self.0[1] / self.0[0],
            self.0[2] / self.0[0],
            self.0[3] / self.0[0],
        ]
    }

    /// Hyperbolic distance. Uses `2 asinh(|p - q| / 2)`, which is accurate
    /// for nearby points as well as distant ones.
    pub fn distance(&self, other: &Point) -> Result<f64> {
        let ip = mink_inner(&self.0, &other.0);
        if -ip < 1.0 - 1e-12 {
            return Err(Error::NotTimelikeSeparated(ip));
        }
        let diff = self.0 - other.0;
        let chord2 = mink_inner(&diff, &diff).max(0.0);
        Ok(2.0 * (chord2.sqrt() / 2.0).asinh())
    }

    /// Distance for points known to be valid; never fails.
    pub fn dist(&self, other: &Point) -> f64 {
        let diff = self.0 - other.0;
        let chord2 = mink_inner(&diff, &diff).max(0.0);
        2.0 * (chord2.sqrt() / 2.0).asinh()
    }

    /// Normalized Minkowski barycenter of a set of points.
    pub fn centroid(points: &[Point]) -> Result<Point> {
        let sum = points.iter().fold(Vec4::zeros(), |acc, p| acc + p.0);
        Point::from_timelike(sum)
    }

    pub(crate) fn from_raw(x: Vec4) -> Self {
        Point(x)
    }
}

/// A point on the sphere at infinity, in upper half-space boundary
/// coordinates: a complex number or `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum IdealPoint {
    Finite(Complex64),
    Infinity,
}

impl IdealPoint {
    pub fn finite(re: f64, im: f64) -> Self {
        IdealPoint::Finite(Complex64::new(re, im))
    }

    /// Future-pointing null vector representing this point. Finite points are
    /// scaled so that `x0 - x3 = 1`.
    pub fn null_vector(&self) -> Vec4 {
        match *self {
            IdealPoint::Finite(c) => {
                let r2 = c.norm_sqr();
                Vec4::new((r2 + 1.0) / 2.0, c.re, c.im, (r2 - 1.0) / 2.0)
            }
            IdealPoint::Infinity => Vec4::new(1.0, 0.0, 0.0, 1.0),
        }
    }

    /// Recover the boundary point from a (future or past) null vector.
    pub fn from_null(n: &Vec4) -> Result<Self> {
        let scale = n.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if scale == 0.0 || !scale.is_finite() {
            return Err(Error::InvalidPoint("zero null vector".into()));
        }
        let n = n / scale;
        if mink_inner(&n, &n).abs() > 1e-8 {
            return Err(Error::InvalidPoint(format!(
                "vector {:?} is not null",
                n.as_slice()
            )));
        }
        let denom = n[0] - n[3];
        if denom.abs() <= 1e-14 * n[0].abs().max(1e-300) {
            return Ok(IdealPoint::Infinity);
        }
        Ok(IdealPoint::Finite(Complex64::new(n[1] / denom, n[2] / denom)))
    }

    /// Equality on the Riemann sphere up to `tol` in the chordal metric.
    pub fn approx_eq(&self, other: &IdealPoint, tol: f64) -> bool {
        chordal(self, other) <= tol
    }
}

fn chordal(a: &IdealPoint, b: &IdealPoint) -> f64 {
    match (a, b) {
        (IdealPoint::Infinity, IdealPoint::Infinity) => 0.0,
        (IdealPoint::Finite(z), IdealPoint::Infinity) | (IdealPoint::Infinity, IdealPoint::Finite(z)) => {
            2.0 / (1.0 + z.norm_sqr()).sqrt()
        }
        (IdealPoint::Finite(z), IdealPoint::Finite(w)) => {
            2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()).sqrt() * (1.0 + w.norm_sqr()).sqrt())
        }
    }
}

/// A tetrahedron or chain vertex: a point of H^3 or a point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Vertex {
    Finite(Point),
    Ideal(IdealPoint),
}

impl Vertex {
    /// Hyperboloid point or future null vector.
    pub fn vector(&self) -> Vec4 {
        match self {
            Vertex::Finite(p) => *p.coords(),
            Vertex::Ideal(i) => i.null_vector(),
        }
    }

    pub fn is_ideal(&self) -> bool {
        matches!(self, Vertex::Ideal(_))
    }

    pub fn as_point(&self) -> Option<&Point> {
        match self {
            Vertex::Finite(p) => Some(p),
            Vertex::Ideal(_) => None,
        }
    }
}

impl From<Point> for Vertex {
    fn from(p: Point) -> Self {
        Vertex::Finite(p)
    }
}

impl From<IdealPoint> for Vertex {
    fn from(p: IdealPoint) -> Self {
        Vertex::Ideal(p)
    }
}

/// Models of hyperbolic 3-space supported by [`convert_model`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Hyperboloid,
    UpperHalfSpace,
    Klein,
}

/// Coordinates of a point (or a point at infinity) in one of the models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coordinates {
    Hyperboloid([f64; 4]),
    UpperHalfSpace([f64; 3]),
    Klein([f64; 3]),
    /// Points at infinity are always reported in boundary coordinates.
    Boundary(IdealPoint),
}

impl Coordinates {
    /// Parse coordinates back into a vertex, checking the model invariants.
    pub fn to_vertex(&self) -> Result<Vertex> {
        match *self {
            Coordinates::Hyperboloid(x) => Point::from_hyperboloid(x).map(Vertex::Finite),
            Coordinates::UpperHalfSpace([u, v, h]) => {
                Point::from_upper_half_space(u, v, h).map(Vertex::Finite)
            }
            Coordinates::Klein(k) => Point::from_klein(k).map(Vertex::Finite),
            Coordinates::Boundary(i) => Ok(Vertex::Ideal(i)),
        }
    }
}

/// Express a point in the requested model. The input coordinates are
/// validated against their own model first.
pub fn convert_model(source: &Coordinates, target: Model) -> Result<Coordinates> {
    let v = source.to_vertex()?;
    Ok(match v {
        Vertex::Ideal(i) => Coordinates::Boundary(i),
        Vertex::Finite(p) => match target {
            Model::Hyperboloid => Coordinates::Hyperboloid([
                p.coords()[0],
                p.coords()[1],
                p.coords()[2],
                p.coords()[3],
            ]),
            Model::UpperHalfSpace => Coordinates::UpperHalfSpace(p.to_upper_half_space()),
            Model::Klein => Coordinates::Klein(p.to_klein()),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_point_is_uhs_unit_height() {
        let c = convert_model(&Coordinates::Hyperboloid([1.0, 0.0, 0.0, 0.0]), Model::UpperHalfSpace).unwrap();
        assert_eq!(c, Coordinates::UpperHalfSpace([0.0, 0.0, 1.0]));
    }

    #[test]
    fn vertical_unit_distance() {
        let p = Point::from_upper_half_space(0.0, 0.0, 1.0).unwrap();
        let q = Point::from_upper_half_space(0.0, 0.0, std::f64::consts::E).unwrap();
        assert!((p.distance(&q).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(p.distance(&p).unwrap(), 0.0);
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(Point::from_upper_half_space(0.0, 0.0, -1.0).is_err());
        assert!(Point::from_klein([0.8, 0.8, 0.0]).is_err());
        assert!(Point::from_hyperboloid([1.0, 1.0, 0.0, 0.0]).is_err());
        assert!(convert_model(&Coordinates::Klein([1.0, 0.0, 0.0]), Model::Hyperboloid).is_err());
    }

    #[test]
    fn ideal_round_trip() {
        for z in [IdealPoint::finite(0.3, -2.0), IdealPoint::Infinity, IdealPoint::finite(0.0, 0.0)] {
            let back = IdealPoint::from_null(&z.null_vector()).unwrap();
            assert!(back.approx_eq(&z, 1e-14));
        }
    }

    #[test]
    fn normalization_invariant() {
        let p = Point::from_spatial([0.3, -1.2, 2.5]);
        let n = mink_inner(p.coords(), p.coords());
        assert!((n + 1.0).abs() < 1e-12);
        assert!(p.coords()[0] > 0.0);
    }
}
