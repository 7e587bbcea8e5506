use std::f64::consts::PI;

use super::minkowski::{mink_cross, mink_inner, normalize_spacelike, Vec4};
use super::point::Point;
use crate::error::{Error, Result};

/// Threshold on Gram-type determinants below which three points are treated
/// as collinear.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// A totally geodesic plane `{x : <x, n> = 0}` co-oriented by its unit
/// spacelike normal `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane {
    n: Vec4,
}

impl Plane {
    pub fn from_normal(n: Vec4) -> Result<Self> {
        normalize_spacelike(&n)
            .map(|n| Plane { n })
            .ok_or_else(|| Error::Degenerate("plane normal is not spacelike".into()))
    }

    /// Plane through three vertices (points or null vectors), normal chosen
    /// so that `<n, w>` has the sign of `det[a, b, c, w]`. For an oriented
    /// boundary triangle of a positively oriented tetrahedron this is the
    /// outward normal.
    pub fn through(a: &Vec4, b: &Vec4, c: &Vec4) -> Result<Self> {
        let n = mink_cross(a, b, c);
        let n2 = mink_inner(&n, &n);
        let scale = a.norm() * b.norm() * c.norm();
        if n2 <= DEGENERACY_TOL * scale * scale {
            return Err(Error::Degenerate("three collinear vertices span no plane".into()));
        }
        Ok(Plane { n: n / n2.sqrt() })
    }

    pub fn normal(&self) -> &Vec4 {
        &self.n
    }

    pub fn flipped(&self) -> Self {
        Plane { n: -self.n }
    }

    /// Signed value `<n, x>`: positive on the normal side. For a point of
    /// H^3 this is `sinh` of the signed distance to the plane.
    pub fn side(&self, x: &Vec4) -> f64 {
        mink_inner(&self.n, x)
    }

    pub fn distance_to(&self, p: &Point) -> f64 {
        self.side(p.coords()).asinh().abs()
    }

    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        self.distance_to(p) <= tol
    }
}

/// External dihedral angle between two faces with outward normals, from the
/// normals alone. The magnitude is `acos <n1, n2>`; `convex` selects the
/// sign (a reflex edge has negative external angle).
pub fn dihedral_external(f1: &Plane, f2: &Plane, convex: bool) -> Result<f64> {
    let c = mink_inner(f1.normal(), f2.normal());
    if c.abs() > 1.0 + 1e-12 {
        return Err(Error::Ultraparallel(c));
    }
    let a = c.clamp(-1.0, 1.0).acos();
    Ok(if convex { a } else { -a })
}

/// Unit vector at `a`, tangent to the plane with normal `n`, orthogonal to the
/// edge `a -> b`, pointing into the face that the directed edge bounds on its
/// left (the face whose oriented boundary runs `a -> b`).
fn wing(a: &Point, b: &Vec4, n: &Vec4) -> Option<Vec4> {
    let z = mink_cross(a.coords(), b, n);
    normalize_spacelike(&z).map(|z| -z)
}

/// Signed external angle at the edge `a b` of an oriented surface, where the
/// face with outward normal `n1` contains the directed edge `a -> b` and the
/// face with outward normal `n2` contains `b -> a`.
///
/// The internal angle is measured from the first face through the inside
/// (the `-n1` side) to the second, in `[0, 2π)`, and the result is `π` minus
/// it: 0 when flat, π when folded back, negative at reflex edges.
pub fn edge_external_angle(a: &Point, b: &Vec4, n1: &Vec4, n2: &Vec4) -> Result<f64> {
    let w1 = wing(a, b, n1).ok_or_else(|| Error::Degenerate("first face wing".into()))?;
    let w2 = wing_reverse(a, b, n2).ok_or_else(|| Error::Degenerate("second face wing".into()))?;
    let mut theta = (-mink_inner(&w2, n1)).atan2(mink_inner(&w2, &w1));
    if theta < 0.0 {
        theta += 2.0 * PI;
    }
    let ext = PI - theta;
    // folded faces sit on the branch cut; report them as +π
    Ok(if ext <= -PI + 1e-12 { PI } else { ext })
}

// wing of the face containing b -> a, evaluated at a
fn wing_reverse(a: &Point, b: &Vec4, n: &Vec4) -> Option<Vec4> {
    // orientation (b, a, n) reverses (a, b, n)
    wing(a, b, n).map(|w| -w)
}

/// Internal dihedral angle in `[0, π]` between the half-planes bounded by the
/// line `a b` that contain `c` and `d` respectively.
pub fn internal_angle(a: &Point, b: &Vec4, c: &Vec4, d: &Vec4) -> Result<f64> {
    let x = a.coords();
    let proj = |v: &Vec4| v + x * mink_inner(v, x);
    let bt = proj(b);
    let u = normalize_spacelike(&bt).ok_or_else(|| Error::Degenerate("edge direction".into()))?;
    let perp = |v: &Vec4| {
        let t = proj(v);
        let t = t - u * mink_inner(&t, &u);
        normalize_spacelike(&t)
    };
    let wc = perp(c).ok_or_else(|| Error::Degenerate("vertex on edge line".into()))?;
    let wd = perp(d).ok_or_else(|| Error::Degenerate("vertex on edge line".into()))?;
    let cos = mink_inner(&wc, &wd);
    let rest = wd - wc * cos;
    let sin = mink_inner(&rest, &rest).max(0.0).sqrt();
    Ok(sin.atan2(cos))
}
