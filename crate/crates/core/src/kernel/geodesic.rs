use super::minkowski::{mink_inner, Vec4};
use super::point::{IdealPoint, Point, Vertex};
use crate::error::{Error, Result};

/// An oriented complete geodesic, stored by its ideal endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    start: IdealPoint,
    end: IdealPoint,
    // null vectors with <a, b> = -2, balanced so that s = 0 is the foot of the
    // perpendicular from the base point
    a: Vec4,
    b: Vec4,
}

impl Geodesic {
    pub fn from_endpoints(start: IdealPoint, end: IdealPoint) -> Result<Self> {
        if start.approx_eq(&end, 1e-14) {
            return Err(Error::Coincident("geodesic endpoints coincide".into()));
        }
        Self::from_null_pair(start, end, start.null_vector(), end.null_vector())
    }

    fn from_null_pair(start: IdealPoint, end: IdealPoint, a: Vec4, b: Vec4) -> Result<Self> {
        let o = Vec4::new(1.0, 0.0, 0.0, 0.0);
        let ao = -mink_inner(&a, &o);
        let bo = -mink_inner(&b, &o);
        // balance the two scalings, then fix <a,b> = -2
        let k = (bo / ao).sqrt();
        let (a, b) = (a * k, b / k);
        let ab = mink_inner(&a, &b);
        if !(ab < 0.0) {
            return Err(Error::Degenerate("endpoint null vectors are parallel".into()));
        }
        let s = (2.0 / -ab).sqrt();
        Ok(Geodesic {
            start,
            end,
            a: a * s,
            b: b * s,
        })
    }

    pub fn start(&self) -> IdealPoint {
        self.start
    }

    pub fn end(&self) -> IdealPoint {
        self.end
    }

    pub fn start_null(&self) -> &Vec4 {
        &self.a
    }

    pub fn end_null(&self) -> &Vec4 {
        &self.b
    }

    pub fn reversed(&self) -> Self {
        Geodesic {
            start: self.end,
            end: self.start,
            a: self.b,
            b: self.a,
        }
    }

    /// Arc-length parameterization; `s = 0` is the point nearest the base point.
    pub fn point_at(&self, s: f64) -> Point {
        Point::from_raw((self.a * (-s).exp() + self.b * s.exp()) * 0.5)
    }

    /// Arc-length parameter of the orthogonal projection of `p`.
    pub fn project(&self, p: &Point) -> f64 {
        let pa = -mink_inner(p.coords(), &self.a);
        let pb = -mink_inner(p.coords(), &self.b);
        0.5 * (pa / pb).ln()
    }

    /// Hyperbolic distance from `p` to the geodesic.
    pub fn distance_to(&self, p: &Point) -> f64 {
        let x = p.coords();
        let ab = mink_inner(&self.a, &self.b);
        let alpha = mink_inner(x, &self.b) / ab;
        let beta = mink_inner(x, &self.a) / ab;
        let w = x - self.a * alpha - self.b * beta;
        mink_inner(&w, &w).max(0.0).sqrt().asinh()
    }

    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        self.distance_to(p) <= tol
    }

    /// Unit tangent at `p` (assumed on the geodesic), pointing toward `end`.
    pub fn tangent_at(&self, p: &Point) -> Vec4 {
        let s = self.project(p);
        (self.b * s.exp() - self.a * (-s).exp()) * 0.5
    }
}

/// The geodesic through two distinct vertices, oriented from `a` to `b`.
/// Ideal inputs become endpoints.
pub fn geodesic_through(a: &Vertex, b: &Vertex) -> Result<Geodesic> {
    let (na, nb) = match (a, b) {
        (Vertex::Finite(p), Vertex::Finite(q)) => {
            let d = p.dist(q);
            if d < 1e-14 {
                return Err(Error::Coincident("geodesic through coincident points".into()));
            }
            let u = unit_tangent(p, q.coords());
            (p.coords() - u, p.coords() + u)
        }
        (Vertex::Finite(p), Vertex::Ideal(i)) => {
            let n = i.null_vector();
            (other_end(p, &n), n)
        }
        (Vertex::Ideal(i), Vertex::Finite(p)) => {
            let n = i.null_vector();
            (n, other_end(p, &n))
        }
        (Vertex::Ideal(i), Vertex::Ideal(j)) => {
            if i.approx_eq(j, 1e-14) {
                return Err(Error::Coincident("geodesic through coincident ideal points".into()));
            }
            (i.null_vector(), j.null_vector())
        }
    };
    let start = IdealPoint::from_null(&na)?;
    let end = IdealPoint::from_null(&nb)?;
    Geodesic::from_null_pair(start, end, na, nb)
}

/// Null vector of the far endpoint of the geodesic through `p` and the ideal
/// point with null vector `n`.
fn other_end(p: &Point, n: &Vec4) -> Vec4 {
    p.coords() + n / (2.0 * mink_inner(p.coords(), n))
}

/// Unit tangent vector at `p` in the direction of `target` (a point or a null
/// vector).
pub fn unit_tangent(p: &Point, target: &Vec4) -> Vec4 {
    let x = p.coords();
    let t = target + x * mink_inner(target, x);
    t / mink_inner(&t, &t).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_infinity_is_vertical_axis() {
        let g = geodesic_through(
            &Vertex::Ideal(IdealPoint::finite(0.0, 0.0)),
            &Vertex::Ideal(IdealPoint::Infinity),
        )
        .unwrap();
        for s in [-2.0, 0.0, 1.5] {
            let [u, v, h] = g.point_at(s).to_upper_half_space();
            assert!(u.abs() < 1e-12 && v.abs() < 1e-12);
            assert!((h - s.exp()).abs() < 1e-12 * h.max(1.0));
        }
    }

    #[test]
    fn contains_both_finite_points() {
        let p = Point::from_spatial([0.2, -0.7, 1.1]);
        let q = Point::from_spatial([-1.3, 0.4, 0.5]);
        let g = geodesic_through(&p.into(), &q.into()).unwrap();
        assert!(g.contains(&p, 1e-10) && g.contains(&q, 1e-10));
        let h = geodesic_through(&q.into(), &p.into()).unwrap();
        assert!(h.start().approx_eq(&g.end(), 1e-10));
        assert!(h.end().approx_eq(&g.start(), 1e-10));
        let d = g.project(&q) - g.project(&p);
        assert!((d - p.dist(&q)).abs() < 1e-10);
    }

    #[test]
    fn coincident_inputs_rejected() {
        let p = Point::from_spatial([0.2, 0.1, 0.0]);
        assert!(geodesic_through(&p.into(), &p.into()).is_err());
    }
}
