use crate::kernel::{
    det4, geodesic_through, internal_angle, mink_inner, unit_tangent, IdealPoint, Point, Vec4, Vertex,
};
use crate::{Error, Result};

/// Bounds for [`theta_sum`]: `y` at least `floor` from the geodesics `p x`
/// and `q x`, and `d(y, p)`, `d(p, q)` at most `reach`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaBounds {
    pub floor: f64,
    pub reach: f64,
}

impl Default for ThetaBounds {
    fn default() -> Self {
        ThetaBounds { floor: super::APEX_FLOOR, reach: 10.0 }
    }
}

fn spherical_angle(at: &Vec4, u: &Vec4, v: &Vec4) -> Option<f64> {
    // angle at `at` between the great circles toward u and v
    let tu = u - at * mink_inner(u, at);
    let tv = v - at * mink_inner(v, at);
    let (nu, nv) = (mink_inner(&tu, &tu).sqrt(), mink_inner(&tv, &tv).sqrt());
    if nu < 1e-300 || nv < 1e-300 {
        return None;
    }
    let c = mink_inner(&tu, &tv) / (nu * nv);
    let rest = tv / nv - tu / nu * c;
    Some(mink_inner(&rest, &rest).max(0.0).sqrt().atan2(c))
}

/// Sum of the internal dihedral angles along `p y` and `q y` of the
/// tetrahedron `p q x y`, in the form `π + area - angle at v_x` of the
/// triangle `v_x v_p v_q` on the unit sphere at `y`. It stays defined when
/// `p`, `q`, `y` are collinear, and equals `π` when `q = p`.
pub fn theta_sum(p: &Point, q: &Point, x: &IdealPoint, y: &Point, bounds: ThetaBounds) -> Result<f64> {
    let xv = x.null_vector();
    for a in [p, q] {
        let d = geodesic_through(&Vertex::Finite(*a), &Vertex::Ideal(*x))?.distance_to(y);
        if d < bounds.floor {
            return Err(Error::ApexTooClose { distance: d, floor: bounds.floor });
        }
    }
    let far = y.dist(p).max(p.dist(q));
    if far > bounds.reach {
        return Err(Error::Precondition(format!("distance {far} exceeds {}", bounds.reach)));
    }
    let vx = unit_tangent(y, &xv);
    let vp = unit_tangent(y, p.coords());
    let vq = unit_tangent(y, q.coords());
    let triple = det4(y.coords(), &vx, &vp, &vq).abs();
    let denom = 1.0 + mink_inner(&vx, &vp) + mink_inner(&vp, &vq) + mink_inner(&vq, &vx);
    let area = 2.0 * triple.atan2(denom);
    let angle_x = spherical_angle(&vx, &vp, &vq).unwrap_or(0.0);
    Ok(std::f64::consts::PI + area - angle_x)
}

/// The same sum from the two dihedral angles of the tetrahedron; needs
/// `p`, `q`, `y` not collinear.
pub fn theta_direct(p: &Point, q: &Point, x: &IdealPoint, y: &Point) -> Result<f64> {
    let xv = x.null_vector();
    let a = internal_angle(y, p.coords(), q.coords(), &xv)?;
    let b = internal_angle(y, q.coords(), p.coords(), &xv)?;
    Ok(a + b)
}
