use nalgebra::{Rotation3, Vector3};
use num_complex::Complex64;

use super::lobachevsky::lobachevsky;
use crate::kernel::{compensated_sum, det4, mink_cross, mink_inner, normalize_spacelike, Vec4, Vertex};

/// Relative size of `det[v0..v3]` below which a tetrahedron is treated as flat.
pub const FLAT_TOL: f64 = 1e-12;

/// A geodesic tetrahedron with its chain coefficient `±1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tetrahedron {
    pub vertices: [Vertex; 4],
    pub sign: i32,
}

impl Tetrahedron {
    pub fn new(vertices: [Vertex; 4]) -> Self {
        Tetrahedron { vertices, sign: 1 }
    }

    pub fn with_sign(vertices: [Vertex; 4], sign: i32) -> Self {
        Tetrahedron { vertices, sign }
    }

    pub fn vectors(&self) -> [Vec4; 4] {
        self.vertices.map(|v| v.vector())
    }

    /// `+1`, `-1`, or `0` for a flat tetrahedron.
    pub fn orientation(&self) -> i32 {
        orientation(&self.vectors())
    }
}

fn unit(v: &Vec4) -> Vec4 {
    v / v.norm()
}

/// Sign of `det[v0, v1, v2, v3]`, with 0 for nearly flat tuples.
pub fn orientation(v: &[Vec4; 4]) -> i32 {
    let d = det4(&unit(&v[0]), &unit(&v[1]), &unit(&v[2]), &unit(&v[3]));
    if d.abs() <= FLAT_TOL {
        0
    } else if d > 0.0 {
        1
    } else {
        -1
    }
}

/// Boost taking the unit timelike vector `a` to the base point.
fn boost_to_origin(a: &Vec4) -> impl Fn(&Vec4) -> Vec4 {
    let b = Vec4::new(1.0, 0.0, 0.0, 0.0);
    let s = a + b;
    let denom = 1.0 - mink_inner(a, &b);
    let a = *a;
    move |x: &Vec4| x + s * (mink_inner(&s, x) / denom) - b * (2.0 * mink_inner(&a, x))
}

fn candidate_directions() -> Vec<Vector3<f64>> {
    let mut out = Vec::with_capacity(26);
    for i in -1..=1 {
        for j in -1..=1 {
            for k in -1..=1 {
                if (i, j, k) != (0, 0, 0) {
                    out.push(Vector3::new(f64::from(i), f64::from(j), f64::from(k)).normalize());
                }
            }
        }
    }
    out
}

/// Right-triangle piece of a vertical prism over a hemisphere: the region
/// above the hemisphere of radius `R` centred at `c`, over the planar right
/// triangle with vertex `c`, angle `α` there and right angle at distance
/// `a = R cos δ` from `c`.
fn right_prism(alpha: f64, delta: f64) -> f64 {
    use std::f64::consts::FRAC_PI_2;
    0.25 * (lobachevsky(alpha + delta) - lobachevsky(delta - alpha) + 2.0 * lobachevsky(FRAC_PI_2 - alpha))
}

/// Signed volume of the region between the face through `z0, z1, z2`
/// (boundary projections of vertices lying on the hemisphere `|w - c|² + h² = R²`)
/// and `∞`; positive when `z0, z1, z2` run counterclockwise.
fn prism_over_face(z: [Complex64; 3], c: Complex64, r: f64) -> f64 {
    let mut parts = [0.0; 3];
    for e in 0..3 {
        let (zi, zj) = (z[e], z[(e + 1) % 3]);
        let d = zj - zi;
        if d.norm() == 0.0 {
            continue;
        }
        let t = ((c - zi) * d.conj()).re / d.norm_sqr();
        let foot = zi + d * t;
        let fc = foot - c;
        let a = fc.norm();
        if a <= 1e-15 * r {
            continue;
        }
        let delta = (r * r - a * a).max(0.0).sqrt().atan2(a);
        let ai = ((zi - c) / fc).arg();
        let aj = ((zj - c) / fc).arg();
        parts[e] = right_prism(aj, delta) - right_prism(ai, delta);
    }
    compensated_sum(parts)
}

/// Signed volume of the geodesic tetrahedron spanned by hyperboloid points
/// or future null vectors, positive when `det[v0..v3] > 0`.
///
/// The tetrahedron is moved so that its barycenter is the base point and an
/// ideal point far from all face planes sits at `∞` in upper half-space; it
/// is then the signed sum of the four vertical prisms over its faces, each
/// computed in closed form with the Lobachevsky function.
pub fn signed_volume_of(v: &[Vec4; 4]) -> f64 {
    if orientation(v) == 0 {
        return 0.0;
    }
    // barycenter, with null vectors scaled to x0 = 1
    let sum: Vec4 = v.iter().map(|x| x / x[0]).sum();
    let n2 = mink_inner(&sum, &sum);
    if !(n2 < 0.0) {
        return 0.0;
    }
    let center = sum / (-n2).sqrt();
    let boost = boost_to_origin(&center);
    let w: Vec<Vec4> = v.iter().map(|x| boost(x)).collect();

    let faces: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
    let mut normals = [Vec4::zeros(); 4];
    for (f, idx) in faces.iter().enumerate() {
        match normalize_spacelike(&mink_cross(&w[idx[0]], &w[idx[1]], &w[idx[2]])) {
            Some(n) => normals[f] = n,
            None => return 0.0,
        }
    }

    let score = |dir: &Vector3<f64>| {
        normals
            .iter()
            .map(|n| {
                let sp = Vector3::new(n[1], n[2], n[3]);
                (sp.dot(dir) - n[0]).abs() / sp.norm()
            })
            .fold(f64::INFINITY, f64::min)
    };
    let best = candidate_directions()
        .into_iter()
        .map(|d| (score(&d), d))
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, d)| d)
        .expect("non-empty candidate list");
    let up = Vector3::z();
    let rot = Rotation3::rotation_between(&best, &up)
        .unwrap_or_else(|| Rotation3::from_axis_angle(&Vector3::x_axis(), std::f64::consts::PI));
    let turn = |x: &Vec4| {
        let s = rot * Vector3::new(x[1], x[2], x[3]);
        Vec4::new(x[0], s[0], s[1], s[2])
    };

    let w: Vec<Vec4> = w.iter().map(turn).collect();
    let z: Vec<Complex64> = w.iter().map(|x| Complex64::new(x[1], x[2]) / (x[0] - x[3])).collect();
    let mut terms = [0.0; 4];
    for (f, idx) in faces.iter().enumerate() {
        let n = turn(&normals[f]);
        let k = n[3] - n[0];
        if k.abs() <= 1e-14 {
            continue;
        }
        let c = -Complex64::new(n[1], n[2]) / k;
        let r = 1.0 / k.abs();
        let sign = if f % 2 == 0 { 1.0 } else { -1.0 };
        terms[f] = sign * prism_over_face([z[idx[0]], z[idx[1]], z[idx[2]]], c, r);
    }
    -compensated_sum(terms)
}

/// Hyperbolic volume times the orientation sign of the vertex order, times
/// the stored chain sign. Flat tetrahedra give exactly 0.
pub fn tet_volume_signed(t: &Tetrahedron) -> f64 {
    f64::from(t.sign) * signed_volume_of(&t.vectors())
}
