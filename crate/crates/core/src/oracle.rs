//! Slow, independent reference computations by numerical quadrature. These
//! share no code with the closed-form paths and exist to test them.

use crate::kernel::{Point, Vec4};

/// Tanh-sinh quadrature of `f` over `[a, b]`; tolerates integrable endpoint
/// singularities.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    use std::f64::consts::FRAC_PI_2;
    if a == b {
        return 0.0;
    }
    let half = (b - a) / 2.0;
    let h = 1.0 / 64.0;
    let mut sum = 0.0;
    let kmax = (4.5 / h) as i64;
    for k in -kmax..=kmax {
        let t = k as f64 * h;
        let u = FRAC_PI_2 * t.sinh();
        let w = FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
        // distance to the nearer endpoint, computed without cancellation
        let gap = 1.0 / (u.abs().exp() * u.cosh());
        if gap * half.abs() < 1e-300 || w < 1e-300 {
            continue;
        }
        let node = if u >= 0.0 { b - half * gap } else { a + half * gap };
        let fx = f(node);
        if fx.is_finite() {
            sum += w * fx;
        }
    }
    sum * h * half
}

/// `-∫_0^θ log|2 sin u| du` by quadrature, for `|θ| ≤ π`.
pub fn lobachevsky_quadrature(theta: f64) -> f64 {
    -tanh_sinh(|u| (2.0 * u.sin()).abs().ln(), 0.0, theta)
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push(((1.0 - x) / 2.0, 1.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Volume of the geodesic tetrahedron with four finite vertices, by
/// integrating `du dv dh / h³` in upper half-space over its image.
///
/// The tetrahedron is a Euclidean simplex in the Klein model; the integral is
/// pulled back to it through the Klein-to-upper-half-space map and evaluated
/// with a collapsed product Gauss rule. Returns the unsigned volume.
pub fn tet_volume_quadrature(vertices: &[Point; 4], order: usize) -> f64 {
    let k: Vec<[f64; 3]> = vertices.iter().map(|p| p.to_klein()).collect();
    let e = |i: usize, j: usize| k[i][j] - k[0][j];
    let edge = nalgebra::Matrix3::new(e(1, 0), e(2, 0), e(3, 0), e(1, 1), e(2, 1), e(3, 1), e(1, 2), e(2, 2), e(3, 2));
    let jac_simplex = edge.determinant().abs();
    let rule = gauss_legendre(order);
    let mut total = 0.0;
    for &(a, wa) in &rule {
        for &(b, wb) in &rule {
            for &(c, wc) in &rule {
                // Duffy map from the cube onto the reference simplex
                let l1 = a;
                let l2 = (1.0 - a) * b;
                let l3 = (1.0 - a) * (1.0 - b) * c;
                let jac_duffy = (1.0 - a).powi(2) * (1.0 - b);
                let q = [
                    k[0][0] + l1 * e(1, 0) + l2 * e(2, 0) + l3 * e(3, 0),
                    k[0][1] + l1 * e(1, 1) + l2 * e(2, 1) + l3 * e(3, 1),
                    k[0][2] + l1 * e(1, 2) + l2 * e(2, 2) + l3 * e(3, 2),
                ];
                total += wa * wb * wc * jac_duffy * uhs_density(q);
            }
        }
    }
    total * jac_simplex
}

/// `|det ∂(u,v,h)/∂k| / h³` at the Klein point `k`.
fn uhs_density(k: [f64; 3]) -> f64 {
    let w = 1.0 - k[2];
    let s = (1.0 - k[0] * k[0] - k[1] * k[1] - k[2] * k[2]).sqrt();
    let h = s / w;
    let du = [1.0 / w, 0.0, k[0] / (w * w)];
    let dv = [0.0, 1.0 / w, k[1] / (w * w)];
    let dh = [-k[0] / (s * w), -k[1] / (s * w), -k[2] / (s * w) + s / (w * w)];
    let m = nalgebra::Matrix3::new(du[0], du[1], du[2], dv[0], dv[1], dv[2], dh[0], dh[1], dh[2]);
    m.determinant().abs() / h.powi(3)
}

/// Hyperbolic length of the Euclidean segment from `p` to `q` in upper
/// half-space coordinates, integrating `|dx| / h` along the geodesic through
/// them. Used to cross-check the closed-form distance.
pub fn geodesic_length_quadrature(p: &Point, q: &Point) -> f64 {
    // the geodesic is a straight chord in the Klein model; integrate the
    // upper half-space line element along it
    let a = p.to_klein();
    let b = q.to_klein();
    let speed = |t: f64| {
        let k = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), a[2] + t * (b[2] - a[2])];
        let dk = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let w = 1.0 - k[2];
        let s = (1.0 - k[0] * k[0] - k[1] * k[1] - k[2] * k[2]).sqrt();
        let h = s / w;
        let du = dk[0] / w + k[0] * dk[2] / (w * w);
        let dv = dk[1] / w + k[1] * dk[2] / (w * w);
        let dh = -(k[0] * dk[0] + k[1] * dk[1] + k[2] * dk[2]) / (s * w) + s * dk[2] / (w * w);
        (du * du + dv * dv + dh * dh).sqrt() / h
    };
    gauss_legendre(40).iter().map(|&(t, w)| w * speed(t)).sum()
}

/// Sanity helper for tests: a hyperboloid vector from Klein coordinates.
pub fn klein_vector(k: [f64; 3]) -> Vec4 {
    let s = (1.0 - k[0] * k[0] - k[1] * k[1] - k[2] * k[2]).sqrt();
    Vec4::new(1.0, k[0], k[1], k[2]) / s
}
