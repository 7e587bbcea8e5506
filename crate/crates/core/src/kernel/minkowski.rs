//! Minkowski space R^{3,1} with signature (-+++).

use nalgebra::{Matrix4, Vector4};

pub type Vec4 = Vector4<f64>;

/// Minkowski inner product `-u0 v0 + u1 v1 + u2 v2 + u3 v3`.
#[inline]
pub fn mink_inner(u: &Vec4, v: &Vec4) -> f64 {
    -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3]
}

/// Minkowski squared norm `<u,u>`.
#[inline]
pub fn mink_norm_sq(u: &Vec4) -> f64 {
    mink_inner(u, u)
}

/// Flip the sign of the time component (the metric tensor J).
#[inline]
pub fn flip_time(u: &Vec4) -> Vec4 {
    Vec4::new(-u[0], u[1], u[2], u[3])
}

/// Euclidean determinant of four column vectors.
pub fn det4(a: &Vec4, b: &Vec4, c: &Vec4, d: &Vec4) -> f64 {
    Matrix4::from_columns(&[*a, *b, *c, *d]).determinant()
}

/// Minkowski cross product: the vector `n` with `<n, w> = det[a, b, c, w]`
/// for every `w`. It is Minkowski-orthogonal to `a`, `b` and `c`.
pub fn mink_cross(a: &Vec4, b: &Vec4, c: &Vec4) -> Vec4 {
    // Euclidean cofactors e_i = det[a, b, c, e_i]; then n = J e.
    let m = Matrix4::from_columns(&[*a, *b, *c, Vec4::zeros()]);
    let mut e = Vec4::zeros();
    for i in 0..4 {
        let minor = m.remove_row(i).remove_column(3);
        let sign = if (i + 3) % 2 == 0 { 1.0 } else { -1.0 };
        e[i] = sign * minor.determinant();
    }
    flip_time(&e)
}

/// Normalize a spacelike vector to Minkowski length one.
pub fn normalize_spacelike(u: &Vec4) -> Option<Vec4> {
    let n2 = mink_norm_sq(u);
    if n2 <= 0.0 || !n2.is_finite() {
        return None;
    }
    Some(u / n2.sqrt())
}

/// Pairwise summation with a Neumaier correction. Deterministic for a fixed
/// input order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature() {
        let e0 = Vec4::new(1.0, 0.0, 0.0, 0.0);
        let e1 = Vec4::new(0.0, 1.0, 0.0, 0.0);
        assert_eq!(mink_inner(&e0, &e0), -1.0);
        assert_eq!(mink_inner(&e1, &e1), 1.0);
        let u = Vec4::new(2.0, 1.0, 0.0, 0.0);
        assert_eq!(mink_inner(&u, &u), -3.0);
    }

    #[test]
    fn cross_is_determinant() {
        let a = Vec4::new(1.3, 0.2, -0.4, 0.7);
        let b = Vec4::new(2.0, 1.0, 0.5, -0.1);
        let c = Vec4::new(1.1, -0.3, 0.2, 0.3);
        let w = Vec4::new(0.4, 0.9, -1.2, 0.8);
        let n = mink_cross(&a, &b, &c);
        assert!((mink_inner(&n, &w) - det4(&a, &b, &c, &w)).abs() < 1e-12);
        assert!(mink_inner(&n, &a).abs() < 1e-12);
        assert!(mink_inner(&n, &b).abs() < 1e-12);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(xs), 2.0);
    }
}
