use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const SERIES_TERMS: usize = 40;

/// `ζ(2k) / (k (2k+1) (2π)^{2k})` for `k = 1..=SERIES_TERMS`.
fn clausen_coefficients() -> &'static [f64; SERIES_TERMS] {
    static COEFFS: OnceLock<[f64; SERIES_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut out = [0.0; SERIES_TERMS];
        let two_pi = 2.0 * PI;
        for (i, c) in out.iter_mut().enumerate() {
            let k = (i + 1) as i32;
            let zeta = match k {
                1 => PI.powi(2) / 6.0,
                2 => PI.powi(4) / 90.0,
                3 => PI.powi(6) / 945.0,
                4 => PI.powi(8) / 9450.0,
                _ => (1..=64).rev().map(|n| (n as f64).powi(-2 * k)).sum(),
            };
            *c = zeta / (f64::from(k) * f64::from(2 * k + 1) * two_pi.powi(2 * k));
        }
        out
    })
}

/// Clausen function `Cl2(x) = -∫_0^x log|2 sin(u/2)| du` for `|x| ≤ π`.
fn clausen_reduced(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let x2 = x * x;
    let mut pow = x;
    let mut tail = 0.0;
    for c in clausen_coefficients() {
        pow *= x2;
        tail += c * pow;
    }
    x - x * x.abs().ln() + tail
}

/// Lobachevsky function `Λ(θ) = -∫_0^θ log|2 sin u| du`.
///
/// Odd and π-periodic. Evaluated as `Cl2(2θ)/2` after reducing `θ` into
/// `[-π/2, π/2]`, using the power series of the Clausen function about 0
/// (Bernoulli/zeta coefficients), which converges like `4^{-k}` on that
/// range.
pub fn lobachevsky(theta: f64) -> f64 {
    if !theta.is_finite() {
        return f64::NAN;
    }
    let mut t = theta - PI * (theta / PI).round();
    if t > PI / 2.0 {
        t -= PI;
    } else if t < -PI / 2.0 {
        t += PI;
    }
    0.5 * clausen_reduced(2.0 * t)
}

/// `Λ(π/3)`, a third of the volume of the regular ideal tetrahedron.
pub fn lobachevsky_pi_3() -> f64 {
    lobachevsky(PI / 3.0)
}

/// Volume of the regular ideal tetrahedron, the largest of all hyperbolic
/// tetrahedra.
pub fn regular_ideal_volume() -> f64 {
    3.0 * lobachevsky_pi_3()
}

/// Volume of the ideal tetrahedron with dihedral angles `α, β, γ` at the
/// three edges meeting a vertex.
pub fn ideal_tet_volume(alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    let sum = alpha + beta + gamma;
    if !(alpha > 0.0 && beta > 0.0 && gamma > 0.0) || (sum - PI).abs() > 1e-9 {
        return Err(Error::AngleSum(sum));
    }
    Ok(lobachevsky(alpha) + lobachevsky(beta) + lobachevsky(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_and_known_values() {
        assert_eq!(lobachevsky(0.0), 0.0);
        assert!(lobachevsky(PI / 2.0).abs() < 1e-15);
        // regular ideal tetrahedron volume
        assert!((regular_ideal_volume() - 1.014_941_606_409_653_6).abs() < 1e-15);
        // Λ(π/6) = (3/2) Λ(π/3)
        assert!((lobachevsky(PI / 6.0) - 1.5 * lobachevsky_pi_3()).abs() < 1e-15);
    }

    #[test]
    fn odd_and_periodic() {
        for i in 0..50 {
            let t = -4.0 + 0.17 * f64::from(i);
            assert!((lobachevsky(-t) + lobachevsky(t)).abs() < 1e-14);
            assert!((lobachevsky(t + PI) - lobachevsky(t)).abs() < 1e-13);
        }
    }

    #[test]
    fn ideal_angle_sum_rejected() {
        assert!(matches!(ideal_tet_volume(1.0, 1.0, 1.0), Err(Error::AngleSum(_))));
        assert!(ideal_tet_volume(1e-6, 1.5, PI - 1.5 - 1e-6).unwrap() < 1e-4);
    }
}
