use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Default base step for finite differences.
pub const DEFAULT_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdOptions {
    pub h: f64,
    /// Forward differences on `[t0, t0 + 8h]` when set; central differences
    /// on `[t0 - 4h, t0 + 4h]` otherwise.
    pub one_sided: bool,
}

impl Default for FdOptions {
    fn default() -> Self {
        FdOptions { h: DEFAULT_STEP, one_sided: true }
    }
}

impl FdOptions {
    pub fn with_step(h: f64) -> Self {
        FdOptions { h, ..Default::default() }
    }

    /// Parameter values at which the path is sampled, `t0` first.
    pub fn sample_points(&self, t0: f64) -> Vec<f64> {
        let h = self.h;
        if self.one_sided {
            vec![t0, t0 + h, t0 + 2.0 * h, t0 + 4.0 * h, t0 + 8.0 * h]
        } else {
            vec![t0, t0 - h, t0 + h, t0 - 2.0 * h, t0 + 2.0 * h, t0 - 4.0 * h, t0 + 4.0 * h]
        }
    }

    /// Largest parameter offset from `t0` that will be sampled, on each side.
    pub fn reach(&self) -> (f64, f64) {
        if self.one_sided {
            (0.0, 8.0 * self.h)
        } else {
            (4.0 * self.h, 4.0 * self.h)
        }
    }
}

/// A derivative estimate with the difference between the two most refined
/// extrapolation levels as its error indicator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdEstimate {
    pub value: f64,
    pub error: f64,
    pub h: f64,
}

/// Richardson tableau over difference quotients at steps `h, 2h, 4h, ...`
/// whose error expands in powers of `h^p`. Returns the most refined entry
/// and the sizes of the successive corrections `|R[0][k] - R[0][k-1]|`.
fn richardson(quotients: &[f64], p: i32) -> (f64, Vec<f64>) {
    let mut level: Vec<f64> = quotients.to_vec();
    let mut best = level[0];
    let mut corrections = Vec::new();
    let mut k = 1;
    while level.len() > 1 {
        let factor = 2f64.powi(p * k);
        level = level.windows(2).map(|w| (factor * w[0] - w[1]) / (factor - 1.0)).collect();
        corrections.push((level[0] - best).abs());
        best = level[0];
        k += 1;
    }
    (best, corrections)
}

/// On a smooth path each correction is smaller than the last by roughly a
/// power of `h`; corrections that stop shrinking mean the expansion the
/// extrapolation relies on does not exist.
fn check_divergence(value: f64, corrections: &[f64]) -> Result<f64> {
    let last = *corrections.last().unwrap_or(&0.0);
    let floor = 1e-8 * (1.0 + value.abs());
    if corrections.len() >= 2 && last > floor {
        let prev = corrections[corrections.len() - 2];
        if last > 0.25 * prev {
            return Err(Error::TableauDivergence { indicator: last });
        }
    }
    Ok(last)
}

/// Derivatives of several scalar paths sampled together: `samples[i]` holds
/// the values at `opts.sample_points(t0)[i]`.
pub fn fd_from_samples(samples: &[Vec<f64>], opts: &FdOptions) -> Result<Vec<FdEstimate>> {
    let n = samples.first().map_or(0, Vec::len);
    let h = opts.h;
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let v: Vec<f64> = samples.iter().map(|s| s[j]).collect();
        if let Some(bad) = v.iter().find(|x| !x.is_finite()) {
            return Err(Error::NonFinite(*bad));
        }
        let (value, corrections) = if opts.one_sided {
            let q: Vec<f64> = [1.0, 2.0, 4.0, 8.0]
                .iter()
                .enumerate()
                .map(|(i, s)| (v[i + 1] - v[0]) / (s * h))
                .collect();
            richardson(&q, 1)
        } else {
            let q: Vec<f64> = [1.0, 2.0, 4.0]
                .iter()
                .enumerate()
                .map(|(i, s)| (v[2 * i + 2] - v[2 * i + 1]) / (2.0 * s * h))
                .collect();
            richardson(&q, 2)
        };
        let error = check_divergence(value, &corrections)?;
        out.push(FdEstimate { value, error, h });
    }
    Ok(out)
}

/// Richardson-extrapolated finite-difference derivative of `f` at `t0`.
///
/// One-sided mode combines forward quotients at `h, 2h, 4h, 8h` into an
/// `O(h^4)` estimate, which is the right derivative. A tableau whose last
/// correction is larger than the raw spread of the quotients is reported as
/// divergence instead of being returned.
pub fn fd_derivative<F>(f: F, t0: f64, opts: &FdOptions) -> Result<FdEstimate>
where
    F: Fn(f64) -> Result<f64>,
{
    let samples = opts
        .sample_points(t0)
        .into_iter()
        .map(|t| f(t).map(|x| vec![x]))
        .collect::<Result<Vec<_>>>()?;
    Ok(fd_from_samples(&samples, opts)?[0])
}

/// The representative of `angle + 2πk` nearest to `reference`.
pub fn unwrap_near(angle: f64, reference: f64) -> f64 {
    angle - 2.0 * PI * ((angle - reference) / (2.0 * PI)).round()
}

/// Replaces every sampled angle by its branch nearest the value at `t0`
/// (row 0). A jump of more than `π/2` after unwrapping means the path is
/// not continuous at this resolution.
pub fn unwrap_samples(samples: &mut [Vec<f64>]) -> Result<()> {
    let Some((first, rest)) = samples.split_first_mut() else {
        return Ok(());
    };
    for row in rest {
        for (x, r) in row.iter_mut().zip(first.iter()) {
            *x = unwrap_near(*x, *r);
            if (*x - r).abs() > PI / 2.0 {
                return Err(Error::BranchJump(format!("angle moved from {r} to {x}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(x: f64) -> Result<f64> {
        Ok(x)
    }

    #[test]
    fn constants_quadratics_and_sine() {
        let o = FdOptions::default();
        assert_eq!(fd_derivative(|_| ok(3.0), 0.0, &o).unwrap().value, 0.0);
        assert!(fd_derivative(|t| ok(t * t), 0.0, &o).unwrap().value.abs() < 1e-10);
        assert!((fd_derivative(|t| ok(t.sin()), 0.3, &o).unwrap().value - 0.3f64.cos()).abs() < 1e-9);
        let c = FdOptions { one_sided: false, ..o };
        assert!((fd_derivative(|t| ok(t.sin()), 0.3, &c).unwrap().value - 0.3f64.cos()).abs() < 1e-10);
    }

    #[test]
    fn cubic_is_exact() {
        let o = FdOptions::with_step(1e-3);
        let d = fd_derivative(|t| ok(1.0 - 2.0 * t + 0.5 * t * t - 3.0 * t * t * t), 0.2, &o).unwrap();
        assert!((d.value - (-2.0 + 0.2 - 9.0 * 0.04)).abs() < 1e-10);
    }

    #[test]
    fn square_root_cusp_is_reported() {
        let r = fd_derivative(|t| ok(t.sqrt()), 0.0, &FdOptions::default());
        assert!(matches!(r, Err(Error::TableauDivergence { .. })), "{r:?}");
        assert!(matches!(fd_derivative(|_| ok(f64::NAN), 0.0, &FdOptions::default()), Err(Error::NonFinite(_))));
    }

    #[test]
    fn unwrapping() {
        assert!((unwrap_near(-PI + 0.01, PI - 0.01) - (PI + 0.01)).abs() < 1e-15);
        let mut s = vec![vec![PI - 0.001], vec![-PI + 0.001]];
        unwrap_samples(&mut s).unwrap();
        assert!((s[1][0] - (PI + 0.001)).abs() < 1e-12);
    }
}
