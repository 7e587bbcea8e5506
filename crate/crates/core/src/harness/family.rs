use std::sync::Arc;

use crate::error::{Error, Result};
use crate::harness::fd::FdOptions;
use crate::kernel::Point;

type Evaluator<T> = Arc<dyn Fn(f64) -> Result<T> + Send + Sync>;

/// A one-parameter family `t ↦ T` on the closed interval `[0, ε]`.
pub struct DeformationFamily<T> {
    pub label: String,
    pub epsilon: f64,
    /// Polynomial degree of the coordinate paths, when known.
    pub degree: Option<u32>,
    eval: Evaluator<T>,
}

impl<T> Clone for DeformationFamily<T> {
    fn clone(&self) -> Self {
        DeformationFamily {
            label: self.label.clone(),
            epsilon: self.epsilon,
            degree: self.degree,
            eval: Arc::clone(&self.eval),
        }
    }
}

impl<T> std::fmt::Debug for DeformationFamily<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DeformationFamily")
            .field("label", &self.label)
            .field("epsilon", &self.epsilon)
            .field("degree", &self.degree)
            .finish_non_exhaustive()
    }
}

impl<T: 'static> DeformationFamily<T> {
    pub fn new<F>(label: impl Into<String>, epsilon: f64, degree: Option<u32>, f: F) -> Self
    where
        F: Fn(f64) -> Result<T> + Send + Sync + 'static,
    {
        DeformationFamily { label: label.into(), epsilon, degree, eval: Arc::new(f) }
    }

    /// A family that does not move.
    pub fn constant(label: impl Into<String>, value: T) -> Self
    where
        T: Clone + Send + Sync,
    {
        Self::new(label, 1.0, Some(0), move |_| Ok(value.clone()))
    }

    pub fn at(&self, t: f64) -> Result<T> {
        let slack = 1e-12 * self.epsilon.max(1.0);
        if !(t >= -slack && t <= self.epsilon + slack) {
            return Err(Error::Precondition(format!(
                "parameter {t} outside [0, {}] for family {}",
                self.epsilon, self.label
            )));
        }
        (self.eval)(t)
    }

    /// Checks that a finite-difference stencil at `t0` stays in the domain.
    pub fn check_stencil(&self, t0: f64, opts: &FdOptions) -> Result<()> {
        let (back, fwd) = opts.reach();
        if t0 - back < -1e-12 || t0 + fwd > self.epsilon + 1e-12 {
            return Err(Error::Precondition(format!(
                "stencil [{}, {}] leaves [0, {}]",
                t0 - back,
                t0 + fwd,
                self.epsilon
            )));
        }
        Ok(())
    }

    pub fn map<U: 'static, G>(&self, g: G) -> DeformationFamily<U>
    where
        G: Fn(T) -> Result<U> + Send + Sync + 'static,
    {
        let inner = Arc::clone(&self.eval);
        DeformationFamily {
            label: self.label.clone(),
            epsilon: self.epsilon,
            degree: self.degree,
            eval: Arc::new(move |t| inner(t).and_then(&g)),
        }
    }
}

/// Polynomial curve `t ↦ Σ c_k t^k` in the spatial hyperboloid coordinates
/// `(x1, x2, x3)`, lifted to the hyperboloid.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PolyPath {
    pub coeffs: Vec<[f64; 3]>,
}

impl PolyPath {
    pub fn constant(p: [f64; 3]) -> Self {
        PolyPath { coeffs: vec![p] }
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.len().saturating_sub(1) as u32
    }

    pub fn spatial_at(&self, t: f64) -> [f64; 3] {
        let mut out = [0.0; 3];
        for c in self.coeffs.iter().rev() {
            for i in 0..3 {
                out[i] = out[i] * t + c[i];
            }
        }
        out
    }

    pub fn at(&self, t: f64) -> Point {
        Point::from_spatial(self.spatial_at(t))
    }
}
