use super::{CliffordError, Multivector, Signature};
use crate::tol;

/// Element `x0 + x` of `R ⊕ V` in the Euclidean algebra `Cl(n, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Paravector {
    pub x0: f64,
    pub x: Vec<f64>,
}

impl Paravector {
    pub fn new(x0: f64, x: Vec<f64>) -> Self {
        Self { x0, x }
    }

    /// `P(x) = 1 + x`, the paravector attached to a point of the closed ball.
    pub fn of_point(x: &[f64]) -> Self {
        Self::new(1.0, x.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// `Δ = x0² - |x|²`.
    pub fn delta(&self) -> f64 {
        self.x0 * self.x0 - self.x.iter().map(|v| v * v).sum::<f64>()
    }

    pub fn to_multivector(&self) -> Result<Multivector, CliffordError> {
        Multivector::paravector(Signature::euclidean(self.dim())?, self.x0, &self.x)
    }

    /// Reads grades 0 and 1 of `m`; `None` if higher grades are present.
    pub fn from_multivector(m: &Multivector) -> Option<Self> {
        let scale = m.max_abs().max(1.0);
        if m.max_abs_above_grade_one() > tol::PARAVECTOR_LEAK * scale {
            return None;
        }
        Some(Self::new(m.trace(), m.vector_part()))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.x0 * s, self.x.iter().map(|v| v * s).collect())
    }

    /// Positive square root of `a = 1 + α n`, `0 <= α <= 1`.
    ///
    /// For `α < 1` this is `(1 + ε n)/√(1 + ε²)` with
    /// `ε = (1 - √(1 - α²))/α`; on the boundary `α = 1` it is `a/√2`.
    pub fn sqrt(&self) -> Result<Self, CliffordError> {
        let delta = self.delta();
        let err = CliffordError::NotAdmissible {
            trace: self.x0,
            delta,
        };
        if (self.x0 - 1.0).abs() > tol::ALGEBRA || delta < -tol::ALGEBRA {
            return Err(err);
        }
        let alpha = self.x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if alpha == 0.0 {
            return Ok(Self::new(1.0, vec![0.0; self.dim()]));
        }
        if delta <= 0.0 {
            return Ok(self.scale(std::f64::consts::FRAC_1_SQRT_2));
        }
        let eps = (1.0 - (1.0 - alpha * alpha).sqrt()) / alpha;
        let norm = 1.0 / (1.0 + eps * eps).sqrt();
        Ok(Self::new(
            norm,
            self.x.iter().map(|v| v / alpha * eps * norm).collect(),
        ))
    }
}
