//! Restriction of the transfer operator to trace functions
//! `f_a(x) = Φ(a (1 + x))`, `a ∈ L = span{1, e₁, …, e_{n+1}}`:
//! `V(a) = 1/(N(1+α²)) Σᵢ P(αnᵢ) a P(αnᵢ)` with `P(αn) = 1 + αn`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::MarkovError;
use crate::clifford::{Multivector, Signature};
use crate::ifs::IfsSystem;
use crate::polytopes::check_balanced;
use crate::tol;

/// Matrix of `V` on the basis `{1, e₁, …, e_{n+1}}`; column `j` is `V` of
/// basis element `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceOperator {
    pub matrix: DMatrix<f64>,
}

impl TraceOperator {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, a: &[f64]) -> Vec<f64> {
        (&self.matrix * DVector::from_column_slice(a)).iter().copied().collect()
    }

    /// The `(n+1) × (n+1)` block acting on vector parts.
    pub fn vector_block(&self) -> DMatrix<f64> {
        let d = self.dim() - 1;
        self.matrix.view((1, 1), (d, d)).into_owned()
    }

    /// Eigenvalues of the vector block, ascending. The block is symmetric.
    pub fn vector_eigenvalues(&self) -> Vec<f64> {
        let b = self.vector_block();
        let sym = 0.5 * (&b + b.transpose());
        let mut ev: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// Assembles `V` from Clifford products in `Cl(n+1, 0)`.
pub fn trace_operator(sys: &IfsSystem) -> Result<TraceOperator, MarkovError> {
    let (balanced, residual) = check_balanced(sys.config());
    if !balanced {
        return Err(MarkovError::Unbalanced(residual));
    }
    let d = sys.ambient_dim();
    let sig = Signature::euclidean(d).expect("ambient dimension within the algebra cap");
    let a = sys.alpha();
    let ps: Vec<Multivector> = sys
        .config()
        .vertices()
        .iter()
        .map(|n| {
            let v: Vec<f64> = n.iter().map(|c| a * c).collect();
            Multivector::paravector(sig, 1.0, &v).expect("dimension checked")
        })
        .collect();
    let z = sys.normalization();
    let mut matrix = DMatrix::zeros(d + 1, d + 1);
    for col in 0..=d {
        let basis = if col == 0 {
            Multivector::one(sig)
        } else {
            Multivector::blade(sig, 1 << (col - 1), 1.0)
        };
        let mut acc = Multivector::zero(sig);
        for p in &ps {
            acc += &(&(p * &basis) * p);
        }
        matrix[(0, col)] = acc.coeff(0) / z;
        for row in 1..=d {
            matrix[(row, col)] = acc.coeff(1 << (row - 1)) / z;
        }
    }
    Ok(TraceOperator { matrix })
}

/// Result of the power iteration `a ← V a`.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPoint {
    pub element: Vec<f64>,
    pub iterations: usize,
    /// Fitted geometric rate of `|a_{k+1} - a_k|`; 0 when converged at once.
    pub rate: f64,
}

pub fn trace_fixed_point(op: &TraceOperator, a0: &[f64]) -> Result<FixedPoint, MarkovError> {
    let mut a = a0.to_vec();
    let mut deltas = Vec::new();
    for it in 0..tol::FIXED_POINT_MAX_ITER {
        let next = op.apply(&a);
        let delta = next
            .iter()
            .zip(&a)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        a = next;
        deltas.push(delta);
        if delta < tol::FIXED_POINT {
            return Ok(FixedPoint {
                element: a,
                iterations: it + 1,
                rate: fitted_rate(&deltas),
            });
        }
    }
    Err(MarkovError::NotConverged(tol::FIXED_POINT_MAX_ITER))
}

/// `exp` of the least-squares slope of `ln δ_k` against `k`, over steps
/// above the rounding floor.
fn fitted_rate(deltas: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = deltas
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 1e-11)
        .map(|(k, &d)| (k as f64, d.ln()))
        .collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let (sxy, sxx) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + (x - mx) * (y - my), b + (x - mx) * (x - mx)));
    (sxy / sxx).exp()
}
