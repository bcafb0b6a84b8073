//! Real Clifford algebras `Cl(p, q)`, paravectors, the pair representation of
//! the even algebra of `Cl(1, n+1)`, spin-boosts and polar decomposition.

mod multivector;
mod pair;
mod paravector;
mod spin;

pub use multivector::{Involution, Multivector, Signature};
pub use pair::{psi_plus_basis, PairElement};
pub use paravector::Paravector;
pub use spin::{exp_boost, polar_decompose};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliffordError {
    #[error("signature ({p},{q}) exceeds the dimension cap p+q <= {cap}")]
    DimensionCap { p: usize, q: usize, cap: usize },
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },
    #[error("grade {grade} out of range 0..={max}")]
    GradeOutOfRange { grade: usize, max: usize },
    #[error("expected {expected} coefficients, got {got}")]
    Length { expected: usize, got: usize },
    #[error("generator index {0} out of range")]
    GeneratorIndex(usize),
    #[error("paravector square root needs Φ(a) = 1 and Δ(a) >= 0 (got Φ = {trace}, Δ = {delta})")]
    NotAdmissible { trace: f64, delta: f64 },
    #[error("axis is not a unit vector (|n| = {0})")]
    NonUnitAxis(f64),
    #[error("element has a nonzero odd part")]
    OddPart,
    #[error("pair element has a nonzero off-diagonal component")]
    NotEven,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("element is not in the spin group: {0}")]
    NotInGroup(&'static str),
}
