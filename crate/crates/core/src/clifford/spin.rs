use super::{CliffordError, Multivector, Paravector, Signature};
use crate::tol;

/// Spin-boost `exp(η n / 2) = cosh(η/2) + sinh(η/2) n` in `Cl(n+1, 0)`.
pub fn exp_boost(eta: f64, axis: &[f64]) -> Result<Multivector, CliffordError> {
    let norm = axis.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > tol::UNIT_NORM {
        return Err(CliffordError::NonUnitAxis(norm));
    }
    let (s, c) = ((0.5 * eta).sinh(), (0.5 * eta).cosh());
    let v: Vec<f64> = axis.iter().map(|n| s * n).collect();
    Multivector::paravector(Signature::euclidean(axis.len())?, c, &v)
}

/// Polar decomposition `g = m u` of an element of the spin group of
/// `Cl(n+1, 0)`, with `m` a positive spin-boost and `u uᵗ = 1`.
pub fn polar_decompose(g: &Multivector) -> Result<(Multivector, Multivector), CliffordError> {
    let sig = g.signature();
    if sig.q() != 0 {
        return Err(CliffordError::NotInGroup("signature is not Euclidean"));
    }
    let delta = g.norm_delta();
    if delta.max_abs_non_scalar() > tol::ALGEBRA || (delta.trace() - 1.0).abs() > tol::ALGEBRA {
        return Err(CliffordError::NotInGroup("Δ(g) != 1"));
    }
    if !g.is_paravector_preserving() {
        return Err(CliffordError::NotInGroup("g V¹ gᵗ is not contained in V¹"));
    }
    let ggt = g * &g.tau();
    let square = Paravector::from_multivector(&ggt)
        .ok_or(CliffordError::NotInGroup("g gᵗ is not a paravector"))?;
    if square.x0 <= 0.0 {
        return Err(CliffordError::NotInGroup("g gᵗ is not positive"));
    }
    // g gᵗ = x0 (1 + tanh(η) n); the root of the bracket times √x0.
    let normalized = square.scale(1.0 / square.x0);
    let root = normalized.sqrt()?.scale(square.x0.sqrt());
    let m = root.to_multivector()?;
    let u = &m.inverse()? * g;
    Ok((m, u))
}
