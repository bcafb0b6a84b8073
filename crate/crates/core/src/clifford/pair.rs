//! The pair form `A(a, b) = [[a, b], [π(b), π(a)]]` of `Cl(1, n+1)` over
//! `C = Cl(n+1, 0)`.

use super::{CliffordError, Multivector, Signature};
use crate::tol;

#[derive(Debug, Clone, PartialEq)]
pub struct PairElement {
    pub a: Multivector,
    pub b: Multivector,
}

impl PairElement {
    pub fn new(a: Multivector, b: Multivector) -> Result<Self, CliffordError> {
        if a.signature() != b.signature() {
            return Err(CliffordError::SignatureMismatch {
                left: a.signature(),
                right: b.signature(),
            });
        }
        Ok(Self { a, b })
    }

    pub fn one(sig: Signature) -> Self {
        Self {
            a: Multivector::one(sig),
            b: Multivector::zero(sig),
        }
    }

    /// Image of the paravector `(x0, v)` of `V¹` under the Clifford map
    /// `γ(x0, v) = [[0, x0 + v], [x0 - v, 0]]`.
    pub fn from_paravector(sig: Signature, x0: f64, v: &[f64]) -> Result<Self, CliffordError> {
        Ok(Self {
            a: Multivector::zero(sig),
            b: Multivector::paravector(sig, x0, v)?,
        })
    }

    pub fn signature(&self) -> Signature {
        self.a.signature()
    }

    /// `(a, b)(a', b') = (a a' + b π(b'), a b' + b π(a'))`.
    pub fn product(&self, other: &Self) -> Result<Self, CliffordError> {
        if self.signature() != other.signature() {
            return Err(CliffordError::SignatureMismatch {
                left: self.signature(),
                right: other.signature(),
            });
        }
        let a = &(&self.a * &other.a) + &(&self.b * &other.b.pi());
        let b = &(&self.a * &other.b) + &(&self.b * &other.a.pi());
        Ok(Self { a, b })
    }

    /// Principal automorphism of the big algebra: `(a, b) ↦ (a, -b)`.
    pub fn pi(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: self.b.scale(-1.0),
        }
    }

    /// Principal anti-automorphism of the big algebra: `(a, b) ↦ (ν(a), τ(b))`.
    pub fn tau(&self) -> Self {
        Self {
            a: self.a.nu(),
            b: self.b.tau(),
        }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.a.distance(&other.a).max(self.b.distance(&other.b))
    }

    /// Embed an element of `Cl(1, n+1)` (generator `e0` first, squaring to
    /// `+1`, then `e1 … e_{n+1}` squaring to `-1`) as the algebra homomorphism
    /// extending the Clifford map on generators.
    pub fn embed(x: &Multivector) -> Result<Self, CliffordError> {
        let big = x.signature();
        if big.p() != 1 || big.dim() < 2 {
            return Err(CliffordError::SignatureMismatch {
                left: big,
                right: Signature::new(1, big.dim().saturating_sub(1))?,
            });
        }
        let sig = Signature::euclidean(big.dim() - 1)?;
        let mut acc = Self {
            a: Multivector::zero(sig),
            b: Multivector::zero(sig),
        };
        for (mask, &c) in x.coeffs().iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let mut term = Self::one(sig);
            for bit in 0..big.dim() {
                if mask & (1 << bit) == 0 {
                    continue;
                }
                let generator = if bit == 0 {
                    Self::from_paravector(sig, 1.0, &vec![0.0; sig.dim()])?
                } else {
                    Self {
                        a: Multivector::zero(sig),
                        b: Multivector::blade(sig, 1 << (bit - 1), 1.0),
                    }
                };
                term = term.product(&generator)?;
            }
            acc.a += &term.a.scale(c);
            acc.b += &term.b.scale(c);
        }
        Ok(acc)
    }

    /// `ψ⁺`: the top-left entry of an even pair (`b = 0`).
    pub fn psi_plus(&self) -> Result<Multivector, CliffordError> {
        let scale = self.a.max_abs().max(1.0);
        if self.b.max_abs() > tol::ALGEBRA * scale {
            return Err(CliffordError::NotEven);
        }
        Ok(self.a.clone())
    }
}

/// `ψ⁺` on the blade basis of the even part of `Cl(1, n+1)`:
/// `e_{i1}…e_{i2k} ↦ (-1)^k e_{i1}…e_{i2k}` and
/// `e0 e_{i1}…e_{i2k+1} ↦ (-1)^k e_{i1}…e_{i2k+1}`.
pub fn psi_plus_basis(x: &Multivector) -> Result<Multivector, CliffordError> {
    let big = x.signature();
    if big.p() != 1 || big.dim() < 2 {
        return Err(CliffordError::SignatureMismatch {
            left: big,
            right: Signature::new(1, big.dim().saturating_sub(1))?,
        });
    }
    let sig = Signature::euclidean(big.dim() - 1)?;
    let mut out = Multivector::zero(sig);
    for (mask, &c) in x.coeffs().iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        if mask.count_ones() % 2 == 1 {
            return Err(CliffordError::OddPart);
        }
        let spatial = mask >> 1;
        let k = spatial.count_ones() / 2;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        out.set_coeff(spatial, out.coeff(spatial) + sign * c);
    }
    Ok(out)
}
