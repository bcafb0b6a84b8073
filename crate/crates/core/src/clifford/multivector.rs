//! Dense multivectors of a real Clifford algebra `Cl(p, q)`.
//!
//! Blades are addressed by bitmask: bit `i` set means generator `e_{i+1}` is a
//! factor, in canonical ascending order. The first `p` generators square to
//! `+1`, the remaining `q` to `-1`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::{DMatrix, SymmetricEigen};

use super::CliffordError;
use crate::tol;

/// Signature `(p, q)` of the quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    /// Largest supported `p + q`; dense storage needs `2^(p+q)` coefficients.
    pub const MAX_DIM: usize = 12;

    pub fn new(p: usize, q: usize) -> Result<Self, CliffordError> {
        if p + q > Self::MAX_DIM {
            return Err(CliffordError::DimensionCap {
                p,
                q,
                cap: Self::MAX_DIM,
            });
        }
        Ok(Self { p, q })
    }

    /// `Cl(n, 0)`.
    pub fn euclidean(n: usize) -> Result<Self, CliffordError> {
        Self::new(n, 0)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of generators.
    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// Number of basis blades, `2^(p+q)`.
    pub fn blade_count(&self) -> usize {
        1 << self.dim()
    }

    /// Square of generator with zero-based index `i`.
    pub fn generator_square(&self, i: usize) -> f64 {
        if i < self.p {
            1.0
        } else {
            -1.0
        }
    }

    /// Sign `s` with `e_a e_b = s e_{a xor b}`.
    #[inline]
    pub fn blade_sign(&self, a: usize, b: usize) -> f64 {
        let mut swaps = 0u32;
        let mut shifted = a >> 1;
        while shifted != 0 {
            swaps += (shifted & b).count_ones();
            shifted >>= 1;
        }
        let negative_squares = ((a & b) >> self.p).count_ones();
        if (swaps + negative_squares) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{})", self.p, self.q)
    }
}

/// The three grade-sign involutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involution {
    /// Principal automorphism: grade `k` picks up `(-1)^k`.
    Pi,
    /// Principal anti-automorphism (reversion): `(-1)^(k(k-1)/2)`.
    Tau,
    /// Conjugation `π∘τ`: `(-1)^(k(k+1)/2)`.
    Nu,
}

impl Involution {
    pub fn grade_sign(self, k: u32) -> f64 {
        let exponent = match self {
            Involution::Pi => k,
            Involution::Tau => k * (k.saturating_sub(1)) / 2,
            Involution::Nu => k * (k + 1) / 2,
        };
        if exponent % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    sig: Signature,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            coeffs: vec![0.0; sig.blade_count()],
        }
    }

    pub fn scalar(sig: Signature, value: f64) -> Self {
        let mut m = Self::zero(sig);
        m.coeffs[0] = value;
        m
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, 1.0)
    }

    /// Single blade `coeff · e_mask`.
    pub fn blade(sig: Signature, mask: usize, coeff: f64) -> Self {
        assert!(mask < sig.blade_count(), "blade mask out of range");
        let mut m = Self::zero(sig);
        m.coeffs[mask] = coeff;
        m
    }

    /// Generator with zero-based index `i` (that is, `e_{i+1}`).
    pub fn generator(sig: Signature, i: usize) -> Result<Self, CliffordError> {
        if i >= sig.dim() {
            return Err(CliffordError::GeneratorIndex(i));
        }
        Ok(Self::blade(sig, 1 << i, 1.0))
    }

    pub fn from_coeffs(sig: Signature, coeffs: Vec<f64>) -> Result<Self, CliffordError> {
        if coeffs.len() != sig.blade_count() {
            return Err(CliffordError::Length {
                expected: sig.blade_count(),
                got: coeffs.len(),
            });
        }
        Ok(Self { sig, coeffs })
    }

    /// Grade-1 element `Σ v_i e_{i+1}`.
    pub fn vector(sig: Signature, v: &[f64]) -> Result<Self, CliffordError> {
        Self::paravector(sig, 0.0, v)
    }

    /// `x0 + Σ v_i e_{i+1}`.
    pub fn paravector(sig: Signature, x0: f64, v: &[f64]) -> Result<Self, CliffordError> {
        if v.len() != sig.dim() {
            return Err(CliffordError::Length {
                expected: sig.dim(),
                got: v.len(),
            });
        }
        let mut m = Self::scalar(sig, x0);
        for (i, &c) in v.iter().enumerate() {
            m.coeffs[1 << i] = c;
        }
        Ok(m)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, value: f64) {
        self.coeffs[mask] = value;
    }

    fn check_same(&self, other: &Self) -> Result<(), CliffordError> {
        if self.sig != other.sig {
            return Err(CliffordError::SignatureMismatch {
                left: self.sig,
                right: other.sig,
            });
        }
        Ok(())
    }

    /// Geometric product.
    pub fn product(&self, other: &Self) -> Result<Self, CliffordError> {
        self.check_same(other)?;
        let mut out = vec![0.0; self.coeffs.len()];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for (b, &cb) in other.coeffs.iter().enumerate() {
                if cb == 0.0 {
                    continue;
                }
                out[a ^ b] += self.sig.blade_sign(a, b) * ca * cb;
            }
        }
        Ok(Self {
            sig: self.sig,
            coeffs: out,
        })
    }

    /// Right multiplication by the single blade `e_mask`.
    pub fn mul_blade(&self, mask: usize) -> Self {
        let mut out = vec![0.0; self.coeffs.len()];
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca != 0.0 {
                out[a ^ mask] += self.sig.blade_sign(a, mask) * ca;
            }
        }
        Self {
            sig: self.sig,
            coeffs: out,
        }
    }

    pub fn involution(&self, kind: Involution) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, &c)| c * kind.grade_sign(mask.count_ones()))
            .collect();
        Self {
            sig: self.sig,
            coeffs,
        }
    }

    /// `π(a)`.
    pub fn pi(&self) -> Self {
        self.involution(Involution::Pi)
    }

    /// `aᵗ = τ(a)`.
    pub fn tau(&self) -> Self {
        self.involution(Involution::Tau)
    }

    /// `a^ν = π(τ(a))`.
    pub fn nu(&self) -> Self {
        self.involution(Involution::Nu)
    }

    /// Trace functional `Φ(a)`: the scalar part.
    pub fn trace(&self) -> f64 {
        self.coeffs[0]
    }

    /// Norm function `Δ(a) = a^ν a`.
    pub fn norm_delta(&self) -> Self {
        self.nu()
            .product(self)
            .expect("an element and its conjugate share a signature")
    }

    /// Bilinear form `(a, b) = Φ(aᵗ b)`.
    pub fn inner(&self, other: &Self) -> Result<f64, CliffordError> {
        self.check_same(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .map(|(mask, (&a, &b))| a * b * self.blade_self_inner(mask))
            .sum())
    }

    /// `(e_I, e_I) = Φ(e_Iᵗ e_I) = ±1`.
    fn blade_self_inner(&self, mask: usize) -> f64 {
        Involution::Tau.grade_sign(mask.count_ones()) * self.sig.blade_sign(mask, mask)
    }

    /// Keep only blades of grade `k`.
    pub fn grade(&self, k: usize) -> Result<Self, CliffordError> {
        if k > self.sig.dim() {
            return Err(CliffordError::GradeOutOfRange {
                grade: k,
                max: self.sig.dim(),
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, &c)| if mask.count_ones() as usize == k { c } else { 0.0 })
            .collect();
        Ok(Self {
            sig: self.sig,
            coeffs,
        })
    }

    /// Largest absolute coefficient among blades of grade above 1.
    pub fn max_abs_above_grade_one(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(mask, _)| mask.count_ones() > 1)
            .fold(0.0_f64, |m, (_, c)| m.max(c.abs()))
    }

    /// Largest absolute coefficient among non-scalar blades.
    pub fn max_abs_non_scalar(&self) -> f64 {
        self.coeffs[1..].iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Whether only the even grades are populated (within `tol`).
    pub fn is_even(&self, tol: f64) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(mask, c)| mask.count_ones() % 2 == 0 || c.abs() <= tol)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Max-norm of `self - other`. Panics on signature mismatch.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.sig, other.sig, "signature mismatch");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Grade-1 coefficients as a plain vector.
    pub fn vector_part(&self) -> Vec<f64> {
        (0..self.sig.dim()).map(|i| self.coeffs[1 << i]).collect()
    }

    /// Inverse via `a⁻¹ = a^ν / Δ(a)` when `Δ(a)` is a nonzero scalar.
    pub fn inverse(&self) -> Result<Self, CliffordError> {
        let delta = self.norm_delta();
        let scale = self.max_abs().max(1.0);
        if delta.max_abs_non_scalar() > tol::ALGEBRA * scale * scale || delta.trace().abs() < 1e-300
        {
            return Err(CliffordError::NotInvertible);
        }
        Ok(self.nu().scale(1.0 / delta.trace()))
    }

    /// Positivity: `a = aᵗ` and the Gram matrix `M_IJ = (e_I, a e_J)` is
    /// positive semidefinite (eigenvalues `≥ -POSITIVITY`).
    pub fn is_positive(&self) -> bool {
        let scale = self.max_abs().max(1.0);
        if self.distance(&self.tau()) > tol::POSITIVITY * scale {
            return false;
        }
        let n = self.sig.blade_count();
        let mut gram = DMatrix::<f64>::zeros(n, n);
        for j in 0..n {
            let col = self.mul_blade(j);
            for i in 0..n {
                gram[(i, j)] = col.coeffs[i] * self.blade_self_inner(i);
            }
        }
        let eig = SymmetricEigen::new(gram);
        eig.eigenvalues.iter().all(|&l| l >= -tol::POSITIVITY * scale)
    }

    /// Whether `a w aᵗ` stays within grades {0, 1} for each basis paravector
    /// `w ∈ {1, e_1, …}`. Checking the basis suffices by linearity.
    pub fn is_paravector_preserving(&self) -> bool {
        let at = self.tau();
        let scale = self.max_abs().max(1.0);
        (0..=self.sig.dim()).all(|w| {
            let mask = if w == 0 { 0 } else { 1 << (w - 1) };
            let image = self
                .mul_blade(mask)
                .product(&at)
                .expect("same signature");
            image.max_abs_above_grade_one() <= tol::PARAVECTOR_LEAK * scale * scale
        })
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if mask != 0 {
                write!(f, "·e")?;
                for i in 0..self.sig.dim() {
                    if mask & (1 << i) != 0 {
                        write!(f, "{}", i + 1)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.sig, rhs.sig, "signature mismatch");
        Multivector {
            sig: self.sig,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.sig, rhs.sig, "signature mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.sig, rhs.sig, "signature mismatch");
        Multivector {
            sig: self.sig,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

/// Geometric product; panics on signature mismatch (use [`Multivector::product`]
/// for the fallible form).
impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.product(rhs).expect("signature mismatch in geometric product")
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}
