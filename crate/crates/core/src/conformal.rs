//! Möbius transformations of `Sⁿ` and `Bⁿ⁺¹` induced by spin-boosts, their
//! conformal factors and Radon–Nikodym derivatives, stereographic dilation,
//! and the `SO⁺(1, n+1)` matrix picture.
//!
//! The boost maps are evaluated by the closed form, which is `O(n)`. The
//! general action [`act`] goes through the Clifford algebra and is `O(4ⁿ)`;
//! it serves composite group elements and cross-checks.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::clifford::{CliffordError, Multivector, Paravector};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConformalError {
    #[error("boost parameter alpha = {0} outside [0, 1)")]
    AlphaOutOfRange(f64),
    #[error("axis is not a unit vector (|n| = {0})")]
    NonUnitAxis(f64),
    #[error("point is not on the unit sphere (|x| = {0})")]
    NotOnSphere(f64),
    #[error("point is outside the closed unit ball (|x| = {0})")]
    OutsideBall(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("stereographic projection of the pole itself")]
    ProjectionPole,
    #[error("matrix is not a proper orthochronous Lorentz transformation: {0}")]
    NotLorentz(&'static str),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// A point of `Sⁿ ⊂ Rⁿ⁺¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint(Vec<f64>);

impl SpherePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self, ConformalError> {
        let r = norm(&coords);
        if (r - 1.0).abs() > tol::UNIT_NORM {
            return Err(ConformalError::NotOnSphere(r));
        }
        Ok(Self(coords))
    }

    /// Scales a nonzero vector onto the sphere.
    pub fn normalized(mut coords: Vec<f64>) -> Result<Self, ConformalError> {
        let r = norm(&coords);
        if r == 0.0 || !r.is_finite() {
            return Err(ConformalError::NotOnSphere(r));
        }
        coords.iter_mut().for_each(|c| *c /= r);
        Ok(Self(coords))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// `n` of `Sⁿ`.
    pub fn sphere_dim(&self) -> usize {
        self.0.len() - 1
    }
}

impl AsRef<[f64]> for SpherePoint {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Spin-boost `m = (1 + α n)/√(1 - α²)`, acting on `Sⁿ` and `B̄ⁿ⁺¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinBoost {
    alpha: f64,
    axis: Vec<f64>,
}

impl SpinBoost {
    pub fn new(alpha: f64, axis: Vec<f64>) -> Result<Self, ConformalError> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(ConformalError::AlphaOutOfRange(alpha));
        }
        let r = norm(&axis);
        if (r - 1.0).abs() > tol::UNIT_NORM {
            return Err(ConformalError::NonUnitAxis(r));
        }
        Ok(Self { alpha, axis })
    }

    /// Boost of rapidity `η >= 0`, that is `α = tanh(η/2)`.
    pub fn from_rapidity(eta: f64, axis: Vec<f64>) -> Result<Self, ConformalError> {
        Self::new((0.5 * eta).tanh(), axis)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn axis(&self) -> &[f64] {
        &self.axis
    }

    /// Ambient dimension `n + 1`.
    pub fn ambient_dim(&self) -> usize {
        self.axis.len()
    }

    /// `n` of `Sⁿ`.
    pub fn sphere_dim(&self) -> usize {
        self.axis.len() - 1
    }

    /// `η = 2 artanh(α)`.
    pub fn rapidity(&self) -> f64 {
        2.0 * self.alpha.atanh()
    }

    /// Same `α`, opposite axis.
    pub fn inverse(&self) -> Self {
        Self {
            alpha: self.alpha,
            axis: self.axis.iter().map(|v| -v).collect(),
        }
    }

    /// The algebra element `(1 + α n)/√(1 - α²)` in `Cl(n+1, 0)`.
    pub fn multivector(&self) -> Multivector {
        let s = 1.0 / (1.0 - self.alpha * self.alpha).sqrt();
        Paravector::new(s, self.axis.iter().map(|v| v * self.alpha * s).collect())
            .to_multivector()
            .expect("axis length within the dimension cap")
    }

    /// `f = 1 + α² + 2α (n·x)`.
    #[inline]
    pub fn denominator(&self, x: &[f64]) -> f64 {
        1.0 + self.alpha * self.alpha + 2.0 * self.alpha * dot(&self.axis, x)
    }

    /// `x' = [(1-α²) x + 2α(1 + α (n·x)) n] / (1 + α² + 2α (n·x))`.
    #[inline]
    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        let a = self.alpha;
        let nx = dot(&self.axis, x);
        let inv = 1.0 / (1.0 + a * a + 2.0 * a * nx);
        let cx = (1.0 - a * a) * inv;
        let cn = 2.0 * a * (1.0 + a * nx) * inv;
        for ((o, &xi), &ni) in out.iter_mut().zip(x).zip(&self.axis) {
            *o = cx * xi + cn * ni;
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; x.len()];
        self.apply_into(x, &mut out);
        out
    }

    /// `w⁻¹(r) = [(1-α²) r - 2α(1 - α (n·r)) n] / (1 + α² - 2α (n·r))`.
    #[inline]
    pub fn apply_inverse_into(&self, r: &[f64], out: &mut [f64]) {
        let a = self.alpha;
        let nr = dot(&self.axis, r);
        let inv = 1.0 / (1.0 + a * a - 2.0 * a * nr);
        let cr = (1.0 - a * a) * inv;
        let cn = -2.0 * a * (1.0 - a * nr) * inv;
        for ((o, &ri), &ni) in out.iter_mut().zip(r).zip(&self.axis) {
            *o = cr * ri + cn * ni;
        }
    }

    pub fn apply_inverse(&self, r: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; r.len()];
        self.apply_inverse_into(r, &mut out);
        out
    }

    /// `ρ = (1 - α²)/(1 + α² + 2α (n·x))`.
    pub fn conformal_factor(&self, x: &[f64]) -> f64 {
        (1.0 - self.alpha * self.alpha) / self.denominator(x)
    }

    /// Pullback of the Euclidean metric under the map on `V`:
    /// `ρ² (δ + 4α²(x²-1)/f² n nᵀ - (2α/f)(n xᵀ + x nᵀ))`.
    pub fn pullback_metric(&self, x: &[f64]) -> DMatrix<f64> {
        let d = x.len();
        let a = self.alpha;
        let f = self.denominator(x);
        let rho = (1.0 - a * a) / f;
        let x2 = dot(x, x);
        let n = &self.axis;
        DMatrix::from_fn(d, d, |i, j| {
            let delta = if i == j { 1.0 } else { 0.0 };
            rho * rho
                * (delta + 4.0 * a * a * (x2 - 1.0) / (f * f) * n[i] * n[j]
                    - 2.0 * a / f * (n[i] * x[j] + n[j] * x[i]))
        })
    }

    /// Surface Radon–Nikodym derivative `dS'/dS = ρⁿ` on `Sⁿ`.
    pub fn rn_surface(&self, x: &[f64]) -> f64 {
        self.conformal_factor(x).powi(self.sphere_dim() as i32)
    }

    /// Volume Radon–Nikodym derivative `dV'/dV = ρⁿ⁺²` on `B̄ⁿ⁺¹`.
    pub fn rn_volume(&self, x: &[f64]) -> f64 {
        self.conformal_factor(x).powi(self.sphere_dim() as i32 + 2)
    }

    pub fn lorentz(&self) -> LorentzMatrix {
        let d = self.axis.len();
        let a = self.alpha;
        let s = 1.0 / (1.0 - a * a);
        let mut m = DMatrix::<f64>::zeros(d + 1, d + 1);
        m[(0, 0)] = (1.0 + a * a) * s;
        for i in 0..d {
            m[(0, i + 1)] = 2.0 * a * self.axis[i] * s;
            m[(i + 1, 0)] = 2.0 * a * self.axis[i] * s;
            for j in 0..d {
                let delta = if i == j { 1.0 } else { 0.0 };
                m[(i + 1, j + 1)] = delta + 2.0 * a * a * self.axis[i] * self.axis[j] * s;
            }
        }
        LorentzMatrix(m)
    }
}

/// Action `φ_g(x) = P⁻¹(σ_g(P(x)) / Φ(σ_g(P(x))))` of an element `g` of the
/// spin group on a point of the closed ball, with `σ_g(w) = g w gᵗ`.
pub fn act(g: &Multivector, x: &[f64]) -> Result<Vec<f64>, ConformalError> {
    let sig = g.signature();
    if sig.dim() != x.len() {
        return Err(ConformalError::DimensionMismatch {
            expected: sig.dim(),
            got: x.len(),
        });
    }
    let p = Multivector::paravector(sig, 1.0, x)?;
    let image = &(g * &p) * &g.tau();
    let t = image.trace();
    Ok(image.vector_part().into_iter().map(|v| v / t).collect())
}

/// Stereographic projection from `pole` onto the hyperplane orthogonal to it:
/// `s(x) = (x - (n·x) n)/(1 - n·x)`. `x` is taken to lie on the sphere.
pub fn stereo_project(pole: &[f64], x: &[f64]) -> Result<Vec<f64>, ConformalError> {
    if pole.len() != x.len() {
        return Err(ConformalError::DimensionMismatch {
            expected: pole.len(),
            got: x.len(),
        });
    }
    let gap: f64 = pole.iter().zip(x).map(|(p, q)| (p - q) * (p - q)).sum();
    if gap.sqrt() <= tol::UNIT_NORM {
        return Err(ConformalError::ProjectionPole);
    }
    // On the sphere 1 - n·x = |x - n|²/2; writing everything around x - n
    // avoids cancellation near the pole.
    let one_minus_nx = 0.5 * gap;
    let inv = 1.0 / one_minus_nx;
    Ok(x.iter()
        .zip(pole)
        .map(|(xi, ni)| (xi - ni + one_minus_nx * ni) * inv)
        .collect())
}

/// Matrix `Λ` of `SO⁺(1, n+1)`; index 0 is the time-like direction.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzMatrix(DMatrix<f64>);

impl LorentzMatrix {
    /// Validates `Λᵀ η Λ = η`, `Λ⁰₀ >= 1` and `det Λ = 1`.
    pub fn new(m: DMatrix<f64>) -> Result<Self, ConformalError> {
        if m.nrows() != m.ncols() || m.nrows() < 2 {
            return Err(ConformalError::NotLorentz("not a square matrix of size >= 2"));
        }
        let d = m.nrows();
        let eta = DMatrix::from_fn(d, d, |i, j| match (i, j) {
            (0, 0) => 1.0,
            (i, j) if i == j => -1.0,
            _ => 0.0,
        });
        let residual = (m.transpose() * &eta * &m - &eta).abs().max();
        if residual > tol::LORENTZ * m.abs().max().powi(2).max(1.0) {
            return Err(ConformalError::NotLorentz("metric not preserved"));
        }
        if m[(0, 0)] < 1.0 - tol::LORENTZ {
            return Err(ConformalError::NotLorentz("not orthochronous"));
        }
        if (m.determinant() - 1.0).abs() > tol::LORENTZ * m.abs().max().powi(d as i32).max(1.0) {
            return Err(ConformalError::NotLorentz("determinant is not 1"));
        }
        Ok(Self(m))
    }

    pub fn identity(ambient_dim: usize) -> Self {
        Self(DMatrix::identity(ambient_dim + 1, ambient_dim + 1))
    }

    /// Embeds a rotation `R ∈ SO(n+1)` as `diag(1, R)`.
    pub fn rotation(r: &DMatrix<f64>) -> Result<Self, ConformalError> {
        let d = r.nrows();
        let mut m = DMatrix::identity(d + 1, d + 1);
        m.view_mut((1, 1), (d, d)).copy_from(r);
        Self::new(m)
    }

    /// Columns from conjugating the basis paravectors: `g e_μ gᵗ = Λ^ν_μ e_ν`.
    pub fn from_element(g: &Multivector) -> Result<Self, ConformalError> {
        let sig = g.signature();
        if sig.q() != 0 {
            return Err(CliffordError::NotInGroup("signature is not Euclidean").into());
        }
        let delta = g.norm_delta();
        if delta.max_abs_non_scalar() > tol::ALGEBRA || (delta.trace() - 1.0).abs() > tol::ALGEBRA {
            return Err(CliffordError::NotInGroup("Δ(g) != 1").into());
        }
        if !g.is_paravector_preserving() {
            return Err(CliffordError::NotInGroup("g V¹ gᵗ is not contained in V¹").into());
        }
        let d = sig.dim();
        let gt = g.tau();
        let mut m = DMatrix::<f64>::zeros(d + 1, d + 1);
        for mu in 0..=d {
            let mask = if mu == 0 { 0 } else { 1 << (mu - 1) };
            let image = &g.mul_blade(mask) * &gt;
            m[(0, mu)] = image.trace();
            for (i, v) in image.vector_part().into_iter().enumerate() {
                m[(i + 1, mu)] = v;
            }
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.nrows() - 1
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    /// `Λ⁰₀ + Λ⁰ᵢ xⁱ`.
    pub fn time_component(&self, x: &[f64]) -> f64 {
        self.0[(0, 0)] + (0..x.len()).map(|j| self.0[(0, j + 1)] * x[j]).sum::<f64>()
    }

    /// `φ_Λ(x)ⁱ = (Λⁱ₀ + Λⁱⱼ xʲ)/(Λ⁰₀ + Λ⁰ⱼ xʲ)`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let denom = self.time_component(x);
        (0..x.len())
            .map(|i| {
                let num = self.0[(i + 1, 0)]
                    + (0..x.len()).map(|j| self.0[(i + 1, j + 1)] * x[j]).sum::<f64>();
                num / denom
            })
            .collect()
    }

    /// Cocycle `f_r(Λ, x) = (Λ⁰₀ + Λ⁰ᵢ xⁱ)^r`.
    pub fn cocycle(&self, x: &[f64], r: f64) -> f64 {
        self.time_component(x).powf(r)
    }

    /// `dS'/dS = 1/(Λ⁰₀ + Λ⁰ᵢ xⁱ)ⁿ` on `Sⁿ`.
    pub fn rn_surface(&self, x: &[f64]) -> f64 {
        self.cocycle(x, -((x.len() - 1) as f64))
    }
}
