use std::collections::{HashSet, VecDeque};
use std::ops::{Mul, Neg};

use super::PolytopeError;

/// Golden ratio `φ = (1 + √5)/2`.
pub fn golden_ratio() -> f64 {
    0.5 * (1.0 + 5f64.sqrt())
}

/// Inverse golden ratio `φ⁻¹ = φ - 1`.
pub fn inverse_golden_ratio() -> f64 {
    golden_ratio() - 1.0
}

/// Quaternion `w + x i + y j + z k`, identified with `(w, x, y, z) ∈ R⁴`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Euclidean inner product in `R⁴`.
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn distance(self, other: Self) -> f64 {
        let d = Self::new(
            self.w - other.w,
            self.x - other.x,
            self.y - other.y,
            self.z - other.z,
        );
        d.norm()
    }

    pub fn powi(self, k: u32) -> Self {
        (0..k).fold(Self::ONE, |acc, _| acc * self)
    }

    /// Lattice key used to deduplicate group elements.
    fn key(self) -> [i64; 4] {
        self.to_array().map(|c| (c * 1e8).round() as i64)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        Self::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// First generator pair `S₁ = ½(1 - φ⁻¹ i - φ k)`, `T₁ = ½(φ⁻¹ - i - φ j)`.
pub fn icosian_generators_first() -> (Quaternion, Quaternion) {
    let (phi, inv) = (golden_ratio(), inverse_golden_ratio());
    (
        Quaternion::new(0.5, -0.5 * inv, 0.0, -0.5 * phi),
        Quaternion::new(0.5 * inv, -0.5, -0.5 * phi, 0.0),
    )
}

/// Second, outer-automorphic pair `S₂ = ½(1 + φ i + φ⁻¹ j)`,
/// `T₂ = ½(-φ - i - φ⁻¹ k)`.
pub fn icosian_generators_second() -> (Quaternion, Quaternion) {
    let (phi, inv) = (golden_ratio(), inverse_golden_ratio());
    (
        Quaternion::new(0.5, 0.5 * phi, 0.5 * inv, 0.0),
        Quaternion::new(-0.5 * phi, -0.5, 0.0, -0.5 * inv),
    )
}

/// Upper bound on the closure size before giving up.
pub const GROUP_CLOSURE_CAP: usize = 10_000;

/// Closure of a set of unit quaternions under the Hamilton product.
pub fn icosian_group(generators: &[Quaternion]) -> Result<Vec<Quaternion>, PolytopeError> {
    for g in generators {
        if (g.norm() - 1.0).abs() > 1e-12 {
            return Err(PolytopeError::NonUnitGenerator(g.norm()));
        }
    }
    let mut seen = HashSet::new();
    let mut elements = vec![Quaternion::ONE];
    seen.insert(Quaternion::ONE.key());
    let mut queue = VecDeque::from([Quaternion::ONE]);
    while let Some(q) = queue.pop_front() {
        for &g in generators {
            let p = q * g;
            if seen.insert(p.key()) {
                if elements.len() >= GROUP_CLOSURE_CAP {
                    return Err(PolytopeError::GroupTooLarge(GROUP_CLOSURE_CAP));
                }
                elements.push(p);
                queue.push_back(p);
            }
        }
    }
    Ok(elements)
}
