//! Coxeter's realization of the 600-cell on four tori, and a congruence test
//! between point sets.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use super::{distance, golden_ratio, PolytopeError};
use crate::conformal::SpherePoint;

/// The four families `a[k]`, `b[k]` over even `k` and over odd `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TorusFamily {
    /// `a[k]`, `k = 0, 2, …, 58`: radii `(a, d)`.
    Aa,
    /// `b[k]`, `k = 0, 2, …, 58`: radii `(d, a)`.
    Ab,
    /// `a[k]`, `k = 1, 3, …, 59`: radii `(b, c)`.
    Ba,
    /// `b[k]`, `k = 1, 3, …, 59`: radii `(c, b)`.
    Bb,
}

impl TorusFamily {
    pub const ALL: [Self; 4] = [Self::Aa, Self::Ab, Self::Ba, Self::Bb];

    pub fn name(self) -> &'static str {
        match self {
            Self::Aa => "aa",
            Self::Ab => "ab",
            Self::Ba => "ba",
            Self::Bb => "bb",
        }
    }

    /// `(r₁, r₂, s)`: points are `(r₁ cos u, r₁ sin u, s r₂ cos v, s r₂ sin v)`.
    pub fn radii(self) -> (f64, f64, f64) {
        let [a, b, c, d] = coxeter_constants();
        match self {
            Self::Aa => (a, d, 1.0),
            Self::Ab => (d, a, -1.0),
            Self::Ba => (b, c, 1.0),
            Self::Bb => (c, b, -1.0),
        }
    }

    fn first_k(self) -> usize {
        match self {
            Self::Aa | Self::Ab => 0,
            Self::Ba | Self::Bb => 1,
        }
    }
}

impl fmt::Display for TorusFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TorusFamily {
    type Err = PolytopeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| PolytopeError::UnknownName(s.to_string()))
    }
}

/// `[a, b, c, d]` with `a, d = √((1 ± 3^{-1/2} 5^{-1/4} φ^{3/2})/2)` and
/// `b, c = √((1 ± 3^{-1/2} 5^{-1/4} φ^{-3/2})/2)`.
pub fn coxeter_constants() -> [f64; 4] {
    let phi = golden_ratio();
    let s = 3f64.powf(-0.5) * 5f64.powf(-0.25);
    let hi = s * phi.powf(1.5);
    let lo = s * phi.powf(-1.5);
    [
        ((1.0 + hi) / 2.0).sqrt(),
        ((1.0 + lo) / 2.0).sqrt(),
        ((1.0 - lo) / 2.0).sqrt(),
        ((1.0 - hi) / 2.0).sqrt(),
    ]
}

/// The 30 points of one torus family, `θ = π/30`.
pub fn coxeter_tori(family: TorusFamily) -> Vec<SpherePoint> {
    let theta = PI / 30.0;
    let (r1, r2, s) = family.radii();
    (0..30)
        .map(|j| {
            let k = (family.first_k() + 2 * j) as f64;
            let (u, v) = (k * theta, 11.0 * k * theta);
            let p = vec![r1 * u.cos(), r1 * u.sin(), s * r2 * v.cos(), s * r2 * v.sin()];
            SpherePoint::normalized(p).expect("torus point is nonzero")
        })
        .collect()
}

/// True when every point of `a` is within `tol` of some point of `b` and the
/// sets have the same size (reordering allowed, no rotation).
pub fn same_point_set(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|p| {
        match (0..b.len()).find(|&j| !used[j] && distance(p, &b[j]) < tol) {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        }
    })
}

/// Search for an orthogonal `Q` with `Q a = b` as point sets (tolerance
/// `tol`). Returns `None` if the sets are not congruent.
pub fn find_congruence(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> Option<DMatrix<f64>> {
    if a.len() != b.len() || a.is_empty() {
        return None;
    }
    let d = a[0].len();
    let basis = independent_subset(a, d)?;
    let gram: Vec<Vec<f64>> = basis
        .iter()
        .map(|&i| basis.iter().map(|&j| dot(&a[i], &a[j])).collect())
        .collect();
    let amat = DMatrix::from_fn(d, d, |r, c| a[basis[c]][r]);
    let ainv = amat.try_inverse()?;
    let mut chosen = Vec::with_capacity(d);
    search(a, b, &gram, &ainv, tol, &mut chosen)
}

fn search(
    a: &[Vec<f64>],
    b: &[Vec<f64>],
    gram: &[Vec<f64>],
    ainv: &DMatrix<f64>,
    tol: f64,
    chosen: &mut Vec<usize>,
) -> Option<DMatrix<f64>> {
    let d = gram.len();
    if chosen.len() == d {
        let bmat = DMatrix::from_fn(d, d, |r, c| b[chosen[c]][r]);
        let q = bmat * ainv;
        let image: Vec<Vec<f64>> = a
            .iter()
            .map(|p| (&q * DVector::from_column_slice(p)).iter().copied().collect())
            .collect();
        return same_point_set(&image, b, tol).then_some(q);
    }
    let level = chosen.len();
    for j in 0..b.len() {
        if chosen.contains(&j) {
            continue;
        }
        let fits = (0..=level).all(|m| {
            let other = if m == level { j } else { chosen[m] };
            (dot(&b[j], &b[other]) - gram[level][m]).abs() < tol
        });
        if fits {
            chosen.push(j);
            if let Some(q) = search(a, b, gram, ainv, tol, chosen) {
                return Some(q);
            }
            chosen.pop();
        }
    }
    None
}

/// Greedy choice of `d` points spanning `R^d`, each maximizing its distance
/// to the span of the previous ones.
fn independent_subset(points: &[Vec<f64>], d: usize) -> Option<Vec<usize>> {
    let mut chosen = Vec::with_capacity(d);
    let mut frame: Vec<Vec<f64>> = Vec::with_capacity(d);
    for _ in 0..d {
        let (best, residual) = points
            .iter()
            .enumerate()
            .filter(|(i, _)| !chosen.contains(i))
            .map(|(i, p)| {
                let mut r = p.clone();
                for f in &frame {
                    let c = dot(&r, f);
                    r.iter_mut().zip(f).for_each(|(x, y)| *x -= c * y);
                }
                (i, r)
            })
            .max_by(|x, y| dot(&x.1, &x.1).total_cmp(&dot(&y.1, &y.1)))?;
        let n = dot(&residual, &residual).sqrt();
        if n < 1e-8 {
            return None;
        }
        chosen.push(best);
        frame.push(residual.into_iter().map(|x| x / n).collect());
    }
    Some(chosen)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytopes::{polytope4, Polytope4};

    #[test]
    fn constants_match_quoted_decimals() {
        let quoted = [0.947274, 0.770582, 0.637341, 0.320426];
        for (c, q) in coxeter_constants().iter().zip(quoted) {
            assert!((c - q).abs() < 5e-7, "{c} vs {q}");
        }
    }

    #[test]
    fn families_are_unit_and_thirty() {
        for f in TorusFamily::ALL {
            let pts = coxeter_tori(f);
            assert_eq!(pts.len(), 30);
            for p in &pts {
                let n: f64 = p.coords().iter().map(|c| c * c).sum();
                assert!((n - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn union_is_congruent_to_cell600() {
        let union: Vec<Vec<f64>> = TorusFamily::ALL
            .into_iter()
            .flat_map(coxeter_tori)
            .map(SpherePoint::into_inner)
            .collect();
        let cell = polytope4(Polytope4::Cell600);
        let q = find_congruence(&union, cell.vertices(), 1e-6).expect("congruent");
        let qtq = q.transpose() * &q;
        assert!((qtq - DMatrix::identity(4, 4)).amax() < 1e-6);
    }

    #[test]
    fn congruence_rejects_different_sets() {
        let a = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]];
        let t = 0.3f64;
        let b: Vec<Vec<f64>> = a
            .iter()
            .map(|p| vec![t.cos() * p[0] - t.sin() * p[1], t.sin() * p[0] + t.cos() * p[1]])
            .collect();
        assert!(!same_point_set(&a, &b, 1e-9));
        assert!(find_congruence(&a, &b, 1e-9).is_some());
        let c = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.6, 0.8]];
        assert!(find_congruence(&a, &c, 1e-9).is_none());
    }
}
