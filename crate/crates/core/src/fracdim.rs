//! Correlation dimension (Grassberger–Procaccia):
//! `C(r) = 2/(M(M-1)) #{i < j : |xᵢ - xⱼ| < r}`, `D = d log C / d log r`.

use std::collections::HashMap;

use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::ifs::chain_rng;

/// RMS deviation of `log C` from the fitted line above which the curve is
/// flagged as a staircase rather than a power law.
pub const STAIRCASE_THRESHOLD: f64 = 0.06;

/// Fewest radii a fit will accept.
pub const MIN_FIT_RADII: usize = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FracdimError {
    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("radii must be positive and strictly ascending")]
    BadRadii,
    #[error("point buffer length {len} is not a multiple of dimension {dim}")]
    Ragged { len: usize, dim: usize },
    #[error("only {0} usable radii in the fit window (need {MIN_FIT_RADII})")]
    InsufficientRadii(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationCurve {
    pub radii: Vec<f64>,
    /// `C(r)` for each radius.
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionFit {
    pub dimension: f64,
    pub intercept: f64,
    /// RMS residual of `ln C` about the fitted line.
    pub residual: f64,
    pub rmin: f64,
    pub rmax: f64,
    pub used: usize,
    pub staircase: bool,
}

/// `bins` radii spaced evenly in `log r` over `[rmin, rmax]`.
pub fn log_radii(rmin: f64, rmax: f64, bins: usize) -> Vec<f64> {
    if bins == 1 {
        return vec![rmin];
    }
    let (a, b) = (rmin.ln(), rmax.ln());
    (0..bins)
        .map(|i| (a + (b - a) * i as f64 / (bins - 1) as f64).exp())
        .collect()
}

fn validate(points: &[f64], dim: usize, radii: &[f64]) -> Result<usize, FracdimError> {
    if dim == 0 || points.len() % dim != 0 {
        return Err(FracdimError::Ragged {
            len: points.len(),
            dim,
        });
    }
    let m = points.len() / dim;
    if m < 2 {
        return Err(FracdimError::TooFewPoints(m));
    }
    if radii.is_empty() || radii[0] <= 0.0 || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FracdimError::BadRadii);
    }
    Ok(m)
}

/// Uniform hash grid of cell size `h`.
struct HashGrid<'a> {
    points: &'a [f64],
    dim: usize,
    h: f64,
    cells: HashMap<Vec<i64>, Vec<usize>>,
}

impl<'a> HashGrid<'a> {
    fn new(points: &'a [f64], dim: usize, h: f64) -> Self {
        let mut cells: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for (i, p) in points.chunks_exact(dim).enumerate() {
            cells.entry(Self::key(p, h)).or_default().push(i);
        }
        Self { points, dim, h, cells }
    }

    fn key(p: &[f64], h: f64) -> Vec<i64> {
        p.iter().map(|c| (c / h).floor() as i64).collect()
    }

    /// Calls `visit(j, |xᵢ - xⱼ|)` for every `j` in the 3^d neighbouring
    /// cells of point `i`.
    fn for_neighbours(&self, i: usize, mut visit: impl FnMut(usize, f64)) {
        let p = &self.points[i * self.dim..(i + 1) * self.dim];
        let base = Self::key(p, self.h);
        let mut offset = vec![-1i64; self.dim];
        let mut cell = base.clone();
        loop {
            for (c, (b, o)) in cell.iter_mut().zip(base.iter().zip(&offset)) {
                *c = b + o;
            }
            if let Some(members) = self.cells.get(&cell) {
                for &j in members {
                    let q = &self.points[j * self.dim..(j + 1) * self.dim];
                    let d2: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
                    visit(j, d2.sqrt());
                }
            }
            let mut t = 0;
            loop {
                if t == self.dim {
                    return;
                }
                offset[t] += 1;
                if offset[t] <= 1 {
                    break;
                }
                offset[t] = -1;
                t += 1;
            }
        }
    }
}

fn accumulate(hist: &mut [u64], radii: &[f64], d: f64) {
    let t = radii.partition_point(|&r| r <= d);
    if t < hist.len() {
        hist[t] += 1;
    }
}

fn cumulative(hist: Vec<u64>, norm: f64, radii: &[f64]) -> CorrelationCurve {
    let mut acc = 0u64;
    let values = hist
        .into_iter()
        .map(|h| {
            acc += h;
            acc as f64 / norm
        })
        .collect();
    CorrelationCurve {
        radii: radii.to_vec(),
        values,
    }
}

/// `C(r)` over all pairs `i < j` (points flattened with dimension `dim`).
pub fn correlation_integral(points: &[f64], dim: usize, radii: &[f64]) -> Result<CorrelationCurve, FracdimError> {
    let m = validate(points, dim, radii)?;
    let grid = HashGrid::new(points, dim, *radii.last().unwrap());
    let hist = (0..m)
        .into_par_iter()
        .fold(
            || vec![0u64; radii.len()],
            |mut hist, i| {
                grid.for_neighbours(i, |j, d| {
                    if j > i {
                        accumulate(&mut hist, radii, d);
                    }
                });
                hist
            },
        )
        .reduce(|| vec![0u64; radii.len()], add_hist);
    let mm = m as f64;
    Ok(cumulative(hist, mm * (mm - 1.0) / 2.0, radii))
}

/// `C(r)` estimated from `centers` randomly chosen reference points, each
/// paired with all other points: `#{(c, j), j ≠ c, |x_c - x_j| < r} / (m(M-1))`.
/// Falls back to [`correlation_integral`] when `centers >= M`.
pub fn correlation_integral_sampled(
    points: &[f64],
    dim: usize,
    radii: &[f64],
    centers: usize,
    seed: u64,
) -> Result<CorrelationCurve, FracdimError> {
    let m = validate(points, dim, radii)?;
    if centers >= m {
        return correlation_integral(points, dim, radii);
    }
    let mut rng = chain_rng(seed, 0);
    let chosen = sample(&mut rng, m, centers.max(1)).into_vec();
    let grid = HashGrid::new(points, dim, *radii.last().unwrap());
    let hist = chosen
        .par_iter()
        .fold(
            || vec![0u64; radii.len()],
            |mut hist, &c| {
                grid.for_neighbours(c, |j, d| {
                    if j != c {
                        accumulate(&mut hist, radii, d);
                    }
                });
                hist
            },
        )
        .reduce(|| vec![0u64; radii.len()], add_hist);
    Ok(cumulative(hist, chosen.len() as f64 * (m as f64 - 1.0), radii))
}

fn add_hist(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    a
}

/// Least-squares slope of `ln C` against `ln r` over radii in `[rmin, rmax]`
/// with `C > 0`.
pub fn fit_dimension(curve: &CorrelationCurve, rmin: f64, rmax: f64) -> Result<DimensionFit, FracdimError> {
    let pts: Vec<(f64, f64)> = curve
        .radii
        .iter()
        .zip(&curve.values)
        .filter(|(&r, &c)| r >= rmin && r <= rmax && c > 0.0)
        .map(|(r, c)| (r.ln(), c.ln()))
        .collect();
    if pts.len() < MIN_FIT_RADII {
        return Err(FracdimError::InsufficientRadii(pts.len()));
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / m)
        .sqrt();
    Ok(DimensionFit {
        dimension: slope,
        intercept,
        residual,
        rmin,
        rmax,
        used: pts.len(),
        staircase: residual > STAIRCASE_THRESHOLD,
    })
}

/// `Σₖ dₖ 3⁻ᵏ` for ternary digits `dₖ`.
pub fn cantor_point(digits: &[u8]) -> f64 {
    digits
        .iter()
        .rev()
        .fold(0.0, |acc, &d| (acc + d as f64) / 3.0)
}

/// Digits in the middle-thirds Cantor address.
pub const CANTOR_DIGITS: usize = 40;

/// `count` points of the middle-thirds Cantor set with independent uniform
/// digits in `{0, 2}`.
pub fn cantor_points(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = chain_rng(seed, 0);
    let mut digits = [0u8; CANTOR_DIGITS];
    (0..count)
        .map(|_| {
            for d in digits.iter_mut() {
                *d = if rng.random::<bool>() { 2 } else { 0 };
            }
            cantor_point(&digits)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let c = correlation_integral(&[0.0, 0.0, 0.3, 0.4], 2, &[0.4, 0.6]).unwrap();
        assert_eq!(c.values, vec![0.0, 1.0]);
        assert_eq!(
            correlation_integral(&[0.0, 1.0], 2, &[0.5]),
            Err(FracdimError::TooFewPoints(1))
        );
        assert_eq!(
            correlation_integral(&[0.0, 1.0], 1, &[0.5, 0.5]),
            Err(FracdimError::BadRadii)
        );
    }

    #[test]
    fn matches_brute_force() {
        let pts = cantor_points(500, 3);
        let radii = log_radii(1e-3, 0.3, 12);
        let c = correlation_integral(&pts, 1, &radii).unwrap();
        for (r, v) in radii.iter().zip(&c.values) {
            let mut n = 0;
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    n += usize::from((pts[i] - pts[j]).abs() < *r);
                }
            }
            assert!((v - n as f64 / (500.0 * 499.0 / 2.0)).abs() < 1e-15);
        }
        assert!(c.values.windows(2).all(|w| w[0] <= w[1]));
        let s = correlation_integral_sampled(&pts, 1, &radii, 10_000, 0).unwrap();
        assert_eq!(s, c);
    }

    #[test]
    fn power_law_fit_is_exact() {
        let radii = log_radii(1e-3, 1e-1, 20);
        let curve = CorrelationCurve {
            values: radii.iter().map(|r| r * r).collect(),
            radii,
        };
        let fit = fit_dimension(&curve, 1e-3, 1e-1).unwrap();
        assert!((fit.dimension - 2.0).abs() < 1e-12);
        assert!(!fit.staircase);
        assert_eq!(
            fit_dimension(&curve, 1e-3, 2e-3),
            Err(FracdimError::InsufficientRadii(3))
        );
    }

    #[test]
    fn cantor_addresses() {
        assert_eq!(cantor_point(&[0; 40]), 0.0);
        assert!((cantor_point(&[2; 40]) - 1.0).abs() < 1e-18);
        assert!((cantor_point(&[2]) - 2.0 / 3.0).abs() < 1e-16);
        let pts = cantor_points(1000, 1);
        assert!(pts.iter().all(|&x| (0.0..=1.0).contains(&x)));
        assert!(pts.iter().all(|&x| !(x > 1.0 / 3.0 + 1e-12 && x < 2.0 / 3.0 - 1e-12)));
    }
}
