//! The transfer operator `T★` on densities over `Sⁿ`:
//!
//! `f_{k+1}(r) = (1-α²)^{n+2} / (N(1+α²)) Σᵢ f_k(wᵢ⁻¹ r) / (1 + α² - 2α nᵢ·r)^{n+1}`,
//!
//! evaluated exactly by recursion (`N^k` leaves) or on a grid with
//! interpolation, and its restriction to trace functions (see [`trace`]).

mod grid;
mod surface;
pub mod trace;

pub use grid::SphereGrid;
pub use surface::{SurfaceSpec, DEFAULT_SURFACE_RESOLUTION};
pub use trace::{trace_fixed_point, trace_operator, FixedPoint, TraceOperator};

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use thiserror::Error;

use crate::conformal::norm;
use crate::ifs::{chain_rng, IfsSystem};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MarkovError {
    #[error("exact evaluation needs {leaves:e} leaf evaluations per point (cap {cap:e}); use grid mode")]
    CostCap { leaves: f64, cap: f64 },
    #[error("surface does not cover the whole sphere; grid iteration needs a full grid")]
    SliceOnly,
    #[error("surface has no quadrature weights")]
    NoWeights,
    #[error("no default grid for S^{0}")]
    NoGrid(usize),
    #[error("grid is for S^{grid}, system lives on S^{system}")]
    GridMismatch { grid: usize, system: usize },
    #[error("power iteration did not converge in {0} steps")]
    NotConverged(usize),
    #[error("invalid surface spec `{0}`")]
    BadSurface(String),
    #[error("configuration is not balanced (|Σ nᵢ| = {0})")]
    Unbalanced(f64),
}

/// Area of the unit sphere `Sⁿ`.
pub fn sphere_area(n: usize) -> f64 {
    use std::f64::consts::PI;
    match n {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI / (n - 1) as f64 * sphere_area(n - 2),
    }
}

fn prefactor(sys: &IfsSystem) -> f64 {
    let a2 = sys.alpha() * sys.alpha();
    let n = sys.config().sphere_dim() as i32;
    (1.0 - a2).powi(n + 2) / sys.normalization()
}

/// `T★^k` applied to the density `base`, evaluated at `r`.
pub fn push_density<F>(sys: &IfsSystem, r: &[f64], k: usize, base: &F) -> f64
where
    F: Fn(&[f64]) -> f64,
{
    let mut scratch = vec![vec![0.0; r.len()]; k];
    recurse(sys, r, &mut scratch, base, prefactor(sys))
}

fn recurse<F>(sys: &IfsSystem, r: &[f64], scratch: &mut [Vec<f64>], base: &F, c: f64) -> f64
where
    F: Fn(&[f64]) -> f64,
{
    let Some((buf, rest)) = scratch.split_first_mut() else {
        return base(r);
    };
    let a = sys.alpha();
    let n = sys.config().sphere_dim() as i32;
    let mut sum = 0.0;
    for b in sys.boosts() {
        let g = 1.0 + a * a - 2.0 * a * crate::conformal::dot(b.axis(), r);
        b.apply_inverse_into(r, buf);
        sum += recurse(sys, buf, rest, base, c) / g.powi(n + 1);
    }
    c * sum
}

fn check_cost(sys: &IfsSystem, k: usize) -> Result<(), MarkovError> {
    let leaves = (sys.len() as f64).powi(k as i32);
    if leaves > tol::EXACT_DENSITY_COST_CAP {
        return Err(MarkovError::CostCap {
            leaves,
            cap: tol::EXACT_DENSITY_COST_CAP,
        });
    }
    Ok(())
}

/// `f_k(r)` starting from `f₀ ≡ 1`.
pub fn density_exact(sys: &IfsSystem, r: &[f64], k: usize) -> Result<f64, MarkovError> {
    check_cost(sys, k)?;
    Ok(push_density(sys, r, k, &|_| 1.0))
}

/// [`density_exact`] at many points (flattened), in parallel.
pub fn density_exact_many(sys: &IfsSystem, points: &[f64], k: usize) -> Result<Vec<f64>, MarkovError> {
    check_cost(sys, k)?;
    let d = sys.ambient_dim();
    Ok(points
        .par_chunks(d)
        .map(|r| push_density(sys, r, k, &|_| 1.0))
        .collect())
}

/// Values of `f_k` on a set of points of `Sⁿ`, optionally with quadrature
/// weights, a 2D image layout and the full-sphere grid they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySurface {
    pub config: String,
    pub alpha: f64,
    pub k: usize,
    ambient_dim: usize,
    points: Vec<f64>,
    pub weights: Option<Vec<f64>>,
    pub values: Vec<f64>,
    pub layout: Option<(usize, usize)>,
    pub grid: Option<SphereGrid>,
}

impl DensitySurface {
    /// `f₀ ≡ 1` on a full-sphere grid.
    pub fn full(sys: &IfsSystem, grid: SphereGrid) -> Result<Self, MarkovError> {
        let system = sys.config().sphere_dim();
        if grid.sphere_dim() != system {
            return Err(MarkovError::GridMismatch {
                grid: grid.sphere_dim(),
                system,
            });
        }
        Ok(Self {
            config: sys.config().name().to_string(),
            alpha: sys.alpha(),
            k: 0,
            ambient_dim: system + 1,
            points: grid.points(),
            weights: Some(grid.weights()),
            values: vec![1.0; grid.len()],
            layout: grid.layout(),
            grid: Some(grid),
        })
    }

    /// `f₀ ≡ 1` on arbitrary points (flattened), without a grid.
    pub fn on_points(
        sys: &IfsSystem,
        points: Vec<f64>,
        weights: Option<Vec<f64>>,
        layout: Option<(usize, usize)>,
    ) -> Self {
        let d = sys.ambient_dim();
        let n = points.len() / d;
        Self {
            config: sys.config().name().to_string(),
            alpha: sys.alpha(),
            k: 0,
            ambient_dim: d,
            points,
            weights,
            values: vec![1.0; n],
            layout,
            grid: None,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.ambient_dim..(i + 1) * self.ambient_dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.points.chunks_exact(self.ambient_dim)
    }

    /// Interpolated `f_k(x)`; needs a full grid.
    pub fn interpolate(&self, x: &[f64]) -> Result<f64, MarkovError> {
        let grid = self.grid.ok_or(MarkovError::SliceOnly)?;
        Ok(grid.interpolate(&self.values, x))
    }

    /// Replace the values by exact `f_k` at this surface's points.
    pub fn fill_exact(&mut self, sys: &IfsSystem, k: usize) -> Result<(), MarkovError> {
        self.values = density_exact_many(sys, &self.points, k)?;
        self.k = k;
        Ok(())
    }

    /// Values of this full-grid density interpolated onto other points.
    pub fn resample(&self, target: &Self) -> Result<Self, MarkovError> {
        let grid = self.grid.ok_or(MarkovError::SliceOnly)?;
        let values = target
            .points
            .par_chunks(self.ambient_dim)
            .map(|x| grid.interpolate(&self.values, x))
            .collect();
        Ok(Self {
            k: self.k,
            values,
            ..target.clone()
        })
    }
}

/// One application of `T★` on a full grid, reading `f_k` by interpolation.
pub fn density_grid_iterate(sys: &IfsSystem, surface: &DensitySurface) -> Result<DensitySurface, MarkovError> {
    let grid = surface.grid.ok_or(MarkovError::SliceOnly)?;
    let current = &surface.values;
    let values = surface
        .points
        .par_chunks(surface.ambient_dim)
        .map_init(
            || vec![0.0; surface.ambient_dim],
            |buf, r| push_one(sys, r, buf, &|x: &[f64]| grid.interpolate(current, x)),
        )
        .collect();
    Ok(DensitySurface {
        k: surface.k + 1,
        values,
        ..surface.clone()
    })
}

fn push_one<F: Fn(&[f64]) -> f64>(sys: &IfsSystem, r: &[f64], buf: &mut Vec<f64>, f: &F) -> f64 {
    recurse(sys, r, std::slice::from_mut(buf), f, prefactor(sys))
}

/// `Σ wᵢ f(xᵢ)`.
pub fn integrate_density(surface: &DensitySurface) -> Result<f64, MarkovError> {
    let w = surface.weights.as_ref().ok_or(MarkovError::NoWeights)?;
    Ok(w.iter().zip(&surface.values).map(|(w, f)| w * f).sum())
}

/// Monte-Carlo estimate of `∫ f_k dS` from `samples` uniform points, with its
/// standard error.
pub fn integrate_density_mc(
    sys: &IfsSystem,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64), MarkovError> {
    check_cost(sys, k)?;
    let d = sys.ambient_dim();
    let points = uniform_sphere_points(d, samples, seed, 0);
    let values = density_exact_many(sys, &points, k)?;
    let m = samples as f64;
    let mean = values.iter().sum::<f64>() / m;
    let var = values.iter().map(|f| (f - mean) * (f - mean)).sum::<f64>() / (m - 1.0);
    let area = sphere_area(d - 1);
    Ok((area * mean, area * (var / m).sqrt()))
}

/// Uniform points on `S^{d-1}` (flattened), from the stream `(seed, stream)`.
pub fn uniform_sphere_points(d: usize, count: usize, seed: u64, stream: u64) -> Vec<f64> {
    let mut rng = chain_rng(seed, stream);
    let mut out = Vec::with_capacity(count * d);
    for _ in 0..count {
        let v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
        let r = norm(&v);
        out.extend(v.iter().map(|c| c / r));
    }
    out
}
