//! Chaos-game sampler for the IFS `{w_i, p_i}` with place-dependent
//! probabilities `p_i(x) = (1 + α² + 2α nᵢ·x) / (N(1 + α²))`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::conformal::{dot, norm, ConformalError, SpinBoost};
use crate::polytopes::{check_balanced, VertexConfiguration};
use crate::tol;

/// Points discarded before recording, unless overridden.
pub const DEFAULT_BURN_IN: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IfsError {
    #[error("configuration `{name}` is not balanced (|Σ nᵢ| = {residual})")]
    Unbalanced { name: String, residual: f64 },
    #[error("initial point has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("at least one point must be requested")]
    ZeroCount,
    #[error("at least one chain is required")]
    ZeroChains,
    #[error(transparent)]
    Conformal(#[from] ConformalError),
}

/// One spin-boost per vertex, all with the same `α`.
#[derive(Debug, Clone)]
pub struct IfsSystem {
    config: VertexConfiguration,
    alpha: f64,
    boosts: Vec<SpinBoost>,
}

impl IfsSystem {
    /// `α ∈ [0, 1)`; `α = 0` gives identity maps chosen uniformly.
    pub fn new(config: VertexConfiguration, alpha: f64) -> Result<Self, IfsError> {
        let (balanced, residual) = check_balanced(&config);
        if !balanced {
            return Err(IfsError::Unbalanced {
                name: config.name().to_string(),
                residual,
            });
        }
        let boosts = config
            .vertices()
            .iter()
            .map(|n| SpinBoost::new(alpha, n.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            config,
            alpha,
            boosts,
        })
    }

    pub fn config(&self) -> &VertexConfiguration {
        &self.config
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn boosts(&self) -> &[SpinBoost] {
        &self.boosts
    }

    pub fn len(&self) -> usize {
        self.boosts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boosts.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.config.ambient_dim()
    }

    /// `Z(α) = N(1 + α²)`.
    pub fn normalization(&self) -> f64 {
        self.len() as f64 * (1.0 + self.alpha * self.alpha)
    }

    pub fn probabilities_into(&self, x: &[f64], out: &mut [f64]) {
        let a = self.alpha;
        let z = self.normalization();
        for (p, n) in out.iter_mut().zip(self.config.vertices()) {
            *p = (1.0 + a * a + 2.0 * a * dot(n, x)) / z;
        }
    }

    pub fn probabilities(&self, x: &[f64]) -> Vec<f64> {
        let mut p = vec![0.0; self.len()];
        self.probabilities_into(x, &mut p);
        p
    }

    /// Inverse CDF of `p(x)` at `u ∈ [0, 1)`.
    pub fn choose(&self, x: &[f64], u: f64) -> usize {
        let a = self.alpha;
        let z = self.normalization();
        let mut acc = 0.0;
        for (i, n) in self.config.vertices().iter().enumerate() {
            acc += (1.0 + a * a + 2.0 * a * dot(n, x)) / z;
            if u < acc {
                return i;
            }
        }
        self.len() - 1
    }

    /// One chaos-game step in place; `scratch` has the ambient dimension.
    /// Returns the index of the applied map.
    pub fn step<R: Rng>(&self, x: &mut [f64], scratch: &mut [f64], rng: &mut R) -> usize {
        let i = self.choose(x, rng.random::<f64>());
        self.boosts[i].apply_into(x, scratch);
        let r = norm(scratch);
        for (xi, si) in x.iter_mut().zip(scratch.iter()) {
            *xi = si / r;
        }
        i
    }

    fn start(&self, x0: Option<&[f64]>) -> Result<Vec<f64>, IfsError> {
        let x = match x0 {
            Some(x) => x.to_vec(),
            None => self.config.vertices()[0].clone(),
        };
        if x.len() != self.ambient_dim() {
            return Err(IfsError::DimensionMismatch {
                expected: self.ambient_dim(),
                got: x.len(),
            });
        }
        let r = norm(&x);
        if (r - 1.0).abs() > tol::UNIT_NORM {
            return Err(ConformalError::NotOnSphere(r).into());
        }
        Ok(x)
    }

    /// Streams `count` points of chain `chain` to `visit(step, map_index, x)`
    /// after `burn_in` discarded steps.
    pub fn run_with<F>(&self, opts: &RunOptions, chain: u64, count: usize, mut visit: F) -> Result<(), IfsError>
    where
        F: FnMut(usize, usize, &[f64]),
    {
        let mut x = self.start(opts.x0.as_deref())?;
        let mut scratch = vec![0.0; x.len()];
        let mut rng = chain_rng(opts.seed, chain);
        for _ in 0..opts.burn_in {
            self.step(&mut x, &mut scratch, &mut rng);
        }
        for k in 0..count {
            let i = self.step(&mut x, &mut scratch, &mut rng);
            visit(k, i, &x);
        }
        Ok(())
    }

    /// Single chain (chain index 0).
    pub fn run(&self, opts: &RunOptions) -> Result<SampleRun, IfsError> {
        self.run_chains(opts, 1)
    }

    /// `chains` independent chains in parallel, splitting `opts.count`
    /// between them; records are ordered by `(chain, step)`.
    pub fn run_chains(&self, opts: &RunOptions, chains: usize) -> Result<SampleRun, IfsError> {
        if opts.count == 0 {
            return Err(IfsError::ZeroCount);
        }
        if chains == 0 {
            return Err(IfsError::ZeroChains);
        }
        let parts = (0..chains)
            .into_par_iter()
            .map(|c| {
                let n = chain_share(opts.count, chains, c);
                let mut part = SampleRun::empty(opts.seed, self.ambient_dim());
                part.reserve(n);
                self.run_with(opts, c as u64, n, |k, i, x| part.push(c as u32, k as u64, i as u32, x))?;
                Ok(part)
            })
            .collect::<Result<Vec<_>, IfsError>>()?;
        let mut run = SampleRun::empty(opts.seed, self.ambient_dim());
        for p in parts {
            run.append(p);
        }
        Ok(run)
    }

    /// Counts points per chain without storing them; `pred` selects points.
    pub fn count_chains<P>(&self, opts: &RunOptions, chains: usize, pred: P) -> Result<u64, IfsError>
    where
        P: Fn(&[f64]) -> bool + Sync,
    {
        if chains == 0 {
            return Err(IfsError::ZeroChains);
        }
        (0..chains)
            .into_par_iter()
            .map(|c| {
                let mut hits = 0u64;
                let n = chain_share(opts.count, chains, c);
                self.run_with(opts, c as u64, n, |_, _, x| hits += pred(x) as u64)?;
                Ok(hits)
            })
            .sum()
    }
}

fn chain_share(count: usize, chains: usize, c: usize) -> usize {
    count / chains + usize::from(c < count % chains)
}

/// Independent stream `chain` of the generator seeded by `seed`.
pub fn chain_rng(seed: u64, chain: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chain);
    rng
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub count: usize,
    pub seed: u64,
    pub burn_in: usize,
    /// Starting point; the first vertex when `None`.
    pub x0: Option<Vec<f64>>,
}

impl RunOptions {
    pub fn new(count: usize, seed: u64) -> Self {
        Self {
            count,
            seed,
            burn_in: DEFAULT_BURN_IN,
            x0: None,
        }
    }

    pub fn burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }

    pub fn x0(mut self, x0: Vec<f64>) -> Self {
        self.x0 = Some(x0);
        self
    }
}

/// Recorded chaos-game output, stored column-wise.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRun {
    pub seed: u64,
    ambient_dim: usize,
    chain: Vec<u32>,
    step: Vec<u64>,
    map_index: Vec<u32>,
    coords: Vec<f64>,
}

impl SampleRun {
    fn empty(seed: u64, ambient_dim: usize) -> Self {
        Self {
            seed,
            ambient_dim,
            chain: Vec::new(),
            step: Vec::new(),
            map_index: Vec::new(),
            coords: Vec::new(),
        }
    }

    fn reserve(&mut self, n: usize) {
        self.chain.reserve(n);
        self.step.reserve(n);
        self.map_index.reserve(n);
        self.coords.reserve(n * self.ambient_dim);
    }

    fn push(&mut self, chain: u32, step: u64, map_index: u32, x: &[f64]) {
        self.chain.push(chain);
        self.step.push(step);
        self.map_index.push(map_index);
        self.coords.extend_from_slice(x);
    }

    fn append(&mut self, mut other: Self) {
        self.chain.append(&mut other.chain);
        self.step.append(&mut other.step);
        self.map_index.append(&mut other.map_index);
        self.coords.append(&mut other.coords);
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn point(&self, k: usize) -> &[f64] {
        &self.coords[k * self.ambient_dim..(k + 1) * self.ambient_dim]
    }

    pub fn chain(&self, k: usize) -> u32 {
        self.chain[k]
    }

    pub fn step(&self, k: usize) -> u64 {
        self.step[k]
    }

    pub fn map_index(&self, k: usize) -> u32 {
        self.map_index[k]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.ambient_dim)
    }

    pub fn map_indices(&self) -> &[u32] {
        &self.map_index
    }
}

/// Points with `lo < x[axis] < hi`, with that coordinate removed.
pub fn slice_project<'a, I>(points: I, axis: usize, lo: f64, hi: f64) -> Vec<Vec<f64>>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    points
        .into_iter()
        .filter(|x| lo < x[axis] && x[axis] < hi)
        .map(|x| {
            x.iter()
                .enumerate()
                .filter(|&(j, _)| j != axis)
                .map(|(_, &c)| c)
                .collect()
        })
        .collect()
}
