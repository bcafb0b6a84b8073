//! The `qfract` command line: argument parsing, dispatch, manifests.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 failed numerical check.

pub mod export;
mod manifest;

pub use manifest::{manifest_path, RunManifest, MANIFEST_SCHEMA_VERSION};

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fracdim::{correlation_integral, correlation_integral_sampled, fit_dimension, log_radii};
use crate::ifs::{IfsSystem, RunOptions, DEFAULT_BURN_IN};
use crate::markov::{
    density_grid_iterate, integrate_density, DensitySurface, SphereGrid, SurfaceSpec, DEFAULT_SURFACE_RESOLUTION,
};
use crate::polytopes::{by_name, catalog};
use crate::verify::run_suite;
use export::{coordinate_header, read_coordinates, write_csv, write_json, write_pgm};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Io(_) => 1,
            Self::CheckFailed(_) => 2,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "qfract", version, about = "Möbius iterated function systems on spheres", args_override_self = true)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "QFRACT_THREADS")]
    pub threads: Option<usize>,
    /// JSON object of flag values for `sample`, `density` or `dim`; flags
    /// given on the command line take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// List configurations or print one as CSV.
    Polytope(PolytopeArgs),
    /// Run the chaos game and write the points as CSV.
    Sample(SampleArgs),
    /// Iterate the transfer operator and write f_k on a surface.
    Density(DensityArgs),
    /// Correlation integral and dimension of a point set.
    Dim(DimArgs),
    /// Run self-check suites or replay a manifest.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct PolytopeArgs {
    #[command(subcommand)]
    pub action: PolytopeAction,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
pub enum PolytopeAction {
    /// Names, vertex counts and dimensions.
    List,
    /// Vertices of one configuration as CSV.
    Show {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub polytope: String,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 100_000)]
    pub points: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    pub burn_in: usize,
    /// Independent chains; the output depends on this, not on --threads.
    #[arg(long, default_value_t = 1)]
    pub chains: usize,
    /// Keep points with lo < x_axis < hi and drop that coordinate
    /// (`axis:lo:hi`, axis 1-based).
    #[arg(long)]
    pub slice: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct DensityArgs {
    #[arg(long)]
    pub polytope: String,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub depth: usize,
    /// `sphere`, `slice:<axis>:<value>` or `torus:<aa|ab|ba|bb>`.
    #[arg(long, default_value = "sphere")]
    pub surface: String,
    /// Full-sphere grid: `M` (S¹), `COLSxROWS` (S²), `CHIxTHETAxPHI` (S³).
    #[arg(long)]
    pub grid: Option<String>,
    /// Slice or torus resolution `COLSxROWS`.
    #[arg(long)]
    pub resolution: Option<String>,
    /// Evaluate by exact recursion instead of grid iteration.
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub out: PathBuf,
    /// 16-bit PGM of log10(f+1).
    #[arg(long)]
    pub image: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct DimArgs {
    /// CSV with coordinate columns named x1, x2, ...
    #[arg(long)]
    pub input: PathBuf,
    /// Default: 1e-3 of the bounding-box diagonal.
    #[arg(long)]
    pub rmin: Option<f64>,
    /// Default: 1e-1 of the bounding-box diagonal.
    #[arg(long)]
    pub rmax: Option<f64>,
    #[arg(long, default_value_t = 20)]
    pub bins: usize,
    /// Use this many random reference points instead of all pairs.
    #[arg(long)]
    pub subsample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Curve CSV (r, C); the fit goes to stdout as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    /// all, clifford, conformal, polytopes, ifs, markov or fracdim.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Replay a run manifest and compare outputs byte for byte.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

/// Parses `args` (including the program name), runs, and returns the exit
/// code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match inject_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Inserts `--key value` pairs from `--config file.json` right after the
/// subcommand name, so that later command-line flags override them.
fn inject_config(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let pos = args.iter().position(|a| a == "--config");
    let inline = args
        .iter()
        .position(|a| a.to_string_lossy().starts_with("--config="));
    let (path, remove): (PathBuf, Vec<usize>) = match (pos, inline) {
        (Some(i), _) => {
            let p = args.get(i + 1).ok_or_else(|| usage("--config needs a path"))?;
            (PathBuf::from(p), vec![i, i + 1])
        }
        (None, Some(i)) => {
            let s = args[i].to_string_lossy();
            (PathBuf::from(&s["--config=".len()..]), vec![i])
        }
        (None, None) => return Ok(args),
    };
    let text = std::fs::read_to_string(&path)?;
    let obj: serde_json::Map<String, serde_json::Value> =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let mut rest: Vec<OsString> = args
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !remove.contains(i))
        .map(|(_, a)| a)
        .collect();
    let sub = rest
        .iter()
        .position(|a| ["sample", "density", "dim"].iter().any(|s| a == s))
        .ok_or_else(|| usage("--config applies to sample, density and dim"))?;
    let mut injected = Vec::new();
    for (k, v) in obj {
        let flag = OsString::from(format!("--{}", k.replace('_', "-")));
        match v {
            serde_json::Value::Bool(true) => injected.push(flag),
            serde_json::Value::Bool(false) | serde_json::Value::Null => {}
            serde_json::Value::String(s) => injected.extend([flag, s.into()]),
            serde_json::Value::Number(n) => injected.extend([flag, n.to_string().into()]),
            other => return Err(usage(format!("config key `{k}`: unsupported value {other}"))),
        }
    }
    rest.splice(sub + 1..sub + 1, injected);
    Ok(rest)
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        // Fails only if a pool already exists, as in repeated in-process runs.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match &cli.command {
        Command::Polytope(a) => polytope(a),
        Command::Sample(a) => {
            let outputs = sample(a)?;
            finish_manifest(Command::Sample(a.clone()), cli.threads, outputs, None)
        }
        Command::Density(a) => {
            let (outputs, norm) = density(a)?;
            finish_manifest(Command::Density(a.clone()), cli.threads, outputs, norm)
        }
        Command::Dim(a) => {
            let outputs = dim(a)?;
            if outputs.is_empty() {
                return Ok(());
            }
            finish_manifest(Command::Dim(a.clone()), cli.threads, outputs, None)
        }
        Command::Verify(a) => verify(a, cli.threads),
    }
}

fn finish_manifest(
    command: Command,
    threads: Option<usize>,
    outputs: Vec<PathBuf>,
    norm: Option<export::ImageNormalization>,
) -> Result<(), CliError> {
    let mut m = RunManifest::new(command, threads, outputs.clone());
    m.image_normalization = norm;
    let path = manifest_path(&outputs[0]);
    m.write(&path)?;
    eprintln!("manifest: {}", path.display());
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    Ok(BufWriter::new(File::create(path)?))
}

fn polytope(a: &PolytopeArgs) -> Result<(), CliError> {
    match &a.action {
        PolytopeAction::List => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            writeln!(out, "name,vertices,sphere_dim,edges")?;
            for name in catalog() {
                let c = by_name(&name).map_err(usage)?;
                writeln!(out, "{name},{},{},{}", c.len(), c.sphere_dim(), c.edge_count())?;
            }
            Ok(())
        }
        PolytopeAction::Show { name, out } => {
            let c = by_name(name).map_err(usage)?;
            let header = coordinate_header(c.ambient_dim(), None);
            let rows = c.vertices().iter().map(|v| v.iter().map(f64::to_string).collect());
            match out {
                Some(p) => write_csv(create(p)?, &header, rows)?,
                None => write_csv(io::stdout().lock(), &header, rows)?,
            }
            Ok(())
        }
    }
}

fn parse_slice(s: &str) -> Result<(usize, f64, f64), CliError> {
    let bad = || usage(format!("bad --slice `{s}`, expected axis:lo:hi"));
    let parts: Vec<&str> = s.split(':').collect();
    let [axis, lo, hi] = parts.as_slice() else {
        return Err(bad());
    };
    let axis: usize = axis.parse().map_err(|_| bad())?;
    if axis == 0 {
        return Err(bad());
    }
    Ok((axis - 1, lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?))
}

fn sample(a: &SampleArgs) -> Result<Vec<PathBuf>, CliError> {
    let sys = IfsSystem::new(by_name(&a.polytope).map_err(usage)?, a.alpha).map_err(usage)?;
    let slice = a.slice.as_deref().map(parse_slice).transpose()?;
    if let Some((axis, _, _)) = slice {
        if axis >= sys.ambient_dim() {
            return Err(usage(format!("slice axis {} out of range", axis + 1)));
        }
    }
    let opts = RunOptions::new(a.points, a.seed).burn_in(a.burn_in);
    let run = sys.run_chains(&opts, a.chains).map_err(usage)?;
    let mut header: Vec<String> = ["chain", "step", "map_index"].map(String::from).to_vec();
    header.extend(coordinate_header(sys.ambient_dim(), slice.map(|s| s.0)));
    let rows = (0..run.len())
        .filter(|&k| slice.is_none_or(|(axis, lo, hi)| lo < run.point(k)[axis] && run.point(k)[axis] < hi))
        .map(|k| {
            let mut row = vec![run.chain(k).to_string(), run.step(k).to_string(), run.map_index(k).to_string()];
            row.extend(
                run.point(k)
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| slice.is_none_or(|s| s.0 != j))
                    .map(|(_, v)| v.to_string()),
            );
            row
        });
    write_csv(create(&a.out)?, &header, rows)?;
    Ok(vec![a.out.clone()])
}

/// `M`, `COLSxROWS` or `CHIxTHETAxPHI`.
pub fn parse_grid(s: &str) -> Result<SphereGrid, CliError> {
    let bad = || usage(format!("bad grid `{s}`"));
    let dims: Vec<usize> = s
        .split('x')
        .map(|t| t.parse::<usize>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    if dims.contains(&0) {
        return Err(bad());
    }
    match dims.as_slice() {
        [m] => Ok(SphereGrid::Circle { m: *m }),
        [cols, rows] => Ok(SphereGrid::LatLong { rows: *rows, cols: *cols }),
        [chi, theta, phi] => Ok(SphereGrid::Hyperspherical {
            chi: *chi,
            theta: *theta,
            phi: *phi,
        }),
        _ => Err(bad()),
    }
}

fn parse_resolution(s: &str) -> Result<(usize, usize), CliError> {
    match parse_grid(s)? {
        SphereGrid::LatLong { rows, cols } => Ok((rows, cols)),
        _ => Err(usage(format!("bad resolution `{s}`, expected COLSxROWS"))),
    }
}

fn density(a: &DensityArgs) -> Result<(Vec<PathBuf>, Option<export::ImageNormalization>), CliError> {
    let sys = IfsSystem::new(by_name(&a.polytope).map_err(usage)?, a.alpha).map_err(usage)?;
    let spec: SurfaceSpec = a.surface.parse().map_err(usage)?;
    let grid = a.grid.as_deref().map(parse_grid).transpose()?;
    let resolution = a
        .resolution
        .as_deref()
        .map(parse_resolution)
        .transpose()?
        .unwrap_or(DEFAULT_SURFACE_RESOLUTION);
    let mut target = spec.build(&sys, grid, resolution).map_err(usage)?;
    let surface = if a.exact {
        target.fill_exact(&sys, a.depth).map_err(usage)?;
        target
    } else {
        let g = match grid {
            Some(g) => g,
            None => {
                let n = sys.config().sphere_dim();
                SphereGrid::default_for(n).ok_or_else(|| usage(format!("no default grid for S^{n}")))?
            }
        };
        let mut full = DensitySurface::full(&sys, g).map_err(usage)?;
        for _ in 0..a.depth {
            full = density_grid_iterate(&sys, &full).map_err(usage)?;
        }
        match spec {
            SurfaceSpec::Sphere => full,
            _ => full.resample(&target).map_err(usage)?,
        }
    };
    let mut header = coordinate_header(surface.ambient_dim(), None);
    header.extend(["weight".to_string(), "f".to_string()]);
    let rows = (0..surface.len()).map(|i| {
        let mut row: Vec<String> = surface.point(i).iter().map(f64::to_string).collect();
        row.push(surface.weights.as_ref().map(|w| w[i].to_string()).unwrap_or_default());
        row.push(surface.values[i].to_string());
        row
    });
    write_csv(create(&a.out)?, &header, rows)?;
    if let Ok(total) = integrate_density(&surface) {
        eprintln!("integral of f_{}: {total}", surface.k);
    }
    let mut outputs = vec![a.out.clone()];
    let mut norm = None;
    if let Some(img) = &a.image {
        let (rows, cols) = surface
            .layout
            .ok_or_else(|| usage("this surface has no 2D layout; use a slice or torus for images"))?;
        norm = Some(write_pgm(create(img)?, rows, cols, &surface.values)?);
        outputs.push(img.clone());
    }
    Ok((outputs, norm))
}

fn dim(a: &DimArgs) -> Result<Vec<PathBuf>, CliError> {
    let (d, points) = read_coordinates(&a.input)?;
    let m = points.len() / d;
    let diameter = bounding_diagonal(&points, d);
    let rmin = a.rmin.unwrap_or(1e-3 * diameter);
    let rmax = a.rmax.unwrap_or(1e-1 * diameter);
    if !(rmin > 0.0 && rmin < rmax) || a.bins < 2 {
        return Err(usage("need 0 < rmin < rmax and at least 2 bins"));
    }
    let radii = log_radii(rmin, rmax, a.bins);
    let curve = match a.subsample {
        Some(c) => correlation_integral_sampled(&points, d, &radii, c, a.seed),
        None => correlation_integral(&points, d, &radii),
    }
    .map_err(usage)?;
    let fit = fit_dimension(&curve, rmin, rmax);
    let summary = serde_json::json!({
        "points": m,
        "dimension": fit.as_ref().ok().map(|f| f.dimension),
        "intercept": fit.as_ref().ok().map(|f| f.intercept),
        "residual": fit.as_ref().ok().map(|f| f.residual),
        "staircase": fit.as_ref().ok().map(|f| f.staircase),
        "rmin": rmin,
        "rmax": rmax,
        "error": fit.as_ref().err().map(|e| e.to_string()),
    });
    write_json(io::stdout().lock(), &summary)?;
    let Some(out) = &a.out else {
        return Ok(vec![]);
    };
    let rows = curve
        .radii
        .iter()
        .zip(&curve.values)
        .map(|(r, c)| vec![r.to_string(), c.to_string()]);
    write_csv(create(out)?, &["r".to_string(), "C".to_string()], rows)?;
    Ok(vec![out.clone()])
}

fn bounding_diagonal(points: &[f64], d: usize) -> f64 {
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for p in points.chunks_exact(d) {
        for j in 0..d {
            lo[j] = lo[j].min(p[j]);
            hi[j] = hi[j].max(p[j]);
        }
    }
    lo.iter().zip(&hi).map(|(l, h)| (h - l) * (h - l)).sum::<f64>().sqrt()
}

fn verify(a: &VerifyArgs, threads: Option<usize>) -> Result<(), CliError> {
    if let Some(path) = &a.manifest {
        return replay(path, threads);
    }
    let checks = run_suite(&a.suite).ok_or_else(|| usage(format!("unknown suite `{}`", a.suite)))?;
    let mut failed = 0;
    for c in &checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        println!("{tag} {}/{} {}", c.suite, c.name, c.detail);
        failed += usize::from(!c.pass);
    }
    if failed > 0 {
        return Err(CliError::CheckFailed(format!("{failed} of {} checks failed", checks.len())));
    }
    Ok(())
}

/// Re-runs the manifest's command into a scratch directory and compares
/// every output byte for byte.
fn replay(path: &Path, threads: Option<usize>) -> Result<(), CliError> {
    let m = RunManifest::read(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let dir = tempfile::tempdir()?;
    let fresh = |p: &Path| dir.path().join(p.file_name().unwrap_or(p.as_os_str()));
    let command = match m.command.clone() {
        Command::Sample(mut a) => {
            a.out = fresh(&a.out);
            Command::Sample(a)
        }
        Command::Density(mut a) => {
            a.out = fresh(&a.out);
            a.image = a.image.as_deref().map(fresh);
            Command::Density(a)
        }
        Command::Dim(mut a) => {
            a.out = a.out.as_deref().map(fresh);
            a.input = resolve(base, &a.input);
            Command::Dim(a)
        }
        _ => return Err(usage("manifest does not describe a replayable command")),
    };
    let cli = Cli {
        threads: threads.or(m.threads),
        config: None,
        command,
    };
    execute(&cli)?;
    let mut mismatched = Vec::new();
    for out in &m.outputs {
        let original = std::fs::read(resolve(base, out))?;
        let again = std::fs::read(fresh(out))?;
        let same = original == again;
        println!("{} {}", if same { "SAME" } else { "DIFF" }, out.display());
        if !same {
            mismatched.push(out.display().to_string());
        }
    }
    if mismatched.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(format!("outputs differ: {}", mismatched.join(", "))))
    }
}

/// Relative paths in a manifest are tried as given, then next to the
/// manifest.
fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() || p.exists() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}
