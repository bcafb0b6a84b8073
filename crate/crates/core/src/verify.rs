//! Quick self-checks per module, run by `qfract verify --suite <name>`.

use std::f64::consts::PI;

use crate::clifford::{Multivector, PairElement, Paravector, Signature};
use crate::conformal::{act, stereo_project, SpinBoost};
use crate::fracdim::{cantor_points, correlation_integral_sampled, fit_dimension, log_radii};
use crate::ifs::{IfsSystem, RunOptions};
use crate::markov::{
    density_exact, density_grid_iterate, integrate_density, trace_fixed_point, trace_operator, DensitySurface,
    SphereGrid,
};
use crate::polytopes::{
    check_balanced, coxeter_tori, find_congruence, icosian_generators_first, icosian_group, platonic, polygon,
    polytope4, Platonic, Polytope4, TorusFamily,
};

pub const SUITES: [&str; 6] = ["clifford", "conformal", "polytopes", "ifs", "markov", "fracdim"];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(suite: &'static str, name: &'static str, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        suite,
        name,
        pass,
        detail: detail.into(),
    }
}

/// Runs one suite, or all of them for `"all"`. `None` for an unknown name.
pub fn run_suite(name: &str) -> Option<Vec<Check>> {
    match name {
        "all" => Some(SUITES.iter().flat_map(|s| run_suite(s).unwrap()).collect()),
        "clifford" => Some(clifford()),
        "conformal" => Some(conformal()),
        "polytopes" => Some(polytopes()),
        "ifs" => Some(ifs()),
        "markov" => Some(markov()),
        "fracdim" => Some(fracdim()),
        _ => None,
    }
}

fn clifford() -> Vec<Check> {
    const S: &str = "clifford";
    let mut out = Vec::new();
    let sig = Signature::new(0, 2).unwrap();
    let (i, j) = (Multivector::generator(sig, 0).unwrap(), Multivector::generator(sig, 1).unwrap());
    let k = &i * &j;
    let minus_one = Multivector::scalar(sig, -1.0);
    out.push(check(
        S,
        "quaternion table in Cl(0,2)",
        (&i * &i) == minus_one && (&k * &k) == minus_one && (&j * &i) == k.scale(-1.0),
        "",
    ));
    let sig3 = Signature::euclidean(3).unwrap();
    let a = Multivector::from_coeffs(sig3, (0..8).map(|t| 0.3 + 0.1 * t as f64).collect()).unwrap();
    let b = Multivector::from_coeffs(sig3, (0..8).map(|t| 1.0 - 0.2 * t as f64).collect()).unwrap();
    let err = ((&a * &b).trace() - (&b * &a).trace()).abs();
    out.push(check(S, "Φ(ab) = Φ(ba)", err < 1e-12, format!("{err:e}")));
    let tau_err = (&a * &b).tau().distance(&(&b.tau() * &a.tau()));
    out.push(check(S, "τ(ab) = τ(b)τ(a)", tau_err < 1e-12, format!("{tau_err:e}")));
    let p = Paravector::new(1.0, vec![0.8, 0.0, 0.0]);
    let r = p.sqrt().map(|s| {
        let m = s.to_multivector().unwrap();
        (&m * &m).distance(&p.to_multivector().unwrap())
    });
    out.push(check(
        S,
        "paravector square root",
        matches!(r, Ok(e) if e < 1e-12),
        format!("{r:?}"),
    ));
    let big = Signature::new(1, 3).unwrap();
    let x = Multivector::from_coeffs(big, (0..16).map(|t| (t as f64 * 0.7).sin()).collect()).unwrap();
    let y = Multivector::from_coeffs(big, (0..16).map(|t| (t as f64 * 1.3).cos()).collect()).unwrap();
    let hom = PairElement::embed(&(&x * &y))
        .unwrap()
        .distance(&PairElement::embed(&x).unwrap().product(&PairElement::embed(&y).unwrap()).unwrap());
    out.push(check(S, "pair embedding is multiplicative", hom < 1e-12, format!("{hom:e}")));
    out
}

fn conformal() -> Vec<Check> {
    const S: &str = "conformal";
    let mut out = Vec::new();
    let b = SpinBoost::new(0.6, vec![0.0, 0.6, 0.8]).unwrap();
    let x = [0.48, 0.6, 0.64];
    let closed = b.apply(&x);
    let clifford = act(&b.multivector(), &x).unwrap();
    let lorentz = b.lorentz().apply(&x);
    let e1 = dist(&closed, &clifford).max(dist(&closed, &lorentz));
    out.push(check(S, "closed form = Clifford = Lorentz", e1 < 1e-12, format!("{e1:e}")));
    let back = dist(&b.apply_inverse(&closed), &x);
    out.push(check(S, "inverse map", back < 1e-13, format!("{back:e}")));
    let fixed = dist(&b.apply(b.axis()), b.axis());
    out.push(check(S, "axis is fixed", fixed < 1e-14, format!("{fixed:e}")));
    let q = stereo_project(b.axis(), &closed).unwrap();
    let q0 = stereo_project(b.axis(), &x).unwrap();
    let ratio = dist(&q, &[0.0; 3]) / dist(&q0, &[0.0; 3]);
    let expected = 1.6 / 0.4;
    out.push(check(
        S,
        "stereographic dilation (1+α)/(1-α)",
        (ratio - expected).abs() < 1e-12,
        format!("{ratio}"),
    ));
    out
}

fn polytopes() -> Vec<Check> {
    const S: &str = "polytopes";
    let mut out = Vec::new();
    let counts: Vec<(usize, usize)> = [Polytope4::Cell16, Polytope4::Cell8, Polytope4::Cell24, Polytope4::Cell600]
        .into_iter()
        .map(|p| {
            let c = polytope4(p);
            (c.len(), c.edge_count())
        })
        .collect();
    out.push(check(
        S,
        "4-polytope vertex and edge counts",
        counts == [(8, 24), (16, 32), (24, 96), (120, 720)],
        format!("{counts:?}"),
    ));
    let worst = Platonic::ALL
        .into_iter()
        .map(|p| check_balanced(&platonic(p)).1)
        .chain([check_balanced(&polygon(5).unwrap()).1])
        .fold(0.0, f64::max);
    out.push(check(S, "balance", worst < 1e-10, format!("{worst:e}")));
    let (s, t) = icosian_generators_first();
    let n = icosian_group(&[s, t]).map(|g| g.len());
    out.push(check(S, "icosian closure has 120 elements", n == Ok(120), format!("{n:?}")));
    let union: Vec<Vec<f64>> = TorusFamily::ALL
        .into_iter()
        .flat_map(coxeter_tori)
        .map(|p| p.into_inner())
        .collect();
    let congruent = find_congruence(&union, polytope4(Polytope4::Cell600).vertices(), 1e-6).is_some();
    out.push(check(S, "Coxeter tori congruent to the 600-cell", congruent, ""));
    out
}

fn ifs() -> Vec<Check> {
    const S: &str = "ifs";
    let mut out = Vec::new();
    let sys = IfsSystem::new(polygon(5).unwrap(), 0.58).unwrap();
    let p = sys.probabilities(&sys.config().vertices()[0].clone());
    let sum: f64 = p.iter().sum();
    out.push(check(S, "probabilities sum to 1", (sum - 1.0).abs() < 1e-13, format!("{sum}")));
    let opts = RunOptions::new(10_000, 1);
    let (a, b) = (sys.run(&opts), sys.run(&opts));
    out.push(check(S, "seeded replay", a.is_ok() && a == b, ""));
    let drift = a
        .map(|r| r.points().map(|x| (dist(x, &[0.0, 0.0]) - 1.0).abs()).fold(0.0, f64::max))
        .unwrap_or(f64::INFINITY);
    out.push(check(S, "points stay on the circle", drift < 1e-9, format!("{drift:e}")));
    out
}

fn markov() -> Vec<Check> {
    const S: &str = "markov";
    let mut out = Vec::new();
    let pair = IfsSystem::new(polygon(2).unwrap(), 0.5).unwrap();
    let f1 = density_exact(&pair, &[0.0, 1.0], 1).unwrap_or(f64::NAN);
    out.push(check(S, "antipodal f₁ = 0.216", (f1 - 0.216).abs() < 1e-12, format!("{f1}")));
    let sys = IfsSystem::new(polygon(5).unwrap(), 0.58).unwrap();
    let mut surf = DensitySurface::full(&sys, SphereGrid::Circle { m: 2048 }).unwrap();
    for _ in 0..3 {
        surf = density_grid_iterate(&sys, &surf).unwrap();
    }
    let total = integrate_density(&surf).unwrap();
    out.push(check(
        S,
        "conservation ∫f₃ = 2π",
        (total / (2.0 * PI) - 1.0).abs() < 1e-2,
        format!("{total}"),
    ));
    let oct = IfsSystem::new(platonic(Platonic::Octahedron), 0.5).unwrap();
    let op = trace_operator(&oct).unwrap();
    let ev = op.vector_eigenvalues();
    let e = ev.iter().map(|v| (v - 11.0 / 15.0).abs()).fold(0.0, f64::max);
    out.push(check(S, "octahedron eigenvalues 11/15", e < 1e-12, format!("{ev:?}")));
    let fp = trace_fixed_point(&op, &[1.0, 0.9, 0.0, 0.0]);
    let ok = matches!(&fp, Ok(f) if (f.element[0] - 1.0).abs() < 1e-12 && f.element[1].abs() < 1e-11);
    out.push(check(S, "trace fixed point is 1", ok, ""));
    out
}

fn fracdim() -> Vec<Check> {
    const S: &str = "fracdim";
    let pts = cantor_points(20_000, 1);
    let radii = log_radii(1e-3, 1e-1, 20);
    let d = correlation_integral_sampled(&pts, 1, &radii, 4000, 1)
        .ok()
        .and_then(|c| fit_dimension(&c, 1e-3, 1e-1).ok())
        .map(|f| f.dimension)
        .unwrap_or(f64::NAN);
    vec![check(S, "Cantor set D ≈ log 2/log 3", (d - 0.63).abs() < 0.03, format!("{d}"))]
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
