#![allow(dead_code)]

use qfract::clifford::{Multivector, Signature};
use qfract::conformal::SpinBoost;
use qfract::ifs::chain_rng;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    chain_rng(seed, 0)
}

/// Signatures exercised by the algebra suites, up to five generators.
pub fn signatures() -> Vec<Signature> {
    let mut out = Vec::new();
    for n in 1..=5 {
        for q in 0..=n {
            out.push(Signature::new(n - q, q).unwrap());
        }
    }
    out
}

pub fn random_mv(sig: Signature, rng: &mut ChaCha8Rng) -> Multivector {
    let c = (0..sig.blade_count()).map(|_| rng.random_range(-1.0..1.0)).collect();
    Multivector::from_coeffs(sig, c).unwrap()
}

/// Random element with only even blades.
pub fn random_even(sig: Signature, rng: &mut ChaCha8Rng) -> Multivector {
    let c = (0..sig.blade_count())
        .map(|m: usize| if m.count_ones() % 2 == 0 { rng.random_range(-1.0..1.0) } else { 0.0 })
        .collect();
    Multivector::from_coeffs(sig, c).unwrap()
}

pub fn unit_vector(d: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
    let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    v.into_iter().map(|c| c / r).collect()
}

/// Uniform point of the open ball `B^d`.
pub fn ball_point(d: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let r = rng.random::<f64>().powf(1.0 / d as f64) * 0.999;
    unit_vector(d, rng).into_iter().map(|c| c * r).collect()
}

pub fn random_boost(d: usize, max_alpha: f64, rng: &mut ChaCha8Rng) -> SpinBoost {
    SpinBoost::new(rng.random_range(0.0..max_alpha), unit_vector(d, rng)).unwrap()
}

/// Rotor `u v` for unit vectors `u, v`: a rotation in the even algebra.
pub fn random_rotor(sig: Signature, rng: &mut ChaCha8Rng) -> Multivector {
    let d = sig.dim();
    let u = Multivector::vector(sig, &unit_vector(d, rng)).unwrap();
    let v = Multivector::vector(sig, &unit_vector(d, rng)).unwrap();
    &u * &v
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Orthonormal basis of the tangent space of `S^{d-1}` at `x`.
pub fn tangent_basis(x: &[f64]) -> Vec<Vec<f64>> {
    let d = x.len();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for e in 0..d {
        let mut v = vec![0.0; d];
        v[e] = 1.0;
        let mut w: Vec<f64> = v.iter().zip(x).map(|(vi, xi)| vi - dot(&v, x) * xi).collect();
        for b in &basis {
            let c = dot(&w, b);
            w.iter_mut().zip(b).for_each(|(wi, bi)| *wi -= c * bi);
        }
        let r = dot(&w, &w).sqrt();
        if r > 1e-6 {
            basis.push(w.into_iter().map(|c| c / r).collect());
        }
        if basis.len() == d - 1 {
            break;
        }
    }
    basis
}

/// `sqrt(det(JᵀJ))` of the map restricted to `S^{d-1}` at `x`, by central
/// differences along great circles.
pub fn fd_surface_jacobian(map: impl Fn(&[f64]) -> Vec<f64>, x: &[f64], h: f64) -> f64 {
    let cols: Vec<Vec<f64>> = tangent_basis(x)
        .iter()
        .map(|t| {
            let c = |s: f64| -> Vec<f64> { x.iter().zip(t).map(|(xi, ti)| s.cos() * xi + s.sin() * ti).collect() };
            let (p, m) = (map(&c(h)), map(&c(-h)));
            p.iter().zip(&m).map(|(a, b)| (a - b) / (2.0 * h)).collect()
        })
        .collect();
    let k = cols.len();
    let gram = nalgebra::DMatrix::from_fn(k, k, |i, j| dot(&cols[i], &cols[j]));
    gram.determinant().sqrt()
}

/// `|det J|` of a map of `R^d` by central differences.
pub fn fd_volume_jacobian(map: impl Fn(&[f64]) -> Vec<f64>, x: &[f64], h: f64) -> f64 {
    let d = x.len();
    let j = nalgebra::DMatrix::from_fn(d, d, |i, k| {
        let mut p = x.to_vec();
        let mut m = x.to_vec();
        p[k] += h;
        m[k] -= h;
        (map(&p)[i] - map(&m)[i]) / (2.0 * h)
    });
    j.determinant().abs()
}

/// `e0 ↦ -e0` on `Cl(1, n+1)`: negates blades containing generator 0.
pub fn flip_e0(x: &Multivector) -> Multivector {
    let c = x
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, &v)| if m & 1 == 1 { -v } else { v })
        .collect();
    Multivector::from_coeffs(x.signature(), c).unwrap()
}
