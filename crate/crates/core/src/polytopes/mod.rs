//! Detector configurations: balanced sets of unit vectors on `Sⁿ`.

mod coxeter;
mod quaternion;

pub use coxeter::{coxeter_constants, coxeter_tori, find_congruence, same_point_set, TorusFamily};
pub use quaternion::{
    golden_ratio, icosian_generators_first, icosian_generators_second, icosian_group,
    inverse_golden_ratio, Quaternion, GROUP_CLOSURE_CAP,
};

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolytopeError {
    #[error("a polygon needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("unknown configuration `{0}`")]
    UnknownName(String),
    #[error("empty vertex set")]
    Empty,
    #[error("vertex {index} has dimension {got}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, got: usize },
    #[error("vertex {index} has norm {norm}")]
    NonUnitVertex { index: usize, norm: f64 },
    #[error("vertices {0} and {1} coincide")]
    DuplicateVertex(usize, usize),
    #[error("generator has norm {0}, expected 1")]
    NonUnitGenerator(f64),
    #[error("closure exceeded {0} elements")]
    GroupTooLarge(usize),
}

/// `N` unit vectors in `R^{n+1}`, the directions of the detectors.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexConfiguration {
    name: String,
    vertices: Vec<Vec<f64>>,
}

impl VertexConfiguration {
    /// Validates unit norm and pairwise distinctness. Balance is not required
    /// here; see [`check_balanced`].
    pub fn new(name: impl Into<String>, vertices: Vec<Vec<f64>>) -> Result<Self, PolytopeError> {
        let first = vertices.first().ok_or(PolytopeError::Empty)?;
        let expected = first.len();
        for (index, v) in vertices.iter().enumerate() {
            if v.len() != expected || expected < 2 {
                return Err(PolytopeError::DimensionMismatch {
                    index,
                    expected: expected.max(2),
                    got: v.len(),
                });
            }
            let norm = norm(v);
            if (norm - 1.0).abs() > tol::UNIT_NORM {
                return Err(PolytopeError::NonUnitVertex { index, norm });
            }
        }
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if distance(&vertices[i], &vertices[j]) < tol::VERTEX_DISTINCT {
                    return Err(PolytopeError::DuplicateVertex(i, j));
                }
            }
        }
        Ok(Self {
            name: name.into(),
            vertices,
        })
    }

    fn normalized(name: &str, raw: Vec<Vec<f64>>) -> Result<Self, PolytopeError> {
        let vertices = raw
            .into_iter()
            .map(|v| {
                let r = norm(&v);
                v.into_iter().map(|c| c / r).collect()
            })
            .collect();
        Self::new(name, vertices)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Ambient dimension `n + 1`.
    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }

    /// Sphere dimension `n`.
    pub fn sphere_dim(&self) -> usize {
        self.ambient_dim() - 1
    }

    /// `max |Σ nᵢnᵢᵀ - N/(n+1) I|`.
    pub fn isotropy_residual(&self) -> f64 {
        let d = self.ambient_dim();
        let mut gram = DMatrix::<f64>::zeros(d, d);
        for v in &self.vertices {
            for i in 0..d {
                for j in 0..d {
                    gram[(i, j)] += v[i] * v[j];
                }
            }
        }
        let target = self.len() as f64 / d as f64;
        (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| {
                let t = if i == j { target } else { 0.0 };
                (gram[(i, j)] - t).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Smallest chordal distance between two distinct vertices.
    pub fn min_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                best = best.min(distance(&self.vertices[i], &self.vertices[j]));
            }
        }
        best
    }

    /// Vertex pairs at the minimal chordal distance.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let dmin = self.min_distance();
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if (distance(&self.vertices[i], &self.vertices[j]) - dmin).abs() < tol::EDGE_LENGTH {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }
}

/// Returns whether `|Σ nᵢ| < 1e-10`, together with `|Σ nᵢ|`.
pub fn check_balanced(config: &VertexConfiguration) -> (bool, f64) {
    let mut sum = vec![0.0; config.ambient_dim()];
    for v in config.vertices() {
        for (s, c) in sum.iter_mut().zip(v) {
            *s += c;
        }
    }
    let residual = norm(&sum);
    (residual < tol::BALANCE, residual)
}

/// Regular `N`-gon on `S¹` with vertices at angles `2πk/N`.
pub fn polygon(n: usize) -> Result<VertexConfiguration, PolytopeError> {
    if n < 2 {
        return Err(PolytopeError::TooFewVertices(n));
    }
    let vertices = (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            vec![t.cos(), t.sin()]
        })
        .collect();
    VertexConfiguration::new(polygon_name(n), vertices)
}

fn polygon_name(n: usize) -> String {
    match n {
        2 => "antipodal".into(),
        3 => "triangle".into(),
        4 => "square".into(),
        5 => "pentagon".into(),
        6 => "hexagon".into(),
        _ => format!("polygon{n}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Platonic {
    Tetrahedron,
    Octahedron,
    Cube,
    Icosahedron,
    Dodecahedron,
}

impl Platonic {
    pub const ALL: [Self; 5] = [
        Self::Tetrahedron,
        Self::Octahedron,
        Self::Cube,
        Self::Icosahedron,
        Self::Dodecahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Tetrahedron => "tetrahedron",
            Self::Octahedron => "octahedron",
            Self::Cube => "cube",
            Self::Icosahedron => "icosahedron",
            Self::Dodecahedron => "dodecahedron",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polytope4 {
    Cell5,
    Cell16,
    Cell8,
    Cell24,
    Cell600,
    Cell120,
}

impl Polytope4 {
    pub const ALL: [Self; 6] = [
        Self::Cell5,
        Self::Cell16,
        Self::Cell8,
        Self::Cell24,
        Self::Cell600,
        Self::Cell120,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Cell5 => "cell5",
            Self::Cell16 => "cell16",
            Self::Cell8 => "cell8",
            Self::Cell24 => "cell24",
            Self::Cell600 => "cell600",
            Self::Cell120 => "cell120",
        }
    }
}

macro_rules! named_enum {
    ($t:ty) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $t {
            type Err = PolytopeError;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                Self::ALL
                    .into_iter()
                    .find(|p| p.name() == s)
                    .ok_or_else(|| PolytopeError::UnknownName(s.to_string()))
            }
        }
    };
}

named_enum!(Platonic);
named_enum!(Polytope4);

fn cyclic3(v: [f64; 3]) -> [[f64; 3]; 3] {
    [v, [v[2], v[0], v[1]], [v[1], v[2], v[0]]]
}

fn sign_choices<const N: usize>(base: [f64; N]) -> Vec<[f64; N]> {
    let nonzero: Vec<usize> = (0..N).filter(|&i| base[i] != 0.0).collect();
    (0..1usize << nonzero.len())
        .map(|bits| {
            let mut v = base;
            for (b, &i) in nonzero.iter().enumerate() {
                if bits & (1 << b) != 0 {
                    v[i] = -v[i];
                }
            }
            v
        })
        .collect()
}

pub fn platonic(solid: Platonic) -> VertexConfiguration {
    let phi = golden_ratio();
    let raw: Vec<Vec<f64>> = match solid {
        Platonic::Tetrahedron => vec![
            vec![1.0, 1.0, 1.0],
            vec![1.0, -1.0, -1.0],
            vec![-1.0, 1.0, -1.0],
            vec![-1.0, -1.0, 1.0],
        ],
        Platonic::Octahedron => (0..3)
            .flat_map(|i| {
                [1.0, -1.0].map(|s| {
                    let mut v = vec![0.0; 3];
                    v[i] = s;
                    v
                })
            })
            .collect(),
        Platonic::Cube => sign_choices([1.0, 1.0, 1.0]).into_iter().map(Vec::from).collect(),
        Platonic::Icosahedron => sign_choices([0.0, 1.0, phi])
            .into_iter()
            .flat_map(cyclic3)
            .map(Vec::from)
            .collect(),
        Platonic::Dodecahedron => sign_choices([1.0, 1.0, 1.0])
            .into_iter()
            .chain(sign_choices([0.0, 1.0 / phi, phi]).into_iter().flat_map(cyclic3))
            .map(Vec::from)
            .collect(),
    };
    VertexConfiguration::normalized(solid.name(), raw).expect("static vertex set")
}

/// The `8 + 16 + 96` unit quaternions of the 600-cell: `±1, ±i, ±j, ±k`,
/// `½(±1, ±1, ±1, ±1)` and even permutations of `½(±φ, ±1, ±φ⁻¹, 0)`.
fn cell600_vertices() -> Vec<Vec<f64>> {
    let (phi, inv) = (golden_ratio(), inverse_golden_ratio());
    let mut out = unit_axes(4);
    out.extend(sign_choices([0.5; 4]).into_iter().map(Vec::from));
    for perm in even_permutations4() {
        for v in sign_choices([0.5 * phi, 0.5, 0.5 * inv, 0.0]) {
            let mut p = vec![0.0; 4];
            for (slot, &src) in perm.iter().enumerate() {
                p[slot] = v[src];
            }
            out.push(p);
        }
    }
    out
}

fn unit_axes(d: usize) -> Vec<Vec<f64>> {
    (0..d)
        .flat_map(|i| {
            [1.0, -1.0].map(move |s| {
                let mut v = vec![0.0; d];
                v[i] = s;
                v
            })
        })
        .collect()
}

fn even_permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    if distinct && inversions(&p) % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count()
}

/// Normalized centroids of the tetrahedral cells of the 600-cell, found as
/// the 4-cliques of its edge graph.
fn cell120_vertices(cell600: &VertexConfiguration) -> Vec<Vec<f64>> {
    let n = cell600.len();
    let mut adj = vec![vec![false; n]; n];
    for (i, j) in cell600.edges() {
        adj[i][j] = true;
        adj[j][i] = true;
    }
    let neighbours: Vec<Vec<usize>> = (0..n)
        .map(|i| (i + 1..n).filter(|&j| adj[i][j]).collect())
        .collect();
    let v = cell600.vertices();
    let mut out = Vec::new();
    for i in 0..n {
        for (a, &j) in neighbours[i].iter().enumerate() {
            for (b, &k) in neighbours[i].iter().enumerate().skip(a + 1) {
                if !adj[j][k] {
                    continue;
                }
                for &l in &neighbours[i][b + 1..] {
                    if adj[j][l] && adj[k][l] {
                        let c: Vec<f64> = (0..4).map(|t| v[i][t] + v[j][t] + v[k][t] + v[l][t]).collect();
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

pub fn polytope4(p: Polytope4) -> VertexConfiguration {
    let raw = match p {
        Polytope4::Cell5 => {
            // One vertex at the pole, four at w = -1/4 over a tetrahedron.
            let r = 15f64.sqrt() / 4.0 / 3f64.sqrt();
            let mut out = vec![vec![1.0, 0.0, 0.0, 0.0]];
            for s in [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]] {
                out.push(vec![-0.25, r * s[0], r * s[1], r * s[2]]);
            }
            out
        }
        Polytope4::Cell16 => unit_axes(4),
        Polytope4::Cell8 => sign_choices([0.5; 4]).into_iter().map(Vec::from).collect(),
        Polytope4::Cell24 => {
            let mut out = unit_axes(4);
            out.extend(sign_choices([0.5; 4]).into_iter().map(Vec::from));
            out
        }
        Polytope4::Cell600 => cell600_vertices(),
        Polytope4::Cell120 => cell120_vertices(&polytope4(Polytope4::Cell600)),
    };
    VertexConfiguration::normalized(p.name(), raw).expect("static vertex set")
}

/// Every named configuration accepted by [`by_name`], besides `polygonN`.
pub fn catalog() -> Vec<String> {
    let mut names: Vec<String> = (2..=6).map(polygon_name).collect();
    names.extend(Platonic::ALL.iter().map(|p| p.name().to_string()));
    names.extend(Polytope4::ALL.iter().map(|p| p.name().to_string()));
    names
}

/// Look up a configuration by name: `antipodal`, `triangle`, `square`,
/// `pentagon`, `hexagon`, `polygonN`, a Platonic solid or a 4-polytope.
pub fn by_name(name: &str) -> Result<VertexConfiguration, PolytopeError> {
    let polygon_size = match name {
        "antipodal" => Some(2),
        "triangle" => Some(3),
        "square" => Some(4),
        "pentagon" => Some(5),
        "hexagon" => Some(6),
        _ => name.strip_prefix("polygon").and_then(|s| s.parse().ok()),
    };
    if let Some(n) = polygon_size {
        return polygon(n);
    }
    if let Ok(p) = name.parse::<Platonic>() {
        return Ok(platonic(p));
    }
    if let Ok(p) = name.parse::<Polytope4>() {
        return Ok(polytope4(p));
    }
    Err(PolytopeError::UnknownName(name.to_string()))
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
