//! Charts on `S¹`, `S²`, `S³` used to store and interpolate `f_k`.

use std::f64::consts::PI;

/// A full-sphere grid with exact cell-area quadrature weights.
///
/// * `Circle { m }`: angles `2πj/m`, periodic linear interpolation.
/// * `LatLong { rows, cols }`: cell centers in polar angle `θ` (from `+x₃`)
///   and azimuth `φ`, bilinear interpolation.
/// * `Hyperspherical { chi, theta, phi }`: cell centers of
///   `x = (cos χ, sin χ cos θ, sin χ sin θ cos φ, sin χ sin θ sin φ)`,
///   trilinear interpolation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereGrid {
    Circle { m: usize },
    LatLong { rows: usize, cols: usize },
    Hyperspherical { chi: usize, theta: usize, phi: usize },
}

impl SphereGrid {
    pub const DEFAULT_S1: Self = Self::Circle { m: 8192 };
    pub const DEFAULT_S2: Self = Self::LatLong { rows: 512, cols: 1024 };
    pub const DEFAULT_S3: Self = Self::Hyperspherical { chi: 128, theta: 128, phi: 128 };

    pub fn default_for(sphere_dim: usize) -> Option<Self> {
        match sphere_dim {
            1 => Some(Self::DEFAULT_S1),
            2 => Some(Self::DEFAULT_S2),
            3 => Some(Self::DEFAULT_S3),
            _ => None,
        }
    }

    pub fn sphere_dim(&self) -> usize {
        match self {
            Self::Circle { .. } => 1,
            Self::LatLong { .. } => 2,
            Self::Hyperspherical { .. } => 3,
        }
    }

    pub fn len(&self) -> usize {
        match *self {
            Self::Circle { m } => m,
            Self::LatLong { rows, cols } => rows * cols,
            Self::Hyperspherical { chi, theta, phi } => chi * theta * phi,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(rows, cols)` image layout, when the grid is two-dimensional or a
    /// single row.
    pub fn layout(&self) -> Option<(usize, usize)> {
        match *self {
            Self::Circle { m } => Some((1, m)),
            Self::LatLong { rows, cols } => Some((rows, cols)),
            Self::Hyperspherical { .. } => None,
        }
    }

    /// Node coordinates, flattened, in row-major chart order.
    pub fn points(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len() * (self.sphere_dim() + 1));
        match *self {
            Self::Circle { m } => {
                for j in 0..m {
                    let t = 2.0 * PI * j as f64 / m as f64;
                    out.extend([t.cos(), t.sin()]);
                }
            }
            Self::LatLong { rows, cols } => {
                for i in 0..rows {
                    let th = PI * (i as f64 + 0.5) / rows as f64;
                    for j in 0..cols {
                        let ph = 2.0 * PI * (j as f64 + 0.5) / cols as f64;
                        out.extend([th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()]);
                    }
                }
            }
            Self::Hyperspherical { chi, theta, phi } => {
                for a in 0..chi {
                    let c = PI * (a as f64 + 0.5) / chi as f64;
                    for b in 0..theta {
                        let t = PI * (b as f64 + 0.5) / theta as f64;
                        for d in 0..phi {
                            let p = 2.0 * PI * (d as f64 + 0.5) / phi as f64;
                            out.extend([
                                c.cos(),
                                c.sin() * t.cos(),
                                c.sin() * t.sin() * p.cos(),
                                c.sin() * t.sin() * p.sin(),
                            ]);
                        }
                    }
                }
            }
        }
        out
    }

    /// Exact measure of each node's cell; they sum to the sphere's area.
    pub fn weights(&self) -> Vec<f64> {
        match *self {
            Self::Circle { m } => vec![2.0 * PI / m as f64; m],
            Self::LatLong { rows, cols } => {
                let dphi = 2.0 * PI / cols as f64;
                (0..rows)
                    .flat_map(|i| {
                        let lo = PI * i as f64 / rows as f64;
                        let hi = PI * (i + 1) as f64 / rows as f64;
                        std::iter::repeat_n((lo.cos() - hi.cos()) * dphi, cols)
                    })
                    .collect()
            }
            Self::Hyperspherical { chi, theta, phi } => {
                let dphi = 2.0 * PI / phi as f64;
                let chi_w: Vec<f64> = (0..chi)
                    .map(|a| {
                        let f = |x: f64| 0.5 * x - 0.25 * (2.0 * x).sin();
                        f(PI * (a + 1) as f64 / chi as f64) - f(PI * a as f64 / chi as f64)
                    })
                    .collect();
                let theta_w: Vec<f64> = (0..theta)
                    .map(|b| {
                        (PI * b as f64 / theta as f64).cos() - (PI * (b + 1) as f64 / theta as f64).cos()
                    })
                    .collect();
                let mut out = Vec::with_capacity(self.len());
                for &wc in &chi_w {
                    for &wt in &theta_w {
                        out.extend(std::iter::repeat_n(wc * wt * dphi, phi));
                    }
                }
                out
            }
        }
    }

    /// Interpolated value at `x ∈ Sⁿ` of grid values `f` (in node order).
    pub fn interpolate(&self, f: &[f64], x: &[f64]) -> f64 {
        match *self {
            Self::Circle { m } => {
                let t = x[1].atan2(x[0]).rem_euclid(2.0 * PI) / (2.0 * PI) * m as f64;
                let (j, s) = split_periodic(t, m);
                lerp(f[j], f[(j + 1) % m], s)
            }
            Self::LatLong { rows, cols } => {
                let th = x[2].clamp(-1.0, 1.0).acos();
                let ph = x[1].atan2(x[0]).rem_euclid(2.0 * PI);
                let (i0, i1, s) = split_clamped(th / PI * rows as f64 - 0.5, rows);
                let (j0, t) = split_periodic(ph / (2.0 * PI) * cols as f64 - 0.5, cols);
                let j1 = (j0 + 1) % cols;
                let at = |i: usize, j: usize| f[i * cols + j];
                lerp(lerp(at(i0, j0), at(i0, j1), t), lerp(at(i1, j0), at(i1, j1), t), s)
            }
            Self::Hyperspherical { chi, theta, phi } => {
                let c = x[0].clamp(-1.0, 1.0).acos();
                let rho = (x[2] * x[2] + x[3] * x[3]).sqrt();
                let t = rho.atan2(x[1]);
                let p = x[3].atan2(x[2]).rem_euclid(2.0 * PI);
                let (a0, a1, u) = split_clamped(c / PI * chi as f64 - 0.5, chi);
                let (b0, b1, v) = split_clamped(t / PI * theta as f64 - 0.5, theta);
                let (d0, w) = split_periodic(p / (2.0 * PI) * phi as f64 - 0.5, phi);
                let d1 = (d0 + 1) % phi;
                let at = |a: usize, b: usize, d: usize| f[(a * theta + b) * phi + d];
                let plane = |a: usize| {
                    lerp(
                        lerp(at(a, b0, d0), at(a, b0, d1), w),
                        lerp(at(a, b1, d0), at(a, b1, d1), w),
                        v,
                    )
                };
                lerp(plane(a0), plane(a1), u)
            }
        }
    }
}

fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + (b - a) * t
}

fn split_periodic(t: f64, m: usize) -> (usize, f64) {
    let t = t.rem_euclid(m as f64);
    let j = (t.floor() as usize).min(m - 1);
    (j, t - j as f64)
}

fn split_clamped(t: f64, m: usize) -> (usize, usize, f64) {
    if m == 1 || t <= 0.0 {
        return (0, 0, 0.0);
    }
    let max = (m - 1) as f64;
    if t >= max {
        return (m - 1, m - 1, 0.0);
    }
    let i = t.floor() as usize;
    (i, i + 1, t - i as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_area() {
        let cases = [
            (SphereGrid::Circle { m: 100 }, 2.0 * PI),
            (SphereGrid::LatLong { rows: 37, cols: 50 }, 4.0 * PI),
            (SphereGrid::Hyperspherical { chi: 9, theta: 7, phi: 12 }, 2.0 * PI * PI),
        ];
        for (g, area) in cases {
            let s: f64 = g.weights().iter().sum();
            assert!((s - area).abs() < 1e-12, "{g:?}");
            assert_eq!(g.weights().len(), g.len());
            assert_eq!(g.points().len(), g.len() * (g.sphere_dim() + 1));
        }
    }

    #[test]
    fn interpolation_reproduces_nodes_and_linear_data() {
        for g in [
            SphereGrid::Circle { m: 64 },
            SphereGrid::LatLong { rows: 16, cols: 32 },
            SphereGrid::Hyperspherical { chi: 8, theta: 8, phi: 16 },
        ] {
            let d = g.sphere_dim() + 1;
            let pts = g.points();
            let f: Vec<f64> = pts.chunks(d).map(|p| 1.0 + 0.5 * p[0] + p[d - 1]).collect();
            for (p, &v) in pts.chunks(d).zip(&f) {
                assert!((g.interpolate(&f, p) - v).abs() < 1e-12, "{g:?}");
            }
            let probe: Vec<f64> = {
                let v: Vec<f64> = (0..d).map(|i| 0.3 + 0.17 * i as f64).collect();
                let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                v.iter().map(|c| c / r).collect()
            };
            let exact = 1.0 + 0.5 * probe[0] + probe[d - 1];
            assert!((g.interpolate(&f, &probe) - exact).abs() < 0.05, "{g:?}");
        }
    }
}
