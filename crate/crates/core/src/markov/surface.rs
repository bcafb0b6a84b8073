//! Evaluation surfaces: the whole sphere, a coordinate slice, or one of the
//! Coxeter tori inside `S³`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::{DensitySurface, MarkovError, SphereGrid};
use crate::ifs::IfsSystem;
use crate::polytopes::TorusFamily;

/// `(rows, cols)` used for slices and tori unless overridden.
pub const DEFAULT_SURFACE_RESOLUTION: (usize, usize) = (256, 512);

/// `sphere`, `slice:<axis>:<value>` (axis 1-based, as in `x⁴ = 0.5`) or
/// `torus:<aa|ab|ba|bb>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceSpec {
    Sphere,
    Slice { axis: usize, value: f64 },
    Torus(TorusFamily),
}

impl FromStr for SurfaceSpec {
    type Err = MarkovError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MarkovError::BadSurface(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["sphere"] => Ok(Self::Sphere),
            ["slice", axis, value] => {
                let axis: usize = axis.parse().map_err(|_| bad())?;
                let value: f64 = value.parse().map_err(|_| bad())?;
                if axis == 0 || !(value.abs() < 1.0) {
                    return Err(bad());
                }
                Ok(Self::Slice { axis, value })
            }
            ["torus", family] => Ok(Self::Torus(family.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Sphere => write!(f, "sphere"),
            Self::Slice { axis, value } => write!(f, "slice:{axis}:{value}"),
            Self::Torus(t) => write!(f, "torus:{t}"),
        }
    }
}

impl SurfaceSpec {
    /// `f₀ ≡ 1` on this surface. `Sphere` uses `grid` (or the default for
    /// the dimension); the others use `resolution`.
    pub fn build(
        &self,
        sys: &IfsSystem,
        grid: Option<SphereGrid>,
        resolution: (usize, usize),
    ) -> Result<DensitySurface, MarkovError> {
        let n = sys.config().sphere_dim();
        let (rows, cols) = resolution;
        match *self {
            Self::Sphere => {
                let grid = match grid {
                    Some(g) => g,
                    None => SphereGrid::default_for(n).ok_or(MarkovError::NoGrid(n))?,
                };
                DensitySurface::full(sys, grid)
            }
            Self::Slice { axis, value } => {
                if axis > n + 1 || n < 2 {
                    return Err(MarkovError::BadSurface(self.to_string()));
                }
                let rho = (1.0 - value * value).sqrt();
                let sub = match n {
                    2 => SphereGrid::Circle { m: cols },
                    3 => SphereGrid::LatLong { rows, cols },
                    _ => return Err(MarkovError::BadSurface(self.to_string())),
                };
                let scale = rho.powi(n as i32 - 1);
                let weights = sub.weights().into_iter().map(|w| w * scale).collect();
                let mut points = Vec::with_capacity(sub.len() * (n + 1));
                for p in sub.points().chunks(n) {
                    let mut it = p.iter();
                    for j in 0..=n {
                        points.push(if j == axis - 1 { value } else { rho * it.next().unwrap() });
                    }
                }
                Ok(DensitySurface::on_points(sys, points, Some(weights), sub.layout()))
            }
            Self::Torus(family) => {
                if n != 3 {
                    return Err(MarkovError::BadSurface(self.to_string()));
                }
                let (r1, r2, s) = family.radii();
                let mut points = Vec::with_capacity(rows * cols * 4);
                for i in 0..rows {
                    let v = 2.0 * PI * i as f64 / rows as f64;
                    for j in 0..cols {
                        let u = 2.0 * PI * j as f64 / cols as f64;
                        points.extend([r1 * u.cos(), r1 * u.sin(), s * r2 * v.cos(), s * r2 * v.sin()]);
                    }
                }
                let w = r1 * r2 * (2.0 * PI / rows as f64) * (2.0 * PI / cols as f64);
                Ok(DensitySurface::on_points(
                    sys,
                    points,
                    Some(vec![w; rows * cols]),
                    Some((rows, cols)),
                ))
            }
        }
    }
}
