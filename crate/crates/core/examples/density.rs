//! Invariant density of the octahedron system: grid iteration against the
//! exact recursion, plus a 16-bit PGM of the fourth iterate.

use std::fs::File;
use std::io::BufWriter;

use qfract::cli::export::write_pgm;
use qfract::ifs::IfsSystem;
use qfract::markov::{density_exact, density_grid_iterate, integrate_density, sphere_area, DensitySurface, SphereGrid};
use qfract::polytopes::{platonic, Platonic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sys = IfsSystem::new(platonic(Platonic::Octahedron), 0.5)?;
    let grid = SphereGrid::DEFAULT_S2;
    let mut s = DensitySurface::full(&sys, grid)?;
    for k in 1..=4 {
        s = density_grid_iterate(&sys, &s)?;
        let x = [0.0, 0.0, 1.0];
        println!("k = {k}: ∫f = {:.6} (area {:.6}), f(n) grid {:.5} exact {:.5}",
            integrate_density(&s)?, sphere_area(2), s.interpolate(&x)?, density_exact(&sys, &x, k)?);
    }
    let (rows, cols) = s.layout.unwrap();
    let path = std::env::temp_dir().join("octahedron_k4.pgm");
    write_pgm(BufWriter::new(File::create(&path)?), rows, cols, &s.values)?;
    println!("wrote {}", path.display());
    Ok(())
}
