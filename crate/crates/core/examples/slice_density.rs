use qfract::ifs::IfsSystem;
use qfract::markov::{integrate_density_mc, sphere_area, SurfaceSpec};
use qfract::polytopes::{polytope4, Polytope4};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sys = IfsSystem::new(polytope4(Polytope4::Cell16), 0.5)?;
    let spec: SurfaceSpec = "slice:4:0.5".parse()?;
    let mut s = spec.build(&sys, None, (32, 64))?;
    s.fill_exact(&sys, 3)?;
    let max = s.values.iter().cloned().fold(0.0, f64::max);
    println!("{spec}: {} points, max f₃ = {max:.4}", s.len());

    let (est, se) = integrate_density_mc(&sys, 2, 200_000, 11)?;
    println!("∫ f₂ over S³ = {est:.4} ± {se:.4}, 2π² = {:.4}", sphere_area(3));
    Ok(())
}
