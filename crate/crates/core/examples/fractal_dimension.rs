use qfract::fracdim::{cantor_points, correlation_integral_sampled, fit_dimension, log_radii};
use qfract::ifs::{IfsSystem, RunOptions};
use qfract::polytopes::polygon;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let radii = log_radii(1e-3, 1e-1, 20);
    let cantor = cantor_points(100_000, 7);
    let curve = correlation_integral_sampled(&cantor, 1, &radii, 10_000, 7)?;
    let fit = fit_dimension(&curve, 1e-3, 1e-1)?;
    println!("Cantor set: D = {:.3} (ln2/ln3 = {:.3})", fit.dimension, 2f64.ln() / 3f64.ln());

    let radii = log_radii(2e-3, 2e-1, 20);
    for alpha in [0.3, 0.58, 0.8, 0.925] {
        let sys = IfsSystem::new(polygon(5)?, alpha)?;
        let run = sys.run(&RunOptions::new(200_000, 7))?;
        let pts: Vec<f64> = run.points().flatten().copied().collect();
        let curve = correlation_integral_sampled(&pts, 2, &radii, 2_000, 7)?;
        let fit = fit_dimension(&curve, 2e-3, 2e-1)?;
        println!("pentagon α = {alpha}: D = {:.3}, residual {:.3}{}", fit.dimension, fit.residual,
            if fit.staircase { ", staircase" } else { "" });
    }
    Ok(())
}
