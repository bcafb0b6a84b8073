//! Chains are seeded per stream, so the merged output does not depend on
//! the size of the thread pool.

use qfract::ifs::{IfsSystem, RunOptions};
use qfract::polytopes::{platonic, Platonic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sys = IfsSystem::new(platonic(Platonic::Icosahedron), 0.7)?;
    let opts = RunOptions::new(100_000, 42);
    let mut runs = Vec::new();
    for threads in [1, 2, 8] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
        let run = pool.install(|| sys.run_chains(&opts, 8))?;
        println!("{threads} threads: last point {:?}", run.point(run.len() - 1));
        runs.push(run);
    }
    println!("identical: {}", runs.windows(2).all(|w| w[0] == w[1]));
    Ok(())
}
