//! Chaos-game samples of the pentagon attractor, written as CSV to stdout.
//!
//! `cargo run --release --example chaos_game -- 0.58 20000 > pentagon.csv`

use qfract::ifs::{IfsSystem, RunOptions};
use qfract::polytopes::polygon;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let alpha: f64 = args.next().map_or(Ok(0.58), |a| a.parse())?;
    let count: usize = args.next().map_or(Ok(20_000), |a| a.parse())?;

    let sys = IfsSystem::new(polygon(5)?, alpha)?;
    let run = sys.run_chains(&RunOptions::new(count, 1), 4)?;
    let mut hits = vec![0usize; sys.len()];
    println!("x1,x2,map_index");
    for k in 0..run.len() {
        let x = run.point(k);
        hits[run.map_index(k) as usize] += 1;
        println!("{},{},{}", x[0], x[1], run.map_index(k));
    }
    eprintln!("map frequencies {hits:?}, p(n1 | x = n1) = {:.5}",
        sys.probabilities(&sys.config().vertices()[0])[0]);
    Ok(())
}
