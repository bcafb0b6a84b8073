use qfract::ifs::IfsSystem;
use qfract::markov::{trace_fixed_point, trace_operator};
use qfract::polytopes::{platonic, Platonic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sys = IfsSystem::new(platonic(Platonic::Octahedron), 0.5)?;
    let op = trace_operator(&sys)?;
    println!("V on paravectors:\n{}", op.matrix);
    println!("vector eigenvalues {:?} (11/15 = {:.6})", op.vector_eigenvalues(), 11.0 / 15.0);
    let fp = trace_fixed_point(&op, &[1.0, 0.9, 0.0, 0.0])?;
    println!("fixed point {:?} after {} iterations, rate {:.6}", fp.element, fp.iterations, fp.rate);
    Ok(())
}
