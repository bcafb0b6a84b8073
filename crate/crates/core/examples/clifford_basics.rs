use qfract::clifford::{psi_plus_basis, Multivector, PairElement, Paravector, Signature};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sig = Signature::euclidean(3)?;
    let e1 = Multivector::generator(sig, 0)?;
    let e2 = Multivector::generator(sig, 1)?;
    let e12 = &e1 * &e2;
    println!("e1 e2       = {e12}");
    println!("(e1 e2)^2   = {}", &e12 * &e12);
    println!("π(e1 e2)    = {}", e12.pi());
    println!("τ(e1 e2)    = {}", e12.tau());

    let a = Multivector::paravector(sig, 1.0, &[0.3, -0.4, 0.0])?;
    println!("Δ(1 + 0.3e1 - 0.4e2) = {}", a.norm_delta());
    println!("Φ(a a)      = {:.6}", (&a * &a).trace());

    let root = Paravector::new(1.0, vec![0.6, 0.0, 0.0]).sqrt()?;
    let r = root.to_multivector()?;
    println!("sqrt(1 + 0.6e1) = {r}, squared = {}", &r * &r);

    // Cl(1,2) even part is carried onto Cl(2,0) by ψ⁺. The two routes differ
    // by the automorphism e0 -> -e0.
    let big = Signature::new(1, 2)?;
    let x = &Multivector::generator(big, 0)? * &Multivector::generator(big, 1)?;
    println!("ψ⁺(e0 e1) pair route  = {}", PairElement::embed(&x)?.psi_plus()?);
    println!("ψ⁺(e0 e1) blade route = {}", psi_plus_basis(&x)?);
    Ok(())
}
