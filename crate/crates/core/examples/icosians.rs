use qfract::polytopes::{coxeter_tori, find_congruence, icosian_generators_first, icosian_group, TorusFamily};
use qfract::polytopes::{polytope4, Polytope4};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (s, t) = icosian_generators_first();
    println!("S^3  = {:?}", s.powi(3).to_array());
    println!("T^5  = {:?}", t.powi(5).to_array());
    println!("(ST)^2 = {:?}", (s * t).powi(2).to_array());
    let group = icosian_group(&[s, t])?;
    println!("closure of <S, T>: {} elements", group.len());

    let mut union = Vec::new();
    for fam in TorusFamily::ALL {
        let pts = coxeter_tori(fam);
        println!("{fam}: {} points", pts.len());
        union.extend(pts.into_iter().map(|p| p.into_inner()));
    }
    let cell600 = polytope4(Polytope4::Cell600);
    match find_congruence(&union, cell600.vertices(), 1e-6) {
        Some(q) => println!("tori union is congruent to the 600-cell, det Q = {:.3}", q.determinant()),
        None => println!("no congruence found"),
    }
    Ok(())
}
