use qfract::polytopes::{by_name, catalog, check_balanced};

fn main() {
    println!("{:<14} {:>4} {:>6} {:>6} {:>9}", "name", "dim", "verts", "edges", "balance");
    for name in catalog() {
        let c = by_name(&name).unwrap();
        let (_, residual) = check_balanced(&c);
        println!("{:<14} {:>4} {:>6} {:>6} {:>9.1e}", name, c.ambient_dim(), c.len(), c.edge_count(), residual);
    }
}
