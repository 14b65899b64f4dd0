use arq_core::artheory::{knit, ArContext};
use arq_core::field::Field;
use arq_core::presets::{kronecker, socle_functional};
use arq_core::rep::Representation;
use std::time::Instant;

fn main() {
    let f2 = Field::prime(2).unwrap();
    let alg = kronecker(&f2);
    let t0 = Instant::now();
    let ctx = ArContext::new(&alg, socle_functional(&alg), 42).unwrap();
    eprintln!("ctx: {:?}", t0.elapsed());
    let s = Representation::simple(&alg, 0);
    let t1 = Instant::now();
    let w = knit(&ctx, &s, 4, 512).unwrap();
    eprintln!("knit depth 4: {:?}, nodes {}", t1.elapsed(), w.node_count());
    for n in &w.nodes {
        eprintln!("  node dim {} level {}", n.rep.total_dim(), n.level);
    }
}
