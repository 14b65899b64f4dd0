use arq_core::artheory::ArContext;
use arq_core::field::Field;
use arq_core::presets::{kronecker, socle_functional};
use arq_core::rep::*;
use arq_core::decompose::decompose;
use arq_core::rep::Representation;
use std::time::Instant;

fn main() {
    let f2 = Field::prime(2).unwrap();
    let alg = kronecker(&f2);
    let ctx = ArContext::new(&alg, socle_functional(&alg), 42).unwrap();
    // build a dim-13 node like the knit reaches: Omega^6(k)
    let s = Representation::simple(&alg, 0);
    let mut m = s.clone();
    for _ in 0..6 { m = syzygy(&m).unwrap(); }
    eprintln!("module dim {}", m.total_dim());
    let t = Instant::now();
    let tm = ctx.tau(&m).unwrap();
    eprintln!("tau: {:?} (dim {})", t.elapsed(), tm.total_dim());
    let t = Instant::now();
    let e = hom_space(&m, &m).unwrap();
    eprintln!("hom(M,M): {:?} (dim {})", t.elapsed(), e.len());
    let t = Instant::now();
    let (p0, pi, verts) = projective_cover(&m).unwrap();
    eprintln!("cover: {:?} (dim {})", t.elapsed(), p0.total_dim());
    let t = Instant::now();
    let (k_rep, _) = p0.sub_rep(&pi.kernel_subspaces()).unwrap();
    eprintln!("kernel sub_rep: {:?} (dim {})", t.elapsed(), k_rep.total_dim());
    let t = Instant::now();
    let hk = hom_space(&k_rep, &tm).unwrap();
    eprintln!("hom(K,tm): {:?} (dim {})", t.elapsed(), hk.len());
    let t = Instant::now();
    let hp = maps_from_cover(&p0, &verts, &tm).unwrap();
    eprintln!("maps_from_cover: {:?} (dim {})", t.elapsed(), hp.len());
    let t = Instant::now();
    let seq = /* raw ass via public */ ();
    let _ = seq;
    let ass = {
        let t2 = Instant::now();
        let a = ctx.almost_split_sequence(&m).unwrap();
        eprintln!("full ASS (with decompose of middle): {:?}", t2.elapsed());
        a
    };
    eprintln!("middle dim {}", ass.seq.middle.total_dim());
    let _ = t;
    let t = Instant::now();
    let d = decompose(&ass.seq.middle, 0).unwrap();
    eprintln!("decompose(middle): {:?} ({} classes)", t.elapsed(), d.summands.len());
}
