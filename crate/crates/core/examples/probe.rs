use gf2sigma::mersenne::enumerate;
use gf2sigma::sigma_chain::analyze;
use std::time::Instant;
fn main() {
    let args: Vec<u32> = std::env::args().skip(1).map(|s| s.parse().unwrap()).collect();
    let (p, lo, hi) = (args[0], args[1], args[2]);
    let ms = enumerate(lo, hi).unwrap();
    let t = Instant::now();
    for m in &ms {
        let t0 = Instant::now();
        let s = analyze(m, p, 1).unwrap();
        println!("{} {} c={:?} m={:?} omega={} {:?}", m.a(), m.b(), s.c, s.m, s.factorization.omega(), t0.elapsed());
    }
    println!("total {:?} for {}", t.elapsed(), ms.len());
}
