use gf2sigma::classify::*;
use gf2sigma::mersenne::enumerate;
fn main() {
    let args: Vec<u32> = std::env::args().skip(1).map(|s| s.parse().unwrap()).collect();
    let ms = enumerate(5, args[1]).unwrap();
    for r in classify_all(&ms, args[0], 1, None).unwrap() {
        let s = &r.analysis;
        if r.in_any() { println!("a={} b={} deg={} c={:?} m={:?} e={:?} set={:?}", s.mersenne.a(), s.mersenne.b(), s.deg_m(), s.c, s.m, s.e, r.set_index()); }
    }
}
