use gf2sigma::*;
use gf2sigma::mersenne::MersennePrime;
use gf2sigma::sigma_chain::*;
fn main() {
    for (a,b,p) in [(3,49,53),(7,45,53),(1,59,61),(11,49,61)] {
        let m = MersennePrime::build(a,b).unwrap();
        let s = analyze(&m, p, 99).unwrap();
        let f = Factorization::new(s.sigma_even.clone(), s.factorization.factors().to_vec()).unwrap();
        let degs: Vec<usize> = f.factors().iter().map(|(q,_)| q.degree().unwrap()).collect();
        // independent: direct sum
        let mut direct = Gf2Poly::zero(); let mut t = Gf2Poly::one();
        for _ in 0..p { direct += &t; t = &t * m.poly(); }
        assert_eq!(direct, s.sigma_even);
        let u: Gf2Poly = f.factors().iter().map(|(q,_)| { let mut q = q.clone(); q.flip(0); q }).product();
        let mut w = &u + &s.sigma_even; w.flip(0);
        println!("{a} {b} {p}: degs {:?} degW {} c {}", degs, w.degree().unwrap(), (p as usize -1)*(a+b) as usize - w.degree().unwrap());
    }
}
