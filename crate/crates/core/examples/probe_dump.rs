use gf2sigma::mersenne::MersennePrime;
use gf2sigma::sigma_chain::*;
fn main() {
    for (a,b,p) in [(3,49,53),(7,45,53),(1,59,61),(11,49,61),(24,31,53)] {
        let m = MersennePrime::build(a,b).unwrap();
        let s = analyze(&m, p, 99).unwrap();
        println!("{}", serde_json::to_string(&s.to_json()).unwrap());
    }
}
