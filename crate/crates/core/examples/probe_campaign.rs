use gf2sigma::verify::*;
fn main() {
    let t = std::time::Instant::now();
    let c = run_campaign(&[5,7,11,13], 40, 1, None).unwrap();
    print!("{}", c.summary());
    for e in c.report.failures() { println!("{} {:?}", e.name, &e.counterexamples[..e.counterexamples.len().min(2)]); }
    println!("{:?}", t.elapsed());
}
