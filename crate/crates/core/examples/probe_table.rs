use gf2sigma::classify::*;
fn main() {
    let t = std::time::Instant::now();
    let rows = table(&[5,7,11,13,17,19,23,29], 100, 1, None).unwrap();
    println!("{}", render_markdown(&rows));
    let rows = table(&[53,59,61,67,71], 60, 1, None).unwrap();
    println!("{}", render_markdown(&rows));
    println!("{:?}", t.elapsed());
}
