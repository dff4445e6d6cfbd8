use gf2sigma::verify::*;
use gf2sigma::classify::CaseTag;
fn main() {
    let c = run_campaign(&[5,7,11,13], 40, 1, None).unwrap();
    let (mut n, mut bad) = (0, 0);
    for o in &c.outcomes {
        let s = &o.record.analysis;
        if o.record.case_tag == CaseTag::II && s.c.unwrap() % 2 == 1 {
            n += 1;
            let k = s.c.unwrap() + s.m.unwrap();
            if !s.double_sigma.top_coeff(k).unwrap() { bad += 1; }
        }
    }
    println!("case II with c odd: {n}, alpha_(c+m)(U)=0 in {bad}");
}
