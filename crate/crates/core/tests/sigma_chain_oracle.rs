mod common;

use gf2sigma::mersenne::{enumerate, MersennePrime};
use gf2sigma::sigma_chain::{analyze, analyze_cached, FactorCache};

/// The whole chain recomputed on `u64` bitmasks with trial-division
/// factoring. Only valid while `(p-1) deg M <= 20`.
struct Oracle {
    sigma_even: u64,
    sigma_odd: u64,
    factors: Vec<(u64, u32)>,
    u: u64,
    w: u64,
    r: u64,
    c: Option<usize>,
    m: Option<usize>,
    e: Option<usize>,
}

fn geometric(m: u64, n: u32) -> u64 {
    let (mut sum, mut term) = (0u64, 1u64);
    for _ in 0..=n {
        sum ^= term;
        term = common::mul(term, m) as u64;
    }
    sum
}

fn oracle(m: &MersennePrime, p: u32) -> Oracle {
    let mb = common::to_bits(m.poly());
    let h = (p - 1) / 2;
    let sigma_even = geometric(mb, 2 * h);
    let sigma_odd = geometric(mb, 2 * h - 1);
    let irreducibles = common::irreducibles_up_to(10);
    let factors = common::trial_factor(sigma_even, &irreducibles);
    let u = factors
        .iter()
        .fold(1u64, |acc, &(q, k)| common::mul(acc, geometric(q, k)) as u64);
    let w = u ^ sigma_even ^ 1;
    let top = (2 * h * m.degree()) as usize;
    let (c, m_idx, e_idx) = if w == 0 {
        (None, None, None)
    } else {
        let dw = common::deg(w) as usize;
        let bit = |l: usize| l <= dw && w >> (dw - l) & 1 == 1;
        let m_idx = (1..=dw).step_by(2).find(|&l| bit(l));
        let e_idx = (2..=dw).step_by(2).find(|&l| bit(l));
        (Some(top - dw), m_idx, e_idx)
    };
    Oracle {
        sigma_even,
        sigma_odd,
        factors,
        u,
        w,
        r: sigma_odd ^ w,
        c,
        m: m_idx,
        e: e_idx,
    }
}

#[test]
fn analysis_matches_oracle_at_small_scale() {
    let mut checked = 0;
    for p in [3u32, 5, 7, 11] {
        let max_deg = 20 / (p - 1);
        if max_deg < 2 {
            continue;
        }
        for m in enumerate(2, max_deg).unwrap() {
            let s = analyze(&m, p, 0xC0FFEE).unwrap();
            let o = oracle(&m, p);
            let tag = format!("a={} b={} p={p}", m.a(), m.b());
            assert_eq!(common::to_bits(&s.sigma_even), o.sigma_even, "{tag}");
            assert_eq!(common::to_bits(&s.sigma_odd), o.sigma_odd, "{tag}");
            let got: Vec<(u64, u32)> = s
                .factorization
                .factors()
                .iter()
                .map(|(f, k)| (common::to_bits(f), *k))
                .collect();
            assert_eq!(got, o.factors, "{tag}");
            assert_eq!(common::to_bits(&s.double_sigma), o.u, "{tag}");
            assert_eq!(common::to_bits(&s.w), o.w, "{tag}");
            assert_eq!(common::to_bits(&s.r), o.r, "{tag}");
            assert_eq!((s.c, s.m, s.e), (o.c, o.m, o.e), "{tag}");
            checked += 1;
        }
    }
    assert!(checked >= 15, "{checked}");
}

#[test]
fn sigma_even_degree_is_p_minus_1_times_deg() {
    for m in enumerate(2, 30).unwrap() {
        for p in [3, 5, 7, 13] {
            let s = analyze(&m, p, 1).unwrap();
            assert_eq!(s.sigma_even.degree(), Some((p as usize - 1) * m.degree() as usize));
        }
    }
}

#[test]
fn c_is_invariant_under_conjugation() {
    let ms = enumerate(5, 30).unwrap();
    for p in [5, 7] {
        for m in &ms {
            let s = analyze(m, p, 1).unwrap();
            let t = analyze(&m.conjugate(), p, 1).unwrap();
            assert_eq!(s.c, t.c, "a={} b={} p={p}", m.a(), m.b());
            assert_eq!(s.w.subst_x_plus_1(), t.w);
        }
    }
}

#[test]
fn json_record_shape() {
    let m = MersennePrime::build(2, 3).unwrap();
    let s = analyze(&m, 5, 1).unwrap();
    let v = serde_json::to_value(s.to_json()).unwrap();
    for key in ["a", "b", "p", "c", "m", "e", "all_mersenne", "w_zero", "factors"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["a"], 2);
    assert_eq!(v["p"], 5);
}

#[test]
fn cache_reuse_gives_identical_records() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("factors.jsonl");
    let ms = enumerate(5, 16).unwrap();
    let cache = FactorCache::open(&path).unwrap();
    let first: Vec<_> = ms
        .iter()
        .map(|m| analyze_cached(m, 7, 1, Some(&cache)).unwrap().to_json())
        .collect();
    assert_eq!(cache.len(), ms.len());
    let reopened = FactorCache::open(&path).unwrap();
    let second: Vec<_> = ms
        .iter()
        .map(|m| analyze_cached(m, 7, 2, Some(&reopened)).unwrap().to_json())
        .collect();
    assert_eq!(first, second);
    // No new lines were appended on the second pass.
    let lines = std::fs::read_to_string(&path).unwrap().lines().count();
    assert_eq!(lines, ms.len());
}
