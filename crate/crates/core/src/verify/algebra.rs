//! Coefficient identities for sums and products of arbitrary polynomials,
//! checked on random inputs. Each predicate returns `None` when its
//! hypotheses do not hold for the given arguments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{LemmaReport, Scope};
use crate::error::Result;
use crate::factorize::{is_irreducible, Factorization};
use crate::gf2poly::Gf2Poly;

fn alpha(s: &Gf2Poly, l: usize) -> bool {
    s.top_coeff(l).expect("nonzero polynomial")
}

/// For `S != T` of equal degree: `deg(S+T) = deg S - l` with `l` the least
/// index where `alpha_l(S) != alpha_l(T)`.
pub fn equal_degree_sum(s: &Gf2Poly, t: &Gf2Poly) -> Option<bool> {
    let d = s.degree()?;
    if t.degree() != Some(d) || s == t {
        return None;
    }
    let l = (0..=d).find(|&l| alpha(s, l) != alpha(t, l))?;
    Some((s + t).degree() == Some(d - l))
}

/// For `deg S > deg T`, with `k = deg S - deg T`: `alpha_l(S+T) = alpha_l(S)`
/// for `l < k` and `alpha_l(S) + alpha_(l-k)(T)` for `k <= l <= deg S`.
pub fn unequal_degree_sum(s: &Gf2Poly, t: &Gf2Poly) -> Option<bool> {
    let (ds, dt) = (s.degree()?, t.degree()?);
    if ds <= dt {
        return None;
    }
    let k = ds - dt;
    let sum = s + t;
    Some((0..=ds).all(|l| {
        let expect = if l < k { alpha(s, l) } else { alpha(s, l) ^ alpha(t, l - k) };
        alpha(&sum, l) == expect
    }))
}

/// For equal-degree `S, T` of degree `d`: `S + T` is a square exactly when
/// `alpha_e(S) = alpha_e(T)` for every `e` in `1..=d` of parity opposite to `d`.
pub fn equal_degree_sum_square(s: &Gf2Poly, t: &Gf2Poly) -> Option<bool> {
    let d = s.degree()?;
    if t.degree() != Some(d) {
        return None;
    }
    let agree = (1..=d)
        .filter(|e| (e + d) % 2 == 1)
        .all(|e| alpha(s, e) == alpha(t, e));
    Some((s + t).is_square() == agree)
}

/// For `r_1 > ... > r_k` and nonzero `S`, every coefficient of
/// `(x^r_1 + ... + x^r_k) S` counted from the top is the sum of the shifted
/// `alpha`s of `S`, taking `alpha` as 0 outside `0..=deg S`.
pub fn monomial_sum_product(exps: &[usize], s: &Gf2Poly) -> Option<bool> {
    let ds = s.degree()?;
    let r1 = *exps.first()?;
    if exps.windows(2).any(|w| w[0] <= w[1]) {
        return None;
    }
    let prod = &Gf2Poly::from_exponents(exps) * s;
    let top = r1 + ds;
    Some((0..=top).all(|l| {
        let expect = exps
            .iter()
            .filter_map(|&ri| l.checked_sub(r1 - ri))
            .fold(false, |acc, j| acc ^ s.top_coeff(j).unwrap());
        prod.coeff(top - l) == expect
    }))
}

/// When no irreducible of degree `<= r` divides `S`, `alpha_l(sigma(S))
/// = alpha_l(S)` for `l <= r`.
pub fn sigma_top_coeffs(f: &Factorization, r: usize) -> Option<bool> {
    if f.input().is_one() || f.factors().iter().any(|(p, _)| p.degree().unwrap() <= r) {
        return None;
    }
    let sigma = f.sigma();
    Some((0..=r).all(|l| alpha(&sigma, l) == alpha(f.input(), l)))
}

/// Uniform polynomial of degree exactly `d`.
pub fn random_of_degree(rng: &mut impl Rng, d: usize) -> Gf2Poly {
    let words = d / 64 + 1;
    let mut limbs: Vec<u64> = (0..words).map(|_| rng.gen()).collect();
    let top = &mut limbs[words - 1];
    *top &= (1u64 << (d % 64) << 1).wrapping_sub(1);
    *top |= 1 << (d % 64);
    Gf2Poly::from_limbs(limbs)
}

/// Random irreducible of degree exactly `d >= 1`, by rejection.
pub fn random_irreducible(rng: &mut impl Rng, d: usize) -> Result<Gf2Poly> {
    loop {
        let mut f = random_of_degree(rng, d);
        if d > 1 && !f.coeff(0) {
            f.flip(0);
        }
        if is_irreducible(&f)? {
            return Ok(f);
        }
    }
}

const MAX_DEG: usize = 300;

/// Runs each identity above on `n` random inputs drawn from `seed`.
pub fn random_suite(n: usize, seed: u64) -> Result<LemmaReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = LemmaReport::default();
    let pair = |s: &Gf2Poly, t: &Gf2Poly| json!({ "s": s.to_hex(), "t": t.to_hex() });

    for _ in 0..n {
        // Equal degree, sharing a random-length top so that the first
        // disagreement is not always at index 1.
        let d = rng.gen_range(1..=MAX_DEG);
        let s = random_of_degree(&mut rng, d);
        let keep = rng.gen_range(0..=d);
        let mut t = random_of_degree(&mut rng, d);
        for l in 0..keep {
            if alpha(&t, l) != alpha(&s, l) {
                t.flip(d - l);
            }
        }
        let r = equal_degree_sum(&s, &t);
        rep.record_with("equal_degree_sum_degree", Scope::Unconditional, r.is_some(), r != Some(false), || pair(&s, &t));
        let r = equal_degree_sum_square(&s, &t);
        rep.record_with("equal_degree_sum_square_criterion", Scope::Unconditional, r.is_some(), r != Some(false), || pair(&s, &t));

        let dt = rng.gen_range(0..d.max(1));
        let t = random_of_degree(&mut rng, dt);
        let r = unequal_degree_sum(&s, &t);
        rep.record_with("unequal_degree_sum_coeffs", Scope::Unconditional, r.is_some(), r != Some(false), || pair(&s, &t));

        let k = rng.gen_range(1..=6);
        let mut exps: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=MAX_DEG)).collect();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        exps.dedup();
        let r = monomial_sum_product(&exps, &s);
        rep.record_with("monomial_sum_product_coeffs", Scope::Unconditional, r.is_some(), r != Some(false), || {
            json!({ "exps": exps, "s": s.to_hex() })
        });

        let r_bound = rng.gen_range(1..=8);
        let mut factors = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let deg = rng.gen_range(r_bound + 1..=r_bound + 16);
            let p = random_irreducible(&mut rng, deg)?;
            if factors.iter().all(|(q, _)| q != &p) {
                factors.push((p, rng.gen_range(1..=3)));
            }
        }
        let input = factors.iter().map(|(p, k): &(Gf2Poly, u32)| p.pow(*k as u64)).product();
        let f = Factorization::new(input, factors)?;
        let r = sigma_top_coeffs(&f, r_bound);
        rep.record_with("sigma_keeps_top_coeffs_random", Scope::Unconditional, r.is_some(), r != Some(false), || {
            json!({ "input": f.input().to_hex(), "r": r_bound })
        });
    }
    Ok(rep)
}
