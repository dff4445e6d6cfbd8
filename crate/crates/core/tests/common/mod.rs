//! Independent small-degree GF(2) arithmetic on `u64` bitmasks, used as an
//! oracle against the library. Degrees stay below 64 throughout.
#![allow(dead_code)]

use gf2sigma::Gf2Poly;

pub fn deg(a: u64) -> i32 {
    63 - a.leading_zeros() as i32
}

pub fn mul(a: u64, b: u64) -> u128 {
    let mut r = 0u128;
    for i in 0..64 {
        if b >> i & 1 == 1 {
            r ^= (a as u128) << i;
        }
    }
    r
}

pub fn divrem(mut a: u64, b: u64) -> (u64, u64) {
    assert!(b != 0);
    let db = deg(b);
    let mut q = 0;
    while a != 0 && deg(a) >= db {
        let s = deg(a) - db;
        q |= 1 << s;
        a ^= b << s;
    }
    (q, a)
}

/// All irreducibles of degree `1..=max_deg`, by sieving out products.
pub fn irreducibles_up_to(max_deg: u32) -> Vec<u64> {
    let limit = 1u64 << (max_deg + 1);
    let mut composite = vec![false; limit as usize];
    let mut out = Vec::new();
    for f in 2..limit {
        if composite[f as usize] {
            continue;
        }
        out.push(f);
        for g in 2..limit {
            if deg(f) + deg(g) > max_deg as i32 {
                break;
            }
            composite[mul(f, g) as usize] = true;
        }
    }
    out
}

/// Factorization by trial division, as sorted `(factor, multiplicity)`.
pub fn trial_factor(mut f: u64, irreducibles: &[u64]) -> Vec<(u64, u32)> {
    assert!(f != 0);
    let mut out = Vec::new();
    for &p in irreducibles {
        if deg(f) < 1 {
            break;
        }
        if 2 * deg(p) > deg(f) {
            break;
        }
        let mut k = 0;
        loop {
            let (q, r) = divrem(f, p);
            if r != 0 {
                break;
            }
            f = q;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
    }
    if deg(f) >= 1 {
        // What is left has no factor of at most half its degree.
        match out.iter_mut().find(|(p, _)| *p == f) {
            Some(e) => e.1 += 1,
            None => out.push((f, 1)),
        }
    }
    out.sort_by_key(|&(p, _)| (deg(p), p));
    out
}

pub fn to_poly(bits: u64) -> Gf2Poly {
    Gf2Poly::from_u64(bits)
}

pub fn to_bits(p: &Gf2Poly) -> u64 {
    match p.limbs() {
        [] => 0,
        [w] => *w,
        _ => panic!("degree too large for the oracle"),
    }
}
