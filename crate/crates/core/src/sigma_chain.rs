//! The sum-of-divisors chain of a Mersenne prime `M` at an odd prime `p = 2h+1`.
//!
//! - `sigma_even = sigma(M^(2h)) = 1 + M + ... + M^(2h)` (the cyclotomic value `phi_p(M)`)
//! - `sigma_odd = sigma(M^(2h-1))`
//! - `U = sigma(sigma_even)`, `W = U + sigma_even + 1`, `R = sigma_odd + W`
//! - `c = 2h deg(M) - deg(W)`, and `m` (resp. `e`) the least odd (resp. even)
//!   index `l >= 1` with `alpha_l(W) = 1`.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorize::{factor, FactorJson, Factorization, FactorizationJson};
use crate::gf2poly::Gf2Poly;
use crate::mersenne::{recognize, MersennePrime};

/// `1 + M + ... + M^n`, computed as the exact quotient `(M^(n+1) + 1) / (M + 1)`.
pub fn sigma_prime_power(m: &MersennePrime, n: u64) -> Result<Gf2Poly> {
    let mut top = m.poly().pow(n + 1);
    top.flip(0);
    let mut m1 = m.poly().clone();
    m1.flip(0);
    let (q, r) = top.divrem(&m1)?;
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "M+1 does not divide M^{}+1 for M = {}",
            n + 1,
            m.poly()
        )));
    }
    Ok(q)
}

pub fn is_odd_prime(p: u64) -> bool {
    p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|q| q * q <= p).all(|q| p % q != 0)
}

#[derive(Clone, Debug)]
pub struct SigmaAnalysis {
    pub mersenne: MersennePrime,
    pub p: u32,
    pub h: u32,
    /// `sigma(M^(2h))`
    pub sigma_even: Gf2Poly,
    /// `sigma(M^(2h-1))`
    pub sigma_odd: Gf2Poly,
    pub factorization: Factorization,
    /// Every irreducible factor of `sigma_even` is itself a Mersenne prime.
    pub all_mersenne: bool,
    /// Sums of the `a_j` and `b_j` over the factors, when `all_mersenne`.
    pub u: Option<u64>,
    pub v: Option<u64>,
    /// `U = sigma(sigma(M^(2h)))`
    pub double_sigma: Gf2Poly,
    pub w: Gf2Poly,
    pub r: Gf2Poly,
    pub c: Option<usize>,
    pub m: Option<usize>,
    pub e: Option<usize>,
}

/// Least `l >= start`, stepping by 2, with `alpha_l(w) = 1`.
fn least_top_index(w: &Gf2Poly, start: usize) -> Option<usize> {
    let d = w.degree()?;
    (start..=d).step_by(2).find(|&l| w.coeff(d - l))
}

impl SigmaAnalysis {
    pub fn deg_m(&self) -> usize {
        self.mersenne.degree() as usize
    }

    pub fn w_zero(&self) -> bool {
        self.w.is_zero()
    }

    /// `p >= 5` and `deg(M) >= 5`: the instances the exception-set theorem
    /// speaks about.
    pub fn in_theorem_scope(&self) -> bool {
        self.p >= 5 && self.deg_m() >= 5
    }

    pub fn to_json(&self) -> AnalysisJson {
        AnalysisJson {
            a: self.mersenne.a(),
            b: self.mersenne.b(),
            p: self.p,
            c: self.c,
            m: self.m,
            e: self.e,
            all_mersenne: self.all_mersenne,
            w_zero: self.w_zero(),
            factors: self.factorization.to_json().factors,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisJson {
    pub a: u32,
    pub b: u32,
    pub p: u32,
    pub c: Option<usize>,
    pub m: Option<usize>,
    pub e: Option<usize>,
    pub all_mersenne: bool,
    pub w_zero: bool,
    pub factors: Vec<FactorJson>,
}

fn check_prime(p: u32) -> Result<u32> {
    if !is_odd_prime(p as u64) {
        return Err(Error::InvalidPrime(p as u64));
    }
    Ok((p - 1) / 2)
}

/// Runs the full chain for `(M, p)`. `p = 3` is accepted (outside the
/// theorem's scope, see [`SigmaAnalysis::in_theorem_scope`]).
pub fn analyze(m: &MersennePrime, p: u32, seed: u64) -> Result<SigmaAnalysis> {
    analyze_cached(m, p, seed, None)
}

pub fn analyze_cached(
    m: &MersennePrime,
    p: u32,
    seed: u64,
    cache: Option<&FactorCache>,
) -> Result<SigmaAnalysis> {
    let h = check_prime(p)?;
    let sigma_even = sigma_prime_power(m, 2 * h as u64)?;
    let cached = cache.and_then(|c| c.get(m.a(), m.b(), p, &sigma_even));
    let factorization = match cached {
        Some(f) => f,
        None => {
            let f = factor(&sigma_even, seed)?;
            if let Some(c) = cache {
                c.insert(m.a(), m.b(), p, &f)?;
            }
            f
        }
    };
    finish(m, p, h, sigma_even, factorization)
}

fn finish(
    m: &MersennePrime,
    p: u32,
    h: u32,
    sigma_even: Gf2Poly,
    factorization: Factorization,
) -> Result<SigmaAnalysis> {
    let sigma_odd = sigma_prime_power(m, 2 * h as u64 - 1)?;

    let mut shapes = Vec::with_capacity(factorization.omega());
    for (f, _) in factorization.factors() {
        shapes.push(recognize(f)?);
    }
    let all_mersenne = shapes.iter().all(Option::is_some);
    let (u, v) = if all_mersenne {
        let pairs = shapes.iter().zip(factorization.factors());
        let u = pairs.clone().map(|(s, (_, k))| s.unwrap().0 as u64 * *k as u64).sum();
        let v = pairs.map(|(s, (_, k))| s.unwrap().1 as u64 * *k as u64).sum();
        (Some(u), Some(v))
    } else {
        (None, None)
    };

    let double_sigma = factorization.sigma();
    let mut w = &double_sigma + &sigma_even;
    w.flip(0);
    let r = &sigma_odd + &w;
    let deg_even = 2 * h as usize * m.degree() as usize;
    let c = w.degree().map(|d| deg_even - d);
    let (m_idx, e_idx) = (least_top_index(&w, 1), least_top_index(&w, 2));

    Ok(SigmaAnalysis {
        mersenne: m.clone(),
        p,
        h,
        sigma_even,
        sigma_odd,
        factorization,
        all_mersenne,
        u,
        v,
        double_sigma,
        w,
        r,
        c,
        m: m_idx,
        e: e_idx,
    })
}

#[derive(Serialize, Deserialize)]
struct CacheLine {
    a: u32,
    b: u32,
    p: u32,
    factorization: FactorizationJson,
}

/// Append-only JSON-lines store of factorizations keyed by `(a, b, p)`.
/// Entries are revalidated by product reconstruction on every hit; invalid
/// or unparsable entries are ignored and recomputed.
pub struct FactorCache {
    path: PathBuf,
    entries: Mutex<HashMap<(u32, u32, u32), FactorizationJson>>,
}

impl FactorCache {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        if path.exists() {
            for line in BufReader::new(File::open(&path)?).lines() {
                let line = line?;
                if let Ok(rec) = serde_json::from_str::<CacheLine>(&line) {
                    entries.insert((rec.a, rec.b, rec.p), rec.factorization);
                }
            }
        }
        Ok(Self {
            path,
            entries: Mutex::new(entries),
        })
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, a: u32, b: u32, p: u32, expected: &Gf2Poly) -> Option<Factorization> {
        let json = self.entries.lock().unwrap().get(&(a, b, p)).cloned()?;
        let f = Factorization::from_json(&json).ok()?;
        (f.input() == expected).then_some(f)
    }

    pub fn insert(&self, a: u32, b: u32, p: u32, f: &Factorization) -> Result<()> {
        let line = CacheLine {
            a,
            b,
            p,
            factorization: f.to_json(),
        };
        let text = serde_json::to_string(&line)?;
        let mut entries = self.entries.lock().unwrap();
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(file, "{text}")?;
        entries.insert((a, b, p), line.factorization);
        Ok(())
    }
}
