//! Irreducibility testing and complete factorization over GF(2).
//!
//! The pipeline is square-free decomposition, then distinct-degree
//! factorization driven by repeated Frobenius squaring, then equal-degree
//! splitting with the GF(2) trace map `r + r^2 + ... + r^(2^(d-1))`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2poly::{Gf2Poly, Modulus};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Splitting attempts with one RNG stream before reseeding.
const SPLIT_RETRY_CAP: u32 = 64;

/// Distinct prime divisors of `n`.
fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f` of degree `n` is irreducible iff `x^(2^n) = x mod f` and
/// `gcd(x^(2^(n/q)) - x, f) = 1` for every prime `q | n`.
pub fn is_irreducible(f: &Gf2Poly) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::ConstantModulus),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    // x | f or (x+1) | f
    if !f.coeff(0) || !f.eval_one() {
        return Ok(false);
    }
    let m = Modulus::new(f)?;
    let x = Gf2Poly::x();
    let mut checkpoints: Vec<usize> = prime_divisors(n).iter().map(|q| n / q).collect();
    checkpoints.sort_unstable();
    let mut next = checkpoints.iter().peekable();
    let mut h = x.clone();
    for k in 1..=n {
        h = m.square(&h);
        while next.peek() == Some(&&k) {
            next.next();
            if !(&h + &x).gcd(f).is_one() {
                return Ok(false);
            }
        }
    }
    Ok(h == x)
}

/// Irreducible factors with multiplicities, sorted by (degree, bitmask).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    input: Gf2Poly,
    factors: Vec<(Gf2Poly, u32)>,
}

impl Factorization {
    /// Validates and canonicalizes a claimed factorization: the product must
    /// reproduce `input`, every factor must be irreducible and no factor may
    /// repeat.
    pub fn new(input: Gf2Poly, mut factors: Vec<(Gf2Poly, u32)>) -> Result<Self> {
        for (p, k) in &factors {
            if *k == 0 {
                return Err(Error::InvalidFactorization(format!("factor {p} has multiplicity 0")));
            }
            if p.degree().unwrap_or(0) == 0 || !is_irreducible(p)? {
                return Err(Error::InvalidFactorization(format!("{p} is not irreducible")));
            }
        }
        Self::assemble(&input, &mut factors)?;
        Ok(Self { input, factors })
    }

    /// For factors produced by the factoring pipeline, whose irreducibility
    /// is certified by the degree at which distinct-degree splitting found
    /// them. Only the product is rechecked.
    fn from_certified(input: Gf2Poly, mut factors: Vec<(Gf2Poly, u32)>) -> Result<Self> {
        Self::assemble(&input, &mut factors)?;
        Ok(Self { input, factors })
    }

    fn assemble(input: &Gf2Poly, factors: &mut [(Gf2Poly, u32)]) -> Result<()> {
        if input.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        factors.sort();
        if factors.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidFactorization("repeated factor".into()));
        }
        let product: Gf2Poly = factors.iter().map(|(p, k)| p.pow(*k as u64)).product();
        if &product != input {
            return Err(Error::InvalidFactorization(format!(
                "product of factors does not reproduce {}",
                input.to_hex()
            )));
        }
        Ok(())
    }

    pub fn input(&self) -> &Gf2Poly {
        &self.input
    }

    pub fn factors(&self) -> &[(Gf2Poly, u32)] {
        &self.factors
    }

    /// Number of distinct irreducible factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, k)| k == 1)
    }

    /// Sum of divisors, as the product of `1 + P + ... + P^k` over the factors.
    pub fn sigma(&self) -> Gf2Poly {
        self.factors
            .iter()
            .map(|(p, k)| sigma_irreducible_power(p, *k))
            .product()
    }

    pub fn to_json(&self) -> FactorizationJson {
        FactorizationJson {
            input: self.input.to_hex(),
            factors: self
                .factors
                .iter()
                .map(|(p, k)| FactorJson {
                    poly: p.to_hex(),
                    mult: *k,
                })
                .collect(),
        }
    }

    /// Parses a JSON rendering and revalidates it by product reconstruction.
    pub fn from_json(json: &FactorizationJson) -> Result<Self> {
        let input: Gf2Poly = json.input.parse()?;
        let factors = json
            .factors
            .iter()
            .map(|f| Ok((f.poly.parse()?, f.mult)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_certified(input, factors)
    }
}

impl std::fmt::Display for Factorization {
    /// `(x+1)·(x^2+x+1)`, with `^k` for repeated factors and `1` for the empty product.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, k)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            write!(f, "({p})")?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub poly: String,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationJson {
    pub input: String,
    pub factors: Vec<FactorJson>,
}

/// `1 + P + ... + P^k`.
fn sigma_irreducible_power(p: &Gf2Poly, k: u32) -> Gf2Poly {
    let mut acc = Gf2Poly::one();
    let mut term = Gf2Poly::one();
    for _ in 0..k {
        term = &term * p;
        acc += &term;
    }
    acc
}

/// Square-free decomposition: pairs `(g, i)` with `g` square-free, pairwise
/// coprime, and `f = prod g^i`.
fn squarefree_decomposition(f: &Gf2Poly) -> Vec<(Gf2Poly, u32)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides f");
    let mut c = c;
    let mut i = 1u32;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).expect("gcd divides w");
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(&y).expect("gcd divides c");
        w = y;
    }
    if c.deg() > 0 {
        // What is left is a perfect square: c = r^2.
        let r = c.sqrt().expect("remaining cofactor is a square");
        out.extend(
            squarefree_decomposition(&r)
                .into_iter()
                .map(|(g, k)| (g, 2 * k)),
        );
    }
    out
}

/// Splits a square-free `f` into `(g_d, d)` where `g_d` is the product of all
/// irreducible factors of degree `d`.
fn distinct_degree(f: &Gf2Poly) -> Vec<(Gf2Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = Gf2Poly::x();
    let mut d = 0;
    let mut m = match Modulus::new(&rest) {
        Ok(m) => m,
        Err(_) => return out,
    };
    let mut h = m.reduce(&x);
    while 2 * (d + 1) <= rest.deg() {
        d += 1;
        h = m.square(&h);
        let g = (&h + &x).gcd(&rest);
        if g.deg() > 0 {
            rest = rest.div_exact(&g).expect("gcd divides");
            out.push((g, d));
            if rest.deg() == 0 {
                return out;
            }
            m = Modulus::new(&rest).expect("nonconstant");
            h = m.reduce(&h);
        }
    }
    if rest.deg() > 0 {
        let n = rest.deg();
        out.push((rest, n));
    }
    out
}

fn random_below(rng: &mut ChaCha8Rng, degree: usize) -> Gf2Poly {
    let words = degree.div_ceil(64);
    let mut limbs: Vec<u64> = (0..words).map(|_| rng.gen()).collect();
    if degree % 64 != 0 {
        if let Some(top) = limbs.last_mut() {
            *top &= (1u64 << (degree % 64)) - 1;
        }
    }
    Gf2Poly::from_limbs(limbs)
}

struct Splitter {
    seed: u64,
    reseeds: u64,
    rng: ChaCha8Rng,
}

impl Splitter {
    fn new(seed: u64) -> Self {
        Self {
            seed,
            reseeds: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn reseed(&mut self) {
        self.reseeds += 1;
        self.rng = ChaCha8Rng::seed_from_u64(self.seed.wrapping_add(self.reseeds));
    }

    /// Splits `g`, a product of distinct irreducibles of degree `d`.
    fn equal_degree(&mut self, g: Gf2Poly, d: usize, out: &mut Vec<Gf2Poly>) {
        let n = g.deg();
        if n == d {
            out.push(g);
            return;
        }
        let m = Modulus::new(&g).expect("nonconstant");
        let mut attempts = 0;
        loop {
            if attempts == SPLIT_RETRY_CAP {
                self.reseed();
                attempts = 0;
            }
            attempts += 1;
            let r = random_below(&mut self.rng, n);
            let mut trace = r.clone();
            let mut pow = r;
            for _ in 1..d {
                pow = m.square(&pow);
                trace += &pow;
            }
            let s = trace.gcd(&g);
            if s.degree().is_some_and(|k| k > 0 && k < n) {
                let cofactor = g.div_exact(&s).expect("gcd divides");
                self.equal_degree(s, d, out);
                self.equal_degree(cofactor, d, out);
                return;
            }
        }
    }
}

/// Complete factorization. The result does not depend on `seed`, which only
/// drives the random splitting attempts.
pub fn factor(f: &Gf2Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut splitter = Splitter::new(seed);
    let mut factors = Vec::new();
    for (g, mult) in squarefree_decomposition(f) {
        for (part, d) in distinct_degree(&g) {
            let mut pieces = Vec::new();
            splitter.equal_degree(part, d, &mut pieces);
            factors.extend(pieces.into_iter().map(|p| (p, mult)));
        }
    }
    Factorization::from_certified(f.clone(), factors)
}

pub fn omega(f: &Gf2Poly) -> Result<usize> {
    Ok(factor(f, DEFAULT_SEED)?.omega())
}

/// Square-freeness via the factorization; [`squarefree_by_derivative`] is the
/// independent gcd route.
pub fn is_squarefree(f: &Gf2Poly) -> Result<bool> {
    Ok(factor(f, DEFAULT_SEED)?.is_squarefree())
}

/// Square-free iff `gcd(f, f') = 1` and `f` is not a nonconstant square:
/// over GF(2) `f' = 0` exactly when `f` is a square.
pub fn squarefree_by_derivative(f: &Gf2Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(f.gcd(&f.derivative()).is_one())
}

/// Sum of all divisors of `f`; `sigma(1) = 1`.
pub fn sigma(f: &Gf2Poly) -> Result<Gf2Poly> {
    Ok(factor(f, DEFAULT_SEED)?.sigma())
}
