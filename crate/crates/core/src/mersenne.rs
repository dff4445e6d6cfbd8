//! Mersenne prime polynomials `1 + x^a (x+1)^b`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorize::is_irreducible;
use crate::gf2poly::Gf2Poly;

/// An irreducible polynomial of the form `1 + x^a (x+1)^b`, `a, b >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MersennePrime {
    a: u32,
    b: u32,
    poly: Gf2Poly,
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `x^a (x+1)^b`.
pub fn split_part(a: u32, b: u32) -> Gf2Poly {
    Gf2Poly::from_u64(0b11).pow(b as u64).shl(a as usize)
}

/// The arithmetic conditions every Mersenne prime satisfies: `gcd(a, b) = 1`
/// and `a` or `b` odd.
pub fn passes_exponent_filter(a: u32, b: u32) -> bool {
    gcd(a, b) == 1 && (a % 2 == 1 || b % 2 == 1)
}

impl MersennePrime {
    /// Builds `1 + x^a (x+1)^b`, failing unless it is irreducible.
    pub fn build(a: u32, b: u32) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidExponents { a, b });
        }
        let mut poly = split_part(a, b);
        poly.flip(0);
        if !is_irreducible(&poly)? {
            return Err(Error::NotIrreducible { a, b, poly });
        }
        Ok(Self { a, b, poly })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn poly(&self) -> &Gf2Poly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b
    }

    /// Whether the exponents satisfy [`passes_exponent_filter`]; always true
    /// for a successfully built value.
    pub fn exponent_conditions_hold(&self) -> bool {
        passes_exponent_filter(self.a, self.b)
    }

    /// Image under `x -> x+1`, which swaps the exponents.
    pub fn conjugate(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            poly: self.poly.subst_x_plus_1(),
        }
    }

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.degree(), self.a, self.b, self.poly.to_hex())
    }
}

pub const CSV_HEADER: &str = "deg,a,b,poly_hex";

/// Returns `(a, b)` with `a, b >= 1` when `P + 1 = x^a (x+1)^b`. Says nothing
/// about irreducibility.
pub fn recognize(p: &Gf2Poly) -> Result<Option<(u32, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut q = p.clone();
    q.flip(0);
    let Some(a) = q.trailing_zeros() else {
        return Ok(None);
    };
    // After removing x^a, the image under x -> x+1 must be exactly x^b.
    let rest = q.shr(a).subst_x_plus_1();
    let b = rest.trailing_zeros().expect("nonzero");
    if a == 0 || b == 0 || rest.weight() != 1 {
        return Ok(None);
    }
    Ok(Some((a as u32, b as u32)))
}

/// Whether `p` is a Mersenne prime: right shape and irreducible.
pub fn is_mersenne_prime(p: &Gf2Poly) -> Result<bool> {
    Ok(recognize(p)?.is_some() && is_irreducible(p)?)
}

/// All Mersenne primes with `deg_min <= a + b <= deg_max`, ordered by
/// `(degree, a)`.
pub fn enumerate(deg_min: u32, deg_max: u32) -> Result<Vec<MersennePrime>> {
    if deg_min < 2 || deg_min > deg_max {
        return Err(Error::InvalidRange {
            min: deg_min,
            max: deg_max,
        });
    }
    let candidates: Vec<(u32, u32)> = (deg_min..=deg_max)
        .flat_map(|d| (1..d).map(move |a| (a, d - a)))
        .filter(|&(a, b)| passes_exponent_filter(a, b))
        .collect();
    candidates
        .into_par_iter()
        .filter_map(|(a, b)| match MersennePrime::build(a, b) {
            Ok(m) => Some(Ok(m)),
            Err(Error::NotIrreducible { .. }) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}

#[derive(Serialize)]
pub struct MersenneJson {
    pub deg: u32,
    pub a: u32,
    pub b: u32,
    pub poly: String,
}

impl From<&MersennePrime> for MersenneJson {
    fn from(m: &MersennePrime) -> Self {
        Self {
            deg: m.degree(),
            a: m.a,
            b: m.b,
            poly: m.poly.to_hex(),
        }
    }
}
