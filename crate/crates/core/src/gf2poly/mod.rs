//! Dense polynomials over GF(2), packed 64 coefficients per word.
//!
//! Bit `i` of the storage is the coefficient of `x^i`. Storage is always
//! normalized (no zero words at the top), so structural equality is
//! polynomial equality and the zero polynomial is the empty vector.

mod modular;
pub(crate) mod mul;
mod text;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use crate::error::{Error, Result};

pub use modular::Modulus;

pub(crate) const WORD: usize = 64;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    limbs: Vec<u64>,
}

pub(crate) fn normalize(limbs: &mut Vec<u64>) {
    while limbs.last() == Some(&0) {
        limbs.pop();
    }
}

pub(crate) fn limbs_degree(limbs: &[u64]) -> Option<usize> {
    let top = limbs.iter().rposition(|&w| w != 0)?;
    Some(top * WORD + (WORD - 1 - limbs[top].leading_zeros() as usize))
}

/// `dst ^= src << shift`. `dst` must be long enough to hold every set bit
/// of the shifted source.
pub(crate) fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let off = shift / WORD;
    let bits = shift % WORD;
    if bits == 0 {
        for (d, s) in dst[off..].iter_mut().zip(src) {
            *d ^= *s;
        }
        return;
    }
    let mut carry = 0u64;
    for (i, &s) in src.iter().enumerate() {
        dst[off + i] ^= (s << bits) | carry;
        carry = s >> (WORD - bits);
    }
    if carry != 0 {
        dst[off + src.len()] ^= carry;
    }
}

/// Reduces `a` modulo `b` in place (plain long division, no quotient).
pub(crate) fn rem_in_place(a: &mut Vec<u64>, b: &[u64], deg_b: usize) {
    while let Some(da) = limbs_degree(a) {
        if da < deg_b {
            break;
        }
        xor_shifted(a, b, da - deg_b);
    }
    normalize(a);
}

/// Spreads the 32 bits of `x` into the even bit positions of a `u64`.
#[inline]
pub(crate) fn spread32(x: u32) -> u64 {
    let mut v = x as u64;
    v = (v | (v << 16)) & 0x0000_FFFF_0000_FFFF;
    v = (v | (v << 8)) & 0x00FF_00FF_00FF_00FF;
    v = (v | (v << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    v = (v | (v << 2)) & 0x3333_3333_3333_3333;
    v = (v | (v << 1)) & 0x5555_5555_5555_5555;
    v
}

/// Inverse of [`spread32`]: gathers the even bits of `v`.
#[inline]
fn gather_even(v: u64) -> u32 {
    let mut v = v & 0x5555_5555_5555_5555;
    v = (v | (v >> 1)) & 0x3333_3333_3333_3333;
    v = (v | (v >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    v = (v | (v >> 4)) & 0x00FF_00FF_00FF_00FF;
    v = (v | (v >> 8)) & 0x0000_FFFF_0000_FFFF;
    v = (v | (v >> 16)) & 0x0000_0000_FFFF_FFFF;
    v as u32
}

pub(crate) fn square_limbs(limbs: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(2 * limbs.len());
    for &w in limbs {
        out.push(spread32(w as u32));
        out.push(spread32((w >> 32) as u32));
    }
    normalize(&mut out);
    out
}

const ODD_BITS: u64 = 0xAAAA_AAAA_AAAA_AAAA;

impl Gf2Poly {
    pub fn zero() -> Self {
        Self { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { limbs: vec![1] }
    }

    pub fn x() -> Self {
        Self { limbs: vec![2] }
    }

    /// The polynomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut limbs = vec![0; k / WORD + 1];
        limbs[k / WORD] = 1 << (k % WORD);
        Self { limbs }
    }

    /// Builds a polynomial from little-endian words (word 0 holds `x^0..x^63`).
    pub fn from_limbs(mut limbs: Vec<u64>) -> Self {
        normalize(&mut limbs);
        Self { limbs }
    }

    /// Sum of `x^e` over the given exponents; repeated exponents cancel.
    pub fn from_exponents(exponents: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exponents {
            p.flip(e);
        }
        p
    }

    pub fn from_u64(bits: u64) -> Self {
        Self::from_limbs(vec![bits])
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let &top = self.limbs.last()?;
        Some((self.limbs.len() - 1) * WORD + (WORD - 1 - top.leading_zeros() as usize))
    }

    pub(crate) fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    /// Coefficient of `x^i`.
    pub fn coeff(&self, i: usize) -> bool {
        self.limbs
            .get(i / WORD)
            .is_some_and(|w| (w >> (i % WORD)) & 1 == 1)
    }

    /// Toggles the coefficient of `x^i`.
    pub fn flip(&mut self, i: usize) {
        if self.limbs.len() <= i / WORD {
            self.limbs.resize(i / WORD + 1, 0);
        }
        self.limbs[i / WORD] ^= 1 << (i % WORD);
        normalize(&mut self.limbs);
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents of the nonzero terms, ascending.
    pub fn exponents(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(i, &w)| {
            (0..WORD)
                .filter(move |b| (w >> b) & 1 == 1)
                .map(move |b| i * WORD + b)
        })
    }

    /// Evaluation at 1: the parity of the number of terms.
    pub fn eval_one(&self) -> bool {
        self.weight() % 2 == 1
    }

    /// `alpha_l(S)`: the coefficient of `x^(deg S - l)`, counting down from the
    /// leading term. Indices past the constant term read as 0.
    pub fn top_coeff(&self, l: usize) -> Result<bool> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        Ok(l <= d && self.coeff(d - l))
    }

    /// Multiplication by `x^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut limbs = vec![0; self.limbs.len() + k / WORD + 1];
        xor_shifted(&mut limbs, &self.limbs, k);
        Self::from_limbs(limbs)
    }

    /// Exact division by `x^k` (drops the low `k` coefficients).
    pub fn shr(&self, k: usize) -> Self {
        let off = k / WORD;
        if off >= self.limbs.len() {
            return Self::zero();
        }
        let bits = k % WORD;
        let src = &self.limbs[off..];
        let limbs = if bits == 0 {
            src.to_vec()
        } else {
            (0..src.len())
                .map(|i| {
                    let hi = src.get(i + 1).map_or(0, |w| w << (WORD - bits));
                    (src[i] >> bits) | hi
                })
                .collect()
        };
        Self::from_limbs(limbs)
    }

    /// Largest `k` with `x^k | self`; `None` for zero.
    pub fn trailing_zeros(&self) -> Option<usize> {
        let i = self.limbs.iter().position(|&w| w != 0)?;
        Some(i * WORD + self.limbs[i].trailing_zeros() as usize)
    }

    pub fn square(&self) -> Self {
        Self {
            limbs: square_limbs(&self.limbs),
        }
    }

    /// Squares over GF(2) are exactly the polynomials in `x^2`.
    pub fn is_square(&self) -> bool {
        self.limbs.iter().all(|w| w & ODD_BITS == 0)
    }

    pub fn sqrt(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.clone()));
        }
        let mut limbs = Vec::with_capacity(self.limbs.len().div_ceil(2));
        for pair in self.limbs.chunks(2) {
            let lo = gather_even(pair[0]) as u64;
            let hi = pair.get(1).map_or(0, |&w| gather_even(w) as u64);
            limbs.push(lo | (hi << 32));
        }
        Ok(Self::from_limbs(limbs))
    }

    /// Formal derivative: `(x^i)' = x^(i-1)` for odd `i`, 0 for even `i`.
    pub fn derivative(&self) -> Self {
        Self::from_limbs(self.limbs.iter().map(|w| (w & ODD_BITS) >> 1).collect())
    }

    /// `S(x+1)`.
    ///
    /// Since `x^i -> prod_{k in bits(i)} (x^(2^k) + 1)`, the coefficient of
    /// `x^j` in the image is the sum of the coefficients at every superset
    /// exponent of `j`. That superset-sum runs one pass per exponent bit.
    pub fn subst_x_plus_1(&self) -> Self {
        const MASKS: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        let mut limbs = self.limbs.clone();
        for w in limbs.iter_mut() {
            for (k, &mask) in MASKS.iter().enumerate() {
                *w ^= (*w & mask) >> (1 << k);
            }
        }
        let mut stride = 1;
        while stride < limbs.len() {
            for hi in 0..limbs.len() {
                if hi & stride != 0 {
                    let v = limbs[hi];
                    limbs[hi - stride] ^= v;
                }
            }
            stride <<= 1;
        }
        Self::from_limbs(limbs)
    }

    /// Bitwise shift-XOR multiplication, one partial product per set bit.
    /// Kept as the reference that the word-level kernels are checked against.
    pub fn mul_schoolbook(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0u64; self.limbs.len() + other.limbs.len() + 1];
        for e in self.exponents() {
            xor_shifted(&mut out, &other.limbs, e);
        }
        Self::from_limbs(out)
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Quotient and remainder of division by `divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.limbs.clone();
        let mut quo = vec![0u64; (self.degree().unwrap_or(0) / WORD) + 1];
        while let Some(dr) = limbs_degree(&rem) {
            if dr < db {
                break;
            }
            let s = dr - db;
            quo[s / WORD] ^= 1 << (s % WORD);
            xor_shifted(&mut rem, &divisor.limbs, s);
        }
        Ok((Self::from_limbs(quo), Self::from_limbs(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.limbs.clone();
        rem_in_place(&mut rem, &divisor.limbs, db);
        Ok(Self { limbs: rem })
    }

    /// Exact quotient; errors if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "{divisor} does not divide {self}"
            )));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Greatest common divisor (monic by construction); `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.limbs.clone();
        let mut b = other.limbs.clone();
        loop {
            let Some(db) = limbs_degree(&b) else {
                return Self::from_limbs(a);
            };
            if db == 0 {
                return Self::one();
            }
            rem_in_place(&mut a, &b, db);
            std::mem::swap(&mut a, &mut b);
        }
    }

    /// `x^(2^k) mod f`, by `k` squarings with reduction.
    pub fn powmod_frobenius(f: &Self, k: usize) -> Result<Self> {
        let m = Modulus::new(f)?;
        Ok(m.frobenius_x(k))
    }

    /// Canonical hexadecimal form `0x...` of the coefficient bitmask.
    pub fn to_hex(&self) -> String {
        let Some((top, rest)) = self.limbs.split_last() else {
            return "0x0".to_string();
        };
        let mut s = format!("0x{top:x}");
        for w in rest.iter().rev() {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }
}

impl Ord for Gf2Poly {
    /// Degree first, then the coefficient bitmask read as an integer.
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs
            .len()
            .cmp(&other.limbs.len())
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for Gf2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

impl Add for &Gf2Poly {
    type Output = Gf2Poly;

    fn add(self, rhs: &Gf2Poly) -> Gf2Poly {
        let (long, short) = if self.limbs.len() >= rhs.limbs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut limbs = long.limbs.clone();
        for (d, s) in limbs.iter_mut().zip(&short.limbs) {
            *d ^= *s;
        }
        Gf2Poly::from_limbs(limbs)
    }
}

impl Add for Gf2Poly {
    type Output = Gf2Poly;

    fn add(mut self, rhs: Gf2Poly) -> Gf2Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Gf2Poly> for Gf2Poly {
    fn add_assign(&mut self, rhs: &Gf2Poly) {
        if self.limbs.len() < rhs.limbs.len() {
            self.limbs.resize(rhs.limbs.len(), 0);
        }
        for (d, s) in self.limbs.iter_mut().zip(&rhs.limbs) {
            *d ^= *s;
        }
        normalize(&mut self.limbs);
    }
}

impl Mul for &Gf2Poly {
    type Output = Gf2Poly;

    fn mul(self, rhs: &Gf2Poly) -> Gf2Poly {
        Gf2Poly::from_limbs(mul::mul_limbs(&self.limbs, &rhs.limbs))
    }
}

impl Mul for Gf2Poly {
    type Output = Gf2Poly;

    fn mul(self, rhs: Gf2Poly) -> Gf2Poly {
        &self * &rhs
    }
}

impl std::iter::Product for Gf2Poly {
    fn product<I: Iterator<Item = Gf2Poly>>(iter: I) -> Gf2Poly {
        iter.fold(Gf2Poly::one(), |acc, p| &acc * &p)
    }
}
