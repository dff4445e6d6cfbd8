//! Arithmetic modulo a fixed polynomial.

use super::{limbs_degree, mul, normalize, square_limbs, Gf2Poly, WORD};
use crate::error::{Error, Result};

/// A modulus `f` with its 64 bit-offset shifts of `f` precomputed, so each
/// reduction step is a word-aligned XOR.
#[derive(Clone, Debug)]
pub struct Modulus {
    poly: Gf2Poly,
    degree: usize,
    shifted: Vec<Vec<u64>>,
}

impl Modulus {
    pub fn new(f: &Gf2Poly) -> Result<Self> {
        let degree = match f.degree() {
            None | Some(0) => return Err(Error::ConstantModulus),
            Some(d) => d,
        };
        let shifted = (0..WORD)
            .map(|j| {
                let mut v = vec![0u64; (degree + j) / WORD + 1];
                super::xor_shifted(&mut v, f.limbs(), j);
                v
            })
            .collect();
        Ok(Self {
            poly: f.clone(),
            degree,
            shifted,
        })
    }

    pub fn poly(&self) -> &Gf2Poly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn reduce_limbs(&self, mut buf: Vec<u64>) -> Gf2Poly {
        let n = self.degree;
        let mut top_word = buf.len();
        while top_word > 0 {
            let w = buf[top_word - 1];
            if w == 0 {
                top_word -= 1;
                continue;
            }
            let top = (top_word - 1) * WORD + (WORD - 1 - w.leading_zeros() as usize);
            if top < n {
                break;
            }
            let s = top - n;
            let src = &self.shifted[s % WORD];
            let off = s / WORD;
            for (d, v) in buf[off..off + src.len()].iter_mut().zip(src) {
                *d ^= *v;
            }
        }
        debug_assert!(limbs_degree(&buf).is_none_or(|d| d < n));
        normalize(&mut buf);
        Gf2Poly::from_limbs(buf)
    }

    pub fn reduce(&self, a: &Gf2Poly) -> Gf2Poly {
        self.reduce_limbs(a.limbs().to_vec())
    }

    pub fn square(&self, a: &Gf2Poly) -> Gf2Poly {
        self.reduce_limbs(square_limbs(a.limbs()))
    }

    pub fn mul(&self, a: &Gf2Poly, b: &Gf2Poly) -> Gf2Poly {
        self.reduce_limbs(mul::mul_limbs(a.limbs(), b.limbs()))
    }

    /// `x^(2^k) mod f`.
    pub fn frobenius_x(&self, k: usize) -> Gf2Poly {
        let mut h = self.reduce(&Gf2Poly::x());
        for _ in 0..k {
            h = self.square(&h);
        }
        h
    }
}
