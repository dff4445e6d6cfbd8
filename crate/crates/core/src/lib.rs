//! Polynomials over GF(2), their factorization, and the sum-of-divisors chain
//! `sigma(M^(2h))`, `sigma(sigma(M^(2h)))` for Mersenne prime polynomials
//! `M = 1 + x^a (x+1)^b`.
//!
//! - [`gf2poly`]: bit-packed dense arithmetic.
//! - [`factorize`]: Rabin irreducibility, square-free / distinct-degree /
//!   equal-degree factorization, `sigma` and `omega`.
//! - [`mersenne`]: construction, recognition and enumeration of Mersenne primes.
//! - [`sigma_chain`]: the per-`(M, p)` quantities `U`, `W`, `R`, `c`, `m`, `e`.
//! - [`classify`]: membership in the four exception sets and the count table.
//! - [`verify`]: theorem and lemma checks over enumerated instances.

pub mod error;
pub mod factorize;
pub mod gf2poly;

pub use error::{Error, Result};
pub use factorize::{factor, is_irreducible, Factorization};
pub use gf2poly::{Gf2Poly, Modulus};
pub mod mersenne;
pub mod sigma_chain;
pub mod classify;
pub mod verify;
