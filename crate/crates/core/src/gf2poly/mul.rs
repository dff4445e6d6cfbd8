//! Word-level carry-less multiplication kernels.

/// Operand length (in words) above which Karatsuba is used.
const KARATSUBA_THRESHOLD: usize = 24;

/// Portable 64x64 -> 128 carry-less product, as `(lo, hi)`.
pub(crate) fn clmul64_portable(a: u64, b: u64) -> (u64, u64) {
    // 4-bit windows of `b` against a table of small multiples of `a`.
    let mut table = [0u128; 16];
    let a = a as u128;
    for i in 1..16usize {
        table[i] = if i & 1 == 1 {
            table[i - 1] ^ a
        } else {
            table[i >> 1] << 1
        };
    }
    let mut acc = 0u128;
    for nib in (0..16).rev() {
        acc = (acc << 4) ^ table[((b >> (4 * nib)) & 0xF) as usize];
    }
    (acc as u64, (acc >> 64) as u64)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn clmul64_pclmul(a: u64, b: u64) -> (u64, u64) {
    use std::arch::x86_64::*;
    let va = _mm_set_epi64x(0, a as i64);
    let vb = _mm_set_epi64x(0, b as i64);
    let r = _mm_clmulepi64_si128(va, vb, 0x00);
    let lo = _mm_cvtsi128_si64(r) as u64;
    let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)) as u64;
    (lo, hi)
}

#[cfg(target_arch = "x86_64")]
fn has_pclmul() -> bool {
    use std::sync::OnceLock;
    static HAS: OnceLock<bool> = OnceLock::new();
    *HAS.get_or_init(|| std::arch::is_x86_feature_detected!("pclmulqdq"))
}

#[inline]
pub(crate) fn clmul64(a: u64, b: u64) -> (u64, u64) {
    #[cfg(target_arch = "x86_64")]
    if has_pclmul() {
        // SAFETY: the CPU feature was detected at runtime.
        return unsafe { clmul64_pclmul(a, b) };
    }
    clmul64_portable(a, b)
}

/// `out ^= a * b`, word-level schoolbook. `out` needs `a.len() + b.len()` words.
fn mul_basecase(a: &[u64], b: &[u64], out: &mut [u64]) {
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let (lo, hi) = clmul64(x, y);
            out[i + j] ^= lo;
            out[i + j + 1] ^= hi;
        }
    }
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// `out ^= a * b` for equal-length operands, recursive Karatsuba.
fn karatsuba(a: &[u64], b: &[u64], out: &mut [u64]) {
    let n = a.len();
    debug_assert_eq!(n, b.len());
    if n <= KARATSUBA_THRESHOLD {
        mul_basecase(a, b, out);
        return;
    }
    let half = n / 2;
    let (a0, a1) = a.split_at(half);
    let (b0, b1) = b.split_at(half);
    let hi_len = n - half;

    let mut low = vec![0u64; 2 * half];
    karatsuba(a0, b0, &mut low);
    let mut high = vec![0u64; 2 * hi_len];
    karatsuba(a1, b1, &mut high);

    // (a0 + a1)(b0 + b1), with a0/b0 zero-extended to the high length.
    let mut sa = a1.to_vec();
    xor_into(&mut sa, a0);
    let mut sb = b1.to_vec();
    xor_into(&mut sb, b0);
    let mut mid = vec![0u64; 2 * hi_len];
    karatsuba(&sa, &sb, &mut mid);
    xor_into(&mut mid, &low);
    xor_into(&mut mid, &high);

    xor_into(out, &low);
    xor_into(&mut out[2 * half..], &high);
    xor_into(&mut out[half..], &mid);
}

/// Product of two little-endian word vectors (not normalized).
pub(crate) fn mul_limbs(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len()];
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if short.len() <= KARATSUBA_THRESHOLD {
        mul_basecase(long, short, &mut out);
        return out;
    }
    // Unbalanced operands: Karatsuba on equal-size chunks of the longer one.
    let n = short.len();
    let mut padded = vec![0u64; n];
    for (k, chunk) in long.chunks(n).enumerate() {
        let piece = if chunk.len() == n {
            chunk
        } else {
            padded[..chunk.len()].copy_from_slice(chunk);
            &padded[..]
        };
        let mut tmp = vec![0u64; 2 * n];
        karatsuba(piece, short, &mut tmp);
        let dst = &mut out[k * n..];
        let len = dst.len().min(tmp.len());
        xor_into(&mut dst[..len], &tmp[..len]);
    }
    out
}
