//! Exact integer combinatorics and log-domain helpers.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Base-2 logarithm of a big integer, accurate to f64 precision.
///
/// Returns `-inf` for zero.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return x.to_u64().map_or(f64::NAN, |v| (v as f64).log2());
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).log2() + shift as f64
}

/// `⌊log₂ x⌋` for `x ≥ 1`, exact.
pub fn floor_log2_big(x: &BigUint) -> u64 {
    x.bits().saturating_sub(1)
}

/// Row `n` of Pascal's triangle, `C(n, 0..=n)`.
pub fn binomial_row(n: u64) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for m in 0..n {
        c = c * BigUint::from(n - m) / BigUint::from(m + 1);
        row.push(c.clone());
    }
    row
}

/// `C(n, m)` exactly.
pub fn binomial(n: u64, m: u64) -> BigUint {
    if m > n {
        return BigUint::zero();
    }
    let m = m.min(n - m);
    let mut c = BigUint::one();
    for i in 0..m {
        c = c * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    c
}

/// Smallest integer `t ≥ x` for a finite nonnegative `x`.
pub fn ceil_to_big(x: f64) -> BigUint {
    debug_assert!(x.is_finite() && x >= 0.0);
    let c = x.ceil();
    if c < 9.0e15 {
        BigUint::from(c as u64)
    } else {
        // f64 above 2^53 is an integer already; decompose mantissa/exponent.
        let bits = c.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64 - 1075;
        let mant = (bits & ((1u64 << 52) - 1)) | (1u64 << 52);
        BigUint::from(mant) << (exp as usize)
    }
}

/// `2^(log2_mult + log2_w)` i.e. total mass `mult · w` of a grouped entry.
pub fn mass(mult: &BigUint, log2_w: f64) -> f64 {
    (log2_big(mult) + log2_w).exp2()
}

/// Serde adapter storing a `BigUint` as a decimal string.
pub(crate) mod big_decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub(crate) fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub(crate) fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10)
            .ok_or_else(|| serde::de::Error::custom("invalid decimal integer"))
    }
}
