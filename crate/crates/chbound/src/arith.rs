//! Exact integer primitives underlying every displayed formula.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// n choose k, exactly, in arbitrary precision.
///
/// Returns 0 when k > n and 1 when k = 0, matching the combinatorial
/// convention used by terms like `binom(gamma+1, 2)` at `gamma = 0`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        // exact at every step: acc holds binom(n, t+1) after the division
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

/// m choose 2 for an arbitrary-precision m >= 0.
pub fn choose2(m: &BigInt) -> BigInt {
    if m.sign() == num_bigint::Sign::Minus {
        return BigInt::zero();
    }
    m * (m - 1) / 2
}

/// Euclidean division of a non-negative a by a positive b.
///
/// Returns (q, rem) with a = q*b + rem and 0 <= rem < b.
pub fn divmod_exact(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt)> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if b.is_negative() {
        return Err(Error::Domain(format!("divisor must be positive (got {b})")));
    }
    if a.is_negative() {
        return Err(Error::Domain(format!("dividend must be non-negative (got {a})")));
    }
    Ok(a.div_mod_floor(b))
}

/// ceil(x / 2) for x >= 0.
pub fn ceil_half(x: &BigInt) -> BigInt {
    debug_assert!(!x.is_negative());
    (x + 1) / 2
}

/// floor(x / 2), rounding toward negative infinity for negative x.
///
/// The max-term of the refined genus bound floors a possibly negative
/// integer; the surrounding max with 0 discards it, but the intermediate
/// value must still be well-defined.
pub fn floor_half(x: &BigInt) -> BigInt {
    x.div_floor(&BigInt::from(2))
}
