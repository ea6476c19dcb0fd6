//! The explicit degree threshold d0(r, i) beyond which the refined genus
//! bound is proven, evaluated safely.
//!
//! d0(r, i) is the smallest integer strictly greater than
//!
//! ```text
//! max{ (2(s0+1)/(r-2)) * ((r-1)! * (s0+1))^H,  2^(s0+4),  12*(s0+2)^4 }
//! ```
//!
//! where `H = sum_{k=1}^{r-2} 1/k`. The first term is irrational, so it is
//! bracketed by dyadic fixed-point interval arithmetic with directed
//! rounding (ln and exp evaluated termwise, rounding down for the lower end
//! and up for the upper end, plus explicit tail slack). Precision is raised
//! until the bracket is narrower than 1, and the *upper* end is the one
//! compared against, so the returned threshold never under-approximates.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::params::derive_ri;
use crate::{Error, Result};

/// Largest s0 for which 2^(s0+4) is still materializable at desk scale.
const S0_CAP: u64 = 1_000_000;
/// Largest ambient dimension for which (r-1)! is worth computing.
const R_CAP: u32 = 10_000;

/// Smallest integer strictly greater than the proof threshold for (r, i).
///
/// Deterministic and memoized per (r, i). Errors when s0 is so large that
/// the power-of-two term cannot be represented.
pub fn d0_threshold(r: u32, i: u32) -> Result<BigInt> {
    static MEMO: OnceLock<Mutex<HashMap<(u32, u32), BigInt>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = memo.lock().unwrap().get(&(r, i)) {
        return Ok(v.clone());
    }
    let v = compute(r, i)?;
    memo.lock().unwrap().insert((r, i), v.clone());
    Ok(v)
}

/// Decides d >= d0_threshold(r, i) without materializing the threshold
/// when a bit-length comparison already settles it: d < 2^(s0+4) implies
/// d is below the max, hence below the threshold.
pub fn d0_met(r: u32, i: u32, d: &BigInt, s0: &BigInt) -> Result<bool> {
    if d.is_negative() || d.is_zero() {
        return Ok(false);
    }
    if s0 + 4 >= BigInt::from(d.bits()) {
        return Ok(false);
    }
    Ok(d >= &d0_threshold(r, i)?)
}

fn compute(r: u32, i: u32) -> Result<BigInt> {
    let ri = derive_ri(r, i)?;
    if r > R_CAP {
        return Err(Error::Domain(format!("r must be at most {R_CAP} for threshold evaluation (got {r})")));
    }
    let Some(s0) = ri.s0.to_u64().filter(|&s| s <= S0_CAP) else {
        return Err(Error::ThresholdTooLarge { r, i, s0: ri.s0.to_string() });
    };

    let t2 = BigInt::one() << (s0 + 4);
    let s0p2: BigInt = &ri.s0 + 2;
    let t3 = 12 * &s0p2 * &s0p2 * &s0p2 * &s0p2;
    let base = factorial(r - 1) * (&ri.s0 + 1); // >= 2 always (r >= 4)
    let (hp, hq) = harmonic(u64::from(r) - 2);
    let coeff_num = 2 * (&ri.s0 + 1);
    let coeff_den = BigInt::from(r - 2);

    // Initial precision from a rough size estimate of the first term, then
    // doubled until the bracket width drops below 1.
    let lnb_est = (base.bits() as f64) * std::f64::consts::LN_2;
    let h_est = hp.to_f64().unwrap_or(f64::MAX) / hq.to_f64().unwrap_or(1.0);
    let mut prec = 256u64.max((h_est * lnb_est / std::f64::consts::LN_2) as u64 + 128);
    loop {
        let (t1_lo, t1_hi) = first_term_brackets(&base, &hp, &hq, &coeff_num, &coeff_den, prec);
        if &t1_hi - &t1_lo < BigInt::one() << prec {
            // floor of the dyadic upper end, then max against the exact terms
            let t1_floor = t1_hi >> prec;
            let mx = t1_floor.max(t2.clone()).max(t3.clone());
            return Ok(mx + 1);
        }
        prec *= 2;
        if prec > 1 << 24 {
            return Err(Error::SelfCheck(format!(
                "threshold bracket for (r={r}, i={i}) failed to converge"
            )));
        }
    }
}

/// Brackets coeff * base^(hp/hq) as dyadic mantissas at 2^-prec scale.
fn first_term_brackets(
    base: &BigInt,
    hp: &BigInt,
    hq: &BigInt,
    coeff_num: &BigInt,
    coeff_den: &BigInt,
    prec: u64,
) -> (BigInt, BigInt) {
    let (ln2_lo, ln2_hi) = ln2_brackets(prec);
    let (lnb_lo, lnb_hi) = ln_brackets(base, &ln2_lo, &ln2_hi, prec);
    // x = H * ln(base)
    let x_lo = lnb_lo * hp / hq;
    let x_hi = div_up(&(lnb_hi * hp), hq);
    // exp(x) = 2^n * exp(x - n*ln2) with the remainder kept in [0, ~2)
    let n = (&x_lo / &ln2_hi).to_u64().expect("exponent fits u64");
    let rem_lo = &x_lo - n * &ln2_hi; // >= 0 by choice of n
    let rem_hi = &x_hi - n * &ln2_lo;
    debug_assert!(!rem_lo.is_negative());
    debug_assert!(rem_hi < BigInt::from(3) << prec, "remainder out of range");
    let (e_lo, e_hi) = exp_brackets(&rem_lo, &rem_hi, prec);
    // scale by 2^n and by the exact rational coefficient, outward
    let lo = (e_lo << n) * coeff_num / coeff_den;
    let hi = div_up(&((e_hi << n) * coeff_num), coeff_den);
    (lo, hi)
}

/// ln 2 = 2 * atanh(1/3), bracketed at 2^-prec scale.
fn ln2_brackets(prec: u64) -> (BigInt, BigInt) {
    let three = BigInt::from(3);
    let u_lo = (BigInt::one() << prec) / &three;
    let u_hi = &u_lo + 1;
    let (a_lo, a_hi) = atanh_brackets(&u_lo, &u_hi, prec);
    (a_lo * 2, a_hi * 2)
}

/// ln(b) for an integer b >= 2: split b = 2^e * f with f in [1, 2), then
/// ln f = 2 * atanh((f-1)/(f+1)) with the argument below 1/3.
fn ln_brackets(b: &BigInt, ln2_lo: &BigInt, ln2_hi: &BigInt, prec: u64) -> (BigInt, BigInt) {
    debug_assert!(b >= &BigInt::from(2));
    let e = b.bits() - 1;
    let pow = BigInt::one() << e;
    let num = b - &pow;
    let den = b + &pow;
    let u_lo = (num.clone() << prec) / &den;
    let u_hi = div_up(&(num << prec), &den);
    let (a_lo, a_hi) = atanh_brackets(&u_lo, &u_hi, prec);
    (e * ln2_lo + a_lo * 2, e * ln2_hi + a_hi * 2)
}

/// atanh by its odd power series, directed. Arguments must lie in [0, 1/3]
/// (up to one ulp), so consecutive terms shrink at least ninefold and the
/// tail after the first sub-ulp term is under one ulp; 4 ulps of slack
/// cover it together with per-term rounding.
fn atanh_brackets(u_lo: &BigInt, u_hi: &BigInt, prec: u64) -> (BigInt, BigInt) {
    let u2_lo = mul_down(u_lo, u_lo, prec);
    let u2_hi = mul_up(u_hi, u_hi, prec);
    let mut sum_lo = u_lo.clone();
    let mut sum_hi = u_hi.clone();
    let mut pow_lo = u_lo.clone();
    let mut pow_hi = u_hi.clone();
    let mut t = 1u64;
    loop {
        pow_lo = mul_down(&pow_lo, &u2_lo, prec);
        pow_hi = mul_up(&pow_hi, &u2_hi, prec);
        t += 2;
        let term_hi = div_up(&pow_hi, &BigInt::from(t));
        sum_lo += &pow_lo / t;
        sum_hi += &term_hi;
        if term_hi <= BigInt::one() {
            break;
        }
    }
    (sum_lo, sum_hi + 4)
}

/// exp by Taylor series for a remainder in [0, ~2], directed. The term
/// ratio drops below 1/2 once t >= 4, so the tail after the first sub-ulp
/// term is under one ulp; 4 ulps of slack cover it.
fn exp_brackets(rem_lo: &BigInt, rem_hi: &BigInt, prec: u64) -> (BigInt, BigInt) {
    let one = BigInt::one() << prec;
    let mut sum_lo = one.clone();
    let mut sum_hi = one.clone();
    let mut term_lo = one.clone();
    let mut term_hi = one;
    let mut t = 1u64;
    loop {
        term_lo = mul_down(&term_lo, rem_lo, prec) / t;
        term_hi = div_up(&mul_up(&term_hi, rem_hi, prec), &BigInt::from(t));
        sum_lo += &term_lo;
        sum_hi += &term_hi;
        if t >= 4 && term_hi <= BigInt::one() {
            break;
        }
        t += 1;
    }
    (sum_lo, sum_hi + 4)
}

fn mul_down(a: &BigInt, b: &BigInt, prec: u64) -> BigInt {
    (a * b) >> prec
}

fn mul_up(a: &BigInt, b: &BigInt, prec: u64) -> BigInt {
    div_up(&(a * b), &(BigInt::one() << prec))
}

fn div_up(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    (a + (b - 1)) / b
}

fn factorial(n: u32) -> BigInt {
    (2..=u64::from(n)).fold(BigInt::one(), |acc, k| acc * k)
}

/// Exact harmonic sum H_n = sum_{k=1}^n 1/k as a reduced fraction.
fn harmonic(n: u64) -> (BigInt, BigInt) {
    let (mut p, mut q) = (BigInt::zero(), BigInt::one());
    for k in 1..=n {
        p = p * k + &q;
        q *= k;
        let g = num_integer::gcd(p.clone(), q.clone());
        p /= &g;
        q /= g;
    }
    (p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    /// floor(x^(1/k)) by Newton iteration on exact integers.
    fn iroot(x: &BigInt, k: u64) -> BigInt {
        if x.is_zero() {
            return BigInt::zero();
        }
        let mut guess = BigInt::one() << (x.bits() / k + 1);
        loop {
            let next = ((k - 1) * &guess + x / (&guess).pow(k as u32 - 1)) / k;
            if next >= guess {
                break;
            }
            guess = next;
        }
        while (&guess).pow(k as u32) > *x {
            guess -= 1;
        }
        guess
    }

    /// Independent oracle: smallest integer strictly above
    /// coeff_num/coeff_den * base^(hp/hq), via a scaled integer hq-th root.
    fn oracle_first_term_ceiling(
        base: u64,
        hp: u32,
        hq: u64,
        coeff_num: u64,
        coeff_den: u64,
        digits: u32,
    ) -> (BigInt, BigInt) {
        let scale = BigInt::from(10).pow(digits);
        let scaled = BigInt::from(base).pow(hp) * scale.pow(hq as u32);
        let root = iroot(&scaled, hq); // floor(base^(hp/hq) * 10^digits)
        let lo = BigInt::from(coeff_num) * &root / (BigInt::from(coeff_den) * &scale);
        let hi = div_up(
            &(BigInt::from(coeff_num) * (&root + 1)),
            &(BigInt::from(coeff_den) * &scale),
        );
        (lo + 1, hi + 1) // bracket of "smallest integer strictly above"
    }

    #[test]
    fn threshold_r6_quadrics() {
        // max of { 5 * 1200^(25/12), 2^13, 12 * 11^4 } with the first term
        // dominating at about 1.3e7.
        let t = d0_threshold(6, 2).unwrap();
        assert!(t >= BigInt::from(8192));
        assert!(t >= BigInt::from(175_692));
        assert_eq!(t, BigInt::from(12_999_629u64));
        let (lo, hi) = oracle_first_term_ceiling(1200, 25, 12, 10, 2, 30);
        assert!(lo <= t && t <= hi, "threshold {t} outside oracle bracket [{lo}, {hi}]");
    }

    #[test]
    fn threshold_r9_quadrics_oracle_bracket() {
        // H_7 = 363/140, base = 8! * 19 = 766080, coeff = 38/7.
        let t = d0_threshold(9, 2).unwrap();
        assert_eq!(t, BigInt::from(9_812_230_699_997_738u64));
        let (lo, hi) = oracle_first_term_ceiling(766_080, 363, 140, 38, 7, 25);
        assert!(lo <= t && t <= hi, "threshold {t} outside oracle bracket [{lo}, {hi}]");
    }

    #[test]
    fn threshold_large_r_pins() {
        assert_eq!(
            d0_threshold(12, 2).unwrap(),
            BigInt::from_str("2655134571374325171498278385").unwrap()
        );
        assert_eq!(
            d0_threshold(15, 2).unwrap(),
            BigInt::from_str("85035188260939362218094158018911028285552").unwrap()
        );
    }

    #[test]
    fn threshold_dominated_by_quartic_term() {
        // (4,4): s0 = 7, first term ~ 2660.4, 2^11 = 2048, 12*9^4 = 78732.
        assert_eq!(d0_threshold(4, 4).unwrap(), BigInt::from(78_733));
    }

    #[test]
    fn threshold_dominated_by_power_of_two() {
        // (4,16): s0 = 36 and 2^40 dominates; strictly greater means +1.
        assert_eq!(d0_threshold(4, 16).unwrap(), (BigInt::one() << 40) + 1);
    }

    #[test]
    fn threshold_dominated_by_first_term_small_r() {
        // (5,2): s0 = 6, first term ~ 56071.28 beats 12*8^4 = 49152.
        assert_eq!(d0_threshold(5, 2).unwrap(), BigInt::from(56_072));
    }

    #[test]
    fn met_shortcut_agrees_with_materialized_threshold() {
        let t = d0_threshold(6, 2).unwrap();
        assert!(!d0_met(6, 2, &(&t - 1), &BigInt::from(9)).unwrap());
        assert!(d0_met(6, 2, &t, &BigInt::from(9)).unwrap());
        assert!(d0_met(6, 2, &(&t + 1), &BigInt::from(9)).unwrap());
        // small d decided purely by bit length
        assert!(!d0_met(6, 2, &BigInt::from(27), &BigInt::from(9)).unwrap());
    }

    #[test]
    fn met_is_false_for_astronomical_s0_without_materializing() {
        // s0 ~ 1.45e21 at (60, 30); 2^(s0+4) is unrepresentable but the
        // bit-length comparison settles the question instantly.
        let ri = derive_ri(60, 30).unwrap();
        assert!(ri.s0 > BigInt::from(u64::MAX));
        let d = BigInt::from(10).pow(18);
        assert!(!d0_met(60, 30, &d, &ri.s0).unwrap());
        assert!(matches!(
            d0_threshold(60, 30),
            Err(Error::ThresholdTooLarge { .. })
        ));
    }

    #[test]
    fn harmonic_small_values() {
        assert_eq!(harmonic(4), (BigInt::from(25), BigInt::from(12)));
        assert_eq!(harmonic(7), (BigInt::from(363), BigInt::from(140)));
    }
}
