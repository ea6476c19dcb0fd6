//! Mechanical verification sweeps for every numeric inequality, identity,
//! and case table the genus bounds rest on, with machine-readable reports.
//!
//! Grids are desk-scale samplings of claims that hold universally; the
//! finitely many printed values (the 16-row quartic-space table, the
//! polynomial spot values) are checked exactly. A suite passes iff no case
//! fails; boundary cases where an inequality holds with margin exactly 0
//! are reported separately as witnesses.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, choose2};
use crate::bounds::{g0_bound, surface_sections_lower};
use crate::params::{derive_ri, split_degree};
use crate::{Error, Result};

/// One checked case: the inputs, what was expected, what was computed, and
/// the inequality margin (for equalities the difference).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub inputs: String,
    pub expected: String,
    pub got: String,
    pub margin: String,
}

/// Outcome of one verification sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases_total: u64,
    pub cases_failed: u64,
    pub failures: Vec<CaseRecord>,
    pub witnesses: Vec<CaseRecord>,
}

impl VerificationReport {
    fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            cases_total: 0,
            cases_failed: 0,
            failures: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.cases_failed == 0
    }

    /// Records an exact-equality case.
    fn equality<T: PartialEq + ToString>(&mut self, inputs: String, expected: T, got: T) {
        self.cases_total += 1;
        if expected != got {
            self.cases_failed += 1;
            self.failures.push(CaseRecord {
                inputs,
                expected: expected.to_string(),
                got: got.to_string(),
                margin: String::new(),
            });
        }
    }

    /// Records an inequality case that holds iff margin >= 0; margin 0 is
    /// a boundary witness, not a failure.
    fn inequality(&mut self, inputs: String, check: &str, margin: BigInt) {
        self.cases_total += 1;
        if margin.is_negative() {
            self.cases_failed += 1;
            self.failures.push(CaseRecord {
                inputs,
                expected: check.to_string(),
                got: format!("margin {margin}"),
                margin: margin.to_string(),
            });
        } else if margin.is_zero() {
            self.witnesses.push(CaseRecord {
                inputs,
                expected: check.to_string(),
                got: "margin 0".to_string(),
                margin: "0".to_string(),
            });
        }
    }

    /// Folds another report's cases into this one.
    fn absorb(&mut self, other: VerificationReport) {
        self.cases_total += other.cases_total;
        self.cases_failed += other.cases_failed;
        self.failures.extend(other.failures);
        self.witnesses.extend(other.witnesses);
    }
}

/// One row of the small-degree analysis at fixed (r, i): the margin
/// quantity s0 - 2*(c0 + gamma + 1) together with its ingredients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppendixCase {
    pub i: u32,
    pub s0: BigInt,
    pub c0: BigInt,
    pub gamma: BigInt,
    pub value: BigInt,
}

/// The sixteen quartic-space rows (r = 4, beta > 0, 3 <= i <= 24) with
/// their published decompositions: (i, s0, c0, gamma, s0 - 2(c0+gamma+1)).
pub const APPENDIX_R4_EXPECTED: [(u32, u32, u32, u32, i64); 16] = [
    (3, 6, 1, 2, -2),
    (4, 7, 1, 1, 1),
    (6, 10, 1, 1, 4),
    (7, 12, 2, 0, 6),
    (8, 14, 2, 2, 4),
    (9, 16, 1, 6, 0),
    (11, 21, 3, 0, 13),
    (12, 24, 5, 5, 2),
    (15, 33, 6, 10, -1),
    (16, 36, 4, 4, 18),
    (18, 43, 3, 3, 29),
    (19, 47, 5, 0, 35),
    (20, 51, 5, 5, 29),
    (21, 55, 3, 14, 19),
    (23, 64, 6, 0, 50),
    (24, 69, 10, 10, 27),
];

/// Computes the small-degree margin s0 - 2*(c0 + gamma + 1) at (r, i),
/// cross-checking the expanded equivalent form
/// binom(r+i,i) - (i+1)(i^2+2i+2)/2 + i*beta - gamma*(i+1)(i-1), which
/// equals binom(i+1,2) times the margin exactly.
pub fn verify_appendix_inequality(r: u32, i: u32) -> Result<AppendixCase> {
    let ri = derive_ri(r, i)?;
    if ri.beta.is_zero() {
        return Err(Error::BetaIsZero { r, i });
    }
    let value = &ri.s0 - 2 * (&ri.c0 + &ri.gamma + 1);
    let ii = i64::from(i);
    let expanded = binomial(u64::from(r) + u64::from(i), u64::from(i))
        - BigInt::from(ii + 1) * (ii * ii + 2 * ii + 2) / 2
        + ii * &ri.beta
        - &ri.gamma * (ii + 1) * (ii - 1);
    let t = binomial(u64::from(i) + 1, 2);
    if expanded != &t * &value {
        return Err(Error::SelfCheck(format!(
            "expanded appendix form {expanded} != binom(i+1,2) * margin {} at (r={r}, i={i})",
            &t * &value
        )));
    }
    Ok(AppendixCase { i, s0: ri.s0, c0: ri.c0, gamma: ri.gamma, value })
}

/// The sixteen quartic-space cases, in ascending i order.
pub fn appendix_r4_table() -> Vec<AppendixCase> {
    APPENDIX_R4_EXPECTED
        .iter()
        .map(|&(i, ..)| {
            verify_appendix_inequality(4, i).expect("r=4 table rows all have beta > 0")
        })
        .collect()
}

/// p(i) = i^4 + 14 i^3 - 109 i^2 + 274 i - 120, exactly.
pub fn poly_p(i: u32) -> BigInt {
    let x = BigInt::from(i);
    (((&x + 14) * &x - 109) * &x + 274) * &x - 120
}

/// q(i) = i^4 - 26 i^3 + 23 i^2 + 50 i - 24, exactly.
pub fn poly_q(i: u32) -> BigInt {
    let x = BigInt::from(i);
    (((&x - 26) * &x + 23) * &x + 50) * &x - 24
}

/// Sweeps the numeric claims underpinning the sectional-genus cap:
/// 2*c0 < s0 whenever beta > 0, the chain step 2*c0 <= i + 1, the cubic
/// inequality that forces them, and non-emptiness of the section-count
/// interval for every admissible sectional genus.
pub fn verify_stima_numeric(r_max: u32, i_max: u32) -> Result<VerificationReport> {
    check_grid_args(r_max, i_max)?;
    let mut rep = VerificationReport::new("stima");

    for i in 2..=i_max {
        let t = binomial(u64::from(i) + 1, 2);
        let lhs_binom = u64::from(i) * &t + (u64::from(i) + 1) + &t;
        let rhs_binom = binomial(4 + u64::from(i), u64::from(i));
        rep.inequality(
            format!("i={i}"),
            "i*binom(i+1,2) + (i+1) + binom(i+1,2) < binom(4+i,i)",
            &rhs_binom - &lhs_binom - 1,
        );
        let ii = i64::from(i);
        let lhs_cubic = BigInt::from(12 * ii * ii + 12 * ii + 24);
        let rhs_cubic = BigInt::from((4 + ii) * (3 + ii) * (2 + ii));
        rep.inequality(
            format!("i={i}"),
            "12i^2 + 12i + 24 < (4+i)(3+i)(2+i)",
            &rhs_cubic - &lhs_cubic - 1,
        );
        // the two forms are proportional: 24*(binomial form) = (i+1)*(cubic form)
        rep.equality(
            format!("i={i}"),
            24 * (rhs_binom - lhs_binom),
            (ii + 1) * (rhs_cubic - lhs_cubic),
        );
    }

    for r in 4..=r_max {
        for i in 2..=i_max {
            let ri = derive_ri(r, i)?;
            if ri.beta.is_zero() {
                continue;
            }
            rep.inequality(
                format!("r={r}, i={i}"),
                "2*c0 < s0",
                &ri.s0 - 2 * &ri.c0 - 1,
            );
            rep.inequality(
                format!("r={r}, i={i}"),
                "2*c0 <= i + 1",
                BigInt::from(i) + 1 - 2 * &ri.c0,
            );
            // section-count interval is non-empty for every 0 <= pi <= c0,
            // degenerating exactly when pi = c0 and gamma = 0
            let mut pi = BigInt::zero();
            while pi <= ri.c0 {
                let width = i * (&ri.c0 - &pi) + &ri.gamma;
                rep.inequality(
                    format!("r={r}, i={i}, pi={pi}"),
                    "interval low <= high",
                    width,
                );
                pi += 1;
            }
        }
    }
    Ok(rep)
}

/// Sweeps the small-degree margin analysis: the 16 published quartic-space
/// rows, the polynomial sufficiency p(i) >= 0, the q-polynomial tail, the
/// p - q difference identity, and the direct margin >= 0 over r >= 5.
pub fn suite_appendix(r_max: u32, i_max: u32) -> Result<VerificationReport> {
    check_grid_args(r_max, i_max)?;
    let mut rep = VerificationReport::new("appendix");

    for (case, &(i, s0, c0, gamma, value)) in appendix_r4_table().iter().zip(&APPENDIX_R4_EXPECTED)
    {
        rep.equality(format!("r=4, i={i}"), case.i, i);
        rep.equality(format!("r=4, i={i}, s0"), case.s0.clone(), BigInt::from(s0));
        rep.equality(format!("r=4, i={i}, c0"), case.c0.clone(), BigInt::from(c0));
        rep.equality(format!("r=4, i={i}, gamma"), case.gamma.clone(), BigInt::from(gamma));
        rep.equality(format!("r=4, i={i}, value"), case.value.clone(), BigInt::from(value));
        // margin-0 rows (i = 9) are boundary witnesses of the >= 0 claim
        if value >= 0 {
            rep.inequality(format!("r=4, i={i}"), "s0 - 2(c0+gamma+1) >= 0", BigInt::from(value));
        }
    }

    rep.absorb(verify_r5_appendix_poly(i_max)?);

    for (i, want) in [(2, 120), (3, 180), (4, 384), (5, 900), (6, 1920), (7, 3660)] {
        rep.equality(format!("p({i})"), poly_p(i), BigInt::from(want));
    }
    rep.equality("q(0)".into(), poly_q(0), BigInt::from(-24));
    rep.equality("q(1)".into(), poly_q(1), BigInt::from(24));
    rep.equality("q(26)".into(), poly_q(26), BigInt::from(16_824));
    for i in 26..=200 {
        rep.inequality(format!("q({i})"), "q(i) >= 0", poly_q(i));
    }
    // p - q is a fixed cubic; five points pin a degree-3 polynomial
    for i in [0u32, 1, 2, 3, 4] {
        let ii = i64::from(i);
        rep.equality(
            format!("(p-q)({i})"),
            poly_p(i) - poly_q(i),
            BigInt::from(40 * ii * ii * ii - 132 * ii * ii + 224 * ii - 96),
        );
    }
    Ok(rep)
}

/// p(i) >= 0 for 2 <= i <= i_max, plus the direct margin statement
/// s0 - 2(c0+gamma+1) >= 0 over 5 <= r <= 60 with beta > 0.
pub fn verify_r5_appendix_poly(i_max: u32) -> Result<VerificationReport> {
    if i_max < 2 {
        return Err(Error::Domain(format!("i_max must be at least 2 (got {i_max})")));
    }
    let mut rep = VerificationReport::new("r5-appendix-poly");
    for i in 2..=i_max {
        rep.inequality(format!("p({i})"), "p(i) >= 0", poly_p(i));
    }
    for r in 5..=60u32 {
        for i in 2..=i_max {
            match verify_appendix_inequality(r, i) {
                Ok(case) => rep.inequality(
                    format!("r={r}, i={i}"),
                    "s0 - 2(c0+gamma+1) >= 0",
                    case.value,
                ),
                Err(Error::BetaIsZero { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(rep)
}

/// Verifies the four-way identity at r = 6, i = 2 for every degree
/// divisible by 3 in [21, d_max]:
///
/// ```text
/// binom(d/3 - 1, 2) = d^2/18 - d/2 + 1 = 9*binom(m,2) + m*(eps+1) + nu
///                   = g0_bound(6, d, 2)
/// ```
///
/// with nu = 1 iff eps = 8 (the rational middle form is cleared to
/// 18*b = d^2 - 9d + 18).
pub fn verify_r6_sharpness_identity(d_max: u64) -> Result<VerificationReport> {
    if d_max < 21 {
        return Err(Error::Domain(format!("d_max must be at least 21 (got {d_max})")));
    }
    let mut rep = VerificationReport::new("r6");
    let ri = derive_ri(6, 2)?;
    let mut d = 21u64;
    while d <= d_max {
        let db = BigInt::from(d);
        let b = choose2(&(BigInt::from(d / 3) - 1));
        rep.equality(
            format!("d={d}, quadratic form"),
            18 * &b,
            &db * &db - 9 * &db + 18,
        );
        let (m, eps) = split_degree(&db, &ri.s0)?;
        let nu = u8::from(eps == BigInt::from(8));
        let cell = 9 * choose2(&m) + &m * (&eps + 1) + nu;
        rep.equality(format!("d={d}, cell form"), b.clone(), cell);
        let g0 = g0_bound(6, &db, 2)?;
        rep.equality(format!("d={d}, g0"), b, g0.value);
        d += 3;
    }
    Ok(rep)
}

/// Verifies the expected-minimal-degree dichotomy: the section-count lower
/// bound at s = s0 (with pi = 0) equals beta - binom(i+1,2) when beta > 0
/// and 0 when beta = 0, and is strictly positive for every degree below
/// s0.
///
/// The bound is affine and strictly decreasing in the surface degree, so
/// for huge s0 the endpoint checks are exhaustive; small s0 is enumerated
/// outright.
pub fn verify_remark_r1(r_max: u32, i_max: u32) -> Result<VerificationReport> {
    const SIGMA_ENUM_CAP: u64 = 1024;
    check_grid_args(r_max, i_max)?;
    let mut rep = VerificationReport::new("remark-r1");
    let zero = BigInt::zero();
    for r in 4..=r_max {
        for i in 2..=i_max {
            let ri = derive_ri(r, i)?;
            let t = binomial(u64::from(i) + 1, 2);
            let base = binomial(u64::from(r) + u64::from(i), u64::from(i)) - (i64::from(i) + 1);
            let at_s0 = surface_sections_lower(r, &ri.s0, &zero, i);
            if ri.beta.is_zero() {
                rep.equality(format!("r={r}, i={i}, s=s0"), at_s0, BigInt::zero());
            } else {
                rep.equality(format!("r={r}, i={i}, s=s0"), at_s0, &ri.beta - &t);
            }
            // tie the affine form to the public operation, then walk it
            let affine = |sigma: &BigInt| &base - &t * sigma;
            for probe in [BigInt::from(1), (&ri.s0) / 2, &ri.s0 - 1] {
                if probe.is_positive() && probe < ri.s0 {
                    rep.equality(
                        format!("r={r}, i={i}, sigma={probe}, affine form"),
                        surface_sections_lower(r, &probe, &zero, i),
                        affine(&probe),
                    );
                }
            }
            if ri.s0 <= BigInt::from(SIGMA_ENUM_CAP) {
                let mut sigma = BigInt::from(1);
                let mut value = affine(&sigma);
                while sigma < ri.s0 {
                    rep.inequality(
                        format!("r={r}, i={i}, sigma={sigma}"),
                        "sections lower bound > 0 below s0",
                        &value - 1,
                    );
                    sigma += 1;
                    value -= &t;
                }
            } else {
                // affine and strictly decreasing in sigma: endpoints cover
                // the whole range
                for sigma in [BigInt::from(1), &ri.s0 - 1] {
                    rep.inequality(
                        format!("r={r}, i={i}, sigma={sigma}"),
                        "sections lower bound > 0 below s0",
                        affine(&sigma) - 1,
                    );
                }
            }
        }
    }
    Ok(rep)
}

/// Runs every suite at the given grid caps, in a fixed order.
pub fn suite_all(r_max: u32, i_max: u32, d_max: u64) -> Result<Vec<VerificationReport>> {
    Ok(vec![
        verify_stima_numeric(r_max, i_max)?,
        suite_appendix(r_max, i_max)?,
        verify_r6_sharpness_identity(d_max)?,
        verify_remark_r1(r_max, i_max)?,
    ])
}

fn check_grid_args(r_max: u32, i_max: u32) -> Result<()> {
    if r_max < 4 {
        return Err(Error::Domain(format!("r_max must be at least 4 (got {r_max})")));
    }
    if i_max < 2 {
        return Err(Error::Domain(format!("i_max must be at least 2 (got {i_max})")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn appendix_cases_match_published_rows() {
        assert_eq!(verify_appendix_inequality(4, 4).unwrap().value, BigInt::from(1));
        assert_eq!(verify_appendix_inequality(4, 15).unwrap().value, BigInt::from(-1));
        assert_eq!(verify_appendix_inequality(4, 3).unwrap().value, BigInt::from(-2));
        assert!(matches!(
            verify_appendix_inequality(4, 5),
            Err(Error::BetaIsZero { .. })
        ));
    }

    #[test]
    fn appendix_table_pins_all_sixteen_rows() {
        let table = appendix_r4_table();
        assert_eq!(table.len(), 16);
        for (case, &(i, s0, c0, gamma, value)) in table.iter().zip(&APPENDIX_R4_EXPECTED) {
            assert_eq!(case.i, i);
            assert_eq!(case.s0, BigInt::from(s0));
            assert_eq!(case.c0, BigInt::from(c0));
            assert_eq!(case.gamma, BigInt::from(gamma));
            assert_eq!(case.value, BigInt::from(value), "i={i}");
        }
    }

    #[test]
    fn appendix_sixteen_is_exactly_the_beta_positive_set() {
        let expect: Vec<u32> = APPENDIX_R4_EXPECTED.iter().map(|c| c.0).collect();
        let got: Vec<u32> = (3..=24)
            .filter(|&i| !derive_ri(4, i).unwrap().beta.is_zero())
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn poly_values() {
        assert_eq!(poly_p(2), BigInt::from(120));
        assert_eq!(poly_p(7), BigInt::from(3660));
        assert_eq!(poly_p(0), BigInt::from(-120));
        assert_eq!(poly_q(0), BigInt::from(-24));
        assert_eq!(poly_q(1), BigInt::from(24));
        assert_eq!(poly_q(26), BigInt::from(16_824));
    }

    #[test]
    fn stima_suite_passes_at_default_grid() {
        let rep = verify_stima_numeric(60, 30).unwrap();
        assert!(rep.passed(), "failures: {:?}", rep.failures);
        assert_eq!(rep.cases_failed, 0);
        assert_eq!(rep.cases_failed, rep.failures.len() as u64);
        // gamma = 0 rows make the pi = c0 interval degenerate
        assert!(rep.witnesses.iter().any(|w| w.inputs == "r=6, i=2, pi=1"));
    }

    #[test]
    fn stima_cubic_anchor_case() {
        // i = 2: 12*4 + 24 + 24 = 96 < 120 = 6*5*4
        let rep = verify_stima_numeric(4, 2).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn appendix_suite_passes() {
        let rep = suite_appendix(60, 30).unwrap();
        assert!(rep.passed(), "failures: {:?}", rep.failures);
        // the i = 9 row holds with margin exactly 0
        assert!(rep.witnesses.iter().any(|w| w.inputs == "r=4, i=9"));
    }

    #[test]
    fn r6_suite_passes_to_ten_thousand() {
        let rep = verify_r6_sharpness_identity(10_000).unwrap();
        assert!(rep.passed(), "failures: {:?}", rep.failures);
        assert_eq!(rep.cases_total, 3 * ((10_000 - 21) / 3 + 1));
    }

    #[test]
    fn remark_r1_suite_passes() {
        let rep = verify_remark_r1(20, 10).unwrap();
        assert!(rep.passed(), "failures: {:?}", rep.failures);
        // (6, 2, sigma = 8): 28 - (3 + 24) = 1, margin 0 under strictness
        assert!(rep.witnesses.iter().any(|w| w.inputs == "r=6, i=2, sigma=8"));
    }

    #[test]
    fn suites_are_deterministic_and_idempotent() {
        assert_eq!(
            verify_stima_numeric(20, 12).unwrap(),
            verify_stima_numeric(20, 12).unwrap()
        );
        assert_eq!(suite_appendix(10, 12).unwrap(), suite_appendix(10, 12).unwrap());
        assert_eq!(
            verify_r6_sharpness_identity(300).unwrap(),
            verify_r6_sharpness_identity(300).unwrap()
        );
        assert_eq!(verify_remark_r1(8, 6).unwrap(), verify_remark_r1(8, 6).unwrap());
    }

    #[test]
    fn report_json_shape_is_stable() {
        let rep = verify_r6_sharpness_identity(30).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.starts_with("{\"suite\":\"r6\",\"cases_total\":"));
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);
    }

    #[test]
    fn grid_args_validated() {
        assert!(verify_stima_numeric(3, 30).is_err());
        assert!(verify_stima_numeric(60, 1).is_err());
        assert!(verify_r6_sharpness_identity(20).is_err());
    }
}
