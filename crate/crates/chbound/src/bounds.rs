//! Genus and section-count bounds, with regime metadata.
//!
//! The central quantity is the refined upper bound for the arithmetic genus
//! of an integral non-degenerate curve of degree d in r-space that lies on
//! no hypersurface of degree <= i (requires beta > 0):
//!
//! ```text
//! G0(r; d, i) = binom(m,2)*s0 + m*(epsilon + c0) + binom(gamma+1, 2)
//!             + max{0, floor((2*c0 - (s0 - 1 - epsilon)) / 2)} - mu
//! ```
//!
//! The beta = 0 regime is covered by the earlier bound
//! `binom(m,2)*s0 + m*epsilon`, which provably coincides with the classical
//! Castelnuovo bound for curves in (s0+1)-space; the coincidence is
//! recomputed on every call as a self-check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, ceil_half, choose2, floor_half};
use crate::params::{derive_ri, split_degree, RiParams};
use crate::{Error, Result};

pub use crate::threshold::d0_threshold;

/// Which statement produced a bound value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Classical,
    BetaZero,
    G0,
    R6Sharp,
    R9Candidates,
    Interval,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Classical => "classical",
            Regime::BetaZero => "beta_zero",
            Regime::G0 => "g0",
            Regime::R6Sharp => "r6_sharp",
            Regime::R9Candidates => "r9_candidates",
            Regime::Interval => "interval",
        }
    }
}

/// Whether the bound value is known to be attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sharpness {
    Sharp,
    NotKnownSharp,
    CandidateSet,
}

/// A bound value plus the metadata needed to interpret it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub value: BigInt,
    pub regime: Regime,
    pub sharp: Sharpness,
    /// False exactly in the excluded corner r = 4 with i in {2, 3, 15}.
    pub valid_for_theorem: bool,
    /// The degree threshold beyond which the producing theorem is proven.
    /// The bound value itself is computed for every d >= s0 + 1; callers
    /// compare d against this to know whether the hypothesis d >> max{r,i}
    /// is discharged.
    pub threshold_d0: BigInt,
}

/// Numeric profile of a surface section: degree s, sectional genus pi,
/// twist j, ambient dimension r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionData {
    pub s: BigInt,
    pub pi: BigInt,
    pub j: u32,
    pub r: u32,
}

impl SectionData {
    pub fn new(s: BigInt, pi: BigInt, j: u32, r: u32) -> Result<Self> {
        if s < BigInt::one() {
            return Err(Error::Domain(format!("s must be at least 1 (got {s})")));
        }
        if pi.is_negative() {
            return Err(Error::Domain(format!("pi must be non-negative (got {pi})")));
        }
        if j < 1 {
            return Err(Error::Domain("j must be at least 1".into()));
        }
        if r < 2 {
            return Err(Error::Domain(format!("r must be at least 2 (got {r})")));
        }
        Ok(Self { s, pi, j, r })
    }
}

/// Classical Castelnuovo bound for integral non-degenerate curves of
/// degree d in r-space: split d - 1 = m1*(r-1) + eps1 and return
/// binom(m1,2)*(r-1) + m1*eps1.
///
/// r is arbitrary precision because the beta = 0 identity evaluates this
/// at r = s0 + 1, which can exceed machine words.
pub fn castelnuovo_bound(r: &BigInt, d: &BigInt) -> Result<BigInt> {
    if r < &BigInt::from(3) {
        return Err(Error::Domain(format!("r must be at least 3 (got {r})")));
    }
    if d < r {
        return Err(Error::Domain(format!("d must be at least r = {r} (got {d})")));
    }
    let rm1 = r - 1;
    let (m1, eps1) = split_degree(d, &rm1)?;
    Ok(choose2(&m1) * rm1 + m1 * eps1)
}

/// The max{0, floor(...)} correction term of G0.
pub(crate) fn g0_max_term(s0: &BigInt, c0: &BigInt, epsilon: &BigInt) -> BigInt {
    let arg = 2 * c0 - (s0 - 1 - epsilon);
    floor_half(&arg).max(BigInt::zero())
}

/// The G0 formula on already-derived parameters.
pub(crate) fn g0_value_from(ri: &RiParams, m: &BigInt, epsilon: &BigInt) -> BigInt {
    choose2(m) * &ri.s0
        + m * (epsilon + &ri.c0)
        + choose2(&(&ri.gamma + 1))
        + g0_max_term(&ri.s0, &ri.c0, epsilon)
        - ri.mu
}

/// G0(r; d, i) as a bare value. Requires beta > 0 and d >= s0 + 1.
pub fn g0_value(r: u32, d: &BigInt, i: u32) -> Result<BigInt> {
    let ri = require_beta_positive(r, i)?;
    let (m, epsilon) = split_in_range(d, &ri.s0)?;
    Ok(g0_value_from(&ri, &m, &epsilon))
}

/// G0(r; d, i) with regime metadata and the proof threshold.
pub fn g0_bound(r: u32, d: &BigInt, i: u32) -> Result<BoundResult> {
    let ri = require_beta_positive(r, i)?;
    let (m, epsilon) = split_in_range(d, &ri.s0)?;
    let value = g0_value_from(&ri, &m, &epsilon);
    let sharp = if r == 6 && i == 2 && [2, 5, 8].map(BigInt::from).contains(&epsilon) {
        Sharpness::Sharp
    } else {
        Sharpness::NotKnownSharp
    };
    Ok(BoundResult {
        value,
        regime: Regime::G0,
        sharp,
        valid_for_theorem: theorem_covers(r, i),
        threshold_d0: d0_threshold(r, i)?,
    })
}

/// False exactly in the excluded corner of the G0 statement.
pub(crate) fn theorem_covers(r: u32, i: u32) -> bool {
    !(r == 4 && (i < 4 || i == 15))
}

/// The beta = 0 bound binom(m,2)*s0 + m*epsilon, self-checked against the
/// classical bound in (s0+1)-space.
///
/// Accepts r >= 4: the bound statement is proven for r >= 5 and for
/// (r, i) = (4, 2), which `valid_for_theorem` reflects; the arithmetic is
/// total either way.
pub fn beta0_bound(r: u32, d: &BigInt, i: u32) -> Result<BoundResult> {
    let ri = derive_ri(r, i)?;
    if !ri.beta.is_zero() {
        return Err(Error::BetaIsPositive { r, i, beta: ri.beta.to_string() });
    }
    let (m, epsilon) = split_in_range(d, &ri.s0)?;
    let value = choose2(&m) * &ri.s0 + &m * &epsilon;
    let classical = castelnuovo_bound(&(&ri.s0 + 1), d)?;
    if value != classical {
        return Err(Error::SelfCheck(format!(
            "beta0 bound {value} != classical bound {classical} in (s0+1)-space at (r={r}, d={d}, i={i})"
        )));
    }
    let sharp = if (r >= 5 && i <= 3) || (r == 4 && i == 2) {
        Sharpness::Sharp
    } else {
        Sharpness::NotKnownSharp
    };
    Ok(BoundResult {
        value,
        regime: Regime::BetaZero,
        sharp,
        valid_for_theorem: r >= 5 || i == 2,
        threshold_d0: d0_threshold(r, i)?,
    })
}

/// Upper bound for the section count of an integral curve of degree s and
/// arithmetic genus pi under the twist j: 1 + j*s - min{pi, ceil(j*s/2)}.
pub fn clifford_h0_upper(sec: &SectionData) -> BigInt {
    let js = &sec.s * sec.j;
    let cap = ceil_half(&js);
    1 + js - sec.pi.clone().min(cap)
}

/// Lower bound for the dimension of degree-i forms vanishing on a surface
/// of degree s and sectional genus pi in r-space. May be negative; callers
/// clamp at 0 when using it as a dimension.
pub fn surface_sections_lower(r: u32, s: &BigInt, pi: &BigInt, i: u32) -> BigInt {
    let base = binomial(u64::from(r) + u64::from(i), u64::from(i))
        - (i64::from(i) + 1)
        - binomial(u64::from(i) + 1, 2) * s;
    if pi.is_zero() {
        return base; // every min-term vanishes
    }
    let mut correction = BigInt::zero();
    for j in 1..=i {
        let half = ceil_half(&(s * j));
        correction += pi.min(&half);
    }
    base + correction
}

/// The admissible range of the section count h0(S, O_S(1)) for a surface
/// of degree s0 and sectional genus pi avoiding degree-<= i hypersurfaces:
/// (s0 - pi + 2 - i*(c0 - pi) - gamma, s0 - pi + 2).
pub fn projection_range(r: u32, i: u32, pi: &BigInt) -> Result<(BigInt, BigInt)> {
    let ri = require_beta_positive(r, i)?;
    if pi.is_negative() {
        return Err(Error::Domain(format!("pi must be non-negative (got {pi})")));
    }
    if pi > &ri.c0 {
        return Err(Error::Domain(format!(
            "pi must be at most c0 = {} (got {pi})",
            ri.c0
        )));
    }
    let high = &ri.s0 - pi + 2;
    let low = &high - i * (&ri.c0 - pi) - &ri.gamma;
    Ok((low, high))
}

/// The sharp genus value for curves in 6-space avoiding quadrics, at
/// degrees divisible by 3: binom(d/3 - 1, 2). Cross-checked against G0 and
/// against the cell form 9*binom(m,2) + m*(epsilon+1) + [epsilon = 8].
pub fn g_sharp_r6(d: &BigInt) -> Result<BoundResult> {
    let ri = derive_ri(6, 2)?;
    let (m, epsilon) = split_in_range(d, &ri.s0)?;
    if (d % 3) != BigInt::zero() {
        return Err(Error::NotMultipleOfThree { d: d.to_string() });
    }
    let value = choose2(&(d / 3 - 1));
    let g0 = g0_value_from(&ri, &m, &epsilon);
    let nu = u8::from(epsilon == BigInt::from(8));
    let cell = 9 * choose2(&m) + &m * (&epsilon + 1) + nu;
    if value != g0 || value != cell {
        return Err(Error::SelfCheck(format!(
            "sharp value {value} disagrees with g0 {g0} or cell form {cell} at d = {d}"
        )));
    }
    Ok(BoundResult {
        value,
        regime: Regime::R6Sharp,
        sharp: Sharpness::Sharp,
        valid_for_theorem: true,
        threshold_d0: d0_threshold(6, 2)?,
    })
}

/// The four admissible values of the maximal genus in r-space (r >= 9
/// divisible by 3, quadric-avoiding) at the top of a division cell
/// (epsilon = s0 - 1): [G0-m-1, G0-m, G0-m+1, G0], ascending.
pub fn g_candidates_r9(r: u32, d: &BigInt) -> Result<[BigInt; 4]> {
    if r < 9 {
        return Err(Error::Domain(format!("r must be at least 9 (got {r})")));
    }
    if r % 3 != 0 {
        return Err(Error::Domain(format!("r must be divisible by 3 (got {r})")));
    }
    let ri = derive_ri(r, 2)?;
    let (m, epsilon) = split_in_range(d, &ri.s0)?;
    if epsilon != &ri.s0 - 1 {
        return Err(Error::EpsilonNotAtCellEnd {
            d: d.to_string(),
            epsilon: epsilon.to_string(),
        });
    }
    let g0 = g0_value_from(&ri, &m, &epsilon);
    Ok([&g0 - &m - 1, &g0 - &m, &g0 - &m + 1, g0])
}

/// The two-sided enclosure [G0 - m, G0] of the maximal genus in r-space
/// (r >= 6 divisible by 3, quadric-avoiding) away from the cell top.
pub fn g_interval(r: u32, d: &BigInt) -> Result<(BigInt, BigInt)> {
    if r < 6 {
        return Err(Error::Domain(format!("r must be at least 6 (got {r})")));
    }
    if r % 3 != 0 {
        return Err(Error::Domain(format!("r must be divisible by 3 (got {r})")));
    }
    let ri = derive_ri(r, 2)?;
    let (m, epsilon) = split_in_range(d, &ri.s0)?;
    if epsilon == &ri.s0 - 1 {
        return Err(Error::EpsilonAtCellEnd {
            d: d.to_string(),
            suggested: if r == 6 { "g_sharp_r6" } else { "g_candidates_r9" },
        });
    }
    let g0 = g0_value_from(&ri, &m, &epsilon);
    Ok((&g0 - m, g0))
}

/// Leading coefficient of the maximal genus in d: exactly 1/(2*s0).
///
/// For i = 2 this is 3/(r(r+3)) when 3 | r and 3/((r-1)(r+4)) otherwise;
/// both identities are recomputed as self-checks.
pub fn asymptotic_coefficient(r: u32, i: u32) -> Result<BigRational> {
    let ri = derive_ri(r, i)?;
    let coeff = BigRational::new(BigInt::one(), 2 * &ri.s0);
    if i == 2 {
        let closed = if r % 3 == 0 {
            BigRational::new(BigInt::from(3), BigInt::from(r) * (r + 3))
        } else {
            BigRational::new(BigInt::from(3), BigInt::from(r - 1) * (r + 4))
        };
        if coeff != closed {
            return Err(Error::SelfCheck(format!(
                "asymptotic coefficient 1/(2*{}) disagrees with the quadric closed form at r = {r}",
                ri.s0
            )));
        }
    }
    Ok(coeff)
}

fn require_beta_positive(r: u32, i: u32) -> Result<RiParams> {
    let ri = derive_ri(r, i)?;
    if ri.beta.is_zero() {
        return Err(Error::BetaIsZero { r, i });
    }
    Ok(ri)
}

/// Splits d - 1 by s0 after enforcing d >= s0 + 1 (so m >= 1).
fn split_in_range(d: &BigInt, s0: &BigInt) -> Result<(BigInt, BigInt)> {
    if d <= s0 {
        return Err(Error::Domain(format!("d must be at least s0 + 1 = {} (got {d})", s0 + 1)));
    }
    split_degree(d, s0)
}
