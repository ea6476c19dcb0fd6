//! Derived integer parameters of a curve-avoiding-hypersurfaces problem.
//!
//! Every quantity is the result of one of three Euclidean divisions:
//!
//! ```text
//! binom(r+i, i) - (i+1) = alpha * binom(i+1, 2) + beta
//! d - 1               = m * s0 + epsilon
//! binom(i+1, 2) - beta = c0 * i + gamma
//! ```
//!
//! with `s0 = alpha` when `beta = 0` and `alpha + 1` otherwise, and the
//! correction term `mu = 0` iff `gamma <= 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binomial, divmod_exact};
use crate::{Error, Result};

/// The input triple: ambient dimension r, curve degree d, hypersurface
/// degree bound i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    pub r: u32,
    pub d: BigInt,
    pub i: u32,
}

impl ProblemInstance {
    /// Validates r >= 3, d >= 1, i >= 2. Individual operations tighten
    /// these further (most require r >= 4).
    pub fn new(r: u32, d: BigInt, i: u32) -> Result<Self> {
        if r < 3 {
            return Err(Error::Domain(format!("r must be at least 3 (got {r})")));
        }
        if d < BigInt::one() {
            return Err(Error::Domain(format!("d must be at least 1 (got {d})")));
        }
        if i < 2 {
            return Err(Error::Domain(format!("i must be at least 2 (got {i})")));
        }
        Ok(Self { r, d, i })
    }
}

/// The d-independent part of [`DerivedParams`]: everything determined by
/// (r, i) alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiParams {
    pub alpha: BigInt,
    pub beta: BigInt,
    /// Expected minimal degree of an integral surface in r-space not lying
    /// on hypersurfaces of degree <= i.
    pub s0: BigInt,
    pub c0: BigInt,
    pub gamma: BigInt,
    /// 0 when gamma <= 1, else 1.
    pub mu: u8,
}

impl RiParams {
    pub fn beta_is_zero(&self) -> bool {
        self.beta.is_zero()
    }
}

/// All derived integers for a full (r, d, i) instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedParams {
    pub alpha: BigInt,
    pub beta: BigInt,
    pub s0: BigInt,
    pub m: BigInt,
    pub epsilon: BigInt,
    pub c0: BigInt,
    pub gamma: BigInt,
    pub mu: u8,
}

impl DerivedParams {
    pub fn ri(&self) -> RiParams {
        RiParams {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            s0: self.s0.clone(),
            c0: self.c0.clone(),
            gamma: self.gamma.clone(),
            mu: self.mu,
        }
    }
}

/// Computes the (r, i)-only divisions. Requires r >= 4, i >= 2.
pub fn derive_ri(r: u32, i: u32) -> Result<RiParams> {
    if r < 4 {
        return Err(Error::Domain(format!("r must be at least 4 (got {r})")));
    }
    if i < 2 {
        return Err(Error::Domain(format!("i must be at least 2 (got {i})")));
    }
    let t = binomial(u64::from(i) + 1, 2);
    let lhs = binomial(u64::from(r) + u64::from(i), u64::from(i)) - (i64::from(i) + 1);
    let (alpha, beta) = divmod_exact(&lhs, &t)?;
    let s0 = if beta.is_zero() { alpha.clone() } else { &alpha + 1 };
    let (c0, gamma) = divmod_exact(&(&t - &beta), &BigInt::from(i))?;
    let mu = if gamma <= BigInt::one() { 0 } else { 1 };
    Ok(RiParams { alpha, beta, s0, c0, gamma, mu })
}

/// Splits d - 1 = m * s0 + epsilon, 0 <= epsilon <= s0 - 1.
pub fn split_degree(d: &BigInt, s0: &BigInt) -> Result<(BigInt, BigInt)> {
    if d < &BigInt::one() {
        return Err(Error::Domain(format!("d must be at least 1 (got {d})")));
    }
    divmod_exact(&(d - 1), s0)
}

/// Computes every derived parameter for the instance. Requires r >= 4.
pub fn derive(inst: &ProblemInstance) -> Result<DerivedParams> {
    let ri = derive_ri(inst.r, inst.i)?;
    let (m, epsilon) = split_degree(&inst.d, &ri.s0)?;
    Ok(DerivedParams {
        alpha: ri.alpha,
        beta: ri.beta,
        s0: ri.s0,
        m,
        epsilon,
        c0: ri.c0,
        gamma: ri.gamma,
        mu: ri.mu,
    })
}

/// Closed form for the quadric case: s0(r, 2) = r(r+3)/6 when 3 | r.
pub fn s0_quadric(r: u32) -> Result<BigInt> {
    if r < 6 {
        return Err(Error::Domain(format!("r must be at least 6 (got {r})")));
    }
    if r % 3 != 0 {
        return Err(Error::Domain(format!("r must be divisible by 3 (got {r})")));
    }
    Ok(BigInt::from(r) * (r + 3) / 6)
}
