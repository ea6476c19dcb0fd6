use thiserror::Error;

/// Errors produced by bound computations and verification sweeps.
///
/// Routing variants (`BetaIsZero`, `BetaIsPositive`, `NotMultipleOfThree`,
/// `EpsilonAtCellEnd`, `EpsilonNotAtCellEnd`) tell the caller which sibling
/// operation covers the requested input instead of silently falling back.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// A precondition on the inputs was violated; the message names it.
    #[error("precondition violated: {0}")]
    Domain(String),

    #[error("beta(r={r}, i={i}) = 0: this regime is covered by beta0_bound")]
    BetaIsZero { r: u32, i: u32 },

    #[error("beta(r={r}, i={i}) = {beta} > 0: this regime is covered by g0_bound")]
    BetaIsPositive { r: u32, i: u32, beta: String },

    #[error("d = {d} is not divisible by 3: the sharp value does not apply; use g_interval")]
    NotMultipleOfThree { d: String },

    /// `epsilon = s0 - 1`, the top of the division cell.
    #[error("epsilon = s0 - 1 for d = {d}: use {suggested} instead")]
    EpsilonAtCellEnd { d: String, suggested: &'static str },

    /// `epsilon < s0 - 1`, so the four-candidate statement does not apply.
    #[error("epsilon = {epsilon} != s0 - 1 for d = {d}: use g_interval instead")]
    EpsilonNotAtCellEnd { d: String, epsilon: String },

    /// `2^(s0+4)` (and hence the threshold) would not fit in memory.
    #[error("d0 threshold for (r={r}, i={i}) is not materializable: s0 = {s0} exceeds the representable cap")]
    ThresholdTooLarge { r: u32, i: u32, s0: String },

    /// An internal cross-check between two algebraic routes disagreed.
    /// Arithmetically impossible; returned rather than panicking.
    #[error("internal self-check failed: {0}")]
    SelfCheck(String),
}
