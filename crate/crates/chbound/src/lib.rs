//! Exact-arithmetic genus bounds for non-degenerate integral projective
//! curves that do not lie on hypersurfaces of low degree, in the sense of
//! Castelnuovo-Halphen theory.
//!
//! Everything is computed over arbitrary-precision integers: the classical
//! Castelnuovo bound, the refined bound `G0(r; d, i)` for curves avoiding
//! degree-`<= i` hypersurfaces, the explicit degree threshold `d0(r, i)`
//! beyond which the refined bound is proven, and a battery of exhaustive
//! verification sweeps for every numeric inequality and case table the
//! theory rests on.
//!
//! The crate is organised as a library plus the `chbound` CLI:
//!
//! * [`params`] — the Euclidean divisions defining `alpha`, `beta`, `s0`,
//!   `m`, `epsilon`, `c0`, `gamma`, `mu`;
//! * [`bounds`] — the genus/section bounds and their regime metadata;
//! * [`threshold`] — the directed-rounding evaluation of `d0(r, i)`;
//! * [`verify`] — machine-checkable sweeps emitting JSON reports;
//! * [`sweep`] — `(r, i, d)` grid tables with bit-stable CSV/JSON output;
//! * [`cli`] — the command-line front end.

pub mod arith;
pub mod bounds;
pub mod cli;
mod error;
pub mod params;
pub mod sweep;
pub mod threshold;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
