//! Computational engine for the partition functions `ped(n)` and `ped_{-2}(n)`.
//!
//! `ped(n)` counts partitions of `n` whose even parts are distinct (odd parts
//! unrestricted); `ped_{-2}(n)` counts bipartitions of `n` with even parts
//! distinct in each component. Both have eta-quotient generating functions:
//!
//! ```text
//! sum ped(n) q^n    = (q^4;q^4)_inf   / (q;q)_inf
//! sum ped_{-2}(n) q^n = (q^4;q^4)_inf^2 / (q;q)_inf^2
//! ```
//!
//! The crate provides:
//!
//! - [`series`]: truncated formal power series over exact integers or small
//!   residue rings, with sparse-aware multiplication and division,
//! - [`eta`]: eta-quotient expansion via the pentagonal-number recurrence,
//!   including [`eta::ped_series`] and [`eta::ped2_series`],
//! - [`theta`]: the classical theta series the reductions use, identity
//!   checkers, and the mod-8 reduction chains that reproduce both partition
//!   functions from theta quotients,
//! - [`quadform`]: 64-bit factorization, squarefree decomposition, and
//!   representation counts for the forms `x^2 + b y^2`,
//! - [`classifier`]: the five-case classification of `ped_{-2}(n) (mod 8)`
//!   from the squarefree decomposition of `4n+1`,
//! - [`congruence`]: arithmetic-progression congruence families and
//!   finite-range verification sweeps.
//!
//! The crate is `no_std` (with `alloc`); all IO, caching and the CLI live in
//! the companion `pedq-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classifier;
pub mod congruence;
pub mod eta;
pub mod quadform;
pub mod series;
pub mod theta;

pub use classifier::{classify, criteria_from_triple, theta_triple, ResidueClass};
pub use eta::{ped2_series, ped_series, EtaQuotientSpec};
pub use series::{Ring, SeriesError, TruncatedSeries};
