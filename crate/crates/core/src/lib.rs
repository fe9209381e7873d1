//! Bounding pair values in totally ordered commutative semigroups.
//!
//! Sort `2n` elements ascending and pair them up. If some perfect matching
//! keeps every pair value strictly below a bound `N`, then the symmetric
//! matching `(1,2n), (2,2n-1), ..., (n,n+1)` does too; dually for strict lower
//! bounds. This crate enumerates the matchings, turns any feasible matching
//! into the symmetric one through checkable exchange steps, verifies the
//! resulting certificates, and confirms by brute force that the symmetric
//! matching is both minimax and maximin.
//!
//! * [`semigroup`]: carriers, exact elements, `combine` and `compare`.
//! * [`laws`]: seeded sampling of the carrier laws.
//! * [`matching`]: canonical matchings, enumeration and evaluation.
//! * [`bounding`]: feasibility, the exchange transform, certificate
//!   verification and the brute-force oracle.
//! * [`certificate`]: the JSON certificate format.
//! * [`cli`]: the `pairbound` command-line front end.

pub mod bounding;
pub mod certificate;
pub mod cli;
pub mod laws;
pub mod matching;
pub mod semigroup;

pub use bounding::{
    exchange_transform, feasible, maximin_matching, minimax_matching, optimality_report,
    theorem_check, verify_certificate, BoundingError, BoundingInstance, Certificate, Direction,
    ExchangeStep, OptimalityReport, DEFAULT_CAP,
};
pub use matching::{
    count_matchings, enumerate_matchings, evaluate, sort_input, symmetric_matching, EvaluationRow,
    Matching, SortedInput,
};
pub use semigroup::{combine, compare, Carrier, Element};
