//! Twin-width solvers: an exact branch-and-bound for small graphs, a
//! decision procedure, a full-enumeration oracle, and a greedy heuristic.

mod brute;
mod exact;
mod greedy;
mod mask;

use thiserror::Error;

pub use brute::{brute_force_twin_width, BRUTE_FORCE_MAX_VERTICES};
pub use exact::{decide_tww_le, exact_twin_width, DecideOutcome, Decision, ExactResult};
pub use greedy::greedy_sequence;
pub(crate) use greedy::greedy_step;

/// Largest label the exact solver accepts (one `u64` mask per row).
pub const EXACT_MAX_LABEL: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("graph has {n} labels; this solver handles at most {max}")]
    TooLarge { n: usize, max: usize },
}
