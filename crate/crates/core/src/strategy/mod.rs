//! Explicit contraction schedule for dense random graphs on `B = [m]` and
//! `A = [n] \ [m]`.

mod bsets;
mod params;
mod schedule;

use thiserror::Error;

pub use bsets::{b_family, b_merge, b_set};
pub use params::{floor_pow, schedule_params, StrategyParams};
pub use schedule::{
    detect_frozen, run_paper_schedule, run_paper_schedule_owned, select_a_pairs, APairSelection,
    ExtractionRule, FrozenClass, RetryOutcome, ScheduleOptions, ScheduleTrace, SkippedMerge,
    StepRecord,
};

#[derive(Debug, Error)]
pub enum StrategyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition {name} fails: {detail}")]
    Precondition { name: &'static str, detail: String },
    #[error("index i = {i} outside 1..={max}")]
    IndexOutOfRange { i: usize, max: usize },
    #[error("graph does not match the schedule: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
