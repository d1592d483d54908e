//! Error type shared by all modules.

use crate::Point;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("carrier mismatch")]
    CarrierMismatch,
    #[error("point {0} lies outside the carrier")]
    PointOutsideCarrier(Point),
    #[error("heterogeneous map classes")]
    HeterogeneousMapClasses,
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid carrier: {0}")]
    InvalidCarrier(String),
    #[error("arithmetic overflow in map arithmetic")]
    Overflow,
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: usize,
        limit: usize,
    },
    #[error("search window too small at step {step}")]
    WindowTooSmall { step: usize },
    #[error("sequence has not been verified")]
    UnverifiedSequence,
    #[error("set does not belong to the filter")]
    NotInFilter,
    #[error("seed sets are not disjoint")]
    NotDisjoint,
    #[error("infinite set rejected: {0}")]
    InfiniteSet(&'static str),
    #[error("operation requires a finite carrier")]
    InfiniteCarrier,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
