//! Exact computation on monoid acts at finite truncation scale.
//!
//! The crate builds the difference-set subbase of a monoid acting on a
//! carrier, decides point isolation with re-verifiable certificates,
//! computes pseudocharacters, constructs and verifies special sequences,
//! and realizes filter-generated topologies (openness oracle, separation
//! recursion, T1 witnesses) over a truncated enumeration of the monoid.
//!
//! Everything is exact: sets are finite, cofinite, or bit vectors, maps
//! come from five decidable closed-form classes, and every verdict is
//! relative to explicit truncation parameters (word length, constant
//! window, sequence length, recursion depth) that reports echo back.

pub mod acts;
pub mod carrier;
pub mod catalog;
pub mod error;
pub mod filtertop;
pub mod sets;
pub mod special;
pub mod zariski;

pub use acts::{closure, EndoMap, MapClass, MapSpec, MonoidClosure};
pub use carrier::{Carrier, CarrierRef, CarrierSpec, CayleyTable};
pub use catalog::{build_scenario, run_expectations, verify_coordinate_identity, Scenario};
pub use error::{Error, Result};
pub use filtertop::{
    filter_pseudocharacter, is_open, neighborhood_chain, orbit, separate, t1_witness, tail_filter,
    FilterBase, OpennessVerdict,
};
pub use sets::{Cardinality, KSet, KSetSpec};
pub use special::{build_special, verify_special, SpecialSequence};
pub use zariski::{build_subbase, Certificate, PsiValue, Subbase, Tag};

/// A carrier element. Finite carriers index their elements from zero;
/// the integer and natural lines use their own values.
pub type Point = i64;
