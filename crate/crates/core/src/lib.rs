//! TeamQueue aggregation of total preorders, parallel belief contraction
//! built on it, and exhaustive postulate checking over small universes.

pub mod aggregation;
pub mod change;
pub mod conditionals;
pub mod fixtures;
pub mod lab;
pub mod logic;
pub mod orders;

pub use aggregation::{
    minrank, naive_ci, stq, tq_aggregate, tq_membership, AggregationError, Aggregator, IndexSet, RawRelation,
    SelectionStrategy,
};
pub use logic::{parse_formula, Formula, LogicError, Proposition, Universe, World};
pub use orders::{enumerate_tpos, OrderError, Profile, Tpo};
