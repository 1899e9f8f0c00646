//! Multilevel partition trees over t-points (tuples of planar points).
//!
//! Level `k` partitions the `k`-th coordinate with kd-style median splits into
//! `max(2, ⌈m^ε⌉)` children. Every internal node carries a next-level structure
//! over its points, so a query descends level by level through canonical sets.

mod error;
mod query;
mod range;
mod serialize;
mod tree;

pub use error::IndexError;
pub use query::{FixedRanges, QueryPlan};
pub use range::{classify, Atom, Classification, Clause, Poly2, RangeSpec, Region, Rel};
pub use tree::{BuildParams, BuildStats, IndexMeta, MultilevelIndex, Node, QueryStats, Tree};
