//! Query-side signatures for Fréchet range searching.
//!
//! A query is turned into a [`QueryPlan`](frix_index::QueryPlan): per index
//! level a set of disjoint ranges (arrangement cells of query-derived disks,
//! halfplanes and bands) plus a pruning rule that keeps only choices which
//! can still complete to a feasible free-space configuration.
//!
//! * [`DiscretePlan`]: level `j` stores vertex `s_j`; cells are sign vectors
//!   of the query's disk arrangement, completed into feasible matrices.
//! * [`ContinuousPlan`]: stored curves become t-points via
//!   [`curve_to_tpoint`]; each column gets the elementary ranges that read it
//!   and choices are pruned with the predicate feasibility test.

mod arrangement;
mod columns;
mod continuous;
mod discrete;
mod error;

pub use arrangement::{
    arrangement_cells, cell_range, decompose, disk_arrangement_cells, intersections, refine_cell, sign_vector,
    Boundary, CellSearch, Feature, RefinedCell, SignVector,
};
pub use columns::{
    column_count, column_specs, curve_to_tpoint, rotate, rotate_curve, ColumnKind, ColumnSpec, TPoint, ROTATION,
    SENTINEL,
};
pub use continuous::{continuous_query_plan, Assignments, ContinuousPlan, Expr, PlanAssignment, PlanCell, PlanColumn};
pub use discrete::{
    enumerate_feasible_matrices, enumerate_feasible_matrices_with, ColumnCell, DiscretePlan, PlanConfig,
};
pub use error::SignatureError;
