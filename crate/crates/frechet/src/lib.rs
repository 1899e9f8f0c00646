//! Fréchet decision procedures over polygonal curves.
//!
//! * discrete: free-space bit matrix and traversal DP;
//! * continuous: interval propagation over the free-space cell grid;
//! * predicate machinery: the high-level free-space predicates, their
//!   low-level geometric encodings, and a DP that decides feasibility from
//!   predicate truth values alone.

mod continuous;
mod curve;
mod discrete;
mod feasibility;
pub mod oracle;
mod predicates;

pub use continuous::alt_godau_decide;
pub use curve::Curve;
pub use discrete::{discrete_decide, discrete_value, free_space_matrix, matrix_feasible, FreeSpaceMatrix};
pub use feasibility::feasible_cell_sequence;
pub use predicates::{
    eval_hl, eval_hl_lowlevel, ll_monotonicity, ll_vertex_edge, HLAssignment, MonotonicityBits, VertexEdgeBits,
};

use frix_geometry::Scalar;

/// Continuous decision through the predicate pipeline; must agree with
/// [`alt_godau_decide`] away from the boundary `d_F = ρ`.
pub fn continuous_decide_predicates<T: Scalar>(q: &Curve<T>, s: &Curve<T>, rho: T) -> bool {
    if q.len() < 2 || s.len() < 2 {
        return alt_godau_decide(q, s, rho);
    }
    let h = eval_hl_lowlevel(q, s, rho);
    feasible_cell_sequence(&h, q.len(), s.len())
}

pub type Curved = Curve<f64>;
pub type Curvef = Curve<f32>;
