//! Decides, from predicate truth values alone, whether some staircase cell
//! sequence from cell `(0,0)` to `(t_q−2, t_s−2)` has all induced predicates true.
//!
//! Cells are `(i, j)` with `i` indexing query edges and `j` input edges. A step
//! right crosses input vertex `j+1` on query edge `i` (`vvep[i][j+1]`); a step
//! up crosses query vertex `i+1` on input edge `j` (`hvep[i+1][j]`). Within a
//! maximal horizontal run, every pair of crossed input vertices must be
//! orderable (`hmp`); within a vertical run, every pair of crossed query
//! vertices (`vmp`). Turns impose nothing because entry and exit sit at
//! opposite ends of the shared edge.

use crate::HLAssignment;

/// Per cell: the latest possible start of the current run, for each arrival direction.
#[derive(Debug, Clone, Copy, Default)]
struct ReachState {
    /// Reached while moving right; value is the column where the run began.
    from_left: Option<usize>,
    /// Reached while moving up; value is the row where the run began.
    from_below: Option<usize>,
}

fn keep_max(slot: &mut Option<usize>, v: usize) {
    *slot = Some(slot.map_or(v, |old| old.max(v)));
}

pub fn feasible_cell_sequence(h: &HLAssignment, tq: usize, ts: usize) -> bool {
    assert!(tq == h.tq && ts == h.ts, "assignment shape mismatch");
    if !h.p1 || !h.p2 {
        return false;
    }
    let (rows, cols) = (tq - 1, ts - 1);
    let mut st = vec![ReachState::default(); rows * cols];
    st[0] = ReachState { from_left: Some(0), from_below: Some(0) };
    for i in 0..rows {
        for j in 0..cols {
            let cur = st[i * cols + j];
            if j + 1 < cols && h.vvep(i, j + 1) {
                let mut next = st[i * cols + j + 1];
                if let Some(a) = cur.from_left {
                    if (a + 1..=j).all(|jp| h.hmp(i, jp, j + 1)) {
                        keep_max(&mut next.from_left, a);
                    }
                }
                if cur.from_below.is_some() {
                    keep_max(&mut next.from_left, j);
                }
                st[i * cols + j + 1] = next;
            }
            if i + 1 < rows && h.hvep(i + 1, j) {
                let mut next = st[(i + 1) * cols + j];
                if let Some(c) = cur.from_below {
                    if (c + 1..=i).all(|ip| h.vmp(ip, i + 1, j)) {
                        keep_max(&mut next.from_below, c);
                    }
                }
                if cur.from_left.is_some() {
                    keep_max(&mut next.from_below, i);
                }
                st[(i + 1) * cols + j] = next;
            }
        }
    }
    let last = st[rows * cols - 1];
    last.from_left.is_some() || last.from_below.is_some()
}
