//! Exhaustive reference procedures used to cross-check the dynamic programs.

use crate::{FreeSpaceMatrix, HLAssignment};

/// Enumerates all traversals (stay/row/column/diagonal steps) by DFS.
pub fn matrix_feasible_by_enumeration(m: &FreeSpaceMatrix) -> bool {
    fn walk(m: &FreeSpaceMatrix, i: usize, j: usize) -> bool {
        if !m.get(i, j) {
            return false;
        }
        if i + 1 == m.rows && j + 1 == m.cols {
            return true;
        }
        let steps = [(1, 0), (0, 1), (1, 1)];
        steps
            .iter()
            .any(|&(di, dj)| i + di < m.rows && j + dj < m.cols && walk(m, i + di, j + dj))
    }
    m.rows > 0 && m.cols > 0 && walk(m, 0, 0)
}

/// All monotone staircase paths from `(0,0)` to `(rows−1, cols−1)`, as move strings (`true` = up).
pub fn staircase_paths(rows: usize, cols: usize) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(ups: usize, rights: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if ups == 0 && rights == 0 {
            out.push(cur.clone());
            return;
        }
        if ups > 0 {
            cur.push(true);
            rec(ups - 1, rights, cur, out);
            cur.pop();
        }
        if rights > 0 {
            cur.push(false);
            rec(ups, rights - 1, cur, out);
            cur.pop();
        }
    }
    rec(rows - 1, cols - 1, &mut cur, &mut out);
    out
}

/// Checks every staircase path's induced predicate set.
pub fn feasible_by_enumeration(h: &HLAssignment) -> bool {
    if !h.p1 || !h.p2 {
        return false;
    }
    let (rows, cols) = (h.tq - 1, h.ts - 1);
    staircase_paths(rows, cols).iter().any(|path| {
        let (mut i, mut j) = (0usize, 0usize);
        // crossed vertices of the current run
        let mut run: Vec<usize> = Vec::new();
        let mut run_up: Option<bool> = None;
        for &up in path {
            if run_up != Some(up) {
                run.clear();
                run_up = Some(up);
            }
            if up {
                if !h.hvep(i + 1, j) || run.iter().any(|&ip| !h.vmp(ip, i + 1, j)) {
                    return false;
                }
                run.push(i + 1);
                i += 1;
            } else {
                if !h.vvep(i, j + 1) || run.iter().any(|&jp| !h.hmp(i, jp, j + 1)) {
                    return false;
                }
                run.push(j + 1);
                j += 1;
            }
        }
        true
    })
}
