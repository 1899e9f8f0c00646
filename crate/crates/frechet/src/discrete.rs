use frix_geometry::Scalar;

use crate::Curve;

/// `rows × cols` bit matrix; entry `(i, j)` says `‖q_i − s_j‖ ≤ ρ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeSpaceMatrix {
    pub rows: usize,
    pub cols: usize,
    bits: Vec<bool>,
}

impl FreeSpaceMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        FreeSpaceMatrix { rows, cols, bits: vec![false; rows * cols] }
    }

    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let mut m = FreeSpaceMatrix::new(rows.len(), rows.first().map_or(0, |r| r.len()));
        for (i, r) in rows.iter().enumerate() {
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b != 0);
            }
        }
        m
    }

    /// Builds from column vectors (column `j` holds rows `0..rows`).
    pub fn from_columns(columns: &[Vec<bool>]) -> Self {
        let rows = columns.first().map_or(0, |c| c.len());
        let mut m = FreeSpaceMatrix::new(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, &b) in c.iter().enumerate() {
                m.set(i, j, b);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<bool> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

pub fn free_space_matrix<T: Scalar>(q: &Curve<T>, s: &Curve<T>, rho: T) -> FreeSpaceMatrix {
    let mut m = FreeSpaceMatrix::new(q.len(), s.len());
    let lim = rho + T::eps_geo();
    for (i, a) in q.vertices.iter().enumerate() {
        for (j, b) in s.vertices.iter().enumerate() {
            m.set(i, j, a.dist(*b) <= lim);
        }
    }
    m
}

/// Traversal exists over 1-entries from `(0,0)` to the last corner using
/// row, column and diagonal steps.
pub fn matrix_feasible(m: &FreeSpaceMatrix) -> bool {
    if m.rows == 0 || m.cols == 0 {
        return false;
    }
    let mut reach = vec![false; m.rows * m.cols];
    for i in 0..m.rows {
        for j in 0..m.cols {
            if !m.get(i, j) {
                continue;
            }
            reach[i * m.cols + j] = (i == 0 && j == 0)
                || (i > 0 && reach[(i - 1) * m.cols + j])
                || (j > 0 && reach[i * m.cols + j - 1])
                || (i > 0 && j > 0 && reach[(i - 1) * m.cols + j - 1]);
        }
    }
    reach[m.rows * m.cols - 1]
}

pub fn discrete_decide<T: Scalar>(q: &Curve<T>, s: &Curve<T>, rho: T) -> bool {
    matrix_feasible(&free_space_matrix(q, s, rho))
}

/// Smallest pairwise vertex distance at which the decision flips to true.
pub fn discrete_value<T: Scalar>(q: &Curve<T>, s: &Curve<T>) -> T {
    let mut ds: Vec<T> = q
        .vertices
        .iter()
        .flat_map(|a| s.vertices.iter().map(move |b| a.dist(*b)))
        .collect();
    ds.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
    ds.dedup();
    let (mut lo, mut hi) = (0usize, ds.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if discrete_decide(q, s, ds[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    ds[lo]
}
