//! Discrete query plans: realizable free-space columns and the feasible
//! matrices they compose into.

use std::cell::OnceCell;
use std::collections::{HashMap, HashSet};

use frix_frechet::{Curve, FreeSpaceMatrix};
use frix_geometry::{Point2, Scalar};
use frix_index::{QueryPlan, RangeSpec};

use crate::arrangement::{arrangement_cells, cell_range, decompose, CellSearch, Feature, RefinedCell, SignVector};
use crate::SignatureError;

/// Limits for plan construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanConfig {
    /// Largest supported query vertex count.
    pub t_max: usize,
    /// Largest number of matrices / assignments materialised.
    pub cap: usize,
    pub search: CellSearch,
}

impl Default for PlanConfig {
    fn default() -> Self {
        PlanConfig { t_max: 8, cap: 1_000_000, search: CellSearch::default() }
    }
}

/// One arrangement cell: the column vector it induces and a witness point.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnCell {
    pub sign: SignVector,
    pub witness: Point2<f64>,
    pub range: RangeSpec,
}

/// Per-query plan for the discrete problem.
///
/// Level `j` of the index holds stored vertex `s_j`. A state is the set of
/// rows reachable in the traversal DP after the columns chosen so far; only
/// choices that can still complete to a feasible matrix are offered, so the
/// plan's leaves are exactly the feasible matrices.
#[derive(Debug)]
pub struct DiscretePlan {
    pub query: Curve<f64>,
    pub rho: f64,
    pub ts: usize,
    pub features: Vec<Feature>,
    pub cells: Vec<ColumnCell>,
    masks: Vec<u64>,
    viable: HashSet<(usize, u64)>,
    refined: OnceCell<Vec<Vec<RefinedCell>>>,
}

/// Reach state before the first column.
const START: u64 = u64::MAX;

fn step(tq: usize, reach: u64, col: u64) -> u64 {
    let mut out = 0u64;
    for i in 0..tq {
        let bit = 1u64 << i;
        if col & bit == 0 {
            continue;
        }
        let from = if reach == START {
            i == 0 || out & (bit >> 1) != 0
        } else {
            reach & bit != 0 || (i > 0 && (reach & (bit >> 1) != 0 || out & (bit >> 1) != 0))
        };
        if from {
            out |= bit;
        }
    }
    out
}

impl DiscretePlan {
    pub fn new(query: &Curve<f64>, rho: f64, ts: usize) -> Result<Self, SignatureError> {
        Self::with_config(query, rho, ts, &PlanConfig::default())
    }

    pub fn with_config(query: &Curve<f64>, rho: f64, ts: usize, cfg: &PlanConfig) -> Result<Self, SignatureError> {
        let tq = query.len();
        if tq == 0 || ts == 0 {
            return Err(SignatureError::Invalid("curves need at least one vertex".into()));
        }
        if tq > cfg.t_max.min(63) || ts > cfg.t_max {
            return Err(SignatureError::Resource(format!(
                "curves have {tq} and {ts} vertices, limit is {}",
                cfg.t_max
            )));
        }
        if !(rho >= 0.0 && rho.is_finite()) {
            return Err(SignatureError::Invalid(format!("radius must be non-negative, got {rho}")));
        }
        let radius = rho + f64::eps_geo();
        let features: Vec<Feature> = query.vertices.iter().map(|&c| Feature::disk(c, radius)).collect();
        let cells: Vec<ColumnCell> = arrangement_cells(&features, &[], &cfg.search)?
            .into_iter()
            .map(|(sign, w)| ColumnCell {
                range: cell_range(&features, &sign),
                witness: Point2::new(w[0], w[1]),
                sign,
            })
            .collect();
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.sign.0.iter().enumerate().fold(0u64, |m, (i, &b)| m | ((b as u64) << i)))
            .collect();

        // forward: reachable states per level
        let mut levels: Vec<HashSet<u64>> = vec![HashSet::from([START])];
        for j in 0..ts {
            let mut next = HashSet::new();
            for &r in &levels[j] {
                for &m in &masks {
                    let r2 = step(tq, r, m);
                    if r2 != 0 {
                        next.insert(r2);
                    }
                }
            }
            levels.push(next);
        }
        // backward: states from which the last row is reachable at the last column
        let last = 1u64 << (tq - 1);
        let mut viable = HashSet::new();
        for &r in &levels[ts] {
            if r & last != 0 {
                viable.insert((ts, r));
            }
        }
        for j in (0..ts).rev() {
            for &r in &levels[j] {
                if masks.iter().any(|&m| viable.contains(&(j + 1, step(tq, r, m)))) {
                    viable.insert((j, r));
                }
            }
        }
        Ok(DiscretePlan {
            query: query.clone(),
            rho,
            ts,
            features,
            cells,
            masks,
            viable,
            refined: OnceCell::new(),
        })
    }

    pub fn tq(&self) -> usize {
        self.query.len()
    }

    /// Whether any feasible matrix exists.
    pub fn is_empty(&self) -> bool {
        !self.viable.contains(&(0, START))
    }

    /// Vertical-decomposition pieces of each cell, in cell order.
    pub fn refined_cells(&self) -> &[Vec<RefinedCell>] {
        self.refined.get_or_init(|| {
            let pieces = decompose(&self.features);
            let mut by: HashMap<&SignVector, Vec<RefinedCell>> = HashMap::new();
            for p in &pieces {
                by.entry(&p.sign).or_default().push(p.clone());
            }
            self.cells.iter().map(|c| by.remove(&c.sign).unwrap_or_default()).collect()
        })
    }

    /// Cell index of a point (the cell whose exact range contains it).
    pub fn cell_of(&self, p: Point2<f64>) -> Option<usize> {
        self.cells.iter().position(|c| c.range.contains(p.x, p.y))
    }

    fn viable_options(&self, level: usize, reach: u64) -> impl Iterator<Item = (usize, u64)> + '_ {
        let tq = self.tq();
        self.masks.iter().enumerate().filter_map(move |(c, &m)| {
            let r2 = step(tq, reach, m);
            self.viable.contains(&(level + 1, r2)).then_some((c, r2))
        })
    }

    /// All feasible matrices realizable by some stored curve, as cell-index
    /// sequences; errors once more than `cap` would be produced.
    pub fn matrices(&self, cap: usize) -> Result<Vec<Vec<usize>>, SignatureError> {
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(self.ts);
        self.walk(0, START, &mut path, &mut out, cap)?;
        Ok(out)
    }

    fn walk(
        &self,
        level: usize,
        reach: u64,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<(), SignatureError> {
        if level == self.ts {
            if out.len() == cap {
                return Err(SignatureError::Resource(format!("more than {cap} feasible matrices")));
            }
            out.push(path.clone());
            return Ok(());
        }
        let opts: Vec<(usize, u64)> = self.viable_options(level, reach).collect();
        for (c, r2) in opts {
            path.push(c);
            self.walk(level + 1, r2, path, out, cap)?;
            path.pop();
        }
        Ok(())
    }

    pub fn matrix_of(&self, path: &[usize]) -> FreeSpaceMatrix {
        let cols: Vec<Vec<bool>> = path.iter().map(|&c| self.cells[c].sign.0.clone()).collect();
        FreeSpaceMatrix::from_columns(&cols)
    }

    /// Whether the stored vertices follow a path of the plan (the point-wise
    /// equivalent of an index query).
    pub fn covers(&self, s: &Curve<f64>) -> bool {
        if s.len() != self.ts {
            return false;
        }
        let mut reach = START;
        for (j, &v) in s.vertices.iter().enumerate() {
            let Some(c) = self.cell_of(v) else { return false };
            let r2 = step(self.tq(), reach, self.masks[c]);
            if !self.viable.contains(&(j + 1, r2)) {
                return false;
            }
            reach = r2;
        }
        true
    }
}

impl QueryPlan for DiscretePlan {
    type State = u64;

    fn root(&self) -> u64 {
        START
    }

    fn options(&self, level: usize, state: &u64) -> Vec<usize> {
        self.viable_options(level, *state).map(|(c, _)| c).collect()
    }

    fn range(&self, _level: usize, option: usize) -> &RangeSpec {
        &self.cells[option].range
    }

    fn advance(&self, level: usize, state: &u64, option: usize) -> Option<u64> {
        let r2 = step(self.tq(), *state, self.masks[option]);
        self.viable.contains(&(level + 1, r2)).then_some(r2)
    }
}

/// Every feasible free-space matrix whose columns are realizable sign vectors
/// of the query's disk arrangement; duplicate-free.
pub fn enumerate_feasible_matrices(q: &Curve<f64>, rho: f64, ts: usize) -> Result<Vec<FreeSpaceMatrix>, SignatureError> {
    enumerate_feasible_matrices_with(q, rho, ts, &PlanConfig::default())
}

pub fn enumerate_feasible_matrices_with(
    q: &Curve<f64>,
    rho: f64,
    ts: usize,
    cfg: &PlanConfig,
) -> Result<Vec<FreeSpaceMatrix>, SignatureError> {
    let plan = DiscretePlan::with_config(q, rho, ts, cfg)?;
    Ok(plan.matrices(cfg.cap)?.iter().map(|p| plan.matrix_of(p)).collect())
}
