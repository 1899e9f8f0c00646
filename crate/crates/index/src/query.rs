//! Query traversal.
//!
//! A [`QueryPlan`] offers, per coordinate level, a set of candidate ranges that
//! depend on what was chosen at earlier levels. Plain multilevel queries are the
//! special case of one fixed range per level ([`FixedRanges`]).

use crate::range::{classify, Classification, RangeSpec};
use crate::tree::{MultilevelIndex, QueryStats, NONE};
use crate::IndexError;

pub trait QueryPlan {
    type State: Clone;

    fn root(&self) -> Self::State;

    /// Candidate option ids for coordinate `level`. Options of one state must
    /// describe pairwise disjoint ranges, otherwise points may be reported twice.
    fn options(&self, level: usize, state: &Self::State) -> Vec<usize>;

    fn range(&self, level: usize, option: usize) -> &RangeSpec;

    /// State after choosing `option` at `level`; `None` prunes the branch.
    fn advance(&self, level: usize, state: &Self::State, option: usize) -> Option<Self::State>;

    /// Final acceptance once every level has been chosen.
    fn accepts(&self, _state: &Self::State) -> bool {
        true
    }
}

/// One range per level.
pub struct FixedRanges<'a> {
    pub ranges: &'a [RangeSpec],
}

impl QueryPlan for FixedRanges<'_> {
    type State = ();

    fn root(&self) {}

    fn options(&self, _level: usize, _state: &()) -> Vec<usize> {
        vec![0]
    }

    fn range(&self, level: usize, _option: usize) -> &RangeSpec {
        &self.ranges[level]
    }

    fn advance(&self, _level: usize, _state: &(), _option: usize) -> Option<()> {
        Some(())
    }
}

struct Run<'a, P: QueryPlan> {
    index: &'a MultilevelIndex,
    plan: &'a P,
    out: Vec<u32>,
    stats: QueryStats,
}

impl<P: QueryPlan> Run<'_, P> {
    fn tree(&mut self, tree: u32, level: usize, state: &P::State) {
        let opts = self.plan.options(level, state);
        if !opts.is_empty() {
            self.node(tree, 0, level, state, opts);
        }
    }

    fn node(&mut self, tree: u32, ni: usize, level: usize, state: &P::State, opts: Vec<usize>) {
        let index = self.index;
        let node = index.trees[tree as usize].nodes[ni];
        self.stats.visited += 1;
        let mut crossing = Vec::new();
        for o in opts {
            match classify(&node.region, self.plan.range(level, o)) {
                Classification::Outside => {}
                Classification::Inside => self.inside(tree, ni, level, state, o),
                Classification::Crossing => crossing.push(o),
            }
        }
        if crossing.is_empty() {
            return;
        }
        self.stats.crossing += 1;
        if node.n_children == 0 {
            self.stats.leaf_scans += 1;
            let items = &index.trees[tree as usize].items[node.start as usize..(node.start + node.len) as usize];
            for &it in items {
                for &o in &crossing {
                    self.stats.points_tested += 1;
                    let p = index.point(it, level);
                    if self.plan.range(level, o).contains(p[0], p[1]) {
                        self.stats.plan_steps += 1;
                        if let Some(s2) = self.plan.advance(level, state, o) {
                            self.pointwise(it, level + 1, &s2);
                        }
                    }
                }
            }
            return;
        }
        for c in node.first_child..node.first_child + node.n_children {
            self.node(tree, c as usize, level, state, crossing.clone());
        }
    }

    fn inside(&mut self, tree: u32, ni: usize, level: usize, state: &P::State, o: usize) {
        self.stats.inside += 1;
        self.stats.plan_steps += 1;
        let Some(s2) = self.plan.advance(level, state, o) else { return };
        let index = self.index;
        let t = &index.trees[tree as usize];
        let node = t.nodes[ni];
        let items = &t.items[node.start as usize..(node.start + node.len) as usize];
        if level + 1 == index.t {
            if self.plan.accepts(&s2) {
                self.out.extend_from_slice(items);
            }
        } else if node.next != NONE {
            self.tree(node.next, level + 1, &s2);
        } else {
            for &it in items {
                self.pointwise(it, level + 1, &s2);
            }
        }
    }

    fn pointwise(&mut self, item: u32, level: usize, state: &P::State) {
        if level == self.index.t {
            if self.plan.accepts(state) {
                self.out.push(item);
            }
            return;
        }
        let p = self.index.point(item, level);
        for o in self.plan.options(level, state) {
            self.stats.points_tested += 1;
            if self.plan.range(level, o).contains(p[0], p[1]) {
                self.stats.plan_steps += 1;
                if let Some(s2) = self.plan.advance(level, state, o) {
                    self.pointwise(item, level + 1, &s2);
                }
            }
        }
    }
}

impl MultilevelIndex {
    /// Items whose every coordinate lies in the matching range.
    pub fn query(&self, ranges: &[RangeSpec]) -> Result<(Vec<u32>, QueryStats), IndexError> {
        if ranges.len() != self.t && !self.is_empty() {
            return Err(IndexError::Invalid(format!("expected {} ranges, got {}", self.t, ranges.len())));
        }
        self.query_plan(&FixedRanges { ranges })
    }

    /// Runs a branching plan; results are sorted and checked for duplicates.
    pub fn query_plan<P: QueryPlan>(&self, plan: &P) -> Result<(Vec<u32>, QueryStats), IndexError> {
        let mut run = Run { index: self, plan, out: Vec::new(), stats: QueryStats::default() };
        if let Some(root) = self.root() {
            let s = plan.root();
            run.tree(root, 0, &s);
        }
        let mut out = run.out;
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(IndexError::Invariant("an item was reported twice".into()));
        }
        run.stats.reported = out.len();
        Ok((out, run.stats))
    }

    /// Brute-force evaluation of a plan over every stored point.
    pub fn scan_plan<P: QueryPlan>(&self, plan: &P) -> Vec<u32> {
        let mut run = Run { index: self, plan, out: Vec::new(), stats: QueryStats::default() };
        let s = plan.root();
        for it in 0..self.len() as u32 {
            run.pointwise(it, 0, &s);
        }
        let mut out = run.out;
        out.sort_unstable();
        out
    }
}
