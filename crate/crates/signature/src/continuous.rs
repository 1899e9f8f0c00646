//! Continuous query plans.
//!
//! Every column of the stored t-point gets the query-derived elementary
//! ranges that read it. A plan state fixes one arrangement cell per column
//! seen so far; the high-level predicates are evaluated in three-valued logic
//! (unknown while a column is still open) and a branch is cut as soon as the
//! feasibility test fails even with every unknown predicate set to true.

use std::cell::{Cell, OnceCell, RefCell};
use std::collections::HashMap;

use frix_frechet::{feasible_cell_sequence, Curve, HLAssignment};
use frix_geometry::{norm_angle_pi, Point2, Scalar};
use frix_index::{QueryPlan, RangeSpec, Rel};

use crate::arrangement::{arrangement_cells, cell_range, decompose, CellSearch, Feature, RefinedCell, SignVector};
use crate::columns::{column_specs, lens_data, rotate_curve, ColumnKind, ColumnSpec, SENTINEL};
use crate::SignatureError;

/// Three-valued predicate expression over column feature bits.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(bool),
    Bit { level: usize, feature: usize },
    And(Vec<Expr>),
    Or(Vec<Expr>),
    Xnor(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Kleene evaluation; `None` is unknown.
    pub fn eval(&self, bit: &dyn Fn(usize, usize) -> Option<bool>) -> Option<bool> {
        match self {
            Expr::Const(b) => Some(*b),
            Expr::Bit { level, feature } => bit(*level, *feature),
            Expr::And(xs) => {
                let mut all = true;
                for x in xs {
                    match x.eval(bit) {
                        Some(false) => return Some(false),
                        None => all = false,
                        Some(true) => {}
                    }
                }
                all.then_some(true)
            }
            Expr::Or(xs) => {
                let mut none = true;
                for x in xs {
                    match x.eval(bit) {
                        Some(true) => return Some(true),
                        None => none = false,
                        Some(false) => {}
                    }
                }
                none.then_some(false)
            }
            Expr::Xnor(a, b) => Some(a.eval(bit)? == b.eval(bit)?),
        }
    }
}

/// High-level predicate slot an expression fills.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    P1,
    P2,
    Hvep(usize, usize),
    Vvep(usize, usize),
    Hmp(usize, usize, usize),
    Vmp(usize, usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Disk(usize),
    Strip(usize),
    Span(usize),
    Below(usize),
    Above(usize),
    LensX(usize, usize),
    LensY(usize, usize),
    Order(usize, usize),
    EdgeDot(usize),
    WedgeA(usize, usize),
    WedgeB(usize, usize),
    LeftOf(usize),
    RightOf(usize),
    AngLo(usize, usize),
    AngHi(usize, usize),
}

/// One arrangement cell of a column.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanCell {
    pub sign: SignVector,
    pub witness: [f64; 2],
    pub range: RangeSpec,
}

#[derive(Debug)]
pub struct PlanColumn {
    pub spec: ColumnSpec,
    pub features: Vec<Feature>,
    pub cells: Vec<PlanCell>,
    refined: OnceCell<Vec<Vec<RefinedCell>>>,
}

impl PlanColumn {
    /// Vertical-decomposition pieces per cell.
    pub fn refined_cells(&self) -> &[Vec<RefinedCell>] {
        self.refined.get_or_init(|| {
            let pieces = decompose(&self.features);
            self.cells
                .iter()
                .map(|c| pieces.iter().filter(|p| p.sign == c.sign).cloned().collect())
                .collect()
        })
    }

    pub fn cell_of(&self, p: [f64; 2]) -> Option<usize> {
        self.cells.iter().position(|c| c.range.contains(p[0], p[1]))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Goal {
    /// Stored or query curve is a single point: every vertex pair within ρ.
    AllWithin(Expr),
    Feasible(Vec<(Slot, Expr)>),
}

/// Per-query plan for the continuous problem; levels follow [`column_specs`].
#[derive(Debug)]
pub struct ContinuousPlan {
    /// Rotated query with consecutive duplicates removed.
    pub query: Curve<f64>,
    pub rho: f64,
    pub ts: usize,
    pub columns: Vec<PlanColumn>,
    goal: Goal,
    cap: usize,
    cache: RefCell<HashMap<Vec<u16>, Vec<usize>>>,
    exceeded: Cell<bool>,
}

struct Builder {
    q: Vec<Point2<f64>>,
    rho: f64,
    level_of: HashMap<ColumnKind, usize>,
    features: Vec<Vec<(Key, Feature)>>,
}

impl Builder {
    fn lim(&self) -> f64 {
        self.rho + f64::eps_geo()
    }

    fn dir(&self, i: usize) -> Point2<f64> {
        self.q[i + 1] - self.q[i]
    }

    fn make(&self, key: Key) -> Option<Feature> {
        let q = &self.q;
        let eps = f64::eps_geo();
        Some(match key {
            Key::Disk(i) => Feature::disk(q[i], self.lim()),
            Key::Strip(i) => {
                let n = self.dir(i).unit_or_zero().perp();
                let c = n.dot(q[i]);
                Feature::band(n, c - self.lim(), c + self.lim())
            }
            Key::Span(i) => {
                let d = self.dir(i);
                let u = d.unit_or_zero();
                let c = u.dot(q[i]);
                Feature::band(u, c - eps, c + d.norm() + eps)
            }
            // stored dual point (a, b): `a·q.x + b − q.y` is `≥ 0` iff `q` is on or below the line
            Key::Below(i) => Feature::linear(q[i].x, 1.0, -q[i].y, Rel::Ge),
            Key::Above(i) => Feature::linear(q[i].x, 1.0, -q[i].y, Rel::Le),
            Key::LensX(i, k) => {
                let (bp, _, _, _) = lens_data(q[i], q[k], self.rho)?;
                Feature::linear(bp.x, 1.0, -bp.y, Rel::Le)
            }
            Key::LensY(i, k) => {
                let (_, bm, _, _) = lens_data(q[i], q[k], self.rho)?;
                Feature::linear(bm.x, 1.0, -bm.y, Rel::Ge)
            }
            Key::Order(i, k) => {
                let w = q[k] - q[i];
                if w.x == 0.0 && w.y == 0.0 {
                    return None;
                }
                Feature::linear(w.x, w.y, 0.0, Rel::Ge)
            }
            Key::EdgeDot(i) => {
                let d = self.dir(i);
                Feature::linear(d.x, d.y, 0.0, Rel::Ge)
            }
            Key::WedgeA(i, k) => {
                let (_, _, lo, _) = lens_data(q[i], q[k], self.rho)?;
                let e = Point2::from_angle(lo);
                Feature::linear(-e.y, e.x, 0.0, Rel::Ge)
            }
            Key::WedgeB(i, k) => {
                let (_, _, _, hi) = lens_data(q[i], q[k], self.rho)?;
                let e = Point2::from_angle(hi);
                Feature::linear(e.y, -e.x, 0.0, Rel::Ge)
            }
            Key::LeftOf(i) | Key::RightOf(i) => {
                let d = self.dir(i);
                let rel = if matches!(key, Key::LeftOf(_)) { Rel::Ge } else { Rel::Le };
                Feature::linear(-d.y, d.x, d.y * q[i].x - d.x * q[i].y, rel)
            }
            Key::AngLo(i, s) => {
                let d = self.dir(i);
                let th = norm_angle_pi(d.y.atan2(d.x)) + s as f64 * std::f64::consts::PI;
                Feature::linear(1.0, 0.0, -(th + eps), Rel::Le)
            }
            Key::AngHi(i, s) => {
                let d = self.dir(i);
                let th = norm_angle_pi(d.y.atan2(d.x)) + s as f64 * std::f64::consts::PI;
                Feature::linear(0.0, 1.0, -(th - eps), Rel::Ge)
            }
        })
    }

    /// Bit of feature `key` on column `kind`; `None` when the feature is undefined.
    fn bit(&mut self, kind: ColumnKind, key: Key) -> Option<Expr> {
        let level = self.level_of[&kind];
        if let Some(idx) = self.features[level].iter().position(|(k, _)| *k == key) {
            return Some(Expr::Bit { level, feature: idx });
        }
        let f = self.make(key)?;
        self.features[level].push((key, f));
        Some(Expr::Bit { level, feature: self.features[level].len() - 1 })
    }

    fn must(&mut self, kind: ColumnKind, key: Key) -> Expr {
        self.bit(kind, key).expect("feature is always defined")
    }
}

fn and(xs: Vec<Expr>) -> Expr {
    Expr::And(xs)
}

fn or(xs: Vec<Expr>) -> Expr {
    Expr::Or(xs)
}

fn xnor(a: Expr, b: Expr) -> Expr {
    Expr::Xnor(Box::new(a), Box::new(b))
}

fn monotone(d: Expr, e: Expr, f: Expr, g: Expr, h: Expr) -> Expr {
    or(vec![and(vec![d.clone(), e.clone(), f]), g, and(vec![d, e, h])])
}

fn sentinels(kind: ColumnKind) -> Vec<[f64; 2]> {
    use ColumnKind::*;
    match kind {
        Vertex(_) => vec![],
        OffsetUpper(_) | CapLow(_) => vec![[0.0, SENTINEL]],
        OffsetLower(_) | CapHigh(_) | LensUpper(..) | LensLower(..) => vec![[0.0, -SENTINEL]],
        TangentRange(..) => vec![[SENTINEL, SENTINEL]],
        EdgeLine(_) | EdgeDir(_) | PairDir(..) => vec![[0.0, 0.0]],
    }
}

impl ContinuousPlan {
    pub fn new(query: &Curve<f64>, rho: f64, ts: usize) -> Result<Self, SignatureError> {
        Self::with_config(query, rho, ts, 1_000_000, &CellSearch::default())
    }

    /// `cap` bounds the number of distinct partial states the plan may visit.
    pub fn with_config(
        query: &Curve<f64>,
        rho: f64,
        ts: usize,
        cap: usize,
        search: &CellSearch,
    ) -> Result<Self, SignatureError> {
        if query.is_empty() || ts == 0 {
            return Err(SignatureError::Invalid("curves need at least one vertex".into()));
        }
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(SignatureError::Invalid(format!("radius must be positive, got {rho}")));
        }
        let q = rotate_curve(&query.dedup_consecutive());
        let m = q.len();
        let specs = column_specs(ts);
        let level_of = specs.iter().enumerate().map(|(l, s)| (s.kind, l)).collect();
        let mut b = Builder { q: q.vertices.clone(), rho, level_of, features: vec![Vec::new(); specs.len()] };
        use ColumnKind::*;
        let goal = if m == 1 || ts == 1 {
            let mut all = Vec::new();
            for j in 0..ts {
                for i in 0..m {
                    all.push(b.must(Vertex(j), Key::Disk(i)));
                }
            }
            Goal::AllWithin(and(all))
        } else {
            let t = ts;
            let mut preds = vec![
                (Slot::P1, b.must(Vertex(0), Key::Disk(0))),
                (Slot::P2, b.must(Vertex(t - 1), Key::Disk(m - 1))),
            ];
            let within_offsets = |b: &mut Builder, i: usize, j: usize| {
                and(vec![b.must(OffsetUpper(j), Key::Below(i)), b.must(OffsetLower(j), Key::Above(i))])
            };
            for i in 1..m - 1 {
                for j in 0..t - 1 {
                    let rect = and(vec![
                        within_offsets(&mut b, i, j),
                        b.must(CapHigh(j), Key::Below(i)),
                        b.must(CapLow(j), Key::Above(i)),
                    ]);
                    let e = or(vec![b.must(Vertex(j), Key::Disk(i)), b.must(Vertex(j + 1), Key::Disk(i)), rect]);
                    preds.push((Slot::Hvep(i, j), e));
                }
            }
            for i in 0..m - 1 {
                for j in 1..t - 1 {
                    let rect = and(vec![b.must(Vertex(j), Key::Strip(i)), b.must(Vertex(j), Key::Span(i))]);
                    let e = or(vec![b.must(Vertex(j), Key::Disk(i)), b.must(Vertex(j), Key::Disk(i + 1)), rect]);
                    preds.push((Slot::Vvep(i, j), e));
                }
                for j in 1..t - 1 {
                    for k in j + 1..t - 1 {
                        let d = b.must(Vertex(j), Key::Strip(i));
                        let e = b.must(Vertex(k), Key::Strip(i));
                        let dir_col = if k == j + 1 { EdgeDir(j) } else { PairDir(j, k) };
                        let f = b.must(dir_col, Key::EdgeDot(i));
                        let g = xnor(b.must(LensUpper(j, k), Key::LeftOf(i)), b.must(LensLower(j, k), Key::RightOf(i)));
                        let tr = TangentRange(j, k);
                        let h = or(vec![
                            and(vec![b.must(tr, Key::AngLo(i, 0)), b.must(tr, Key::AngHi(i, 0))]),
                            and(vec![b.must(tr, Key::AngLo(i, 1)), b.must(tr, Key::AngHi(i, 1))]),
                        ]);
                        preds.push((Slot::Hmp(i, j, k), monotone(d, e, f, g, h)));
                    }
                }
            }
            for i in 1..m - 1 {
                for k in i + 1..m - 1 {
                    for j in 0..t - 1 {
                        let d = within_offsets(&mut b, i, j);
                        let e = within_offsets(&mut b, k, j);
                        let f = b.bit(EdgeDir(j), Key::Order(i, k)).unwrap_or(Expr::Const(true));
                        let g = match (b.bit(EdgeLine(j), Key::LensX(i, k)), b.bit(EdgeLine(j), Key::LensY(i, k))) {
                            (Some(x), Some(y)) => xnor(x, y),
                            _ => Expr::Const(false),
                        };
                        let h = match (b.bit(EdgeDir(j), Key::WedgeA(i, k)), b.bit(EdgeDir(j), Key::WedgeB(i, k))) {
                            (Some(x), Some(y)) => xnor(x, y),
                            _ => Expr::Const(false),
                        };
                        preds.push((Slot::Vmp(i, k, j), monotone(d, e, f, g, h)));
                    }
                }
            }
            Goal::Feasible(preds)
        };

        let mut columns = Vec::with_capacity(specs.len());
        for (spec, feats) in specs.iter().zip(b.features) {
            let features: Vec<Feature> = feats.into_iter().map(|(_, f)| f).collect();
            let cells = if features.is_empty() {
                vec![PlanCell { sign: SignVector(vec![]), witness: [0.0, 0.0], range: RangeSpec::everything() }]
            } else {
                arrangement_cells(&features, &sentinels(spec.kind), search)?
                    .into_iter()
                    .map(|(sign, witness)| PlanCell { range: cell_range(&features, &sign), sign, witness })
                    .collect()
            };
            if cells.len() > u16::MAX as usize {
                return Err(SignatureError::Resource(format!("column {spec} has {} cells", cells.len())));
            }
            columns.push(PlanColumn { spec: *spec, features, cells, refined: OnceCell::new() });
        }
        Ok(ContinuousPlan {
            query: q,
            rho,
            ts,
            columns,
            goal,
            cap,
            cache: RefCell::new(HashMap::new()),
            exceeded: Cell::new(false),
        })
    }

    pub fn levels(&self) -> usize {
        self.columns.len()
    }

    /// Whether the state cap was hit during a traversal (results are then incomplete).
    pub fn exceeded(&self) -> bool {
        self.exceeded.get()
    }

    fn bit_fn<'a>(&'a self, chosen: &'a [u16]) -> impl Fn(usize, usize) -> Option<bool> + 'a {
        move |level, feature| chosen.get(level).map(|&c| self.columns[level].cells[c as usize].sign.get(feature))
    }

    /// High-level assignment for a (partial) cell choice; unknowns are true.
    pub fn assignment(&self, chosen: &[u16]) -> Option<HLAssignment> {
        let Goal::Feasible(preds) = &self.goal else { return None };
        let bit = self.bit_fn(chosen);
        let (m, t) = (self.query.len(), self.ts);
        let mut h = HLAssignment::filled(m, t, true);
        for (slot, e) in preds {
            let v = e.eval(&bit).unwrap_or(true);
            match *slot {
                Slot::P1 => h.p1 = v,
                Slot::P2 => h.p2 = v,
                Slot::Hvep(i, j) => h.set_hvep(i, j, v),
                Slot::Vvep(i, j) => h.set_vvep(i, j, v),
                Slot::Hmp(i, j, k) => h.set_hmp(i, j, k, v),
                Slot::Vmp(i, k, j) => h.set_vmp(i, k, j, v),
            }
        }
        Some(h)
    }

    /// Whether some completion of the partial choice can be accepted.
    pub fn viable(&self, chosen: &[u16]) -> bool {
        match &self.goal {
            Goal::AllWithin(e) => e.eval(&self.bit_fn(chosen)) != Some(false),
            Goal::Feasible(_) => {
                let h = self.assignment(chosen).expect("feasibility goal");
                feasible_cell_sequence(&h, self.query.len(), self.ts)
            }
        }
    }

    /// Cell choice of a stored t-point, column by column.
    pub fn cells_of(&self, points: &[[f64; 2]]) -> Option<Vec<u16>> {
        self.columns.iter().zip(points).map(|(c, &p)| c.cell_of(p).map(|i| i as u16)).collect()
    }

    /// Point-wise plan evaluation of a stored t-point.
    pub fn covers(&self, points: &[[f64; 2]]) -> bool {
        self.cells_of(points).is_some_and(|c| self.viable(&c))
    }

    /// Lazy enumeration of complete accepted cell choices; yields an error
    /// once more than `cap` have been produced.
    pub fn assignments(&self, cap: usize) -> Assignments<'_> {
        Assignments { plan: self, stack: vec![(Vec::new(), 0)], produced: 0, cap, failed: false }
    }
}

impl QueryPlan for ContinuousPlan {
    type State = Vec<u16>;

    fn root(&self) -> Vec<u16> {
        Vec::new()
    }

    fn options(&self, level: usize, state: &Vec<u16>) -> Vec<usize> {
        if let Some(v) = self.cache.borrow().get(state) {
            return v.clone();
        }
        if self.cache.borrow().len() >= self.cap {
            self.exceeded.set(true);
            return Vec::new();
        }
        let mut next = state.clone();
        next.push(0);
        let opts: Vec<usize> = (0..self.columns[level].cells.len())
            .filter(|&c| {
                next[level] = c as u16;
                self.viable(&next)
            })
            .collect();
        self.cache.borrow_mut().insert(state.clone(), opts.clone());
        opts
    }

    fn range(&self, level: usize, option: usize) -> &RangeSpec {
        &self.columns[level].cells[option].range
    }

    fn advance(&self, _level: usize, state: &Vec<u16>, option: usize) -> Option<Vec<u16>> {
        let mut s = state.clone();
        s.push(option as u16);
        Some(s)
    }
}

/// One accepted global choice: a cell per column.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanAssignment {
    pub cells: Vec<u16>,
    pub hl: Option<HLAssignment>,
}

impl PlanAssignment {
    /// Refined cells of every chosen column cell.
    pub fn refined<'a>(&self, plan: &'a ContinuousPlan) -> Vec<&'a [RefinedCell]> {
        self.cells
            .iter()
            .enumerate()
            .map(|(l, &c)| plan.columns[l].refined_cells()[c as usize].as_slice())
            .collect()
    }
}

pub struct Assignments<'a> {
    plan: &'a ContinuousPlan,
    stack: Vec<(Vec<u16>, usize)>,
    produced: usize,
    cap: usize,
    failed: bool,
}

impl Iterator for Assignments<'_> {
    type Item = Result<PlanAssignment, SignatureError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let levels = self.plan.levels();
        while let Some((prefix, next_cell)) = self.stack.pop() {
            let level = prefix.len();
            if level == levels {
                if self.produced == self.cap {
                    self.failed = true;
                    return Some(Err(SignatureError::Resource(format!("more than {} assignments", self.cap))));
                }
                self.produced += 1;
                let hl = self.plan.assignment(&prefix);
                return Some(Ok(PlanAssignment { cells: prefix, hl }));
            }
            let n = self.plan.columns[level].cells.len();
            let mut c = next_cell;
            while c < n {
                let mut child = prefix.clone();
                child.push(c as u16);
                c += 1;
                if self.plan.viable(&child) {
                    self.stack.push((prefix, c));
                    self.stack.push((child, 0));
                    break;
                }
            }
        }
        None
    }
}

/// Builds the plan for `q` against stored curves with `ts` vertices.
pub fn continuous_query_plan(q: &Curve<f64>, rho: f64, ts: usize) -> Result<ContinuousPlan, SignatureError> {
    ContinuousPlan::new(q, rho, ts)
}
