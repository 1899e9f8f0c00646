//! Index building, querying, brute-force answers and benchmarks.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::time::Instant;

use frix_frechet::{alt_godau_decide, discrete_decide, Curve};
use frix_geometry::Point2;
use frix_index::{Atom, BuildParams, IndexMeta, MultilevelIndex, Poly2, RangeSpec, Rel};
use frix_signature::{column_specs, curve_to_tpoint, ContinuousPlan, DiscretePlan};
use rand::Rng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::error::{invalid, CliError};
use crate::io::{Manifest, ResultRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    Discrete,
    Continuous,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Discrete => "discrete",
            Kind::Continuous => "continuous",
        }
    }

    pub fn parse(s: &str) -> Result<Kind, CliError> {
        match s {
            "discrete" => Ok(Kind::Discrete),
            "continuous" => Ok(Kind::Continuous),
            _ => Err(invalid(format!("unknown index kind {s:?}"))),
        }
    }
}

/// Curves brought to a uniform vertex count.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub curves: Vec<Curve<f64>>,
    pub ts: usize,
    /// Ids of curves that were padded by repeating their last vertex.
    pub padded: Vec<String>,
}

impl Dataset {
    pub fn new(mut curves: Vec<Curve<f64>>) -> Self {
        let ts = curves.iter().map(Curve::len).max().unwrap_or(0);
        let mut padded = Vec::new();
        for c in &mut curves {
            if c.len() < ts {
                let last = *c.vertices.last().expect("curves are non-empty");
                c.vertices.resize(ts, last);
                padded.push(c.id.clone());
            }
        }
        Dataset { curves, ts, padded }
    }
}

/// Builds the index for a dataset; returns it with a build manifest.
pub fn build_index(
    ds: &Dataset,
    kind: Kind,
    rho: Option<f64>,
    params: BuildParams,
) -> Result<(MultilevelIndex, Manifest), CliError> {
    let ids: Vec<String> = ds.curves.iter().map(|c| c.id.clone()).collect();
    let start = Instant::now();
    let mut diagnostics = 0usize;
    let (points, meta) = match kind {
        Kind::Discrete => {
            if let Some(r) = rho {
                return Err(invalid(format!("discrete indexes take the radius at query time, got --rho {r}")));
            }
            let pts: Vec<Vec<[f64; 2]>> =
                ds.curves.iter().map(|c| c.vertices.iter().map(|v| [v.x, v.y]).collect()).collect();
            let columns = (0..ds.ts).map(|j| format!("vertex[{j}]")).collect();
            (pts, IndexMeta { kind: kind.name().into(), rho: None, columns })
        }
        Kind::Continuous => {
            let rho = rho.ok_or_else(|| invalid("continuous indexes need --rho"))?;
            if !(rho >= 0.0 && rho.is_finite()) {
                return Err(invalid(format!("radius must be non-negative, got {rho}")));
            }
            let specs = column_specs(ds.ts);
            let pts = ds
                .curves
                .iter()
                .map(|c| {
                    let tp = curve_to_tpoint(c, rho, &specs);
                    diagnostics += tp.diagnostics.len();
                    tp.points
                })
                .collect();
            let columns = specs.iter().map(|s| s.to_string()).collect();
            (pts, IndexMeta { kind: kind.name().into(), rho: Some(rho), columns })
        }
    };
    let index = MultilevelIndex::build(ids, &points, params.clone(), meta)?;
    let build_ms = start.elapsed().as_secs_f64() * 1e3;
    let st = index.stats();
    let kv = |k: &str, v: String| (k.to_string(), v);
    let manifest = vec![
        kv("kind", kind.name().into()),
        kv("n", ds.curves.len().to_string()),
        kv("ts", ds.ts.to_string()),
        kv("rho", rho.map_or("none".into(), |r| r.to_string())),
        kv("levels", index.t().to_string()),
        kv("fanout_eps", params.eps.to_string()),
        kv("leaf_cap", params.leaf_cap.to_string()),
        kv("padded", ds.padded.len().to_string()),
        kv("padded_ids", ds.padded.join(",")),
        kv("embedding_diagnostics", diagnostics.to_string()),
        kv("trees", st.trees.to_string()),
        kv("nodes", st.nodes.to_string()),
        kv("point_refs", st.point_refs.to_string()),
        kv("build_ms", format!("{build_ms:.3}")),
    ];
    Ok((index, manifest))
}

/// Timing and traversal counters of one query.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QueryTiming {
    pub plan_ms: f64,
    pub search_ms: f64,
    pub report_ms: f64,
    pub canonical_sets: usize,
    pub visited: usize,
}

/// Vertex count of the stored curves, recovered from the column labels.
pub fn stored_vertex_count(index: &MultilevelIndex, kind: Kind) -> Result<usize, CliError> {
    match kind {
        Kind::Discrete => Ok(index.t()),
        Kind::Continuous => {
            let cols = &index.meta().columns;
            (1..=cols.len())
                .find(|&ts| {
                    let specs = column_specs(ts);
                    specs.len() == cols.len() && specs.iter().zip(cols).all(|(s, c)| s.to_string() == *c)
                })
                .ok_or_else(|| invalid("continuous index columns do not match any curve length"))
        }
    }
}

fn answer(
    index: &MultilevelIndex,
    kind: Kind,
    ts: usize,
    rho: f64,
    q: &Curve<f64>,
) -> Result<(ResultRecord, QueryTiming), CliError> {
    let t0 = Instant::now();
    let (items, stats, plan_ms, search_ms) = match kind {
        Kind::Discrete => {
            let plan = DiscretePlan::new(q, rho, ts)?;
            let plan_ms = t0.elapsed().as_secs_f64() * 1e3;
            let t1 = Instant::now();
            let (items, stats) = index.query_plan(&plan)?;
            (items, stats, plan_ms, t1.elapsed().as_secs_f64() * 1e3)
        }
        Kind::Continuous => {
            let plan = ContinuousPlan::new(q, rho, ts)?;
            let plan_ms = t0.elapsed().as_secs_f64() * 1e3;
            let t1 = Instant::now();
            let (items, stats) = index.query_plan(&plan)?;
            if plan.exceeded() {
                return Err(CliError::Resource(format!("query {}: plan state cap exceeded", q.id)));
            }
            (items, stats, plan_ms, t1.elapsed().as_secs_f64() * 1e3)
        }
    };
    let t2 = Instant::now();
    let mut seen = HashSet::with_capacity(items.len());
    let mut ids = Vec::with_capacity(items.len());
    for &i in &items {
        if !seen.insert(i) {
            return Err(CliError::Internal(format!("query {} reported item {i} twice", q.id)));
        }
        ids.push(index.id(i).to_string());
    }
    let report_ms = t2.elapsed().as_secs_f64() * 1e3;
    let timing =
        QueryTiming { plan_ms, search_ms, report_ms, canonical_sets: stats.canonical_sets(), visited: stats.visited };
    Ok((ResultRecord { qid: q.id.clone(), ids }, timing))
}

/// Resolves the query radius against what the index stores.
pub fn query_radius(index: &MultilevelIndex, rho: Option<f64>) -> Result<(Kind, f64), CliError> {
    let kind = Kind::parse(&index.meta().kind)?;
    let rho = match (kind, index.meta().rho, rho) {
        (Kind::Continuous, Some(stored), Some(r)) if r.to_bits() != stored.to_bits() => {
            return Err(invalid(format!("index was built for rho={stored}, query asks rho={r}")));
        }
        (Kind::Continuous, Some(stored), _) => stored,
        (Kind::Continuous, None, _) => return Err(invalid("continuous index without a stored radius")),
        (Kind::Discrete, _, Some(r)) => r,
        (Kind::Discrete, _, None) => return Err(invalid("discrete queries need --rho")),
    };
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(invalid(format!("radius must be non-negative, got {rho}")));
    }
    Ok((kind, rho))
}

/// Answers all queries (in parallel, output in input order).
pub fn run_queries(
    index: &MultilevelIndex,
    queries: &[Curve<f64>],
    rho: Option<f64>,
) -> Result<Vec<(ResultRecord, QueryTiming)>, CliError> {
    let (kind, rho) = query_radius(index, rho)?;
    let ts = stored_vertex_count(index, kind)?;
    queries.par_iter().map(|q| answer(index, kind, ts, rho, q)).collect()
}

/// Brute-force answers over the original (unpadded) curves.
pub fn oracle(curves: &[Curve<f64>], queries: &[Curve<f64>], kind: Kind, rho: f64) -> Vec<ResultRecord> {
    queries
        .par_iter()
        .map(|q| ResultRecord {
            qid: q.id.clone(),
            ids: curves
                .iter()
                .filter(|s| match kind {
                    Kind::Discrete => discrete_decide(q, s, rho),
                    Kind::Continuous => alt_godau_decide(q, s, rho),
                })
                .map(|s| s.id.clone())
                .collect(),
        })
        .collect()
}

pub fn random_curves(g: &mut ChaCha20Rng, n: usize, t: usize, prefix: &str) -> Vec<Curve<f64>> {
    (0..n)
        .map(|i| Curve::new(format!("{prefix}{i}"), (0..t).map(|_| Point2::new(g.gen(), g.gen())).collect()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BenchKind {
    /// Points in the unit square (t levels), random halfplanes per level.
    Halfplane,
    Discrete,
    Continuous,
}

/// One benchmark size.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub build_ms: f64,
    pub nodes: usize,
    pub point_refs: usize,
    pub plan_ms: f64,
    pub search_ms: f64,
    pub report_ms: f64,
    /// Mean over queries.
    pub canonical_sets: f64,
    pub k: f64,
    /// `n^{1/2}·log2 n`, the planar partition-tree shape.
    pub reference: f64,
}

pub const BENCH_HEADER: &str =
    "n,build_ms,nodes,point_refs,plan_ms,search_ms,report_ms,query_ms,canonical_sets,k,reference_sqrt_n_log_n";

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut s = format!("{BENCH_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{:.3},{},{},{:.4},{:.4},{:.4},{:.4},{:.2},{:.2},{:.2}",
            r.n,
            r.build_ms,
            r.nodes,
            r.point_refs,
            r.plan_ms,
            r.search_ms,
            r.report_ms,
            r.plan_ms + r.search_ms + r.report_ms,
            r.canonical_sets,
            r.k,
            r.reference
        );
    }
    s
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let m = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / m, ly.iter().sum::<f64>() / m);
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub kind: BenchKind,
    pub t: usize,
    pub log_n: std::ops::RangeInclusive<u32>,
    pub queries: usize,
    pub tq: usize,
    pub rho: f64,
    pub seed: u64,
    pub params: BuildParams,
}

pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>, CliError> {
    let mut rows = Vec::new();
    for e in cfg.log_n.clone() {
        let n = 1usize << e;
        let mut g = frix_lbgen::rng::stream(cfg.seed, frix_lbgen::rng::USER + e as u64);
        let (mut plan_ms, mut search_ms, mut report_ms, mut canon, mut k) = (0.0, 0.0, 0.0, 0.0, 0.0);
        let (build_ms, stats);
        match cfg.kind {
            BenchKind::Halfplane => {
                let pts: Vec<Vec<[f64; 2]>> =
                    (0..n).map(|_| (0..cfg.t).map(|_| [g.gen(), g.gen()]).collect()).collect();
                let ids = (0..n).map(|i| i.to_string()).collect();
                let t0 = Instant::now();
                let index = MultilevelIndex::build(ids, &pts, cfg.params.clone(), IndexMeta::default())?;
                build_ms = t0.elapsed().as_secs_f64() * 1e3;
                stats = index.stats();
                for _ in 0..cfg.queries {
                    let t1 = Instant::now();
                    let ranges: Vec<RangeSpec> = (0..cfg.t)
                        .map(|_| {
                            let (px, py, a): (f64, f64, f64) = (g.gen(), g.gen(), g.gen_range(0.0..std::f64::consts::TAU));
                            let (s, c) = a.sin_cos();
                            RangeSpec::single(vec![Atom::new(Poly2::linear(c, s, -(c * px + s * py)), Rel::Le)])
                        })
                        .collect();
                    plan_ms += t1.elapsed().as_secs_f64() * 1e3;
                    let t2 = Instant::now();
                    let (items, st) = index.query(&ranges)?;
                    search_ms += t2.elapsed().as_secs_f64() * 1e3;
                    let t3 = Instant::now();
                    let ids: Vec<&str> = items.iter().map(|&i| index.id(i)).collect();
                    report_ms += t3.elapsed().as_secs_f64() * 1e3;
                    canon += st.canonical_sets() as f64;
                    k += ids.len() as f64;
                }
            }
            BenchKind::Discrete | BenchKind::Continuous => {
                let kind = if cfg.kind == BenchKind::Discrete { Kind::Discrete } else { Kind::Continuous };
                let ds = Dataset::new(random_curves(&mut g, n, cfg.t, "s"));
                let rho = (kind == Kind::Continuous).then_some(cfg.rho);
                let t0 = Instant::now();
                let (index, _) = build_index(&ds, kind, rho, cfg.params.clone())?;
                build_ms = t0.elapsed().as_secs_f64() * 1e3;
                stats = index.stats();
                let qs = random_curves(&mut g, cfg.queries, cfg.tq, "q");
                for (rec, tm) in run_queries(&index, &qs, Some(cfg.rho))? {
                    plan_ms += tm.plan_ms;
                    search_ms += tm.search_ms;
                    report_ms += tm.report_ms;
                    canon += tm.canonical_sets as f64;
                    k += rec.ids.len() as f64;
                }
            }
        }
        let q = cfg.queries.max(1) as f64;
        rows.push(BenchRow {
            n,
            build_ms,
            nodes: stats.nodes,
            point_refs: stats.point_refs,
            plan_ms: plan_ms / q,
            search_ms: search_ms / q,
            report_ms: report_ms / q,
            canonical_sets: canon / q,
            k: k / q,
            reference: (n as f64).sqrt() * (n as f64).log2(),
        });
    }
    Ok(rows)
}
