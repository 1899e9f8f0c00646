//! Embedding of a stored curve as a t-point for the continuous index.
//!
//! Coordinates are first rotated by [`ROTATION`] so that axis-parallel input
//! edges do not produce vertical lines, whose duals would be undefined.

use std::fmt;

use frix_frechet::Curve;
use frix_geometry::{circle_circle, tangent_range, CircleCircle, Disk, Lens, Point2, Scalar};

/// Fixed rotation (radians) applied to stored and query curves.
pub const ROTATION: f64 = 0.318_309_886_183_790_7;

/// Magnitude of the sentinel coordinates.
pub const SENTINEL: f64 = 1e9;

pub fn rotate(p: Point2<f64>) -> Point2<f64> {
    let (s, c) = ROTATION.sin_cos();
    Point2::new(c * p.x - s * p.y, s * p.x + c * p.y)
}

pub fn rotate_curve(c: &Curve<f64>) -> Curve<f64> {
    Curve::new(c.id.clone(), c.vertices.iter().map(|&p| rotate(p)).collect())
}

/// What a stored coordinate holds. `j`, `k` index stored vertices or edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColumnKind {
    /// Vertex `s_j`.
    Vertex(usize),
    /// Dual point of the upper ρ-offset line of edge `j`.
    OffsetUpper(usize),
    /// Dual point of the lower ρ-offset line of edge `j`.
    OffsetLower(usize),
    /// Dual point of the higher of the two lines closing the edge rectangle.
    CapHigh(usize),
    /// Dual point of the lower closing line.
    CapLow(usize),
    /// Dual point of the line supporting edge `j`.
    EdgeLine(usize),
    /// Unit direction of edge `j`.
    EdgeDir(usize),
    /// Upper intersection point `b+` of the radius-ρ circles at `s_j`, `s_k`.
    LensUpper(usize, usize),
    /// Lower intersection point `b−`.
    LensLower(usize, usize),
    /// Tangent range endpoints `(α−, α+)` of that lens.
    TangentRange(usize, usize),
    /// Unit direction of `s_k − s_j` for non-adjacent `j, k`.
    PairDir(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColumnSpec {
    pub kind: ColumnKind,
}

impl fmt::Display for ColumnSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ColumnKind::*;
        match self.kind {
            Vertex(j) => write!(f, "vertex[{j}]"),
            OffsetUpper(j) => write!(f, "offset_upper[{j}]"),
            OffsetLower(j) => write!(f, "offset_lower[{j}]"),
            CapHigh(j) => write!(f, "cap_high[{j}]"),
            CapLow(j) => write!(f, "cap_low[{j}]"),
            EdgeLine(j) => write!(f, "edge_line[{j}]"),
            EdgeDir(j) => write!(f, "edge_dir[{j}]"),
            LensUpper(j, k) => write!(f, "lens_upper[{j},{k}]"),
            LensLower(j, k) => write!(f, "lens_lower[{j},{k}]"),
            TangentRange(j, k) => write!(f, "tangent_range[{j},{k}]"),
            PairDir(j, k) => write!(f, "pair_dir[{j},{k}]"),
        }
    }
}

/// Column layout for stored curves with `ts` vertices.
///
/// The two end vertices come first so that the endpoint conditions prune
/// early. Pair columns exist only for interior vertex pairs, the only pairs
/// whose ordering the feasibility test inspects.
pub fn column_specs(ts: usize) -> Vec<ColumnSpec> {
    use ColumnKind::*;
    let mut out: Vec<ColumnKind> = Vec::new();
    if ts == 0 {
        return Vec::new();
    }
    out.push(Vertex(0));
    if ts > 1 {
        out.push(Vertex(ts - 1));
    }
    out.extend((1..ts.saturating_sub(1)).map(Vertex));
    for j in 0..ts.saturating_sub(1) {
        out.extend([OffsetUpper(j), OffsetLower(j), CapHigh(j), CapLow(j), EdgeLine(j), EdgeDir(j)]);
    }
    for j in 1..ts.saturating_sub(1) {
        for k in j + 1..ts - 1 {
            out.extend([LensUpper(j, k), LensLower(j, k), TangentRange(j, k)]);
            if k > j + 1 {
                out.push(PairDir(j, k));
            }
        }
    }
    out.into_iter().map(|kind| ColumnSpec { kind }).collect()
}

/// Number of columns of [`column_specs`].
pub fn column_count(ts: usize) -> usize {
    if ts == 0 {
        return 0;
    }
    let interior = ts.saturating_sub(2);
    let pairs = interior * interior.saturating_sub(1) / 2;
    ts + 6 * (ts - 1) + 3 * pairs + pairs.saturating_sub(interior.saturating_sub(1))
}

/// A stored curve's coordinates, one planar point per column.
#[derive(Debug, Clone, PartialEq)]
pub struct TPoint {
    pub points: Vec<[f64; 2]>,
    /// Columns that hold sentinels because a quantity was undefined.
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
struct EdgeDuals {
    upper: [f64; 2],
    lower: [f64; 2],
    cap_high: [f64; 2],
    cap_low: [f64; 2],
    line: [f64; 2],
    dir: [f64; 2],
}

/// Slope/intercept of the line through `p` with direction `d`, nudging a
/// vertical direction so that the dual exists.
fn dual_line(p: Point2<f64>, d: Point2<f64>, notes: &mut Vec<String>, what: &str) -> (f64, f64) {
    let mut dx = d.x;
    if dx.abs() < 1e-12 * d.norm() {
        notes.push(format!("{what}: vertical line nudged"));
        dx = 1e-12 * d.norm() * if dx < 0.0 { -1.0 } else { 1.0 };
    }
    let a = d.y / dx;
    (a, p.y - a * p.x)
}

fn edge_duals(b1: Point2<f64>, b2: Point2<f64>, rho: f64, j: usize, notes: &mut Vec<String>) -> EdgeDuals {
    let e = b2 - b1;
    let len = e.norm();
    if len == 0.0 {
        notes.push(format!("edge {j}: zero length"));
        return EdgeDuals {
            upper: [0.0, SENTINEL],
            lower: [0.0, -SENTINEL],
            cap_high: [0.0, -SENTINEL],
            cap_low: [0.0, SENTINEL],
            line: [0.0, 0.0],
            dir: [0.0, 0.0],
        };
    }
    let lim = rho + f64::eps_geo();
    let u = e * (1.0 / len);
    let (a, c) = dual_line(b1, e, notes, &format!("edge {j}"));
    let shift = lim * (1.0 + a * a).sqrt();
    let eps = f64::eps_geo();
    let (a1, c1) = dual_line(b1 - u * eps, u.perp(), notes, &format!("edge {j} cap"));
    let (_, c2) = dual_line(b2 + u * eps, u.perp(), notes, &format!("edge {j} cap"));
    EdgeDuals {
        upper: [a, c + shift],
        lower: [a, c - shift],
        cap_high: [a1, c1.max(c2)],
        cap_low: [a1, c1.min(c2)],
        line: [a, c],
        dir: [u.x, u.y],
    }
}

/// Lens corners and tangent range of the radius-ρ circles around `a`, `b`.
pub(crate) fn lens_data(a: Point2<f64>, b: Point2<f64>, rho: f64) -> Option<(Point2<f64>, Point2<f64>, f64, f64)> {
    match circle_circle(Disk::new(a, rho), Disk::new(b, rho)) {
        Ok(CircleCircle::Pair(bp, bm)) => {
            let tr = tangent_range(&Lens { d1: Disk::new(a, rho), d2: Disk::new(b, rho) }).ok()?;
            Some((bp, bm, tr.start, tr.end()))
        }
        _ => None,
    }
}

/// Extracts the stored point of every column (after rotation).
pub fn curve_to_tpoint(s: &Curve<f64>, rho: f64, specs: &[ColumnSpec]) -> TPoint {
    let s = rotate_curve(s);
    let v = &s.vertices;
    let mut notes = Vec::new();
    let edges: Vec<EdgeDuals> = (0..v.len().saturating_sub(1))
        .map(|j| edge_duals(v[j], v[j + 1], rho, j, &mut notes))
        .collect();
    let sentinel_low = [0.0, -SENTINEL];
    let points = specs
        .iter()
        .map(|spec| {
            use ColumnKind::*;
            match spec.kind {
                Vertex(j) => [v[j].x, v[j].y],
                OffsetUpper(j) => edges[j].upper,
                OffsetLower(j) => edges[j].lower,
                CapHigh(j) => edges[j].cap_high,
                CapLow(j) => edges[j].cap_low,
                EdgeLine(j) => edges[j].line,
                EdgeDir(j) => edges[j].dir,
                LensUpper(j, k) => lens_data(v[j], v[k], rho).map_or(sentinel_low, |l| [l.0.x, l.0.y]),
                LensLower(j, k) => lens_data(v[j], v[k], rho).map_or(sentinel_low, |l| [l.1.x, l.1.y]),
                TangentRange(j, k) => lens_data(v[j], v[k], rho).map_or([SENTINEL, SENTINEL], |l| [l.2, l.3]),
                PairDir(j, k) => {
                    let u = (v[k] - v[j]).unit_or_zero();
                    [u.x, u.y]
                }
            }
        })
        .collect();
    TPoint { points, diagnostics: notes }
}
