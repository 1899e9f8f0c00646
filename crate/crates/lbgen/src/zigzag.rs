//! Zig-zag gadgets and the continuous Fréchet encoding.

use std::f64::consts::FRAC_PI_4;

use frix_frechet::Curve;
use frix_geometry::{Point2, Slab2};

use crate::construction::{build_construction, thicknesses, Construction, Mode};
use crate::lens::slab_id;
use crate::{InstanceSpec, LbError};

/// Gadget parameters: vertical interval `x = x1, y ∈ [x2, x3]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZigzagParams {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl ZigzagParams {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<Self, LbError> {
        let inside = |v: f64| (-1.0..=1.0).contains(&v);
        if !(inside(x1) && inside(x2) && inside(x3)) {
            return Err(LbError::Invalid(format!("zig-zag parameters ({x1}, {x2}, {x3}) leave [-1, 1]")));
        }
        if (x2 - x3).abs() > 1.0 {
            return Err(LbError::Invalid(format!("zig-zag interval [{x2}, {x3}] longer than 1")));
        }
        Ok(ZigzagParams { x1, x2, x3 })
    }
}

/// Left and right end vertices shared by every gadget.
pub const GADGET_LEFT: Point2<f64> = Point2 { x: -4.0, y: 0.0 };
pub const GADGET_RIGHT: Point2<f64> = Point2 { x: 4.0, y: 0.0 };

/// The four-vertex gadget. The unit circles around its two interior vertices
/// cross exactly at `(x1, x2)` and `(x1, x3)`.
pub fn zigzag(p: ZigzagParams) -> Curve<f64> {
    let sin = (p.x2 - p.x3).abs() / 2.0;
    let cos = (1.0 - sin * sin).sqrt();
    let mid = (p.x2 + p.x3) / 2.0;
    Curve::new(
        "",
        vec![GADGET_LEFT, Point2::new(p.x1 + cos, mid), Point2::new(p.x1 - cos, mid), GADGET_RIGHT],
    )
}

/// Dual points `(a, b)` of the lines `y = a·x + b` crossing the gadget's
/// vertical interval: `x2 ≤ a·x1 + b ≤ x3`.
pub fn zigzag_dual_slab(p: ZigzagParams) -> Result<Slab2<f64>, LbError> {
    let (lo, hi) = (p.x2.min(p.x3), p.x2.max(p.x3));
    Slab2::from_normal(Point2::new(p.x1, 1.0), lo, hi).map_err(|e| LbError::Invalid(e.to_string()))
}

/// Value `a·x1 + b` compared against a gadget's interval.
#[inline]
pub fn dual_height(x1: f64, a: f64, b: f64) -> f64 {
    a * x1 + b
}

/// Query segment `(−4, y1) → (4, y2)` of a dual point.
pub fn query_segment(a: f64, b: f64) -> [Point2<f64>; 2] {
    [Point2::new(-4.0, b - 4.0 * a), Point2::new(4.0, b + 4.0 * a)]
}

/// Dual point `(a, b)` of the segment `(−4, y1) → (4, y2)`.
pub fn segment_dual(y1: f64, y2: f64) -> (f64, f64) {
    ((y2 - y1) / 8.0, (y1 + y2) / 2.0)
}

/// One gadget series: slope parameter and interval width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GadgetSeries {
    pub x1: f64,
    pub width: f64,
}

impl GadgetSeries {
    pub fn count(&self) -> usize {
        (2.0 / self.width).ceil() as usize
    }

    /// Gadget `k` (0-based); the last interval is clamped at 1.
    pub fn params(&self, k: usize) -> ZigzagParams {
        ZigzagParams {
            x1: self.x1,
            x2: k as f64 * self.width - 1.0,
            x3: ((k + 1) as f64 * self.width - 1.0).min(1.0),
        }
    }

    /// Index of the gadget whose half-open interval `[x2, x3)` holds the dual point.
    pub fn locate(&self, a: f64, b: f64) -> Option<usize> {
        let h = dual_height(self.x1, a, b);
        if !(-1.0..1.0).contains(&h) {
            return None;
        }
        let mut k = ((h + 1.0) / self.width).floor() as usize;
        k = k.min(self.count() - 1);
        let p = self.params(k);
        if h < p.x2 && k > 0 {
            k -= 1;
        } else if h >= p.x3 && k + 1 < self.count() {
            k += 1;
        }
        Some(k)
    }
}

/// The continuous encoding of a construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousInstance {
    pub construction: Construction,
    /// Query radius (always 1).
    pub rho: f64,
    /// `series[i][j]`: family `i`, universe `j`.
    pub series: Vec<Vec<GadgetSeries>>,
    /// Curves of `4t` vertices; family `i`'s curves are contiguous and
    /// enumerate gadget tuples in row-major order.
    pub curves: Vec<Curve<f64>>,
    /// First curve index of each family.
    pub family_start: Vec<usize>,
}

impl ContinuousInstance {
    /// The query chain of a tuple of dual points.
    pub fn query(&self, duals: &[(f64, f64)]) -> Curve<f64> {
        Curve::new("q", duals.iter().flat_map(|&(a, b)| query_segment(a, b)).collect())
    }

    /// Index into `curves` of family `i`'s curve whose dual t-slab holds the duals.
    pub fn locate(&self, family: usize, duals: &[(f64, f64)]) -> Option<usize> {
        let mut flat = 0;
        for (s, &(a, b)) in self.series[family].iter().zip(duals) {
            flat = flat * s.count() + s.locate(a, b)?;
        }
        Some(self.family_start[family] + flat)
    }
}

/// Curve count above which the continuous encoding is refused.
pub const CURVE_LIMIT: usize = 1 << 22;

/// Maps each family's slab angle `θ ∈ [π/8, 3π/8]` to `x1 = tan(θ − π/4)`
/// and its thickness to the interval width `W`, then concatenates one
/// gadget per universe for every combination.
pub fn build_continuous_instance(spec: &InstanceSpec) -> Result<ContinuousInstance, LbError> {
    let mut spec = spec.clone();
    spec.mode = Mode::ContinuousZigzag;
    let construction = build_construction(&spec)?;
    let mut series = Vec::with_capacity(construction.families.len());
    for f in &construction.families {
        let widths = thicknesses(&f.base.color, spec.big_r, construction.tau);
        let row: Vec<GadgetSeries> = f
            .base
            .slabs
            .iter()
            .zip(widths)
            .map(|(s, w)| GadgetSeries { x1: (s.theta - FRAC_PI_4).tan(), width: w })
            .collect();
        for g in &row {
            if !(g.x1.abs() <= 1.0 && g.width > 0.0 && g.width <= 1.0) {
                return Err(LbError::Invalid(format!(
                    "gadget parameters x1={}, W={} outside |x1| <= 1, 0 < W <= 1",
                    g.x1, g.width
                )));
            }
        }
        series.push(row);
    }
    let total: usize = series.iter().map(|row| row.iter().map(GadgetSeries::count).product::<usize>()).sum();
    if total > CURVE_LIMIT {
        return Err(LbError::Resource(format!("{total} curves exceed {CURVE_LIMIT}")));
    }
    let mut curves = Vec::with_capacity(total);
    let mut family_start = Vec::with_capacity(series.len());
    for (i, row) in series.iter().enumerate() {
        family_start.push(curves.len());
        let counts: Vec<usize> = row.iter().map(GadgetSeries::count).collect();
        let n: usize = counts.iter().product();
        for flat in 0..n {
            let mut rem = flat;
            let mut idx = vec![0; row.len()];
            for j in (0..row.len()).rev() {
                idx[j] = rem % counts[j];
                rem /= counts[j];
            }
            let v = row.iter().zip(&idx).flat_map(|(g, &k)| zigzag(g.params(k)).vertices).collect();
            curves.push(Curve::new(slab_id(i, &idx), v));
        }
    }
    Ok(ContinuousInstance { construction, rho: 1.0, series, curves, family_start })
}
