//! Families of translated t-slabs tiling the unit cube.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use frix_geometry::{Point2, Slab2};
use rand::Rng;

use crate::colors::{colors_enumerate, prune_colors, Color, PruneReport};
use crate::error::constraint;
use crate::points::{colored_parametric_points, ColoredPoint};
use crate::{rng, LbError};

/// Which instance a spec describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Slabs,
    DiscreteLenses,
    ContinuousZigzag,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Slabs => "slabs",
            Mode::DiscreteLenses => "discrete-lenses",
            Mode::ContinuousZigzag => "continuous-zigzag",
        })
    }
}

impl FromStr for Mode {
    type Err = LbError;
    fn from_str(s: &str) -> Result<Self, LbError> {
        match s {
            "slabs" => Ok(Mode::Slabs),
            "discrete-lenses" | "discrete" => Ok(Mode::DiscreteLenses),
            "continuous-zigzag" | "continuous" => Ok(Mode::ContinuousZigzag),
            _ => Err(LbError::Invalid(format!("unknown mode {s:?}"))),
        }
    }
}

/// Parameters of one generated instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub n: u64,
    pub r: u64,
    pub t: usize,
    /// Thickness base `R`.
    pub big_r: f64,
    /// Subset size `ℓ` used for colour pruning.
    pub l: usize,
    /// Fixed product thickness; chosen automatically when `None`.
    pub tau: Option<f64>,
    /// Lens error area for the discrete encoding; defaults to `1/(2nt)`.
    pub eps: Option<f64>,
    pub seed: u64,
    pub mode: Mode,
}

impl InstanceSpec {
    pub fn new(n: u64, r: u64, t: usize, big_r: f64, l: usize, seed: u64) -> Self {
        InstanceSpec { n, r, t, big_r, l, tau: None, eps: None, seed, mode: Mode::Slabs }
    }

    /// Checks the parameter constraints, naming the first one that fails.
    pub fn validate(&self) -> Result<(), LbError> {
        let (n, r, t, big_r, l) = (self.n, self.r, self.t, self.big_r, self.l);
        if t < 1 {
            return Err(constraint("t >= 1", format!("t={t}")));
        }
        if r < 2 {
            return Err(constraint("Omega(1) <= r", format!("r={r} must be at least 2")));
        }
        if 2 * r > n {
            return Err(constraint("r <= n/2", format!("r={r}, n={n}")));
        }
        if !(big_r >= 2.0) {
            return Err(constraint("Omega(1) <= R", format!("R={big_r} must be at least 2")));
        }
        let r_max = (n as f64).powf(1.0 / (2.0 * t as f64));
        if big_r > r_max * (1.0 + 1e-12) {
            return Err(constraint("R <= n^(1/(2t))", format!("R={big_r}, n^(1/(2t))={r_max:.6}")));
        }
        if l < 2 {
            return Err(constraint("2 <= l", format!("l={l}")));
        }
        if l as u64 >= r {
            return Err(constraint("l < r", format!("l={l}, r={r}")));
        }
        if let Some(tau) = self.tau {
            if !(tau > 0.0 && tau <= 1.0) {
                return Err(LbError::Invalid(format!("tau must lie in (0, 1], got {tau}")));
            }
        }
        if let Some(eps) = self.eps {
            if !(eps > 0.0 && eps.is_finite()) {
                return Err(LbError::Invalid(format!("eps must be positive, got {eps}")));
            }
        }
        Ok(())
    }

    pub fn eps(&self) -> f64 {
        self.eps.unwrap_or(1.0 / (2.0 * self.n as f64 * self.t as f64))
    }
}

/// A t-slab: one planar slab per universe.
#[derive(Debug, Clone, PartialEq)]
pub struct TSlab {
    pub slabs: Vec<Slab2<f64>>,
    pub color: Color,
    pub phi: Vec<f64>,
    pub family: usize,
    /// Tile index in each universe.
    pub copy: Vec<usize>,
}

impl TSlab {
    /// Product of the per-universe thicknesses.
    pub fn thickness(&self) -> f64 {
        self.slabs.iter().map(|s| s.thickness()).product()
    }

    /// Closed containment of a t-point.
    pub fn contains(&self, p: &[Point2<f64>]) -> bool {
        self.slabs.iter().zip(p).all(|(s, &q)| s.contains(q))
    }

    /// Half-open containment; translates within a family are disjoint under it.
    pub fn contains_half_open(&self, p: &[Point2<f64>]) -> bool {
        self.slabs.iter().zip(p).all(|(s, &q)| s.contains_half_open(q))
    }
}

/// Translated copies of one base t-slab, tiling `[0,1]^{2t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlabFamily {
    pub base: TSlab,
    /// Per universe: offset of tile 0 along the normal.
    pub starts: Vec<f64>,
    /// Per universe: number of tiles.
    pub counts: Vec<usize>,
    pub copies: Vec<TSlab>,
}

impl SlabFamily {
    /// Index into `copies` of the tile holding `p` (half-open tiles).
    pub fn locate(&self, p: &[Point2<f64>]) -> Option<usize> {
        let mut idx = 0usize;
        for (j, (s, &q)) in self.base.slabs.iter().zip(p).enumerate() {
            let tau = s.thickness();
            let k = ((s.project(q) - self.starts[j]) / tau).floor();
            if !(k >= 0.0 && (k as usize) < self.counts[j]) {
                return None;
            }
            // guard against rounding at tile boundaries
            let mut k = k as usize;
            let tile = |k: usize| tile_slab(s.theta, self.starts[j], tau, k);
            if !tile(k).contains_half_open(q) {
                if k > 0 && tile(k - 1).contains_half_open(q) {
                    k -= 1;
                } else if k + 1 < self.counts[j] && tile(k + 1).contains_half_open(q) {
                    k += 1;
                } else {
                    return None;
                }
            }
            idx = idx * self.counts[j] + k;
        }
        Some(idx)
    }
}

/// Tile `k` of a tiling with offset `start`. Neighbouring tiles share the
/// exact same boundary value, so half-open tiles partition the line.
fn tile_slab(theta: f64, start: f64, tau: f64, k: usize) -> Slab2<f64> {
    Slab2 { theta, c1: start + k as f64 * tau, c2: start + (k + 1) as f64 * tau }
}

/// Lowest and highest slab angle; parametric coordinates in `[0,1]` map linearly onto it.
pub const ANGLE_MIN: f64 = PI / 8.0;
pub const ANGLE_MAX: f64 = 3.0 * PI / 8.0;

pub fn angle_of(phi: f64) -> f64 {
    ANGLE_MIN + phi * (ANGLE_MAX - ANGLE_MIN)
}

/// Thicknesses `R^{−w_j}` for `j < t` and the residual making the product `tau`.
pub fn thicknesses(color: &Color, big_r: f64, tau: f64) -> Vec<f64> {
    let mut out: Vec<f64> = color.iter().map(|&w| big_r.powf(-(w as f64))).collect();
    let prod: f64 = out.iter().product();
    out.push(tau / prod);
    out
}

/// Largest number of colours kept, so that `n_c < r/2`.
fn max_colors(r: u64) -> usize {
    (r.div_ceil(2) - 1).max(1) as usize
}

/// Enumerations above this are refused before allocation.
pub const COLOR_LIMIT: u64 = 1 << 22;

/// Result of [`build_construction`].
#[derive(Debug, Clone, PartialEq)]
pub struct Construction {
    pub spec: InstanceSpec,
    pub tau: f64,
    /// Exponent `c` in `τ = 2^{c·t}·r/n` (0 when `τ` was given).
    pub c: u32,
    /// `log_R(1/τ)/t`.
    pub x_real: f64,
    /// Number of values per colour coordinate.
    pub x: u32,
    pub colors_total: usize,
    pub prune: PruneReport,
    /// Colours in use (`n_c` of them).
    pub colors: Vec<Color>,
    pub points: Vec<ColoredPoint>,
    pub families: Vec<SlabFamily>,
}

impl Construction {
    pub fn n_c(&self) -> usize {
        self.colors.len()
    }

    pub fn slab_count(&self) -> usize {
        self.families.iter().map(|f| f.copies.len()).sum()
    }

    pub fn slabs(&self) -> impl Iterator<Item = &TSlab> {
        self.families.iter().flat_map(|f| f.copies.iter())
    }

    /// Parameters and derived quantities as `key=value` pairs.
    pub fn manifest(&self) -> Vec<(String, String)> {
        let s = &self.spec;
        let t = s.t as f64;
        let l = s.l as f64;
        let kv = |k: &str, v: String| (k.to_string(), v);
        vec![
            kv("mode", s.mode.to_string()),
            kv("n", s.n.to_string()),
            kv("r", s.r.to_string()),
            kv("t", s.t.to_string()),
            kv("R", s.big_r.to_string()),
            kv("l", s.l.to_string()),
            kv("seed", s.seed.to_string()),
            kv("tau", format!("{:e}", self.tau)),
            kv("tau_exponent_c", self.c.to_string()),
            kv("X", format!("{}", self.x_real)),
            kv("colors_total", self.colors_total.to_string()),
            kv("colors_good", self.prune.colors.len().to_string()),
            kv("n_c", self.n_c().to_string()),
            kv("prune_identity", self.prune.identity.to_string()),
            kv("prune_p", format!("{:e}", self.prune.p)),
            kv("prune_p_formula", format!("2^-t * X^(-2t/l) = 2^-{t} * X^(-{})", 2.0 * t / l)),
            kv("prune_p_alt", format!("{:e}", self.prune.p_alt)),
            kv("prune_p_alt_formula", format!("2^-t * X^(-t/l) = 2^-{t} * X^(-{})", t / l)),
            kv("prune_rounds", self.prune.rounds.to_string()),
            kv("slabs_total", self.slab_count().to_string()),
            kv("family_size_max", self.families.iter().map(|f| f.copies.len()).max().unwrap_or(0).to_string()),
        ]
    }
}

/// Builds `r` families of translated t-slabs.
///
/// Family `i` takes its angles from the `i`-th coloured parametric point and
/// its thicknesses from that point's colour; it is then tiled over the unit
/// square of every universe with a random phase.
pub fn build_construction(spec: &InstanceSpec) -> Result<Construction, LbError> {
    spec.validate()?;
    let fixed = spec.tau.is_some();
    for c in 0..64u32 {
        let tau = match spec.tau {
            Some(t) => t,
            None => 2f64.powi((c as usize * spec.t) as i32) * spec.r as f64 / spec.n as f64,
        };
        if tau > 1.0 {
            break;
        }
        let built = build_with_tau(spec, tau, c * u32::from(!fixed))?;
        let limit = spec.n as f64 / spec.r as f64;
        let worst = built.families.iter().map(|f| f.copies.len()).max().unwrap_or(0);
        if worst as f64 <= limit {
            return Ok(built);
        }
        if fixed {
            return Err(LbError::Invalid(format!("tau={tau} gives a family of {worst} copies, above n/r={limit}")));
        }
    }
    Err(LbError::Invalid(format!(
        "no tau = 2^(c*t)*r/n <= 1 keeps every family within n/r={} copies",
        spec.n / spec.r
    )))
}

fn build_with_tau(spec: &InstanceSpec, tau: f64, c: u32) -> Result<Construction, LbError> {
    let t = spec.t;
    let x_real = (1.0 / tau).ln() / spec.big_r.ln() / t as f64;
    let x = (x_real.ceil() as u32).max(1);
    if t > 1 && (x as f64).powi(t as i32 - 1) > COLOR_LIMIT as f64 {
        return Err(LbError::Resource(format!("{x}^{} colours exceed {COLOR_LIMIT}", t - 1)));
    }
    let all = colors_enumerate(x, t)?;
    let prune = prune_colors(&all, spec.l, spec.seed)?;
    let mut colors = prune.colors.clone();
    colors.truncate(max_colors(spec.r));
    let points = colored_parametric_points(spec.r, colors.len(), t)?;

    let mut phase = rng::stream(spec.seed, rng::PHASE);
    let families = points
        .iter()
        .enumerate()
        .map(|(i, pt)| {
            let color = colors[pt.color].clone();
            let widths = thicknesses(&color, spec.big_r, tau);
            let thetas: Vec<f64> = pt.phi.iter().map(|&p| angle_of(p)).collect();
            let mut starts = Vec::with_capacity(t);
            let mut counts = Vec::with_capacity(t);
            for j in 0..t {
                let (s, co) = thetas[j].sin_cos();
                let extent = s.max(0.0) + co.max(0.0);
                let low = s.min(0.0) + co.min(0.0);
                let start = low - phase.gen::<f64>() * widths[j];
                starts.push(start);
                counts.push(((extent - start) / widths[j]).floor() as usize + 1);
            }
            let total: usize = counts.iter().product();
            let mut copies = Vec::with_capacity(total);
            for flat in 0..total {
                let mut rem = flat;
                let mut copy = vec![0; t];
                for j in (0..t).rev() {
                    copy[j] = rem % counts[j];
                    rem /= counts[j];
                }
                copies.push(TSlab {
                    slabs: (0..t).map(|j| tile_slab(thetas[j], starts[j], widths[j], copy[j])).collect(),
                    color: color.clone(),
                    phi: pt.phi.clone(),
                    family: i,
                    copy,
                });
            }
            let base = TSlab {
                slabs: (0..t).map(|j| Slab2 { theta: thetas[j], c1: 0.0, c2: widths[j] }).collect(),
                color,
                phi: pt.phi.clone(),
                family: i,
                copy: vec![0; t],
            };
            SlabFamily { base, starts, counts, copies }
        })
        .collect();
    Ok(Construction {
        spec: spec.clone(),
        tau,
        c,
        x_real,
        x,
        colors_total: all.len(),
        prune,
        colors,
        points,
        families,
    })
}
