//! Exact and sampled volumes of t-slab intersections inside `[0,1]^{2t}`.

use frix_geometry::{box_of, box_volume, slabs_area_in_unit_square, Point2};
use rand::Rng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::construction::{Construction, TSlab};
use crate::{rng, LbError};

/// Product over universes of the clipped area of `a_j ∩ b_j ∩ [0,1]²`.
pub fn pair_intersection_volume_exact(a: &TSlab, b: &TSlab) -> f64 {
    a.slabs.iter().zip(&b.slabs).map(|(sa, sb)| slabs_area_in_unit_square(&[*sa, *sb])).product()
}

/// A uniform t-point of the unit cube.
pub fn random_tpoint(g: &mut ChaCha20Rng, t: usize) -> Vec<Point2<f64>> {
    (0..t).map(|_| Point2::new(g.gen(), g.gen())).collect()
}

/// 95% Wilson score half-width for `hits` successes out of `n`.
pub fn wilson_half_width(hits: u64, n: u64) -> f64 {
    const Z: f64 = 1.959_963_984_540_054;
    let n = n as f64;
    let p = hits as f64 / n;
    let z2 = Z * Z;
    Z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt()
}

const MC_CHUNK: u64 = 4096;

/// Fraction of uniform samples of `[0,1]^{2t}` inside every slab, with its
/// 95% half-width. Chunks run in parallel on their own random streams, so the
/// result does not depend on the thread count.
pub fn mc_volume(slabs: &[TSlab], samples: u64, seed: u64) -> Result<(f64, f64), LbError> {
    if samples < 10_000 {
        return Err(LbError::Invalid(format!("need at least 10^4 samples, got {samples}")));
    }
    let t = slabs.first().map_or(0, |s| s.slabs.len());
    if t == 0 || slabs.iter().any(|s| s.slabs.len() != t) {
        return Err(LbError::Invalid("need at least one slab, all of the same level count".into()));
    }
    let chunks = samples.div_ceil(MC_CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut g = rng::stream(seed, rng::MC + k);
            let m = MC_CHUNK.min(samples - k * MC_CHUNK);
            (0..m).filter(|_| {
                let p = random_tpoint(&mut g, t);
                slabs.iter().all(|s| s.contains(&p))
            })
            .count() as u64
        })
        .sum();
    Ok((hits as f64 / samples as f64, wilson_half_width(hits, samples)))
}

/// Summary of the framework preconditions measured on a construction.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub samples: usize,
    /// Per sample, the smallest and largest number of containing tiles of one family.
    pub per_family_min: usize,
    pub per_family_max: usize,
    /// Smallest and largest total number of containing slabs.
    pub total_min: usize,
    pub total_max: usize,
    /// Tiles found by [`SlabFamily::locate`](crate::SlabFamily::locate) that disagree with the scan.
    pub locate_mismatches: usize,
    pub min_box_all: f64,
    pub min_box_same_color: Option<f64>,
    /// Largest `Vol·box(φ_a, φ_b)/τ²` over the sampled pairs.
    pub volume_constant: f64,
    pub pairs: usize,
}

impl VerifyReport {
    /// Every sample lay in exactly one tile of every family.
    pub fn coverage_exact(&self) -> bool {
        self.per_family_min == 1 && self.per_family_max == 1 && self.locate_mismatches == 0
    }

    pub fn lines(&self) -> Vec<(String, String)> {
        let kv = |k: &str, v: String| (k.to_string(), v);
        vec![
            kv("verify_samples", self.samples.to_string()),
            kv("coverage_per_family_min", self.per_family_min.to_string()),
            kv("coverage_per_family_max", self.per_family_max.to_string()),
            kv("coverage_total_min", self.total_min.to_string()),
            kv("coverage_total_max", self.total_max.to_string()),
            kv("coverage", if self.coverage_exact() { "exactly-one-per-family" } else { "violated" }.into()),
            kv("min_box_volume_all", format!("{:e}", self.min_box_all)),
            kv("min_box_volume_same_color", self.min_box_same_color.map_or("none".into(), |v| format!("{v:e}"))),
            kv("volume_constant_C", format!("{:.6}", self.volume_constant)),
            kv("volume_pairs", self.pairs.to_string()),
        ]
    }
}

/// Samples coverage, measures parametric spread and the pairwise volume constant.
///
/// Pairs are drawn by picking two distinct families and a uniform t-point,
/// then taking the tile of each family that holds it, so the pair always
/// meets inside the cube.
pub fn verify_construction(c: &Construction, samples: usize, pairs: usize, seed: u64) -> Result<VerifyReport, LbError> {
    let t = c.spec.t;
    let chunk = 1024usize;
    let parts: Vec<(usize, usize, usize, usize, usize)> = (0..samples.div_ceil(chunk))
        .into_par_iter()
        .map(|k| {
            let mut g = rng::stream(seed, rng::VERIFY + k as u64);
            let mut acc = (usize::MAX, 0, usize::MAX, 0, 0);
            for _ in 0..chunk.min(samples - k * chunk) {
                let p = random_tpoint(&mut g, t);
                let mut total = 0;
                for f in &c.families {
                    let hits: Vec<usize> =
                        (0..f.copies.len()).filter(|&i| f.copies[i].contains_half_open(&p)).collect();
                    acc.0 = acc.0.min(hits.len());
                    acc.1 = acc.1.max(hits.len());
                    total += hits.len();
                    if f.locate(&p) != hits.first().copied() || hits.len() > 1 {
                        acc.4 += 1;
                    }
                }
                acc.2 = acc.2.min(total);
                acc.3 = acc.3.max(total);
            }
            acc
        })
        .collect();
    let fold = parts.iter().fold((usize::MAX, 0, usize::MAX, 0, 0), |a, b| {
        (a.0.min(b.0), a.1.max(b.1), a.2.min(b.2), a.3.max(b.3), a.4 + b.4)
    });

    let min_box_all = crate::points::min_pair_box_volume(&c.points, false)?.volume;
    let min_box_same_color = crate::points::min_pair_box_volume(&c.points, true).ok().map(|m| m.volume);

    let mut g = rng::stream(seed, rng::VERIFY - 1);
    let r = c.families.len();
    let mut worst: f64 = 0.0;
    let mut done = 0;
    if r >= 2 {
        for _ in 0..pairs {
            let a = g.gen_range(0..r);
            let mut b = g.gen_range(0..r - 1);
            if b >= a {
                b += 1;
            }
            let p = random_tpoint(&mut g, t);
            let (Some(ia), Some(ib)) = (c.families[a].locate(&p), c.families[b].locate(&p)) else { continue };
            let (sa, sb) = (&c.families[a].copies[ia], &c.families[b].copies[ib]);
            let vol = pair_intersection_volume_exact(sa, sb);
            let bx = box_of(&[&sa.phi[..], &sb.phi[..]]).map_err(|e| LbError::Invalid(e.to_string()))?;
            worst = worst.max(vol * box_volume(&bx) / (c.tau * c.tau));
            done += 1;
        }
    }
    Ok(VerifyReport {
        samples,
        per_family_min: fold.0,
        per_family_max: fold.1,
        total_min: fold.2,
        total_max: fold.3,
        locate_mismatches: fold.4,
        min_box_all,
        min_box_same_color,
        volume_constant: worst,
        pairs: done,
    })
}
