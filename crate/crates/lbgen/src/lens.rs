//! Lens approximations of slabs and the discrete Fréchet encoding.

use std::f64::consts::FRAC_1_SQRT_2;

use frix_frechet::Curve;
use frix_geometry::{Disk, Lens, Point2, Slab2};

use crate::construction::{build_construction, Construction, Mode};
use crate::{InstanceSpec, LbError};

/// Radius whose circle deviates by less than `ε/(4h)` from a chord of
/// half-length `h = √2/2`, so the lens misses less than `ε` of the slab
/// inside the unit square.
pub fn lens_radius(eps: f64) -> f64 {
    let h = FRAC_1_SQRT_2;
    let s = 0.99 * eps / (4.0 * h);
    (h * h + s * s) / (2.0 * s)
}

/// Two equal disks, each touching one boundary line of `s` from inside,
/// centred on the normal of `s` through `(0.5, 0.5)`. Their intersection
/// lies in `s`.
pub fn lens_for_slab(s: &Slab2<f64>, eps: f64) -> (Lens<f64>, f64) {
    let rho = lens_radius(eps);
    let n = s.normal();
    let c0 = Point2::new(0.5, 0.5);
    let mid = 0.5 * (s.c1 + s.c2);
    let foot = c0 + n * (mid - c0.dot(n));
    let half = 0.5 * s.thickness();
    let d1 = Disk::new(foot + n * (half - rho), rho);
    let d2 = Disk::new(foot - n * (half - rho), rho);
    (Lens { d1, d2 }, rho)
}

/// The discrete encoding of a construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteInstance {
    pub construction: Construction,
    pub rho: f64,
    pub eps: f64,
    /// Lower-left corner of each universe's unit square.
    pub offsets: Vec<Point2<f64>>,
    /// One `2t`-vertex curve per t-slab, in `construction.slabs()` order.
    pub curves: Vec<Curve<f64>>,
}

impl DiscreteInstance {
    /// The `t`-vertex query chain of a t-point given in unit-square coordinates.
    pub fn query(&self, p: &[Point2<f64>]) -> Curve<f64> {
        Curve::new("q", p.iter().zip(&self.offsets).map(|(&q, &o)| q + o).collect())
    }

    /// Whether a universe-local point lies in the slab but not in its lens.
    pub fn in_error_region(s: &Slab2<f64>, eps: f64, p: Point2<f64>) -> bool {
        s.contains(p) && !lens_for_slab(s, eps).0.contains(p)
    }
}

/// Universe `j` occupies `[j·g, j·g+1] × [0,1]` with `g = 10ρ + 2`, so the
/// gap between squares exceeds `10ρ`.
pub fn build_discrete_instance(spec: &InstanceSpec) -> Result<DiscreteInstance, LbError> {
    let mut spec = spec.clone();
    spec.mode = Mode::DiscreteLenses;
    let construction = build_construction(&spec)?;
    let eps = spec.eps();
    let rho = lens_radius(eps);
    let gap = 10.0 * rho + 2.0;
    let offsets: Vec<Point2<f64>> = (0..spec.t).map(|j| Point2::new(j as f64 * gap, 0.0)).collect();
    let curves = construction
        .slabs()
        .map(|ts| {
            let mut v = Vec::with_capacity(2 * spec.t);
            for (s, &o) in ts.slabs.iter().zip(&offsets) {
                let (lens, _) = lens_for_slab(s, eps);
                v.push(lens.d1.center + o);
                v.push(lens.d2.center + o);
            }
            Curve::new(slab_id(ts.family, &ts.copy), v)
        })
        .collect();
    Ok(DiscreteInstance { construction, rho, eps, offsets, curves })
}

/// Identifier `f<family>_<tile>_<tile>…` of a t-slab.
pub fn slab_id(family: usize, copy: &[usize]) -> String {
    let mut s = format!("f{family}");
    for k in copy {
        s.push('_');
        s.push_str(&k.to_string());
    }
    s
}
