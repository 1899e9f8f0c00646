//! Lower-bound instance generators for multilevel slab stabbing and their
//! Fréchet encodings, plus the numeric checks that the volume framework
//! relies on: coverage, pairwise spread and intersection volumes.
//!
//! All randomness is derived from one `u64` seed; see [`rng`].

mod bounds;
mod colors;
mod construction;
mod error;
mod lens;
mod points;
pub mod rng;
mod volume;
mod zigzag;

pub use bounds::lb_bound_report;
pub use colors::{
    colors_enumerate, find_bad_subset, is_bad_subset, prune_colors, Color, PruneReport, SearchCap, PRUNE_ROUNDS,
    PRUNE_WORK_CAP,
};
pub use construction::{
    angle_of, build_construction, thicknesses, Construction, InstanceSpec, Mode, SlabFamily, TSlab, ANGLE_MAX,
    ANGLE_MIN, COLOR_LIMIT,
};
pub use error::LbError;
pub use lens::{build_discrete_instance, lens_for_slab, lens_radius, slab_id, DiscreteInstance};
pub use points::{
    color_of, colored_parametric_points, digit_count, first_primes, min_pair_box_volume, min_pair_box_volume_raw,
    prime_base_extent, prime_base_points, reversed_base, ColoredPoint, MinBox,
};
pub use volume::{
    mc_volume, pair_intersection_volume_exact, random_tpoint, verify_construction, wilson_half_width, VerifyReport,
};
pub use zigzag::{
    build_continuous_instance, dual_height, query_segment, segment_dual, zigzag, zigzag_dual_slab, ContinuousInstance,
    GadgetSeries, ZigzagParams, CURVE_LIMIT, GADGET_LEFT, GADGET_RIGHT,
};

/// Planar slab type used throughout.
pub type Slab = frix_geometry::Slab2d;
