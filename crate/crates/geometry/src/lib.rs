//! Planar primitives shared by the Fréchet predicates, the index and the
//! lower-bound generators.
//!
//! Every sign test uses the tolerance [`Scalar::eps_geo`] and treats the
//! boundary as inside. Everything is generic over [`Scalar`] (`f32`, `f64`);
//! the `*d` / `*f` aliases below pin the two concrete widths.

mod boxd;
mod disk;
mod error;
mod lens;
mod line;
mod point;
mod polygon;
mod rect;
mod scalar;
mod slab;

pub use boxd::{box_of, box_volume, BoxD};
pub use disk::{circle_circle, disk_contains, CircleCircle, Disk};
pub use error::GeomError;
pub use lens::{lens_contains, tangent_angle_interval, tangent_range, Lens, TangentRange};
pub use line::{dual_of_line, dual_of_point, line_circle, line_of_dual, DualPoint, Line2, LineCircle, Side};
pub use point::{norm_angle_2pi, norm_angle_pi, point_segment_dist, Point2};
pub use polygon::{clip_halfplane, clip_to_slab, polygon_area, slabs_area_in_unit_square, unit_square};
pub use rect::{rotrect_contains, RotRect};
pub use scalar::Scalar;
pub use slab::{slab_contains, slab_pair_area, Slab2, SlabArea};

pub type Point2d = Point2<f64>;
pub type Point2f = Point2<f32>;
pub type Line2d = Line2<f64>;
pub type Line2f = Line2<f32>;
pub type Disk2d = Disk<f64>;
pub type Disk2f = Disk<f32>;
pub type Slab2d = Slab2<f64>;
pub type Slab2f = Slab2<f32>;
pub type Lens2d = Lens<f64>;
pub type Lens2f = Lens<f32>;
pub type RotRectd = RotRect<f64>;
pub type RotRectf = RotRect<f32>;
pub type BoxDd = BoxD<f64>;
pub type BoxDf = BoxD<f32>;
