use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar used by every primitive in this crate.
///
/// The tolerance `eps_geo` is the one global slack used for all sign tests.
/// Boundaries are always treated as inside.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance for boundary comparisons.
    fn eps_geo() -> Self;

    /// Converts an `f64` literal. Panics only if the literal is not representable,
    /// which cannot happen for the finite constants used in this workspace.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    #[inline]
    fn eps_geo() -> f64 {
        1e-9
    }
}

impl Scalar for f32 {
    /// `1e-9` is below single precision; scaled to a few ulps at unit magnitude.
    #[inline]
    fn eps_geo() -> f32 {
        1e-5
    }
}
