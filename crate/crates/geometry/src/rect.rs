use crate::{GeomError, Point2, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotRect<T> {
    pub center: Point2<T>,
    pub angle: T,
    pub half_length: T,
    pub half_width: T,
}

impl<T: Scalar> RotRect<T> {
    pub fn new(center: Point2<T>, angle: T, half_length: T, half_width: T) -> Result<Self, GeomError> {
        if !(half_length > T::zero() && half_width > T::zero()) {
            return Err(GeomError::Invalid("rectangle half-sizes must be positive".into()));
        }
        Ok(RotRect { center, angle, half_length, half_width })
    }

    /// Rectangle part of the ρ-neighbourhood of segment `b1 b2`.
    pub fn around_segment(b1: Point2<T>, b2: Point2<T>, rho: T) -> Result<Self, GeomError> {
        let d = b2 - b1;
        let len = d.norm();
        if len == T::zero() {
            return Err(GeomError::Degenerate("zero-length segment"));
        }
        let half = T::lit(0.5);
        RotRect::new((b1 + b2) * half, d.y.atan2(d.x), len * half, rho)
    }

    /// Four closed halfplane tests in the rectangle frame.
    pub fn contains(&self, p: Point2<T>) -> bool {
        let u = Point2::from_angle(self.angle);
        let v = p - self.center;
        let along = v.dot(u);
        let across = v.dot(u.perp());
        let eps = T::eps_geo();
        along <= self.half_length + eps
            && -along <= self.half_length + eps
            && across <= self.half_width + eps
            && -across <= self.half_width + eps
    }
}

pub fn rotrect_contains<T: Scalar>(r: &RotRect<T>, p: Point2<T>) -> bool {
    r.contains(p)
}
