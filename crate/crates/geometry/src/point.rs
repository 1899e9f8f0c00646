use std::ops::{Add, Mul, Neg, Sub};

use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point2<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }

    #[inline]
    pub fn origin() -> Self {
        Point2::new(T::zero(), T::zero())
    }

    #[inline]
    pub fn from_angle(theta: T) -> Self {
        Point2::new(theta.cos(), theta.sin())
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm2(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }

    /// Counter-clockwise perpendicular.
    #[inline]
    pub fn perp(self) -> Self {
        Point2::new(-self.y, self.x)
    }

    /// Unit vector in the same direction, or the zero vector for a zero input.
    pub fn unit_or_zero(self) -> Self {
        let n = self.norm();
        if n > T::zero() {
            self * (T::one() / n)
        } else {
            Point2::origin()
        }
    }

    /// Direction angle in `[0, 2π)`.
    pub fn angle(self) -> T {
        norm_angle_2pi(self.y.atan2(self.x))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, o: Self, t: T) -> Self {
        self + (o - self) * t
    }

    /// Swap to another scalar type.
    pub fn cast<U: Scalar>(self) -> Point2<U> {
        Point2::new(U::lit(self.x.as_f64()), U::lit(self.y.as_f64()))
    }
}

/// Normalizes a directed angle to `[0, 2π)`.
pub fn norm_angle_2pi<T: Scalar>(a: T) -> T {
    let tau = T::TAU();
    let mut r = a % tau;
    if r < T::zero() {
        r = r + tau;
    }
    if r >= tau {
        r = r - tau;
    }
    r
}

/// Normalizes an undirected line angle to `[0, π)`.
pub fn norm_angle_pi<T: Scalar>(a: T) -> T {
    let pi = T::PI();
    let mut r = a % pi;
    if r < T::zero() {
        r = r + pi;
    }
    if r >= pi {
        r = r - pi;
    }
    r
}

impl<T: Scalar> Add for Point2<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Scalar> Sub for Point2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Mul<T> for Point2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, k: T) -> Self {
        Point2::new(self.x * k, self.y * k)
    }
}

impl<T: Scalar> Neg for Point2<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Point2::new(-self.x, -self.y)
    }
}

/// Euclidean distance from `p` to the closed segment `ab`.
pub fn point_segment_dist<T: Scalar>(p: Point2<T>, a: Point2<T>, b: Point2<T>) -> T {
    let d = b - a;
    let l2 = d.norm2();
    if l2 == T::zero() {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / l2).max(T::zero()).min(T::one());
    p.dist(a + d * t)
}
