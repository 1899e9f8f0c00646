use crate::{GeomError, Point2, Scalar};

/// Closed region `{p : c1 <= p·(cos θ, sin θ) <= c2}` with `θ ∈ (-π/2, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slab2<T> {
    pub theta: T,
    pub c1: T,
    pub c2: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SlabArea<T> {
    Bounded(T),
    Unbounded,
}

impl<T: Scalar> Slab2<T> {
    pub fn new(theta: T, c1: T, c2: T) -> Result<Self, GeomError> {
        let half = T::FRAC_PI_2();
        if !(theta > -half && theta <= half) {
            return Err(GeomError::Invalid(format!("slab angle {theta} outside (-pi/2, pi/2]")));
        }
        if !(c1 < c2) || !c1.is_finite() || !c2.is_finite() {
            return Err(GeomError::Invalid(format!("slab offsets must satisfy c1 < c2, got {c1}, {c2}")));
        }
        Ok(Slab2 { theta, c1, c2 })
    }

    /// Builds from an arbitrary normal; the angle is folded into `(-π/2, π/2]`.
    pub fn from_normal(n: Point2<T>, lo: T, hi: T) -> Result<Self, GeomError> {
        let len = n.norm();
        if len == T::zero() {
            return Err(GeomError::Degenerate("zero slab normal"));
        }
        let (mut theta, mut lo, mut hi) = (n.y.atan2(n.x), lo / len, hi / len);
        let half = T::FRAC_PI_2();
        if theta > half {
            theta = theta - T::PI();
            std::mem::swap(&mut lo, &mut hi);
            lo = -lo;
            hi = -hi;
        } else if theta <= -half {
            theta = theta + T::PI();
            std::mem::swap(&mut lo, &mut hi);
            lo = -lo;
            hi = -hi;
        }
        Slab2::new(theta, lo, hi)
    }

    #[inline]
    pub fn normal(&self) -> Point2<T> {
        Point2::from_angle(self.theta)
    }

    #[inline]
    pub fn thickness(&self) -> T {
        self.c2 - self.c1
    }

    #[inline]
    pub fn project(&self, p: Point2<T>) -> T {
        p.dot(self.normal())
    }

    pub fn contains(&self, p: Point2<T>) -> bool {
        let v = self.project(p);
        let eps = T::eps_geo();
        v >= self.c1 - eps && v <= self.c2 + eps
    }

    /// Half-open variant `[c1, c2)`, used where translated copies must tile exactly.
    pub fn contains_half_open(&self, p: Point2<T>) -> bool {
        let v = self.project(p);
        v >= self.c1 && v < self.c2
    }

    pub fn translated(&self, delta: T) -> Self {
        Slab2 { theta: self.theta, c1: self.c1 + delta, c2: self.c2 + delta }
    }
}

pub fn slab_contains<T: Scalar>(s: &Slab2<T>, p: Point2<T>) -> bool {
    s.contains(p)
}

/// Area of the parallelogram `s1 ∩ s2` (not clipped to anything).
pub fn slab_pair_area<T: Scalar>(s1: &Slab2<T>, s2: &Slab2<T>) -> SlabArea<T> {
    let s = (s1.theta - s2.theta).sin().abs();
    if s <= T::eps_geo() {
        SlabArea::Unbounded
    } else {
        SlabArea::Bounded(s1.thickness() * s2.thickness() / s)
    }
}
