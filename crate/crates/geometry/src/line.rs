//! Non-vertical lines and point-line duality.
//!
//! Convention: the line `y = a·x + b` maps to the dual point `(a, b)`, and the
//! point `(px, py)` maps to the dual line `y = -px·x + py`. Incidence is
//! preserved and the vertical order flips:
//! `p` is above `ℓ` iff `dual(ℓ)` is below `dual(p)`.
//! Predicate code relies only on this flipped-order property.

use crate::{Disk, GeomError, Point2, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line2<T> {
    pub a: T,
    pub b: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualPoint<T> {
    pub a: T,
    pub b: T,
}

/// Vertical position of a point relative to a non-vertical line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Below,
    On,
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LineCircle<T> {
    Miss,
    Tangent(Point2<T>),
    Chord(Point2<T>, Point2<T>),
}

impl<T: Scalar> Line2<T> {
    pub fn new(a: T, b: T) -> Self {
        Line2 { a, b }
    }

    /// Line through two points; vertical or coincident pairs are rejected.
    pub fn through(p: Point2<T>, q: Point2<T>) -> Result<Self, GeomError> {
        let dx = q.x - p.x;
        if dx.abs() <= T::epsilon() * (p.x.abs() + q.x.abs() + T::one()) {
            return Err(GeomError::Degenerate("vertical line"));
        }
        let a = (q.y - p.y) / dx;
        Ok(Line2::new(a, p.y - a * p.x))
    }

    /// Line through `p` with direction `d`; rejects (near-)vertical directions.
    pub fn with_direction(p: Point2<T>, d: Point2<T>) -> Result<Self, GeomError> {
        if d.x.abs() <= T::epsilon() * d.y.abs() || (d.x == T::zero() && d.y == T::zero()) {
            return Err(GeomError::Degenerate("vertical line"));
        }
        let a = d.y / d.x;
        Ok(Line2::new(a, p.y - a * p.x))
    }

    #[inline]
    pub fn eval(&self, x: T) -> T {
        self.a * x + self.b
    }

    /// Signed vertical residual `p.y - ℓ(p.x)`.
    #[inline]
    pub fn residual(&self, p: Point2<T>) -> T {
        p.y - self.eval(p.x)
    }

    pub fn side(&self, p: Point2<T>) -> Side {
        let r = self.residual(p);
        if r > T::eps_geo() {
            Side::Above
        } else if r < -T::eps_geo() {
            Side::Below
        } else {
            Side::On
        }
    }

    /// Perpendicular distance from `p`.
    pub fn dist(&self, p: Point2<T>) -> T {
        self.residual(p).abs() / (T::one() + self.a * self.a).sqrt()
    }

    /// Undirected angle in `[0, π)`.
    pub fn angle(&self) -> T {
        crate::norm_angle_pi(self.a.atan())
    }

    /// Parallel line shifted by signed perpendicular distance `d` (positive is up).
    pub fn offset(&self, d: T) -> Self {
        Line2::new(self.a, self.b + d * (T::one() + self.a * self.a).sqrt())
    }
}

pub fn dual_of_line<T: Scalar>(l: Line2<T>) -> DualPoint<T> {
    DualPoint { a: l.a, b: l.b }
}

pub fn line_of_dual<T: Scalar>(d: DualPoint<T>) -> Line2<T> {
    Line2::new(d.a, d.b)
}

pub fn dual_of_point<T: Scalar>(p: Point2<T>) -> Line2<T> {
    Line2::new(-p.x, p.y)
}

impl<T: Scalar> DualPoint<T> {
    pub fn as_point(self) -> Point2<T> {
        Point2::new(self.a, self.b)
    }
}

/// Intersection of a line with a closed circle, points ordered by x then y.
pub fn line_circle<T: Scalar>(l: Line2<T>, d: Disk<T>) -> LineCircle<T> {
    let s = (T::one() + l.a * l.a).sqrt();
    let signed = (l.eval(d.center.x) - d.center.y) / s;
    let dist = signed.abs();
    let eps = T::eps_geo();
    if dist > d.radius + eps {
        return LineCircle::Miss;
    }
    let dir = Point2::new(T::one() / s, l.a / s);
    let normal = Point2::new(-l.a / s, T::one() / s);
    let foot = d.center + normal * signed;
    if (dist - d.radius).abs() <= eps {
        return LineCircle::Tangent(foot);
    }
    let h = (d.radius * d.radius - dist * dist).max(T::zero()).sqrt();
    let p1 = foot - dir * h;
    let p2 = foot + dir * h;
    // dir.x > 0, so p1 has the smaller x
    LineCircle::Chord(p1, p2)
}
