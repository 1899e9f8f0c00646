use crate::{GeomError, Point2, Scalar};

/// Closed disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk<T> {
    pub center: Point2<T>,
    pub radius: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleCircle<T> {
    Miss,
    Touch(Point2<T>),
    /// `(b_plus, b_minus)`; `b_plus` has the larger y (ties: larger x).
    Pair(Point2<T>, Point2<T>),
}

impl<T: Scalar> Disk<T> {
    pub fn new(center: Point2<T>, radius: T) -> Self {
        Disk { center, radius }
    }

    pub fn contains(&self, p: Point2<T>) -> bool {
        p.dist(self.center) <= self.radius + T::eps_geo()
    }
}

pub fn disk_contains<T: Scalar>(d: &Disk<T>, p: Point2<T>) -> bool {
    d.contains(p)
}

pub fn circle_circle<T: Scalar>(d1: Disk<T>, d2: Disk<T>) -> Result<CircleCircle<T>, GeomError> {
    let eps = T::eps_geo();
    let v = d2.center - d1.center;
    let d = v.norm();
    let (r1, r2) = (d1.radius, d2.radius);
    if d <= eps {
        if (r1 - r2).abs() <= eps {
            return Err(GeomError::Degenerate("coincident circles"));
        }
        return Ok(CircleCircle::Miss);
    }
    let sum = r1 + r2;
    let diff = (r1 - r2).abs();
    if d > sum + eps || d < diff - eps {
        return Ok(CircleCircle::Miss);
    }
    let u = v * (T::one() / d);
    let two = T::lit(2.0);
    let a = (d * d + r1 * r1 - r2 * r2) / (two * d);
    let mid = d1.center + u * a;
    if (d - sum).abs() <= eps || (d - diff).abs() <= eps {
        return Ok(CircleCircle::Touch(mid));
    }
    let h = (r1 * r1 - a * a).max(T::zero()).sqrt();
    let p = mid + u.perp() * h;
    let q = mid - u.perp() * h;
    let p_first = p.y > q.y || (p.y == q.y && p.x >= q.x);
    Ok(if p_first {
        CircleCircle::Pair(p, q)
    } else {
        CircleCircle::Pair(q, p)
    })
}
