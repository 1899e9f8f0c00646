use crate::{circle_circle, norm_angle_pi, CircleCircle, Disk, GeomError, Point2, Scalar};

/// Intersection of two closed disks of equal radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lens<T> {
    pub d1: Disk<T>,
    pub d2: Disk<T>,
}

/// Undirected angle range `[start, start + width]` taken modulo π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentRange<T> {
    /// In `[0, π)`.
    pub start: T,
    /// In `(0, π]`.
    pub width: T,
}

impl<T: Scalar> Lens<T> {
    pub fn new(d1: Disk<T>, d2: Disk<T>) -> Result<Self, GeomError> {
        if (d1.radius - d2.radius).abs() > T::eps_geo() {
            return Err(GeomError::Invalid("lens disks must have equal radii".into()));
        }
        Ok(Lens { d1, d2 })
    }

    pub fn contains(&self, p: Point2<T>) -> bool {
        self.d1.contains(p) && self.d2.contains(p)
    }
}

pub fn lens_contains<T: Scalar>(l: &Lens<T>, p: Point2<T>) -> bool {
    l.contains(p)
}

impl<T: Scalar> TangentRange<T> {
    pub fn end(&self) -> T {
        self.start + self.width
    }

    pub fn contains(&self, angle: T) -> bool {
        let a = norm_angle_pi(angle);
        let eps = T::eps_geo();
        let end = self.end();
        (a >= self.start - eps && a <= end + eps) || (a + T::PI() >= self.start - eps && a + T::PI() <= end + eps)
    }

    /// Up to two non-wrapping sub-intervals of `[0, π)`.
    pub fn pieces(&self) -> Vec<(T, T)> {
        let pi = T::PI();
        let end = self.end();
        if end <= pi {
            vec![(self.start, end)]
        } else {
            vec![(self.start, pi), (T::zero(), end - pi)]
        }
    }
}

/// Angles of all tangent lines of the arc bounding the lens.
///
/// For centers at distance `d < 2ρ`, each boundary arc spans `±φ` around the
/// center line with `cos φ = d / 2ρ`, so tangents cover `β + π/2 ± φ`.
pub fn tangent_range<T: Scalar>(l: &Lens<T>) -> Result<TangentRange<T>, GeomError> {
    match circle_circle(l.d1, l.d2)? {
        CircleCircle::Pair(..) => {}
        _ => return Err(GeomError::Degenerate("lens is empty or a single point")),
    }
    let v = l.d2.center - l.d1.center;
    let d = v.norm();
    let rho = l.d1.radius;
    let phi = (d / (T::lit(2.0) * rho)).min(T::one()).acos();
    let beta = v.y.atan2(v.x);
    let start = norm_angle_pi(beta + T::FRAC_PI_2() - phi);
    Ok(TangentRange { start, width: T::lit(2.0) * phi })
}

pub fn tangent_angle_interval<T: Scalar>(l: &Lens<T>) -> Result<Vec<(T, T)>, GeomError> {
    Ok(tangent_range(l)?.pieces())
}
