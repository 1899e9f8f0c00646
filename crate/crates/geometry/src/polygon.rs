use crate::{Point2, Scalar, Slab2};

/// Shoelace area of a simple polygon (absolute value).
pub fn polygon_area<T: Scalar>(poly: &[Point2<T>]) -> T {
    if poly.len() < 3 {
        return T::zero();
    }
    let mut s = T::zero();
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        s = s + poly[i].cross(poly[j]);
    }
    (s * T::lit(0.5)).abs()
}

/// Keeps the part of a convex polygon with `p·n <= c` (Sutherland-Hodgman, one edge).
pub fn clip_halfplane<T: Scalar>(poly: &[Point2<T>], n: Point2<T>, c: T) -> Vec<Point2<T>> {
    let mut out = Vec::with_capacity(poly.len() + 2);
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let fp = p.dot(n) - c;
        let fq = q.dot(n) - c;
        if fp <= T::zero() {
            out.push(p);
        }
        if (fp < T::zero() && fq > T::zero()) || (fp > T::zero() && fq < T::zero()) {
            let t = fp / (fp - fq);
            out.push(p.lerp(q, t));
        }
    }
    out
}

pub fn clip_to_slab<T: Scalar>(poly: &[Point2<T>], s: &Slab2<T>) -> Vec<Point2<T>> {
    let n = s.normal();
    let upper = clip_halfplane(poly, n, s.c2);
    clip_halfplane(&upper, -n, -s.c1)
}

pub fn unit_square<T: Scalar>() -> Vec<Point2<T>> {
    let (z, o) = (T::zero(), T::one());
    vec![Point2::new(z, z), Point2::new(o, z), Point2::new(o, o), Point2::new(z, o)]
}

/// Exact area of the intersection of slabs with the unit square.
pub fn slabs_area_in_unit_square<T: Scalar>(slabs: &[Slab2<T>]) -> T {
    let mut poly = unit_square();
    for s in slabs {
        poly = clip_to_slab(&poly, s);
        if poly.len() < 3 {
            return T::zero();
        }
    }
    polygon_area(&poly)
}
