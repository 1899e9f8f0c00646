use frix_geometry::{Point2, Scalar};

use crate::Curve;

/// Closed sub-interval of `[0, 1]`; `None` is empty.
type Iv<T> = Option<(T, T)>;

/// Parameters `u ∈ [0,1]` with `‖a + u(b − a) − c‖ ≤ ρ`.
fn free_interval<T: Scalar>(a: Point2<T>, b: Point2<T>, c: Point2<T>, rho: T) -> Iv<T> {
    let r = rho + T::eps_geo();
    let d = b - a;
    let dd = d.norm2();
    let w = a - c;
    if dd == T::zero() {
        return (w.norm() <= r).then_some((T::zero(), T::one()));
    }
    // dd·u² + 2(w·d)u + (w·w − r²) ≤ 0
    let bh = w.dot(d);
    let disc = bh * bh - dd * (w.norm2() - r * r);
    if disc < T::zero() {
        return None;
    }
    let sq = disc.sqrt();
    let lo = ((-bh - sq) / dd).max(T::zero());
    let hi = ((-bh + sq) / dd).min(T::one());
    (lo <= hi).then_some((lo, hi))
}

fn contains_zero<T: Scalar>(iv: Iv<T>) -> bool {
    matches!(iv, Some((lo, _)) if lo <= T::zero())
}

fn reaches_one<T: Scalar>(iv: Iv<T>) -> bool {
    matches!(iv, Some((_, hi)) if hi >= T::one())
}

/// Free part of `free` that is reachable monotonically from something starting at `from`.
fn clip_from<T: Scalar>(free: Iv<T>, from: T) -> Iv<T> {
    let (lo, hi) = free?;
    let lo = lo.max(from);
    (lo <= hi).then_some((lo, hi))
}

/// Continuous Fréchet decision by interval propagation over the cell grid.
pub fn alt_godau_decide<T: Scalar>(q: &Curve<T>, s: &Curve<T>, rho: T) -> bool {
    let (m, t) = (q.len(), s.len());
    if m == 0 || t == 0 {
        return false;
    }
    let lim = rho + T::eps_geo();
    if m == 1 || t == 1 {
        // one side is a point; the other curve must stay within ρ of it
        let (p, other) = if m == 1 { (q.vertices[0], s) } else { (s.vertices[0], q) };
        return other.vertices.iter().all(|v| v.dist(p) <= lim);
    }
    let (qv, sv) = (&q.vertices, &s.vertices);
    if qv[0].dist(sv[0]) > lim || qv[m - 1].dist(sv[t - 1]) > lim {
        return false;
    }
    // lr[i][j]: reachable part of q-edge i at s-vertex j; br[i][j]: reachable part of s-edge j at q-vertex i
    let mut lr: Vec<Vec<Iv<T>>> = vec![vec![None; t]; m - 1];
    let mut br: Vec<Vec<Iv<T>>> = vec![vec![None; t - 1]; m];
    for i in 0..m - 1 {
        let free = free_interval(qv[i], qv[i + 1], sv[0], rho);
        let ok = if i == 0 { true } else { reaches_one(lr[i - 1][0]) };
        lr[i][0] = if ok && contains_zero(free) { free } else { None };
    }
    for j in 0..t - 1 {
        let free = free_interval(sv[j], sv[j + 1], qv[0], rho);
        let ok = if j == 0 { true } else { reaches_one(br[0][j - 1]) };
        br[0][j] = if ok && contains_zero(free) { free } else { None };
    }
    for i in 0..m - 1 {
        for j in 0..t - 1 {
            let (left, bottom) = (lr[i][j], br[i][j]);
            let right_free = free_interval(qv[i], qv[i + 1], sv[j + 1], rho);
            lr[i][j + 1] = match (bottom, left) {
                (Some(_), _) => right_free,
                (None, Some((lo, _))) => clip_from(right_free, lo),
                (None, None) => None,
            };
            let top_free = free_interval(sv[j], sv[j + 1], qv[i + 1], rho);
            br[i + 1][j] = match (left, bottom) {
                (Some(_), _) => top_free,
                (None, Some((lo, _))) => clip_from(top_free, lo),
                (None, None) => None,
            };
        }
    }
    reaches_one(lr[m - 2][t - 1]) || reaches_one(br[m - 1][t - 2])
}
