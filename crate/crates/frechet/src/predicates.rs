//! High-level free-space predicates and their low-level geometric encodings.

use frix_geometry::{circle_circle, point_segment_dist, tangent_range, CircleCircle, Disk, Lens, Point2, RotRect, Scalar};

use crate::Curve;

/// Truth values of the high-level predicates for a `t_q × t_s` curve pair.
///
/// Index ranges (0-based, `m = t_q`, `t = t_s`):
/// `hvep[i][j]`: `i < m`, `j < t−1` (query vertex vs input edge);
/// `vvep[i][j]`: `i < m−1`, `j < t` (input vertex vs query edge);
/// `hmp[i][j][k]`: `i < m−1`, `j < k < t`;
/// `vmp[i][k][j]`: `i < k < m`, `j < t−1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HLAssignment {
    pub tq: usize,
    pub ts: usize,
    pub p1: bool,
    pub p2: bool,
    hvep: Vec<bool>,
    vvep: Vec<bool>,
    hmp: Vec<bool>,
    vmp: Vec<bool>,
}

impl HLAssignment {
    /// Every predicate set to `v`. Requires `tq, ts >= 2`.
    pub fn filled(tq: usize, ts: usize, v: bool) -> Self {
        assert!(tq >= 2 && ts >= 2, "predicates need at least one edge per curve");
        HLAssignment {
            tq,
            ts,
            p1: v,
            p2: v,
            hvep: vec![v; tq * (ts - 1)],
            vvep: vec![v; (tq - 1) * ts],
            hmp: vec![v; (tq - 1) * ts * ts],
            vmp: vec![v; tq * tq * (ts - 1)],
        }
    }

    #[inline]
    pub fn hvep(&self, i: usize, j: usize) -> bool {
        self.hvep[i * (self.ts - 1) + j]
    }
    #[inline]
    pub fn set_hvep(&mut self, i: usize, j: usize, v: bool) {
        let ts = self.ts;
        self.hvep[i * (ts - 1) + j] = v;
    }
    #[inline]
    pub fn vvep(&self, i: usize, j: usize) -> bool {
        self.vvep[i * self.ts + j]
    }
    #[inline]
    pub fn set_vvep(&mut self, i: usize, j: usize, v: bool) {
        let ts = self.ts;
        self.vvep[i * ts + j] = v;
    }
    #[inline]
    pub fn hmp(&self, i: usize, j: usize, k: usize) -> bool {
        self.hmp[(i * self.ts + j) * self.ts + k]
    }
    #[inline]
    pub fn set_hmp(&mut self, i: usize, j: usize, k: usize, v: bool) {
        let ts = self.ts;
        self.hmp[(i * ts + j) * ts + k] = v;
    }
    #[inline]
    pub fn vmp(&self, i: usize, k: usize, j: usize) -> bool {
        self.vmp[(i * self.tq + k) * (self.ts - 1) + j]
    }
    #[inline]
    pub fn set_vmp(&mut self, i: usize, k: usize, j: usize, v: bool) {
        let (tq, ts) = (self.tq, self.ts);
        self.vmp[(i * tq + k) * (ts - 1) + j] = v;
    }
}

/// Whether there are `p1 ≤ p2` along the directed line `from → to` with
/// `‖p1 − a1‖ ≤ ρ` and `‖p2 − a2‖ ≤ ρ`. A zero-length direction is a
/// degenerate cell row or column, where any order is monotone.
fn ordered_on_line<T: Scalar>(from: Point2<T>, to: Point2<T>, a1: Point2<T>, a2: Point2<T>, rho: T) -> bool {
    let d = to - from;
    let len = d.norm();
    if len == T::zero() {
        return true;
    }
    let u = d * (T::one() / len);
    let r = rho + T::eps_geo();
    let chord = |c: Point2<T>| {
        let w = c - from;
        let off = u.cross(w);
        if off.abs() > r {
            None
        } else {
            let h = (r * r - off * off).max(T::zero()).sqrt();
            let mid = w.dot(u);
            Some((mid - h, mid + h))
        }
    };
    match (chord(a1), chord(a2)) {
        (Some((lo1, _)), Some((_, hi2))) => lo1 <= hi2 + T::eps_geo(),
        _ => false,
    }
}

/// Direct geometric evaluation of every high-level predicate.
pub fn eval_hl<T: Scalar>(q: &Curve<T>, s: &Curve<T>, rho: T) -> HLAssignment {
    let (qv, sv) = (&q.vertices, &s.vertices);
    let (m, t) = (qv.len(), sv.len());
    let lim = rho + T::eps_geo();
    let mut h = HLAssignment::filled(m, t, false);
    h.p1 = qv[0].dist(sv[0]) <= lim;
    h.p2 = qv[m - 1].dist(sv[t - 1]) <= lim;
    for i in 0..m {
        for j in 0..t - 1 {
            h.set_hvep(i, j, point_segment_dist(qv[i], sv[j], sv[j + 1]) <= lim);
        }
    }
    for i in 0..m - 1 {
        for j in 0..t {
            h.set_vvep(i, j, point_segment_dist(sv[j], qv[i], qv[i + 1]) <= lim);
        }
        for j in 0..t {
            for k in j + 1..t {
                h.set_hmp(i, j, k, ordered_on_line(qv[i], qv[i + 1], sv[j], sv[k], rho));
            }
        }
    }
    for i in 0..m {
        for k in i + 1..m {
            for j in 0..t - 1 {
                h.set_vmp(i, k, j, ordered_on_line(sv[j], sv[j + 1], qv[i], qv[k], rho));
            }
        }
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexEdgeBits {
    /// Vertex within ρ of the first edge endpoint.
    pub a: bool,
    /// Vertex within ρ of the second edge endpoint.
    pub b: bool,
    /// Vertex inside the rectangle part of the edge's ρ-neighbourhood.
    pub c: bool,
    pub combined: bool,
}

pub fn ll_vertex_edge<T: Scalar>(a1: Point2<T>, b1: Point2<T>, b2: Point2<T>, rho: T) -> VertexEdgeBits {
    let lim = rho + T::eps_geo();
    let a = a1.dist(b1) <= lim;
    let b = a1.dist(b2) <= lim;
    let c = RotRect::around_segment(b1, b2, rho).map_or(false, |r| r.contains(a1));
    VertexEdgeBits { a, b, c, combined: a || b || c }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonotonicityBits {
    /// Line meets the disk around `a1`.
    pub d: bool,
    /// Line meets the disk around `a2`.
    pub e: bool,
    /// Angle between `a2 − a1` and the line direction is at most π/2.
    pub f: bool,
    /// Line separates the lens corners `b+` and `b−` (false without a lens).
    pub g: bool,
    /// Line angle lies in the lens tangent range (false without a lens).
    pub h: bool,
    pub combined: bool,
}

/// `(d ∧ e ∧ f) ∨ g ∨ (d ∧ e ∧ h)` for the directed line `from → to`.
pub fn ll_monotonicity<T: Scalar>(
    a1: Point2<T>,
    a2: Point2<T>,
    from: Point2<T>,
    to: Point2<T>,
    rho: T,
) -> MonotonicityBits {
    let dir = to - from;
    let lim = rho + T::eps_geo();
    let len = dir.norm();
    let meets = |c: Point2<T>| dir.cross(c - from).abs() <= lim * len;
    let d = meets(a1);
    let e = meets(a2);
    let f = (a2 - a1).dot(dir) >= T::zero();
    let (mut g, mut h) = (false, false);
    if let Ok(CircleCircle::Pair(bp, bm)) = circle_circle(Disk::new(a1, rho), Disk::new(a2, rho)) {
        // "between" tested as: b+ on the left-or-on side XNOR b− on the right-or-on side
        let x = dir.cross(bp - from) >= T::zero();
        let y = dir.cross(bm - from) <= T::zero();
        g = x == y;
        let lens = Lens { d1: Disk::new(a1, rho), d2: Disk::new(a2, rho) };
        if let Ok(range) = tangent_range(&lens) {
            h = range.contains(dir.y.atan2(dir.x));
        }
    }
    let combined = (d && e && f) || g || (d && e && h);
    MonotonicityBits { d, e, f, g, h, combined }
}

/// High-level predicates derived only from low-level bits.
pub fn eval_hl_lowlevel<T: Scalar>(q: &Curve<T>, s: &Curve<T>, rho: T) -> HLAssignment {
    let (qv, sv) = (&q.vertices, &s.vertices);
    let (m, t) = (qv.len(), sv.len());
    let lim = rho + T::eps_geo();
    let mut h = HLAssignment::filled(m, t, false);
    h.p1 = qv[0].dist(sv[0]) <= lim;
    h.p2 = qv[m - 1].dist(sv[t - 1]) <= lim;
    for i in 0..m {
        for j in 0..t - 1 {
            h.set_hvep(i, j, ll_vertex_edge(qv[i], sv[j], sv[j + 1], rho).combined);
        }
    }
    for i in 0..m - 1 {
        for j in 0..t {
            h.set_vvep(i, j, ll_vertex_edge(sv[j], qv[i], qv[i + 1], rho).combined);
        }
        for j in 0..t {
            for k in j + 1..t {
                let v = qv[i] == qv[i + 1] || ll_monotonicity(sv[j], sv[k], qv[i], qv[i + 1], rho).combined;
                h.set_hmp(i, j, k, v);
            }
        }
    }
    for i in 0..m {
        for k in i + 1..m {
            for j in 0..t - 1 {
                let v = sv[j] == sv[j + 1] || ll_monotonicity(qv[i], qv[k], sv[j], sv[j + 1], rho).combined;
                h.set_vmp(i, k, j, v);
            }
        }
    }
    h
}
