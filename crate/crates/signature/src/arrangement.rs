//! Arrangements of circles and lines: sign-vector enumeration by candidate
//! points, and vertical decomposition into cells of at most six atoms.

use std::collections::BTreeMap;
use std::fmt;

use frix_geometry::Point2;
use frix_index::{Atom, Clause, Poly2, RangeSpec, Rel};

use crate::SignatureError;

/// Membership bits of a point with respect to an ordered feature list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<bool>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A boundary curve. Lines are `n·p = c` with unit `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    Circle { c: [f64; 2], r: f64 },
    Line { n: [f64; 2], c: f64 },
}

/// A range given by one atom together with the curves bounding it.
#[derive(Debug, Clone, PartialEq)]
pub struct Feature {
    pub atom: Atom,
    pub boundaries: Vec<Boundary>,
}

impl Feature {
    pub fn disk(c: Point2<f64>, r: f64) -> Self {
        Feature {
            atom: Atom::new(Poly2::disk(c.x, c.y, r), Rel::Le),
            boundaries: vec![Boundary::Circle { c: [c.x, c.y], r }],
        }
    }

    /// `a·x + b·y + c rel 0`.
    pub fn linear(a: f64, b: f64, c: f64, rel: Rel) -> Self {
        let len = a.hypot(b);
        assert!(len > 0.0, "degenerate halfplane");
        Feature {
            atom: Atom::new(Poly2::linear(a, b, c), rel),
            boundaries: vec![Boundary::Line { n: [a / len, b / len], c: -c / len }],
        }
    }

    /// `lo ≤ n·p ≤ hi` for unit `n`.
    pub fn band(n: Point2<f64>, lo: f64, hi: f64) -> Self {
        Feature {
            atom: Atom::new(Poly2::band(n.x, n.y, lo, hi), Rel::Le),
            boundaries: vec![Boundary::Line { n: [n.x, n.y], c: lo }, Boundary::Line { n: [n.x, n.y], c: hi }],
        }
    }

    #[inline]
    pub fn contains(&self, p: [f64; 2]) -> bool {
        self.atom.contains(p[0], p[1])
    }

    /// The atom for the given side of the feature.
    pub fn signed_atom(&self, inside: bool) -> Atom {
        if inside {
            self.atom
        } else {
            self.atom.negate()
        }
    }
}

pub fn sign_vector(features: &[Feature], p: [f64; 2]) -> SignVector {
    SignVector(features.iter().map(|f| f.contains(p)).collect())
}

/// The exact range of all points with sign vector `v`.
pub fn cell_range(features: &[Feature], v: &SignVector) -> RangeSpec {
    RangeSpec::single(features.iter().zip(&v.0).map(|(f, &b)| f.signed_atom(b)).collect())
}

fn dist_to(b: &Boundary, p: [f64; 2]) -> f64 {
    match *b {
        Boundary::Circle { c, r } => ((p[0] - c[0]).hypot(p[1] - c[1]) - r).abs(),
        Boundary::Line { n, c } => (n[0] * p[0] + n[1] * p[1] - c).abs(),
    }
}

fn normal_at(b: &Boundary, p: [f64; 2]) -> [f64; 2] {
    match *b {
        Boundary::Circle { c, r } => {
            let v = [(p[0] - c[0]) / r, (p[1] - c[1]) / r];
            let l = v[0].hypot(v[1]);
            if l > 0.0 {
                [v[0] / l, v[1] / l]
            } else {
                [1.0, 0.0]
            }
        }
        Boundary::Line { n, .. } => n,
    }
}

/// Intersection points of two boundary curves (tangencies give one point).
pub fn intersections(a: &Boundary, b: &Boundary) -> Vec<[f64; 2]> {
    use Boundary::*;
    match (*a, *b) {
        (Circle { c: c1, r: r1 }, Circle { c: c2, r: r2 }) => {
            let (dx, dy) = (c2[0] - c1[0], c2[1] - c1[1]);
            let d = dx.hypot(dy);
            if d == 0.0 || d > r1 + r2 || d < (r1 - r2).abs() {
                return vec![];
            }
            let (ux, uy) = (dx / d, dy / d);
            let s = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
            let (mx, my) = (c1[0] + ux * s, c1[1] + uy * s);
            let h2 = r1 * r1 - s * s;
            if h2 <= 0.0 {
                return vec![[mx, my]];
            }
            let h = h2.sqrt();
            vec![[mx - uy * h, my + ux * h], [mx + uy * h, my - ux * h]]
        }
        (Circle { c, r }, Line { n, c: k }) | (Line { n, c: k }, Circle { c, r }) => {
            let off = n[0] * c[0] + n[1] * c[1] - k;
            if off.abs() > r {
                return vec![];
            }
            let foot = [c[0] - n[0] * off, c[1] - n[1] * off];
            let h2 = r * r - off * off;
            if h2 <= 0.0 {
                return vec![foot];
            }
            let h = h2.sqrt();
            vec![[foot[0] - n[1] * h, foot[1] + n[0] * h], [foot[0] + n[1] * h, foot[1] - n[0] * h]]
        }
        (Line { n: n1, c: c1 }, Line { n: n2, c: c2 }) => {
            let det = n1[0] * n2[1] - n1[1] * n2[0];
            if det.abs() < 1e-14 {
                return vec![];
            }
            vec![[(c1 * n2[1] - c2 * n1[1]) / det, (n1[0] * c2 - n2[0] * c1) / det]]
        }
    }
}

/// Tuning of the candidate-point enumeration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellSearch {
    /// Initial offset as a fraction of the arrangement extent.
    pub delta_rel: f64,
    /// Halvings before giving up.
    pub max_halvings: usize,
    /// Consecutive halvings without a new sign vector needed to stop.
    pub stable_rounds: usize,
    /// Stop only once the offset is below this fraction of the extent.
    pub min_delta_rel: f64,
    /// Distance of the far probes.
    pub far: f64,
}

impl Default for CellSearch {
    fn default() -> Self {
        CellSearch { delta_rel: 1e-2, max_halvings: 40, stable_rounds: 3, min_delta_rel: 1e-6, far: 1e8 }
    }
}

fn extent(curves: &[Boundary]) -> f64 {
    let mut e: f64 = 1e-3;
    for b in curves {
        e = e.max(match *b {
            Boundary::Circle { c, r } => c[0].abs().max(c[1].abs()) + r,
            Boundary::Line { c, .. } => c.abs(),
        });
    }
    e
}

fn candidates(curves: &[Boundary], delta: f64, far: f64, out: &mut Vec<[f64; 2]>) {
    let push = |out: &mut Vec<[f64; 2]>, p: [f64; 2], d: [f64; 2], s: f64| out.push([p[0] + d[0] * s, p[1] + d[1] * s]);
    let mut vertices = Vec::new();
    for (i, a) in curves.iter().enumerate() {
        for b in &curves[i + 1..] {
            for p in intersections(a, b) {
                vertices.push(p);
                let (n1, n2) = (normal_at(a, p), normal_at(b, p));
                let det = n1[0] * n2[1] - n1[1] * n2[0];
                if det.abs() > 1e-9 {
                    // dual basis: ea·n1 = 1, ea·n2 = 0, eb·n1 = 0, eb·n2 = 1
                    let ea = [n2[1] / det, -n2[0] / det];
                    let eb = [-n1[1] / det, n1[0] / det];
                    for (s1, s2) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                        let d = [s1 * ea[0] + s2 * eb[0], s1 * ea[1] + s2 * eb[1]];
                        let l = d[0].hypot(d[1]);
                        push(out, p, [d[0] / l, d[1] / l], delta);
                    }
                }
                for s in [delta, -delta] {
                    push(out, p, n1, s);
                    push(out, p, n2, s);
                    push(out, p, [-n1[1], n1[0]], s);
                }
                for (sx, sy) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                    push(out, p, [sx * std::f64::consts::FRAC_1_SQRT_2, sy * std::f64::consts::FRAC_1_SQRT_2], delta);
                }
            }
        }
    }
    for b in curves {
        match *b {
            Boundary::Circle { c, r } => {
                out.push(c);
                for k in 0..16 {
                    let a = k as f64 * std::f64::consts::PI / 8.0 + 0.1;
                    let u = [a.cos(), a.sin()];
                    for rr in [r + delta, r - delta] {
                        out.push([c[0] + u[0] * rr, c[1] + u[1] * rr]);
                    }
                }
            }
            Boundary::Line { n, c } => {
                let base = [n[0] * c, n[1] * c];
                let dir = [-n[1], n[0]];
                let mut ts: Vec<f64> = vec![0.0, 1.0, -1.0, 10.0, -10.0, 1e3, -1e3, 1e6, -1e6];
                for v in &vertices {
                    ts.push((v[0] - base[0]) * dir[0] + (v[1] - base[1]) * dir[1]);
                }
                for t in ts {
                    let p = [base[0] + dir[0] * t, base[1] + dir[1] * t];
                    push(out, p, n, delta);
                    push(out, p, n, -delta);
                }
            }
        }
    }
    for k in 0..32 {
        let a = k as f64 * std::f64::consts::PI / 16.0 + 0.05;
        out.push([far * a.cos(), far * a.sin()]);
    }
    out.push([0.0, 0.0]);
}

/// Realizable sign vectors of the arrangement, each with a witness point.
///
/// Witnesses are the probes farthest from every boundary among those seen.
/// `extra` points are always probed (used for sentinel locations).
pub fn arrangement_cells(
    features: &[Feature],
    extra: &[[f64; 2]],
    search: &CellSearch,
) -> Result<Vec<(SignVector, [f64; 2])>, SignatureError> {
    let curves: Vec<Boundary> = features.iter().flat_map(|f| f.boundaries.iter().copied()).collect();
    let span = extent(&curves);
    let mut found: BTreeMap<SignVector, ([f64; 2], f64)> = BTreeMap::new();
    let clearance = |p: [f64; 2]| curves.iter().map(|b| dist_to(b, p)).fold(f64::INFINITY, f64::min);
    let record = |found: &mut BTreeMap<SignVector, ([f64; 2], f64)>, p: [f64; 2]| -> bool {
        if !(p[0].is_finite() && p[1].is_finite()) {
            return false;
        }
        let v = sign_vector(features, p);
        let cl = clearance(p);
        match found.get_mut(&v) {
            Some(slot) => {
                if cl > slot.1 {
                    *slot = (p, cl);
                }
                false
            }
            None => {
                found.insert(v, (p, cl));
                true
            }
        }
    };
    for &p in extra {
        record(&mut found, p);
    }
    let mut delta = search.delta_rel * span;
    let mut quiet = 0;
    let mut buf = Vec::new();
    for _ in 0..=search.max_halvings {
        buf.clear();
        candidates(&curves, delta, search.far, &mut buf);
        let mut new = false;
        for &p in &buf {
            new |= record(&mut found, p);
        }
        quiet = if new { 0 } else { quiet + 1 };
        if quiet >= search.stable_rounds && delta <= search.min_delta_rel * span {
            return Ok(found.into_iter().map(|(v, (p, _))| (v, p)).collect());
        }
        delta *= 0.5;
    }
    Err(SignatureError::Unstable(format!(
        "new cells still appearing after {} halvings ({} features)",
        search.max_halvings,
        features.len()
    )))
}

/// Sign vectors of the arrangement of closed disks of radius `radius` around `centers`.
pub fn disk_arrangement_cells(
    centers: &[Point2<f64>],
    radius: f64,
) -> Result<Vec<(SignVector, Point2<f64>)>, SignatureError> {
    if centers.is_empty() {
        return Err(SignatureError::Invalid("no disks".into()));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(SignatureError::Invalid(format!("radius must be positive, got {radius}")));
    }
    let features: Vec<Feature> = centers.iter().map(|&c| Feature::disk(c, radius)).collect();
    Ok(arrangement_cells(&features, &[], &CellSearch::default())?
        .into_iter()
        .map(|(v, p)| (v, Point2::new(p[0], p[1])))
        .collect())
}

/// A piece of a vertical decomposition: a conjunction of at most six atoms
/// (two walls, two per bounding arc) on which the sign vector is constant.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinedCell {
    pub sign: SignVector,
    pub atoms: Vec<Atom>,
    /// Open to the left/right or top/bottom.
    pub unbounded: bool,
}

impl RefinedCell {
    pub fn contains(&self, p: [f64; 2]) -> bool {
        self.atoms.iter().all(|a| a.contains(p[0], p[1]))
    }

    pub fn clause(&self) -> Clause {
        Clause::new(self.atoms.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Arc {
    Lower(usize),
    Upper(usize),
    Line(usize),
}

fn arc_y(curves: &[Boundary], arc: Arc, x: f64) -> f64 {
    match (arc, curves[arc_curve(arc)]) {
        (Arc::Lower(_), Boundary::Circle { c, r }) => c[1] - (r * r - (x - c[0]).powi(2)).max(0.0).sqrt(),
        (Arc::Upper(_), Boundary::Circle { c, r }) => c[1] + (r * r - (x - c[0]).powi(2)).max(0.0).sqrt(),
        (Arc::Line(_), Boundary::Line { n, c }) => (c - n[0] * x) / n[1],
        _ => unreachable!("arc kind does not match curve"),
    }
}

fn arc_curve(arc: Arc) -> usize {
    match arc {
        Arc::Lower(i) | Arc::Upper(i) | Arc::Line(i) => i,
    }
}

fn y_atom(sign: Rel, cy: f64) -> Atom {
    Atom::new(Poly2::linear(0.0, 1.0, -cy), sign)
}

/// Atoms for "above `arc`" (`above = true`) or "below `arc`", valid inside
/// the arc's slab next to the arc.
fn arc_atoms(curves: &[Boundary], arc: Arc, above: bool) -> Vec<Atom> {
    match (arc, curves[arc_curve(arc)]) {
        (Arc::Lower(_), Boundary::Circle { c, r }) => {
            let disk = Poly2::disk(c[0], c[1], r);
            if above {
                vec![Atom::new(disk, Rel::Le)]
            } else {
                vec![Atom::new(disk, Rel::Gt), y_atom(Rel::Le, c[1])]
            }
        }
        (Arc::Upper(_), Boundary::Circle { c, r }) => {
            let disk = Poly2::disk(c[0], c[1], r);
            if above {
                vec![Atom::new(disk, Rel::Gt), y_atom(Rel::Ge, c[1])]
            } else {
                vec![Atom::new(disk, Rel::Le)]
            }
        }
        (Arc::Line(_), Boundary::Line { n, c }) => {
            let up = if n[1] > 0.0 { Rel::Ge } else { Rel::Le };
            let rel = if above { up } else { up.negate() };
            vec![Atom::new(Poly2::linear(n[0], n[1], -c), rel)]
        }
        _ => unreachable!("arc kind does not match curve"),
    }
}

fn is_vertical(b: &Boundary) -> Option<f64> {
    match *b {
        Boundary::Line { n, c } if n[1].abs() <= 1e-12 => Some(c / n[0]),
        _ => None,
    }
}

/// Vertical decomposition of the whole arrangement into pieces with constant
/// sign vectors. Pieces are disjoint: walls are half-open `[x_lo, x_hi)`.
pub fn decompose(features: &[Feature]) -> Vec<RefinedCell> {
    let curves: Vec<Boundary> = features.iter().flat_map(|f| f.boundaries.iter().copied()).collect();
    let mut xs: Vec<f64> = Vec::new();
    for (i, a) in curves.iter().enumerate() {
        match *a {
            Boundary::Circle { c, r } => {
                xs.push(c[0] - r);
                xs.push(c[0] + r);
            }
            Boundary::Line { .. } => {
                if let Some(x) = is_vertical(a) {
                    xs.push(x);
                }
            }
        }
        for b in &curves[i + 1..] {
            // crossings with a vertical line sit on that line's own wall
            if is_vertical(a).is_none() && is_vertical(b).is_none() {
                xs.extend(intersections(a, b).into_iter().map(|p| p[0]));
            }
        }
    }
    xs.retain(|x| x.is_finite());
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let mut slabs: Vec<(Option<f64>, Option<f64>)> = Vec::new();
    if xs.is_empty() {
        slabs.push((None, None));
    } else {
        slabs.push((None, Some(xs[0])));
        for w in xs.windows(2) {
            slabs.push((Some(w[0]), Some(w[1])));
        }
        slabs.push((Some(xs[xs.len() - 1]), None));
    }

    // (sign, lower arc, upper arc) of the piece that is still open to the right
    let mut open: Vec<(SignVector, Option<Arc>, Option<Arc>, Option<f64>)> = Vec::new();
    let mut done = Vec::new();
    let close = |done: &mut Vec<RefinedCell>, piece: (SignVector, Option<Arc>, Option<Arc>, Option<f64>), hi: Option<f64>| {
        let (sign, lo_arc, hi_arc, lo) = piece;
        let mut atoms = Vec::new();
        if let Some(x) = lo {
            atoms.push(Atom::new(Poly2::linear(1.0, 0.0, -x), Rel::Ge));
        }
        if let Some(x) = hi {
            atoms.push(Atom::new(Poly2::linear(1.0, 0.0, -x), Rel::Lt));
        }
        if let Some(a) = lo_arc {
            atoms.extend(arc_atoms(&curves, a, true));
        }
        if let Some(a) = hi_arc {
            for at in arc_atoms(&curves, a, false) {
                if !atoms.contains(&at) {
                    atoms.push(at);
                }
            }
        }
        let unbounded = lo.is_none() || hi.is_none() || lo_arc.is_none() || hi_arc.is_none();
        done.push(RefinedCell { sign, atoms, unbounded });
    };

    for &(lo, hi) in &slabs {
        let xm = match (lo, hi) {
            (Some(a), Some(b)) => 0.5 * (a + b),
            (None, Some(b)) => b - 1.0 - b.abs(),
            (Some(a), None) => a + 1.0 + a.abs(),
            (None, None) => 0.0,
        };
        let mut arcs: Vec<(f64, Arc)> = Vec::new();
        for (ci, b) in curves.iter().enumerate() {
            match *b {
                Boundary::Circle { c, r } => {
                    if (xm - c[0]).abs() < r {
                        arcs.push((arc_y(&curves, Arc::Lower(ci), xm), Arc::Lower(ci)));
                        arcs.push((arc_y(&curves, Arc::Upper(ci), xm), Arc::Upper(ci)));
                    }
                }
                Boundary::Line { .. } => {
                    if is_vertical(b).is_none() {
                        arcs.push((arc_y(&curves, Arc::Line(ci), xm), Arc::Line(ci)));
                    }
                }
            }
        }
        arcs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut pieces = Vec::new();
        for k in 0..=arcs.len() {
            let below = if k == 0 { None } else { Some(arcs[k - 1]) };
            let above = arcs.get(k).copied();
            let ym = match (below, above) {
                (Some(a), Some(b)) => 0.5 * (a.0 + b.0),
                (None, Some(b)) => b.0 - 1.0 - b.0.abs(),
                (Some(a), None) => a.0 + 1.0 + a.0.abs(),
                (None, None) => 0.0,
            };
            if below.is_some() && above.is_some() && below.unwrap().0 == above.unwrap().0 {
                continue;
            }
            pieces.push((sign_vector(features, [xm, ym]), below.map(|a| a.1), above.map(|a| a.1)));
        }
        let mut next_open = Vec::new();
        for (sign, la, ua) in pieces {
            if let Some(pos) = open.iter().position(|o| o.0 == sign && o.1 == la && o.2 == ua) {
                next_open.push(open.swap_remove(pos));
            } else {
                next_open.push((sign, la, ua, lo));
            }
        }
        for piece in open.drain(..) {
            close(&mut done, piece, lo);
        }
        open = next_open;
    }
    for piece in open.drain(..) {
        close(&mut done, piece, None);
    }
    done
}

/// Decomposition pieces of the cell with sign vector `v`.
pub fn refine_cell(features: &[Feature], v: &SignVector) -> Vec<RefinedCell> {
    decompose(features).into_iter().filter(|c| &c.sign == v).collect()
}
