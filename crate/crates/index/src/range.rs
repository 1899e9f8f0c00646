//! Ranges as disjunctions of conjunctions of degree-≤2 polynomial sign conditions.

/// `c[0] + c[1]·x + c[2]·y + c[3]·x² + c[4]·x·y + c[5]·y²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Poly2 {
    pub c: [f64; 6],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rel {
    Le,
    Lt,
    Ge,
    Gt,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub poly: Poly2,
    pub rel: Rel,
}

/// Conjunction of atoms; empty means the whole plane.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Clause {
    pub atoms: Vec<Atom>,
}

/// Disjunction of clauses; empty means nothing.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RangeSpec {
    pub clauses: Vec<Clause>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Inside,
    Outside,
    Crossing,
}

/// Axis-aligned box `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Poly2 {
    pub const fn new(c: [f64; 6]) -> Self {
        Poly2 { c }
    }

    pub fn constant(v: f64) -> Self {
        Poly2::new([v, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    /// `a·x + b·y + c`.
    pub fn linear(a: f64, b: f64, c: f64) -> Self {
        Poly2::new([c, a, b, 0.0, 0.0, 0.0])
    }

    /// `(x − cx)² + (y − cy)² − r²`; non-positive inside the disk.
    pub fn disk(cx: f64, cy: f64, r: f64) -> Self {
        Poly2::new([cx * cx + cy * cy - r * r, -2.0 * cx, -2.0 * cy, 1.0, 0.0, 1.0])
    }

    /// `(n·p − lo)(n·p − hi)`; non-positive between the two parallel lines.
    pub fn band(nx: f64, ny: f64, lo: f64, hi: f64) -> Self {
        Poly2::new([lo * hi, -(lo + hi) * nx, -(lo + hi) * ny, nx * nx, 2.0 * nx * ny, ny * ny])
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let c = &self.c;
        c[0] + x * (c[1] + c[3] * x + c[4] * y) + y * (c[2] + c[5] * y)
    }

    pub fn degree(&self) -> usize {
        let c = &self.c;
        if c[3] != 0.0 || c[4] != 0.0 || c[5] != 0.0 {
            2
        } else if c[1] != 0.0 || c[2] != 0.0 {
            1
        } else {
            0
        }
    }

    /// Sound enclosure of the polynomial over a box (centered form).
    pub fn bounds(&self, r: &Region) -> (f64, f64) {
        let c = &self.c;
        let (cx, cy) = ((r.x0 + r.x1) * 0.5, (r.y0 + r.y1) * 0.5);
        let (hx, hy) = ((r.x1 - r.x0) * 0.5, (r.y1 - r.y0) * 0.5);
        let p0 = self.eval(cx, cy);
        let gx = c[1] + 2.0 * c[3] * cx + c[4] * cy;
        let gy = c[2] + c[4] * cx + 2.0 * c[5] * cy;
        let lin = gx.abs() * hx + gy.abs() * hy;
        let (qx, qy) = (c[3] * hx * hx, c[5] * hy * hy);
        let cross = c[4].abs() * hx * hy;
        let lo = p0 - lin + qx.min(0.0) + qy.min(0.0) - cross;
        let hi = p0 + lin + qx.max(0.0) + qy.max(0.0) + cross;
        // slack covering rounding in this enclosure and in pointwise evaluation
        let (ax, ay) = (r.x0.abs().max(r.x1.abs()), r.y0.abs().max(r.y1.abs()));
        let magnitude = c[0].abs()
            + ax * (c[1].abs() + c[3].abs() * ax + c[4].abs() * ay)
            + ay * (c[2].abs() + c[5].abs() * ay);
        let slack = 1e-12 * magnitude;
        (lo - slack, hi + slack)
    }
}

impl Rel {
    pub fn negate(self) -> Rel {
        match self {
            Rel::Le => Rel::Gt,
            Rel::Lt => Rel::Ge,
            Rel::Ge => Rel::Lt,
            Rel::Gt => Rel::Le,
        }
    }

    #[inline]
    pub fn holds(self, v: f64) -> bool {
        match self {
            Rel::Le => v <= 0.0,
            Rel::Lt => v < 0.0,
            Rel::Ge => v >= 0.0,
            Rel::Gt => v > 0.0,
        }
    }

    /// `Some(b)` if the relation has value `b` on every point of `[lo, hi]`.
    fn decided(self, lo: f64, hi: f64) -> Option<bool> {
        let (always, never) = match self {
            Rel::Le | Rel::Lt => (hi < 0.0, lo > 0.0),
            Rel::Ge | Rel::Gt => (lo > 0.0, hi < 0.0),
        };
        if always {
            Some(true)
        } else if never {
            Some(false)
        } else {
            None
        }
    }
}

impl Atom {
    pub fn new(poly: Poly2, rel: Rel) -> Self {
        Atom { poly, rel }
    }

    pub fn always(v: bool) -> Self {
        Atom::new(Poly2::constant(if v { -1.0 } else { 1.0 }), Rel::Le)
    }

    /// Exact complement: every point satisfies exactly one of `a`, `a.negate()`.
    pub fn negate(&self) -> Atom {
        Atom::new(self.poly, self.rel.negate())
    }

    #[inline]
    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.rel.holds(self.poly.eval(x, y))
    }

    pub fn classify(&self, r: &Region) -> Option<bool> {
        let (lo, hi) = self.poly.bounds(r);
        self.rel.decided(lo, hi)
    }
}

impl Clause {
    pub fn new(atoms: Vec<Atom>) -> Self {
        Clause { atoms }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.atoms.iter().all(|a| a.contains(x, y))
    }

    fn classify(&self, r: &Region) -> Classification {
        let mut all = true;
        for a in &self.atoms {
            match a.classify(r) {
                Some(false) => return Classification::Outside,
                Some(true) => {}
                None => all = false,
            }
        }
        if all {
            Classification::Inside
        } else {
            Classification::Crossing
        }
    }
}

impl RangeSpec {
    pub fn everything() -> Self {
        RangeSpec { clauses: vec![Clause::default()] }
    }

    pub fn nothing() -> Self {
        RangeSpec { clauses: Vec::new() }
    }

    pub fn single(atoms: Vec<Atom>) -> Self {
        RangeSpec { clauses: vec![Clause::new(atoms)] }
    }

    pub fn union(clauses: Vec<Clause>) -> Self {
        RangeSpec { clauses }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.clauses.iter().any(|c| c.contains(x, y))
    }
}

/// Sound classification: `Inside`/`Outside` are only returned when provable.
pub fn classify(region: &Region, range: &RangeSpec) -> Classification {
    let mut any_crossing = false;
    for c in &range.clauses {
        match c.classify(region) {
            Classification::Inside => return Classification::Inside,
            Classification::Crossing => any_crossing = true,
            Classification::Outside => {}
        }
    }
    if any_crossing {
        Classification::Crossing
    } else {
        Classification::Outside
    }
}

impl Region {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Region { x0, y0, x1, y1 }
    }

    pub fn point(x: f64, y: f64) -> Self {
        Region::new(x, y, x, y)
    }

    pub fn expand(&mut self, x: f64, y: f64) {
        self.x0 = self.x0.min(x);
        self.y0 = self.y0.min(y);
        self.x1 = self.x1.max(x);
        self.y1 = self.y1.max(y);
    }
}
