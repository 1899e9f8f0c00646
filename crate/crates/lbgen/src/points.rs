//! Prime-base point sets and their coloured projections.

use frix_geometry::{box_of, box_volume};

use crate::LbError;

/// The first `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(k);
    let mut c = 2u64;
    while out.len() < k {
        if out.iter().take_while(|&&p| p * p <= c).all(|&p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// Number of base-`x` digits of `n`, i.e. `⌊log_x n⌋ + 1` for `n ≥ 1`.
pub fn digit_count(n: u64, x: u64) -> u32 {
    let mut d = 1;
    let mut v = n / x;
    while v > 0 {
        d += 1;
        v /= x;
    }
    d
}

/// Reverses the base-`x` representation of `i` over exactly `digits` digits.
pub fn reversed_base(i: u64, x: u64, digits: u32) -> Result<u64, LbError> {
    if x < 2 {
        return Err(LbError::Invalid(format!("base must be at least 2, got {x}")));
    }
    let cap = x.checked_pow(digits).ok_or_else(|| LbError::Resource(format!("{x}^{digits} overflows")))?;
    if i >= cap {
        return Err(LbError::Invalid(format!("{i} does not fit in {digits} base-{x} digits")));
    }
    let (mut v, mut out) = (i, 0u64);
    for _ in 0..digits {
        out = out * x + v % x;
        v /= x;
    }
    Ok(out)
}

/// `N` points in `D` dimensions: coordinate `j < D−1` is `i` reversed in the
/// `j`-th prime base, the last coordinate is `i` itself. Raw integer
/// coordinates; coordinate `j` lies in `[0, a_j^digits)`.
pub fn prime_base_points(n: u64, d: usize) -> Result<Vec<Vec<u64>>, LbError> {
    if d < 2 || n < 2 {
        return Err(LbError::Invalid(format!("need D >= 2 and N >= 2, got D={d}, N={n}")));
    }
    let primes = first_primes(d - 1);
    let digits: Vec<u32> = primes.iter().map(|&a| digit_count(n, a)).collect();
    (0..n)
        .map(|i| {
            let mut p = primes
                .iter()
                .zip(&digits)
                .map(|(&a, &k)| reversed_base(i, a, k))
                .collect::<Result<Vec<_>, _>>()?;
            p.push(i);
            Ok(p)
        })
        .collect()
}

/// Upper end of each coordinate range of [`prime_base_points`].
pub fn prime_base_extent(n: u64, d: usize) -> Vec<u64> {
    let mut out: Vec<u64> = first_primes(d.saturating_sub(1)).iter().map(|&a| a.pow(digit_count(n, a))).collect();
    out.push(n);
    out
}

/// A parametric point with its colour index.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoredPoint {
    /// Coordinates in `[0, 1)^t`.
    pub phi: Vec<f64>,
    pub color: usize,
}

/// Colour of a point whose dropped coordinate is `x ∈ [0, 1)`.
pub fn color_of(x: f64, n_c: usize) -> usize {
    ((x * n_c as f64).floor() as usize).min(n_c.saturating_sub(1))
}

/// `r` points in `[0,1)^t`, coloured with `n_c` classes by the dropped last
/// coordinate of a `(t+1)`-dimensional prime-base set.
pub fn colored_parametric_points(r: u64, n_c: usize, t: usize) -> Result<Vec<ColoredPoint>, LbError> {
    if t < 1 {
        return Err(LbError::Invalid("t must be at least 1".into()));
    }
    if n_c == 0 || (2 * n_c) as u64 >= r {
        return Err(LbError::Invalid(format!("need 1 <= n_c < r/2, got n_c={n_c}, r={r}")));
    }
    let raw = prime_base_points(r, t + 1)?;
    let ext = prime_base_extent(r, t + 1);
    Ok(raw
        .into_iter()
        .map(|p| ColoredPoint {
            phi: (0..t).map(|j| p[j] as f64 / ext[j] as f64).collect(),
            color: color_of(p[t] as f64 / r as f64, n_c),
        })
        .collect())
}

/// Smallest box volume over pairs, with the indices of the minimising pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinBox {
    pub volume: f64,
    pub pair: (usize, usize),
}

/// Exact `O(N²)` minimum of the bounding-box volume over point pairs,
/// optionally restricted to pairs of equal colour.
pub fn min_pair_box_volume(points: &[ColoredPoint], same_color_only: bool) -> Result<MinBox, LbError> {
    let mut best: Option<MinBox> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if same_color_only && points[i].color != points[j].color {
                continue;
            }
            let b = box_of(&[&points[i].phi[..], &points[j].phi[..]]).map_err(|e| LbError::Invalid(e.to_string()))?;
            let v = box_volume(&b);
            if best.map_or(true, |m| v < m.volume) {
                best = Some(MinBox { volume: v, pair: (i, j) });
            }
        }
    }
    best.ok_or_else(|| LbError::Invalid("fewer than two eligible points".into()))
}

/// Uncoloured convenience wrapper for raw integer points.
pub fn min_pair_box_volume_raw(points: &[Vec<u64>]) -> Result<MinBox, LbError> {
    let pts: Vec<ColoredPoint> =
        points.iter().map(|p| ColoredPoint { phi: p.iter().map(|&v| v as f64).collect(), color: 0 }).collect();
    min_pair_box_volume(&pts, false)
}
