//! Thickness colours and their pruning.

use rand::Rng;

use crate::{rng, LbError};

/// Exponents `(w_1, …, w_{t−1})`; slab `j < t` has thickness `R^{−w_j}`.
pub type Color = Vec<u32>;

const MAX_COLORS: u64 = 1 << 32;

/// All `X^{t−1}` tuples with entries in `[0, X)`, in lexicographic order.
pub fn colors_enumerate(x: u32, t: usize) -> Result<Vec<Color>, LbError> {
    if x < 1 || t < 1 {
        return Err(LbError::Invalid(format!("need X >= 1 and t >= 1, got X={x}, t={t}")));
    }
    let count = (0..t - 1).try_fold(1u64, |acc, _| acc.checked_mul(x as u64).filter(|&c| c <= MAX_COLORS));
    let Some(count) = count else {
        return Err(LbError::Resource(format!("{x}^{} colours exceed 2^32", t - 1)));
    };
    let mut out = Vec::with_capacity(count as usize);
    let mut cur = vec![0u32; t - 1];
    for _ in 0..count {
        out.push(cur.clone());
        for k in (0..cur.len()).rev() {
            cur[k] += 1;
            if cur[k] < x {
                break;
            }
            cur[k] = 0;
        }
    }
    Ok(out)
}

/// True when every coordinate takes at most two distinct values over the set.
pub fn is_bad_subset(colors: &[&Color]) -> bool {
    let Some(first) = colors.first() else { return true };
    (0..first.len()).all(|k| {
        let mut seen: Vec<u32> = Vec::with_capacity(3);
        for c in colors {
            if !seen.contains(&c[k]) {
                seen.push(c[k]);
                if seen.len() > 2 {
                    return false;
                }
            }
        }
        true
    })
}

/// Work budget exhausted during a bad-subset search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchCap;

/// Finds some bad `l`-subset (as indices) by backtracking over per-coordinate
/// value pairs. `work` counts visited search nodes against `cap`.
pub fn find_bad_subset(colors: &[Color], l: usize, work: &mut u64, cap: u64) -> Result<Option<Vec<usize>>, SearchCap> {
    if l == 0 || colors.len() < l {
        return Ok(None);
    }
    let dims = colors[0].len();
    let mut chosen = Vec::with_capacity(l);
    let mut vals: Vec<Vec<u32>> = vec![Vec::with_capacity(2); dims];
    fn rec(
        colors: &[Color],
        l: usize,
        from: usize,
        chosen: &mut Vec<usize>,
        vals: &mut Vec<Vec<u32>>,
        work: &mut u64,
        cap: u64,
    ) -> Result<bool, SearchCap> {
        if chosen.len() == l {
            return Ok(true);
        }
        let need = l - chosen.len();
        for i in from..=colors.len() - need {
            *work += 1;
            if *work > cap {
                return Err(SearchCap);
            }
            let c = &colors[i];
            let fits = vals.iter().zip(c).all(|(v, x)| v.len() < 2 || v.contains(x));
            if !fits {
                continue;
            }
            let added: Vec<bool> = vals
                .iter_mut()
                .zip(c)
                .map(|(v, &x)| {
                    let new = !v.contains(&x);
                    if new {
                        v.push(x);
                    }
                    new
                })
                .collect();
            chosen.push(i);
            if rec(colors, l, i + 1, chosen, vals, work, cap)? {
                return Ok(true);
            }
            chosen.pop();
            for (v, a) in vals.iter_mut().zip(added) {
                if a {
                    v.pop();
                }
            }
        }
        Ok(false)
    }
    Ok(rec(colors, l, 0, &mut chosen, &mut vals, work, cap)?.then_some(chosen))
}

/// Outcome of [`prune_colors`].
#[derive(Debug, Clone, PartialEq)]
pub struct PruneReport {
    pub colors: Vec<Color>,
    /// Sampling probability used (1 on the identity branch).
    pub p: f64,
    /// The same probability with the exponent `−t/ℓ` instead of `−2t/ℓ`.
    pub p_alt: f64,
    pub rounds: usize,
    /// Colours removed while breaking bad subsets, summed over rounds.
    pub removed: usize,
    pub identity: bool,
}

/// Budget for one round's bad-subset searches.
pub const PRUNE_WORK_CAP: u64 = 20_000_000;
pub const PRUNE_ROUNDS: usize = 20;

/// Returns a colour set containing no bad `l`-subset.
///
/// When `l > 2^{t−1}` no subset of `l` distinct colours can be bad and the
/// input is returned. Otherwise each colour is kept with probability
/// `p = 2^{−t}·X^{−2t/l}`, and one colour of each bad subset found is removed
/// until none remains. A round that exhausts the search budget, or ends below
/// `X^{t−1}·p/4` colours, is retried on the next random stream.
pub fn prune_colors(colors: &[Color], l: usize, seed: u64) -> Result<PruneReport, LbError> {
    if l < 2 {
        return Err(LbError::Invalid(format!("subset size must be at least 2, got {l}")));
    }
    let t = colors.first().map_or(1, |c| c.len() + 1);
    if colors.iter().any(|c| c.len() + 1 != t) {
        return Err(LbError::Invalid("colours of different lengths".into()));
    }
    let x = colors.iter().flatten().copied().max().map_or(1, |m| m + 1) as f64;
    if t - 1 >= 64 || l as u128 > 1u128 << (t - 1) {
        return Ok(PruneReport { colors: colors.to_vec(), p: 1.0, p_alt: 1.0, rounds: 0, removed: 0, identity: true });
    }
    let p = (2f64.powi(-(t as i32)) * x.powf(-2.0 * t as f64 / l as f64)).min(1.0);
    let p_alt = (2f64.powi(-(t as i32)) * x.powf(-(t as f64) / l as f64)).min(1.0);
    let target = x.powi(t as i32 - 1) * p / 4.0;
    let mut best: Option<Vec<Color>> = None;
    let mut removed_total = 0;
    let mut notes = Vec::new();
    for round in 0..PRUNE_ROUNDS {
        let mut g = rng::stream(seed, rng::PRUNE + round as u64);
        let mut kept: Vec<Color> = colors.iter().filter(|_| g.gen::<f64>() < p).cloned().collect();
        let mut work = 0u64;
        let mut capped = false;
        loop {
            match find_bad_subset(&kept, l, &mut work, PRUNE_WORK_CAP) {
                Ok(Some(idx)) => {
                    kept.remove(*idx.last().expect("non-empty subset"));
                    removed_total += 1;
                }
                Ok(None) => break,
                Err(SearchCap) => {
                    capped = true;
                    break;
                }
            }
        }
        if capped {
            notes.push(format!("round {round}: search budget exhausted"));
            continue;
        }
        if kept.len() as f64 >= target && !kept.is_empty() {
            return Ok(PruneReport { colors: kept, p, p_alt, rounds: round + 1, removed: removed_total, identity: false });
        }
        notes.push(format!("round {round}: {} colours", kept.len()));
        if best.as_ref().map_or(true, |b| kept.len() > b.len()) {
            best = Some(kept);
        }
    }
    Err(LbError::PruneFailed(format!(
        "{PRUNE_ROUNDS} rounds below target {target:.3} (X={x}, t={t}, l={l}, p={p:.3e}, best={}): {}",
        best.map_or(0, |b| b.len()),
        notes.join("; ")
    )))
}
