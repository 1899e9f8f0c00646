/// The two space lower bounds for query time `q`, with every hidden
/// constant set to 1 (logarithms base 2).
///
/// `bound1 = (n/q)² · (log(n/q)/log log n)^{t−1} / 2^{2^t − 2}`
/// `bound2 = (n/q)² · (log(n/q)/(t³ log log n))^{t−1}`
///
/// The exponent `2^t − 2` makes both reduce to `(n/q)²` at `t = 1`.
/// `q = n` is reported as `(1, 1)`.
pub fn lb_bound_report(n: f64, q: f64, t: u32) -> (f64, f64) {
    if q >= n {
        return (1.0, 1.0);
    }
    let ratio = n / q;
    let loglog = n.log2().log2();
    let base = ratio * ratio;
    let e = t as i32 - 1;
    let b1 = base * (ratio.log2() / loglog).powi(e) / 2f64.powf(2f64.powi(t as i32) - 2.0);
    let b2 = base * (ratio.log2() / ((t as f64).powi(3) * loglog)).powi(e);
    (b1, b2)
}
