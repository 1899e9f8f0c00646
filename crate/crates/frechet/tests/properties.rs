use frix_frechet::oracle::{feasible_by_enumeration, matrix_feasible_by_enumeration};
use frix_frechet::*;
use frix_geometry::{point_segment_dist, Point2};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_assignment(rng: &mut ChaCha8Rng, tq: usize, ts: usize, p: f64) -> HLAssignment {
    let mut h = HLAssignment::filled(tq, ts, true);
    h.p1 = rng.gen_bool(0.95);
    h.p2 = rng.gen_bool(0.95);
    for i in 0..tq {
        for j in 0..ts - 1 {
            h.set_hvep(i, j, rng.gen_bool(p));
        }
    }
    for i in 0..tq - 1 {
        for j in 0..ts {
            h.set_vvep(i, j, rng.gen_bool(p));
            for k in j + 1..ts {
                h.set_hmp(i, j, k, rng.gen_bool(p));
            }
        }
    }
    for i in 0..tq {
        for k in i + 1..tq {
            for j in 0..ts - 1 {
                h.set_vmp(i, k, j, rng.gen_bool(p));
            }
        }
    }
    h
}

#[test]
fn feasibility_dp_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut positives = 0;
    for n in 0..100_000 {
        let tq = rng.gen_range(2..=4);
        let ts = rng.gen_range(2..=4);
        let p = [0.6, 0.75, 0.9][n % 3];
        let h = random_assignment(&mut rng, tq, ts, p);
        let want = feasible_by_enumeration(&h);
        positives += want as usize;
        assert_eq!(feasible_cell_sequence(&h, tq, ts), want, "{h:?}");
    }
    assert!(positives > 10_000, "too few feasible samples: {positives}");
}

#[test]
fn random_4x4_matrices_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10_000 {
        let mut m = FreeSpaceMatrix::new(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                m.set(i, j, rng.gen_bool(0.7));
            }
        }
        assert_eq!(matrix_feasible(&m), matrix_feasible_by_enumeration(&m));
    }
}

fn random_curve(rng: &mut ChaCha8Rng, t: usize) -> Curved {
    Curve::new("", (0..t).map(|_| Point2::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0))).collect())
}

#[test]
fn predicate_pipeline_matches_alt_godau() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut checked, mut positives) = (0, 0);
    while checked < 10_000 {
        let q = { let t = rng.gen_range(2..=5); random_curve(&mut rng, t) };
        let s = { let t = rng.gen_range(2..=5); random_curve(&mut rng, t) };
        let rho = discrete_value(&q, &s) * rng.gen_range(0.4..1.1);
        let lo = alt_godau_decide(&q, &s, rho - 1e-7);
        let hi = alt_godau_decide(&q, &s, rho + 1e-7);
        if lo != hi {
            continue;
        }
        let want = alt_godau_decide(&q, &s, rho);
        positives += want as usize;
        assert_eq!(continuous_decide_predicates(&q, &s, rho), want, "q={q:?} s={s:?} rho={rho}");
        checked += 1;
    }
    assert!(positives > 1000 && positives < 9000, "unbalanced sample: {positives}");
}

#[test]
fn lowlevel_matches_direct_predicates() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2000 {
        let q = { let t = rng.gen_range(2..=4); random_curve(&mut rng, t) };
        let s = { let t = rng.gen_range(2..=4); random_curve(&mut rng, t) };
        let rho = rng.gen_range(0.05..0.6);
        let a = eval_hl(&q, &s, rho);
        let b = eval_hl_lowlevel(&q, &s, rho);
        // near-boundary disagreements are measure zero; random inputs avoid them
        assert_eq!(a, b, "q={q:?} s={s:?} rho={rho}");
    }
}

/// Dense sampling of the directed line plus analytic chord endpoints.
fn witness_search(a1: Point2<f64>, a2: Point2<f64>, from: Point2<f64>, to: Point2<f64>, rho: f64) -> bool {
    let d = (to - from).unit_or_zero();
    let span = 20.0;
    let mut ts: Vec<f64> = (0..10_000).map(|k| -span + 2.0 * span * k as f64 / 9_999.0).collect();
    for c in [a1, a2] {
        let w = c - from;
        let off = d.cross(w);
        if off.abs() <= rho {
            let h = (rho * rho - off * off).sqrt();
            ts.push(w.dot(d) - h);
            ts.push(w.dot(d) + h);
        }
    }
    let near = |t: f64, c: Point2<f64>| (from + d * t).dist(c) <= rho + 1e-9;
    let first1 = ts.iter().copied().filter(|&t| near(t, a1)).fold(f64::INFINITY, f64::min);
    let last2 = ts.iter().copied().filter(|&t| near(t, a2)).fold(f64::NEG_INFINITY, f64::max);
    first1 <= last2
}

#[test]
fn monotonicity_bits_match_witness_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    let mut positives = 0;
    while checked < 10_000 {
        let pts: Vec<Point2<f64>> = (0..4).map(|_| Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
        let (a1, a2, from, to) = (pts[0], pts[1], pts[2], pts[3]);
        let rho: f64 = rng.gen_range(0.2..1.5);
        if from.dist(to) < 1e-3 {
            continue;
        }
        // skip near-tangent lines
        let d = (to - from).unit_or_zero();
        if [a1, a2].iter().any(|c| (d.cross(*c - from).abs() - rho).abs() < 1e-6) {
            continue;
        }
        let want = witness_search(a1, a2, from, to, rho);
        positives += want as usize;
        assert_eq!(ll_monotonicity(a1, a2, from, to, rho).combined, want, "{a1:?} {a2:?} {from:?} {to:?} {rho}");
        checked += 1;
    }
    assert!(positives > 500);
}

#[test]
fn vertex_edge_bits_match_segment_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10_000 {
        let pts: Vec<Point2<f64>> = (0..3).map(|_| Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
        let (a, b1, b2) = (pts[0], pts[1], pts[2]);
        let rho: f64 = rng.gen_range(0.1..1.5);
        let d = point_segment_dist(a, b1, b2);
        if (d - rho).abs() < 1e-8 {
            continue;
        }
        assert_eq!(ll_vertex_edge(a, b1, b2, rho).combined, d <= rho);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn discrete_monotone_symmetric_and_dominates(
        qa in prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 1..6),
        sa in prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 1..6),
        r1 in 0.0..1.5f64, r2 in 0.0..1.5f64,
    ) {
        let q = Curve::from_xy(&qa);
        let s = Curve::from_xy(&sa);
        let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
        if discrete_decide(&q, &s, lo) {
            prop_assert!(discrete_decide(&q, &s, hi));
        }
        prop_assert_eq!(discrete_decide(&q, &s, r1), discrete_decide(&s, &q, r1));
        prop_assert_eq!(alt_godau_decide(&q, &s, r1), alt_godau_decide(&s, &q, r1));
        let v = discrete_value(&q, &s);
        prop_assert!(discrete_decide(&q, &s, v));
        prop_assert!(alt_godau_decide(&q, &s, v));
    }
}
