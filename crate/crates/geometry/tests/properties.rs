use frix_geometry::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(x: f64, y: f64) -> Point2d {
    Point2::new(x, y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn duality_round_trip(a in -100.0..100.0f64, b in -100.0..100.0f64) {
        let l = Line2::new(a, b);
        prop_assert_eq!(line_of_dual(dual_of_line(l)), l);
    }

    #[test]
    fn duality_flips_vertical_order(a in -5.0..5.0f64, b in -5.0..5.0f64, x in -5.0..5.0f64, y in -5.0..5.0f64) {
        let l = Line2::new(a, b);
        let pt = p(x, y);
        let primal = l.side(pt);
        let dual = dual_of_point(pt).side(dual_of_line(l).as_point());
        let flipped = match primal { Side::Above => Side::Below, Side::Below => Side::Above, Side::On => Side::On };
        prop_assert_eq!(dual, flipped);
    }

    #[test]
    fn circle_pair_points_on_both_circles(x in -3.0..3.0f64, y in -3.0..3.0f64, r in 0.2..2.0f64) {
        let d1 = Disk::new(p(0.0, 0.0), r);
        let d2 = Disk::new(p(x, y), r);
        if let Ok(CircleCircle::Pair(a, b)) = circle_circle(d1, d2) {
            for q in [a, b] {
                prop_assert!((q.dist(d1.center) - r).abs() <= 1e-9);
                prop_assert!((q.dist(d2.center) - r).abs() <= 1e-9);
            }
            prop_assert!(a.y >= b.y);
        }
    }

    #[test]
    fn memberships_match_distance_formulas(
        cx in -2.0..2.0f64, cy in -2.0..2.0f64, r in 0.1..2.0f64,
        bx in -2.0..2.0f64, by in -2.0..2.0f64, px in -4.0..4.0f64, py in -4.0..4.0f64,
    ) {
        let c = p(cx, cy);
        let pt = p(px, py);
        let dd = ((px - cx).powi(2) + (py - cy).powi(2)).sqrt();
        prop_assume!((dd - r).abs() > 1e-8);
        prop_assert_eq!(Disk::new(c, r).contains(pt), dd <= r);
        // rectangle: closest point on the segment's supporting line inside the segment span
        let b2 = p(bx, by);
        prop_assume!(c.dist(b2) > 1e-3);
        let rect = RotRect::around_segment(c, b2, r).unwrap();
        let d = b2 - c;
        let t = (pt - c).dot(d) / d.norm2();
        let off = (pt - c).cross(d).abs() / d.norm();
        prop_assume!((t.abs() * d.norm()) > 1e-8 && ((t - 1.0).abs() * d.norm()) > 1e-8 && (off - r).abs() > 1e-8);
        prop_assert_eq!(rect.contains(pt), (0.0..=1.0).contains(&t) && off <= r);
        // the lens is the conjunction of two disks
        let lens = Lens::new(Disk::new(c, r), Disk::new(b2, r)).unwrap();
        let d2 = pt.dist(b2);
        prop_assume!((d2 - r).abs() > 1e-8);
        prop_assert_eq!(lens.contains(pt), dd <= r && d2 <= r);
    }
}

fn parallelogram_mc(s1: &Slab2d, s2: &Slab2d, samples: usize, rng: &mut ChaCha8Rng) -> f64 {
    // corners: solve n1·x = c, n2·x = c'
    let (n1, n2) = (s1.normal(), s2.normal());
    let det = n1.x * n2.y - n1.y * n2.x;
    let solve = |c: f64, d: f64| p((c * n2.y - d * n1.y) / det, (n1.x * d - n2.x * c) / det);
    let corners = [solve(s1.c1, s2.c1), solve(s1.c1, s2.c2), solve(s1.c2, s2.c1), solve(s1.c2, s2.c2)];
    let lo = corners.iter().fold(p(f64::MAX, f64::MAX), |a, c| p(a.x.min(c.x), a.y.min(c.y)));
    let hi = corners.iter().fold(p(f64::MIN, f64::MIN), |a, c| p(a.x.max(c.x), a.y.max(c.y)));
    let mut hits = 0usize;
    for _ in 0..samples {
        let q = p(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if s1.contains_half_open(q) && s2.contains_half_open(q) {
            hits += 1;
        }
    }
    hits as f64 / samples as f64 * (hi.x - lo.x) * (hi.y - lo.y)
}

#[test]
fn slab_pair_area_matches_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let t1 = rng.gen_range(-1.5..1.5f64);
        let mut t2 = rng.gen_range(-1.5..1.5f64);
        while (t1 - t2).sin().abs() < 0.3 {
            t2 = rng.gen_range(-1.5..1.5f64);
        }
        let c = rng.gen_range(-1.0..1.0);
        let s1 = Slab2::new(t1, c, c + rng.gen_range(0.05..0.5)).unwrap();
        let c = rng.gen_range(-1.0..1.0);
        let s2 = Slab2::new(t2, c, c + rng.gen_range(0.05..0.5)).unwrap();
        let exact = match slab_pair_area(&s1, &s2) {
            SlabArea::Bounded(a) => a,
            SlabArea::Unbounded => unreachable!(),
        };
        let est = parallelogram_mc(&s1, &s2, 1_000_000, &mut rng);
        assert!((est - exact).abs() <= 0.02 * exact, "exact {exact} est {est}");
    }
}
