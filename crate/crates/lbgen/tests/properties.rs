use frix_frechet::{alt_godau_decide, Curve};
use frix_geometry::Point2;
use frix_lbgen::*;
use proptest::prelude::*;
use rand::Rng;

fn spec_1024() -> InstanceSpec {
    InstanceSpec::new(1024, 16, 2, 4.0, 4, 7)
}

#[test]
fn coverage_and_volume_constant() {
    let c = build_construction(&spec_1024()).unwrap();
    let rep = verify_construction(&c, 10_000, 100, 1).unwrap();
    for (k, v) in rep.lines() {
        println!("{k}={v}");
    }
    assert!(rep.coverage_exact());
    assert_eq!((rep.total_min, rep.total_max), (16, 16));
    assert_eq!(rep.pairs, 100);
    assert!(rep.volume_constant <= 64.0, "C = {}", rep.volume_constant);
}

/// Measured minimum and the claimed lower bound `N^{D-1}/(2DX)`.
fn spread(n: u64, d: usize) -> (MinBox, f64) {
    let x: u64 = first_primes(d - 1).iter().product();
    let m = min_pair_box_volume_raw(&prime_base_points(n, d).unwrap()).unwrap();
    (m, (n as f64).powi(d as i32 - 1) / (2.0 * d as f64 * x as f64))
}

#[test]
fn prime_base_spread_small_sizes() {
    for d in [2usize, 3] {
        for n in [16u64, 64] {
            let (m, bound) = spread(n, d);
            println!("D={d} N={n}: min {} bound {bound:.3}", m.volume);
            assert!(m.volume >= bound);
        }
    }
}

/// The claimed bound grows linearly in N for D=2, but the pair
/// `(2^k - 2, 2^k + 1)` has reversed coordinates 6 apart (a carry through
/// every digit), so the minimum stays at 18.
#[test]
fn prime_base_spread_carry_counterexample() {
    for n in [64u64, 256, 1024] {
        let (m, _) = spread(n, 2);
        assert_eq!(m.volume, 18.0);
        assert_eq!(m.pair, (n as usize / 2 - 2, n as usize / 2 + 1));
    }
    let (m2, b2) = spread(256, 2);
    let (m3, b3) = spread(256, 3);
    assert!(m2.volume < b2 && m3.volume < b3);
    assert_eq!(m3.volume, 1024.0);
}

#[test]
fn color_class_spread() {
    for n_c in [2usize, 4, 8] {
        let pts = colored_parametric_points(256, n_c, 2).unwrap();
        let all = min_pair_box_volume(&pts, false).unwrap().volume;
        let same = min_pair_box_volume(&pts, true).unwrap().volume;
        println!("n_c={n_c}: ratio {:.3}", same / all);
        assert!(same / all >= n_c as f64 / 8.0);
    }
}

#[test]
fn monte_carlo_agrees_with_exact_areas() {
    let c = build_construction(&spec_1024()).unwrap();
    let mut g = rng::stream(3, rng::USER);
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let a = g.gen_range(0..16);
        let b = (a + g.gen_range(1..16)) % 16;
        let p = random_tpoint(&mut g, 2);
        let sa = &c.families[a].copies[c.families[a].locate(&p).unwrap()];
        let sb = &c.families[b].copies[c.families[b].locate(&p).unwrap()];
        let exact = pair_intersection_volume_exact(sa, sb);
        let (est, hw) = mc_volume(&[sa.clone(), sb.clone()], 10_000, 100 + k).unwrap();
        worst = worst.max((est - exact).abs() / hw);
        assert!((est - exact).abs() <= 3.0 * hw, "pair {k}: exact {exact:e} est {est:e} hw {hw:e}");
    }
    println!("largest deviation {worst:.2} half-widths");
}

#[test]
fn lens_error_area_below_eps() {
    let eps = 1e-3;
    let mut g = rng::stream(4, rng::USER);
    for trial in 0..4 {
        let theta = g.gen_range(-1.5..1.5);
        let c1 = g.gen_range(0.2..0.6);
        let s = frix_geometry::Slab2::new(theta, c1, c1 + g.gen_range(0.01..0.4)).unwrap();
        let (lens, _) = lens_for_slab(&s, eps);
        let n = 1_000_000u64;
        let miss = (0..n)
            .filter(|_| {
                let p = Point2::new(g.gen::<f64>(), g.gen::<f64>());
                s.contains(p) && !lens.contains(p)
            })
            .count() as u64;
        let area = miss as f64 / n as f64;
        println!("trial {trial}: error area {area:e}");
        assert!(area < eps);
    }
}

#[test]
fn zigzag_duality_grid() {
    let mut g = rng::stream(6, rng::USER);
    let (mut agree, mut skipped) = (0, 0);
    for _ in 0..20 {
        let x1 = g.gen_range(-1.0..1.0);
        let x2 = g.gen_range(-1.0..1.0f64);
        let x3 = (x2 + g.gen_range(0.0..1.0)).min(1.0);
        let p = ZigzagParams::new(x1, x2, x3).unwrap();
        let z = zigzag(p);
        for i in 0..64 {
            for j in 0..64 {
                let y1 = -1.0 + 2.0 * i as f64 / 63.0;
                let y2 = -1.0 + 2.0 * j as f64 / 63.0;
                let (a, b) = segment_dual(y1, y2);
                let h = dual_height(x1, a, b);
                if (h - x2).abs() < 1e-6 || (h - x3).abs() < 1e-6 {
                    skipped += 1;
                    continue;
                }
                let q = Curve::new("q", vec![Point2::new(-4.0, y1), Point2::new(4.0, y2)]);
                let member = zigzag_dual_slab(p).unwrap().contains(Point2::new(a, b));
                assert_eq!(alt_godau_decide(&q, &z, 1.0), member, "{p:?} y1={y1} y2={y2}");
                agree += 1;
            }
        }
    }
    println!("agreement on {agree} segments, {skipped} in the boundary band");
}

#[test]
fn gadget_series_tile_intercepts() {
    let mut g = rng::stream(8, rng::USER);
    for _ in 0..10 {
        let s = GadgetSeries { x1: g.gen_range(-1.0..1.0), width: g.gen_range(0.05..1.0) };
        for _ in 0..2000 {
            let a = g.gen_range(-0.25..0.25);
            let h: f64 = g.gen_range(-1.0..1.0);
            let b = h - a * s.x1;
            let hits: Vec<usize> = (0..s.count())
                .filter(|&k| {
                    let p = s.params(k);
                    let v = dual_height(s.x1, a, b);
                    v >= p.x2 && v < p.x3
                })
                .collect();
            assert_eq!(hits.len(), 1);
            assert_eq!(s.locate(a, b), Some(hits[0]));
        }
    }
}

#[test]
fn continuous_instance_end_to_end() {
    let inst = build_continuous_instance(&InstanceSpec::new(1024, 16, 2, 4.0, 4, 5)).unwrap();
    let mut g = rng::stream(10, rng::USER);
    let mut checked = 0;
    while checked < 100 {
        let duals: Vec<(f64, f64)> =
            (0..2).map(|_| segment_dual(g.gen_range(-1.0..1.0), g.gen_range(-1.0..1.0))).collect();
        let fam = g.gen_range(0..inst.series.len());
        let Some(k) = inst.locate(fam, &duals) else { continue };
        let near_edge = inst.series[fam].iter().zip(&duals).any(|(s, &(a, b))| {
            let p = s.params(s.locate(a, b).unwrap());
            let h = dual_height(s.x1, a, b);
            (h - p.x2).abs() < 1e-7 || (h - p.x3).abs() < 1e-7
        });
        if near_edge {
            continue;
        }
        assert!(alt_godau_decide(&inst.query(&duals), &inst.curves[k], inst.rho));
        checked += 1;
    }
}

#[test]
fn identical_seeds_give_identical_instances() {
    let a = build_discrete_instance(&spec_1024()).unwrap();
    let b = build_discrete_instance(&spec_1024()).unwrap();
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
    let mut other = spec_1024();
    other.seed = 8;
    let c = build_discrete_instance(&other).unwrap();
    assert_ne!(format!("{a:?}"), format!("{c:?}"));
    let z1 = build_continuous_instance(&spec_1024()).unwrap();
    let z2 = build_continuous_instance(&spec_1024()).unwrap();
    assert_eq!(z1, z2);
}

fn brute_bad(colors: &[Color], l: usize) -> bool {
    fn rec(colors: &[Color], l: usize, from: usize, cur: &mut Vec<usize>) -> bool {
        if cur.len() == l {
            return is_bad_subset(&cur.iter().map(|&i| &colors[i]).collect::<Vec<_>>());
        }
        for i in from..colors.len() {
            cur.push(i);
            if rec(colors, l, i + 1, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(colors, l, 0, &mut Vec::new())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reversal_is_an_involution(i in 0u64..100_000, x in 2u64..12) {
        let d = digit_count(i.max(1), x);
        let r = reversed_base(i, x, d).unwrap();
        prop_assert_eq!(reversed_base(r, x, d).unwrap(), i);
    }

    #[test]
    fn bad_subset_search_matches_brute_force(x in 2u32..5, t in 2usize..4, l in 2usize..5, seed in 0u64..1000) {
        let all = colors_enumerate(x, t).unwrap();
        let mut g = rng::stream(seed, rng::USER);
        let sub: Vec<Color> = all.into_iter().filter(|_| g.gen_bool(0.6)).take(10).collect();
        let mut work = 0;
        let found = find_bad_subset(&sub, l, &mut work, u64::MAX).unwrap();
        prop_assert_eq!(found.is_some(), brute_bad(&sub, l));
        if let Some(idx) = found {
            prop_assert!(is_bad_subset(&idx.iter().map(|&i| &sub[i]).collect::<Vec<_>>()));
        }
    }

    #[test]
    fn pruned_output_has_no_bad_subset(x in 3u32..7, t in 3usize..5, l in 3usize..5, seed in 0u64..1000) {
        let all = colors_enumerate(x, t).unwrap();
        if let Ok(rep) = prune_colors(&all, l, seed) {
            if rep.colors.len() <= 20 {
                prop_assert!(!brute_bad(&rep.colors, l));
            } else {
                let mut work = 0;
                prop_assert_eq!(find_bad_subset(&rep.colors, l, &mut work, u64::MAX).unwrap(), None);
            }
        }
    }

    #[test]
    fn tiles_partition_each_universe(seed in 0u64..1000, t in 1usize..3) {
        let c = build_construction(&InstanceSpec::new(1024, 16, t, 4.0, 4, seed)).unwrap();
        let mut g = rng::stream(seed, rng::USER);
        for _ in 0..200 {
            let p = random_tpoint(&mut g, t);
            for f in &c.families {
                let hits = f.copies.iter().filter(|s| s.contains_half_open(&p)).count();
                prop_assert_eq!(hits, 1);
            }
        }
    }
}
