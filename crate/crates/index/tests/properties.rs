use frix_index::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_atom(rng: &mut ChaCha8Rng) -> Atom {
    let rel = [Rel::Le, Rel::Lt, Rel::Ge, Rel::Gt][rng.gen_range(0..4)];
    let poly = match rng.gen_range(0..3) {
        0 => Poly2::disk(rng.gen_range(-0.5..1.5), rng.gen_range(-0.5..1.5), rng.gen_range(0.05..0.8)),
        1 => {
            let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            Poly2::linear(th.cos(), th.sin(), rng.gen_range(-1.0..1.0))
        }
        _ => {
            let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let lo = rng.gen_range(-1.0..1.0);
            Poly2::band(th.cos(), th.sin(), lo, lo + rng.gen_range(0.05..0.6))
        }
    };
    Atom::new(poly, rel)
}

fn random_range(rng: &mut ChaCha8Rng) -> RangeSpec {
    let clauses = (0..rng.gen_range(1..=2))
        .map(|_| Clause::new((0..rng.gen_range(1..=3)).map(|_| random_atom(rng)).collect()))
        .collect();
    RangeSpec::union(clauses)
}

#[test]
fn classify_is_sound_on_grids() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..2000 {
        let r = random_range(&mut rng);
        let x0 = rng.gen_range(-0.5..1.0);
        let y0 = rng.gen_range(-0.5..1.0);
        let b = Region::new(x0, y0, x0 + rng.gen_range(0.0..0.5), y0 + rng.gen_range(0.0..0.5));
        let c = classify(&b, &r);
        if c == Classification::Crossing {
            continue;
        }
        for i in 0..32 {
            for j in 0..32 {
                let x = b.x0 + (b.x1 - b.x0) * i as f64 / 31.0;
                let y = b.y0 + (b.y1 - b.y0) * j as f64 / 31.0;
                assert_eq!(r.contains(x, y), c == Classification::Inside, "{r:?} {b:?}");
            }
        }
    }
}

fn random_points(rng: &mut ChaCha8Rng, n: usize, t: usize) -> Vec<Vec<[f64; 2]>> {
    (0..n).map(|_| (0..t).map(|_| [rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)]).collect()).collect()
}

fn build(points: &[Vec<[f64; 2]>], params: BuildParams) -> MultilevelIndex {
    let ids = (0..points.len()).map(|i| format!("c{i}")).collect();
    MultilevelIndex::build(ids, points, params, IndexMeta::default()).unwrap()
}

fn brute(points: &[Vec<[f64; 2]>], ranges: &[RangeSpec]) -> Vec<u32> {
    (0..points.len() as u32)
        .filter(|&i| points[i as usize].iter().zip(ranges).all(|(p, r)| r.contains(p[0], p[1])))
        .collect()
}

#[test]
fn multilevel_query_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let points = random_points(&mut rng, 1000, 3);
    let idx = build(&points, BuildParams::default());
    let mut nonempty = 0;
    for _ in 0..100 {
        let ranges: Vec<RangeSpec> = (0..3).map(|_| random_range(&mut rng)).collect();
        let (got, _) = idx.query(&ranges).unwrap();
        let want = brute(&points, &ranges);
        nonempty += !want.is_empty() as usize;
        assert_eq!(got, want);
    }
    assert!(nonempty > 10);
}

#[test]
fn leaves_partition_items_and_respect_cap() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let points = random_points(&mut rng, 1000, 1);
    let idx = build(&points, BuildParams::default());
    let tree = &idx.trees()[idx.root().unwrap() as usize];
    let mut seen = vec![0u32; 1000];
    for n in &tree.nodes {
        if n.n_children == 0 {
            assert!(n.len <= 32);
            for &it in &tree.items[n.start as usize..(n.start + n.len) as usize] {
                seen[it as usize] += 1;
            }
        }
    }
    assert!(seen.iter().all(|&c| c == 1));
    idx.validate().unwrap();
}

#[test]
fn space_grows_with_t() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut prev = 0;
    for t in 1..=3 {
        let points = random_points(&mut rng, 1000, t);
        let st = build(&points, BuildParams::default()).stats();
        let bound: usize = 1000 * st.depth_per_level.iter().product::<usize>();
        assert!(st.point_refs <= bound, "{st:?}");
        assert!(st.point_refs > prev);
        prev = st.point_refs;
    }
}

#[test]
fn round_trip_is_bit_exact_and_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let points = random_points(&mut rng, 500, 2);
    let mut meta = IndexMeta { kind: "test".into(), rho: Some(0.5), columns: vec!["a".into(), "b".into()] };
    meta.columns.push("c".into());
    let ids: Vec<String> = (0..500).map(|i| format!("c{i}")).collect();
    let a = MultilevelIndex::build(ids.clone(), &points, BuildParams::default(), meta.clone()).unwrap();
    let b = MultilevelIndex::build(ids, &points, BuildParams::default(), meta).unwrap();
    assert_eq!(a.to_bytes(), b.to_bytes());
    let back = MultilevelIndex::from_bytes(&a.to_bytes()).unwrap();
    assert_eq!(back, a);
    assert_eq!(back.to_bytes(), a.to_bytes());
    let ranges = [random_range(&mut rng), random_range(&mut rng)];
    assert_eq!(a.query(&ranges).unwrap(), back.query(&ranges).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn small_indexes_are_exact(
        seed in 0u64..1_000_000, n in 1usize..150, t in 1usize..4, leaf_cap in 1usize..8, max_levels in 1usize..4,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = random_points(&mut rng, n, t);
        let idx = build(&points, BuildParams { eps: 0.5, leaf_cap, max_levels });
        idx.validate().unwrap();
        let ranges: Vec<RangeSpec> = (0..t).map(|_| random_range(&mut rng)).collect();
        prop_assert_eq!(idx.query(&ranges).unwrap().0, brute(&points, &ranges));
    }
}
