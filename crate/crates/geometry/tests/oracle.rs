use approx::assert_abs_diff_eq;
use frix_geometry::*;

fn p(x: f64, y: f64) -> Point2d {
    Point2::new(x, y)
}

#[test]
fn dual_of_line_is_coefficients() {
    let d = dual_of_line(Line2::new(2.0, 1.0));
    assert_eq!((d.a, d.b), (2.0, 1.0));
}

#[test]
fn dual_incidence_self_test() {
    let l = dual_of_point(p(0.0, 0.0));
    assert_eq!((l.a, l.b), (0.0, 0.0));
    let d = dual_of_line(Line2::new(0.0, 0.0)).as_point();
    assert_eq!(l.side(d), Side::On);
}

#[test]
fn dual_order_flips() {
    // (1,2) lies above y = x; its dual relation is reversed
    let pt = p(1.0, 2.0);
    let l = Line2::new(1.0, 0.0);
    assert_eq!(l.side(pt), Side::Above);
    assert_eq!(dual_of_point(pt).side(dual_of_line(l).as_point()), Side::Below);
}

#[test]
fn vertical_line_rejected() {
    assert!(Line2::through(p(1.0, 0.0), p(1.0, 3.0)).is_err());
}

#[test]
fn line_circle_cases() {
    let l = Line2::new(0.0, 0.0);
    assert_eq!(line_circle(l, Disk::new(p(0.0, 0.0), 1.0)), LineCircle::Chord(p(-1.0, 0.0), p(1.0, 0.0)));
    assert_eq!(line_circle(l, Disk::new(p(0.0, 2.0), 1.0)), LineCircle::Miss);
    assert_eq!(line_circle(l, Disk::new(p(0.0, 1.0), 1.0)), LineCircle::Tangent(p(0.0, 0.0)));
}

#[test]
fn circle_circle_cases() {
    let u = |x: f64| Disk::new(p(x, 0.0), 1.0);
    match circle_circle(u(0.0), u(1.0)).unwrap() {
        CircleCircle::Pair(bp, bm) => {
            assert_abs_diff_eq!(bp.x, 0.5, epsilon = 1e-12);
            assert_abs_diff_eq!(bp.y, 3f64.sqrt() / 2.0, epsilon = 1e-12);
            assert_abs_diff_eq!(bm.x, 0.5, epsilon = 1e-12);
            assert_abs_diff_eq!(bm.y, -(3f64.sqrt()) / 2.0, epsilon = 1e-12);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(circle_circle(u(0.0), u(3.0)).unwrap(), CircleCircle::Miss);
    assert_eq!(circle_circle(u(0.0), u(2.0)).unwrap(), CircleCircle::Touch(p(1.0, 0.0)));
    assert!(circle_circle(u(0.0), u(0.0)).is_err());
}

#[test]
fn slab_pair_area_cases() {
    let s = |th: f64, t: f64| Slab2::new(th, 0.0, t).unwrap();
    match slab_pair_area(&s(0.0, 0.1), &s(std::f64::consts::FRAC_PI_2, 0.2)) {
        SlabArea::Bounded(a) => assert_abs_diff_eq!(a, 0.02, epsilon = 1e-12),
        _ => panic!(),
    }
    match slab_pair_area(&s(0.0, 0.1), &s(std::f64::consts::FRAC_PI_6, 0.1)) {
        SlabArea::Bounded(a) => assert_abs_diff_eq!(a, 0.02, epsilon = 1e-12),
        _ => panic!(),
    }
    let a = s(0.3, 0.1);
    assert_eq!(slab_pair_area(&a, &a.translated(0.5)), SlabArea::Unbounded);
}

#[test]
fn boxes() {
    let b = box_of(&[[0.0, 0.0], [4.0, 1.0]]).unwrap();
    assert_eq!(box_volume(&b), 4.0);
    assert_eq!(box_volume(&box_of(&[[2.0, 2.0]]).unwrap()), 0.0);
    assert_eq!(box_volume(&box_of(&[[4.0, 1.0], [2.0, 2.0]]).unwrap()), 2.0);
    let empty: [[f64; 2]; 0] = [];
    assert!(box_of(&empty).is_err());
}

#[test]
fn memberships() {
    let s = Slab2::new(0.0, -0.1, 0.1).unwrap();
    assert!(slab_contains(&s, p(0.5, 0.0)) == false);
    // θ = 0 measures x; (0.05, 0.5) is inside
    assert!(slab_contains(&s, p(0.05, 0.5)));
    let lens = Lens::new(Disk::new(p(0.0, 0.0), 1.0), Disk::new(p(1.0, 0.0), 1.0)).unwrap();
    assert!(lens_contains(&lens, p(0.5, 0.0)));
    assert!(!lens_contains(&lens, p(2.0, 0.0)));
    let r = RotRect::around_segment(p(0.0, 0.0), p(2.0, 0.0), 1.0).unwrap();
    assert!(rotrect_contains(&r, p(1.0, 0.99)));
    assert!(!rotrect_contains(&r, p(1.0, 1.01)));
}

#[test]
fn tangent_interval_symmetric_about_vertical() {
    let lens = Lens::new(Disk::new(p(0.0, 0.0), 1.0), Disk::new(p(1.0, 0.0), 1.0)).unwrap();
    let r = tangent_range(&lens).unwrap();
    let mid = r.start + r.width / 2.0;
    assert_abs_diff_eq!(mid, std::f64::consts::FRAC_PI_2, epsilon = 1e-12);
    // arc endpoint tangents analytically: φ = acos(1/2) = π/3
    assert_abs_diff_eq!(r.width, 2.0 * std::f64::consts::FRAC_PI_3, epsilon = 1e-12);
    // dense sampling of tangent angles along the arc of the first circle inside the second
    let (mut lo, mut hi) = (f64::MAX, f64::MIN);
    for k in 0..=20000 {
        let psi = -std::f64::consts::PI + k as f64 * std::f64::consts::TAU / 20000.0;
        let pt = p(psi.cos(), psi.sin());
        if lens.d2.contains(pt) {
            let t = psi + std::f64::consts::FRAC_PI_2;
            lo = lo.min(t);
            hi = hi.max(t);
        }
    }
    assert!((lo - r.start).abs() < 1e-3 && (hi - r.end()).abs() < 1e-3, "{lo} {hi} {r:?}");
}

#[test]
fn tangent_interval_errors() {
    let touch = Lens::new(Disk::new(p(0.0, 0.0), 1.0), Disk::new(p(2.0, 0.0), 1.0)).unwrap();
    assert!(tangent_angle_interval(&touch).is_err());
    let same = Lens::new(Disk::new(p(0.0, 0.0), 1.0), Disk::new(p(0.0, 0.0), 1.0)).unwrap();
    assert!(tangent_angle_interval(&same).is_err());
}

#[test]
fn f32_primitives_agree() {
    let d = Disk::new(Point2f::new(0.0, 0.0), 1.0f32);
    assert!(d.contains(Point2f::new(0.6, 0.8)));
    match circle_circle(d, Disk::new(Point2f::new(1.0, 0.0), 1.0)).unwrap() {
        CircleCircle::Pair(bp, _) => assert!((bp.y - 0.866_025_4).abs() < 1e-5),
        other => panic!("{other:?}"),
    }
}

#[test]
fn clip_area_of_centered_cross() {
    let a = Slab2::new(0.0, 0.45, 0.55).unwrap();
    let b = Slab2::new(std::f64::consts::FRAC_PI_2, 0.4, 0.6).unwrap();
    assert_abs_diff_eq!(slabs_area_in_unit_square(&[a, b]), 0.02, epsilon = 1e-12);
}
