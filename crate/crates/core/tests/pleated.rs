use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use schlafli_core::harness::scenarios::rng;
use schlafli_core::harness::{fd_derivative, DeformationFamily, FdOptions};
use schlafli_core::kernel::{geodesic_through, mink_inner, screw_motion, IdealPoint, Point, Vertex};
use schlafli_core::pleated::*;
use schlafli_core::Error;

fn sp(x1: f64, x2: f64) -> Point {
    Point::from_spatial([x1, x2, 0.0])
}

fn corners() -> [Point; 4] {
    [sp(-0.6, -0.35), sp(0.6, -0.3), sp(-0.55, 0.35), sp(0.6, 0.4)]
}

fn rect(bends: &[f64]) -> PleatedRectangle {
    let n = bends.len();
    let fracs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let s = (i as f64 + 1.0) / (n as f64 + 1.0);
            (s, s + 0.02 * (i as f64 - 1.0) / n as f64)
        })
        .collect();
    PleatedRectangle::from_fractions(corners(), &fracs, bends.to_vec()).unwrap()
}

fn bottom_point(r: &PleatedRectangle, s: f64) -> Point {
    segment_point(&r.corners[0], &r.corners[1], s).unwrap()
}

#[test]
fn unbent_rectangle_stays_in_its_plane() {
    let r = rect(&[0.0; 4]);
    let n = r.chart_normal();
    for p in r.bottom_images().iter().chain(&r.top_images()) {
        assert!(mink_inner(n, p.coords()).abs() < 1e-10);
    }
    for s in [0.05, 0.3, 0.77] {
        let u = bottom_point(&r, s);
        assert!(r.pleat_eval(&u).unwrap().dist(&u) < 1e-10);
    }
}

#[test]
fn leaf_points_land_on_leaf_geodesics() {
    let r = rect(&[0.3, -0.7, 1.1]);
    for (j, l) in r.leaves.iter().enumerate() {
        let u = segment_point(&l.bottom, &l.top, 0.4).unwrap();
        let img = r.pleat_eval(&u).unwrap();
        assert!(r.leaf_geodesic(j).unwrap().distance_to(&img) < 1e-10);
    }
}

#[test]
fn bent_bottom_side_keeps_its_length() {
    let r = rect(&[0.5, -0.9, 0.2, 1.4]);
    let mut fracs: Vec<f64> = (0..=400).map(|i| f64::from(i) / 400.0).collect();
    fracs.extend(r.leaves.iter().map(|l| l.bottom_frac));
    fracs.sort_by(f64::total_cmp);
    // keep the ends inside the rectangle
    fracs[0] = 1e-12;
    *fracs.last_mut().unwrap() = 1.0 - 1e-12;
    let pts: Vec<Point> = fracs.iter().map(|&s| r.pleat_eval(&bottom_point(&r, s)).unwrap()).collect();
    let len: f64 = pts.windows(2).map(|w| w[0].dist(&w[1])).sum();
    assert!((len - r.corners[0].dist(&r.corners[1])).abs() < 1e-9, "{len}");
}

#[test]
fn pleating_is_continuous_across_leaves() {
    let r = rect(&[0.8, -1.2, 0.4]);
    for l in &r.leaves {
        let a = r.pleat_eval(&bottom_point(&r, l.bottom_frac - 1e-9)).unwrap();
        let b = r.pleat_eval(&bottom_point(&r, l.bottom_frac + 1e-9)).unwrap();
        assert!(a.dist(&b) < 1e-8);
    }
}

#[test]
fn points_off_the_chart_are_rejected() {
    let r = rect(&[0.2]);
    assert!(matches!(r.pleat_eval(&Point::from_spatial([0.0, 0.0, 0.3])), Err(Error::OutsideChart(_))));
    assert!(matches!(r.pleat_eval(&sp(0.0, 2.0)), Err(Error::OutsideChart(_))));
}

#[test]
fn bending_cocycle_counts_crossed_leaves() {
    let r = rect(&[0.3, -0.5, 0.9]);
    let f: Vec<f64> = r.leaves.iter().map(|l| l.bottom_frac).collect();
    assert_eq!(r.bending_cocycle_eval(0.01, f[0] - 0.01).unwrap(), 0.0);
    assert_eq!(r.bending_cocycle_eval(f[1] - 0.01, f[1] + 0.01).unwrap(), -0.5);
    let whole = r.bending_cocycle_eval(0.01, 0.99).unwrap();
    let mid = 0.5 * (f[1] + f[2]);
    let split = r.bending_cocycle_eval(0.01, mid).unwrap() + r.bending_cocycle_eval(mid, 0.99).unwrap();
    assert_eq!(whole, split);
    assert_eq!(r.bending_cocycle_eval(0.99, 0.01).unwrap(), -whole);
    assert!(matches!(r.bending_cocycle_eval(0.01, f[0]), Err(Error::Precondition(_))));
}

#[test]
fn fan_preconditions_and_size() {
    let r = rect(&[0.4, -0.3, 0.6, 0.2]);
    let on_leaf = r.pleat_eval(&segment_point(&r.leaves[1].bottom, &r.leaves[1].top, 0.5).unwrap()).unwrap();
    assert!(matches!(fan_build(on_leaf, &r, Side::Bottom, APEX_FLOOR), Err(Error::ApexTooClose { .. })));
    let flat = rect(&[0.0, 0.0]);
    assert!(matches!(fan_build(sp(0.0, -2.0), &flat, Side::Bottom, APEX_FLOOR), Err(Error::Degenerate(_))));
    let fan = fan_build(Point::from_spatial([0.0, 0.0, -0.55]), &r, Side::Bottom, APEX_FLOOR).unwrap();
    assert_eq!(fan.triangles().len(), 5);
    assert_eq!(fan.bends().unwrap().len(), 4);
}

fn apexes() -> (Point, Point) {
    (Point::from_spatial([0.0, -0.75, -0.4]), Point::from_spatial([0.0, 0.0, -0.55]))
}

#[test]
fn prism_pieces_and_split_invariance() {
    let (x, y) = apexes();
    for bends in [vec![], vec![0.3, -0.4, 0.5]] {
        let n = bends.len();
        let d = prism_decompose(&rect(&bends), x, y, APEX_FLOOR).unwrap();
        assert_eq!(d.component_count(), n + 1);
        assert_eq!(d.boundary_triangles().len(), 4 * (n + 1) + 4);
        let v = d.volume().unwrap();
        let alt = schlafli_core::volume::chain_volume(&d.alternate_chain().unwrap());
        assert!(v > 0.0);
        assert!((v - alt).abs() < 1e-9);
    }
}

#[test]
fn frozen_and_rigid_families_have_no_terms() {
    let (x, y) = apexes();
    let d = prism_decompose(&rect(&[0.3, -0.4, 0.5]), x, y, APEX_FLOOR).unwrap();
    let opts = FdOptions::default();
    let frozen = grouped_term_sums(&DeformationFamily::constant("frozen", d.clone()), 0.0, &opts).unwrap();
    assert!(frozen.sums().iter().all(|(_, v)| *v == 0.0));
    let axis = geodesic_through(&Vertex::Ideal(IdealPoint::finite(0.2, -0.1)), &Vertex::Ideal(IdealPoint::Infinity)).unwrap();
    let rigid = DeformationFamily::new("rigid", 0.05, None, move |t| {
        let g = screw_motion(&axis, Complex64::new(0.7 * t, -1.3 * t));
        let mut e = d.clone();
        e.vertices = e.vertices.iter().map(|p| g.apply_point(p)).collect();
        Ok(e)
    });
    let moved = grouped_term_sums(&rigid, 0.0, &opts).unwrap();
    for (name, v) in moved.sums() {
        assert!(v.abs() < 1e-8, "{name}: {v}");
    }
}

#[test]
fn grouped_terms_match_the_volume_derivative() {
    let s = random_pleat_scenario(&mut rng(11), "three", 3);
    let family = s.family();
    let opts = FdOptions::default();
    let t0 = 0.01;
    let lhs = fd_derivative(|t| family.at(t)?.volume(), t0, &opts).unwrap().value;
    let total = grouped_term_sums(&family, t0, &opts).unwrap().total();
    assert!((lhs - total).abs() < 1e-6, "{lhs} vs {total}");
}

#[test]
fn fan_identities_hold() {
    let mut g = rng(5);
    for n in [0, 1, 5, 12] {
        let s = random_pleat_scenario(&mut g, format!("fan-{n}"), n);
        let rep = fan_identity_check(&s.family(), 0.01, &FdOptions::default()).unwrap();
        assert!(rep.pass, "{n} leaves: {:?}", rep.checks);
    }
}

#[test]
fn scenario_json_round_trip() {
    let s = random_pleat_scenario(&mut rng(3), "json", 2);
    let back = PleatScenario::from_json(&s.to_json().unwrap()).unwrap();
    assert_eq!(s, back);
    assert!(PleatScenario::from_json("{\"label\": 1}").is_err());
}

fn random_point(g: &mut impl Rng, r: f64) -> Point {
    Point::from_spatial([g.gen_range(-r..r), g.gen_range(-r..r), g.gen_range(-r..r)])
}

#[test]
fn theta_equals_pi_at_coincidence() {
    let p = Point::from_spatial([0.2, 0.1, -0.3]);
    let y = Point::from_spatial([-0.4, 0.5, 0.2]);
    let x = IdealPoint::finite(1.5, -0.7);
    let b = ThetaBounds::default();
    assert!((theta_sum(&p, &p, &x, &y, b).unwrap() - PI).abs() < 1e-12);
    // constant in y, so its derivative vanishes
    let d = fd_derivative(
        |t| theta_sum(&p, &p, &x, &Point::from_spatial([-0.4 + t, 0.5, 0.2 - t]), b),
        0.0,
        &FdOptions::default(),
    )
    .unwrap();
    assert!(d.value.abs() < 1e-6);
}

#[test]
fn theta_gauss_form_matches_dihedral_angles() {
    let mut g = rng(21);
    let mut seen = 0;
    while seen < 100 {
        let (p, q, y) = (random_point(&mut g, 0.8), random_point(&mut g, 0.8), random_point(&mut g, 0.8));
        let x = IdealPoint::finite(g.gen_range(-2.0..2.0), g.gen_range(-2.0..2.0));
        let (Ok(a), Ok(b)) = (theta_sum(&p, &q, &x, &y, ThetaBounds::default()), theta_direct(&p, &q, &x, &y)) else {
            continue;
        };
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        seen += 1;
    }
}

#[test]
fn theta_is_continuous_through_collinearity() {
    let p = Point::from_spatial([0.1, 0.0, 0.0]);
    let y = Point::from_spatial([0.0, 0.6, 0.1]);
    let x = IdealPoint::finite(2.0, 1.0);
    let line = geodesic_through(&Vertex::Finite(y), &Vertex::Finite(p)).unwrap();
    let beyond = line.point_at(line.project(&p) + 0.3);
    let theta = |e: f64| {
        let q = Point::from_spatial([beyond.spatial()[0], beyond.spatial()[1], beyond.spatial()[2] + e]);
        theta_sum(&p, &q, &x, &y, ThetaBounds::default()).unwrap()
    };
    let mid = theta(0.0);
    assert!(mid.is_finite());
    assert!((theta(1e-9) - mid).abs() < 1e-8);
    assert!((theta(-1e-9) - mid).abs() < 1e-8);
}

#[test]
fn theta_deviation_scales_with_distance() {
    let p = Point::from_spatial([0.1, -0.2, 0.0]);
    let y = Point::from_spatial([0.0, 0.6, 0.1]);
    let x = IdealPoint::finite(-1.0, 2.0);
    let ratio = |d: f64| {
        let q = Point::from_spatial([0.1 + d, -0.2 + 0.5 * d, 0.3 * d]);
        (theta_sum(&p, &q, &x, &y, ThetaBounds::default()).unwrap() - PI).abs() / p.dist(&q)
    };
    let (a, b, c) = (ratio(1e-2), ratio(1e-3), ratio(1e-4));
    assert!(a < 10.0 && b < 10.0 && c < 10.0);
    assert!((b - c).abs() < 0.05 * c.max(1e-3), "{a} {b} {c}");
}

#[test]
fn theta_rejects_apex_near_the_edges() {
    let p = Point::from_spatial([0.1, 0.0, 0.0]);
    let x = IdealPoint::finite(2.0, 1.0);
    let g = geodesic_through(&Vertex::Finite(p), &Vertex::Ideal(x)).unwrap();
    let y = g.point_at(g.project(&p) + 0.5);
    let q = Point::from_spatial([0.0, 0.3, 0.0]);
    assert!(matches!(theta_sum(&p, &q, &x, &y, ThetaBounds::default()), Err(Error::ApexTooClose { .. })));
}

#[test]
fn gap_lengths_and_apex_terms_decay_with_radius() {
    let cfg = DecayConfig::default();
    let rep = decay_diagnostics(&cfg, 0.0, &FdOptions::with_step(4e-3)).unwrap();
    assert_eq!(rep.gap_by_radius.len(), cfg.depth as usize);
    assert!(rep.gap_monotone && rep.apex_monotone);
    assert!(rep.gap_rate > 0.5 && rep.apex_rate > 0.5, "{rep:?}");
    assert!(rep.max_per_radius <= 4);
    for (&r, &l) in &rep.gap_by_radius {
        assert!(l <= rep.gap_constant * (-rep.gap_rate * f64::from(r)).exp() * (1.0 + 1e-12));
    }
    for (&r, &v) in &rep.apex_term_by_radius {
        let bound = rep.apex_constant * f64::from(r) * (-rep.apex_rate * f64::from(r)).exp();
        assert!(v <= bound * (1.0 + 1e-12));
    }
}

#[test]
fn exponential_fit_recovers_rate() {
    let r: Vec<f64> = (1..8).map(f64::from).collect();
    let v: Vec<f64> = r.iter().map(|x| 3.0 * (-0.7 * x).exp()).collect();
    let (a, c) = fit_exponential(&r, &v);
    assert!((a - 0.7).abs() < 1e-12 && (c - 3.0).abs() < 1e-10);
}
