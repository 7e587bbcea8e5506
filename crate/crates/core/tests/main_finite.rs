use std::f64::consts::PI;

use schlafli_core::harness::scenarios::rng;
use schlafli_core::harness::*;
use schlafli_core::pleated::{random_pleat_scenario, PleatScenario};
use schlafli_core::schlafli::edge_data;

fn frozen(s: &PleatScenario) -> PleatScenario {
    let mut s = s.clone();
    for c in &mut s.corners {
        c.truncate(1);
    }
    s.x.truncate(1);
    s.y.truncate(1);
    for l in &mut s.leaves {
        l.bottom.truncate(1);
        l.top.truncate(1);
        l.bend.truncate(1);
    }
    s
}

#[test]
fn gram_tetrahedron_has_the_requested_angles() {
    let mut a = [[1.2; 4]; 4];
    for (i, j, v) in [(0, 1, 1.0), (0, 2, 1.1), (1, 3, 1.25), (2, 3, 1.15)] {
        a[i][j] = v;
        a[j][i] = v;
    }
    let tet = gram_tetrahedron(&a).unwrap();
    assert!(tet.volume().unwrap() > 0.0);
    for e in edge_data(&tet).unwrap() {
        let (k, l) = e.edge;
        let opp: Vec<usize> = (0..4).filter(|&m| m != k && m != l).collect();
        assert!((PI - e.external_angle - a[opp[0]][opp[1]]).abs() < 1e-10, "{:?}", e.edge);
    }
    assert!(gram_tetrahedron(&[[PI / 2.0; 4]; 4]).is_err());
}

#[test]
fn single_closed_leaf_gives_half_its_length() {
    let r = verify_single_leaf(0.01, &FdOptions::default(), Tolerance::default()).unwrap();
    assert!(r.pass, "{r:?}");
    assert!(r.rhs > 0.0);
    assert!(r.abs_gap < 1e-6);
}

#[test]
fn five_leaf_family_passes() {
    let s = random_pleat_scenario(&mut rng(2024), "five", 5);
    let m = verify_main_finite(&s.family(), &s.bend_family(), 0.01, &FdOptions::default(), Tolerance::default()).unwrap();
    assert!(m.report.pass, "{:?}", m.report);
    assert!(m.report.abs_gap < 1e-6);
    assert!(m.fans.pass);
    assert!(m.report.notes.iter().any(|n| n == SURROGATE_NOTE));
}

#[test]
fn constant_bending_gives_zero() {
    let s = frozen(&random_pleat_scenario(&mut rng(8), "still", 4));
    let m = verify_main_finite(&s.family(), &s.bend_family(), 0.01, &FdOptions::default(), Tolerance::default()).unwrap();
    assert!(m.report.pass);
    assert!(m.report.lhs.abs() < 1e-12 && m.report.rhs.abs() < 1e-12);
}

#[test]
fn leaf_term_is_linear_in_the_bending() {
    let mut s = frozen(&random_pleat_scenario(&mut rng(9), "linear", 4));
    let b: Vec<f64> = [0.7, -1.1, 0.4, 0.9].to_vec();
    for (l, bj) in s.leaves.iter_mut().zip(&b) {
        l.bend = vec![0.0, *bj];
    }
    let rect = s.rectangle_at(0.0).unwrap();
    let expected = 0.5 * rect.leaves.iter().zip(&b).map(|(l, bj)| l.length() * bj).sum::<f64>();
    for t0 in [0.005, 0.0125, 0.025] {
        let m = verify_main_finite(&s.family(), &s.bend_family(), t0, &FdOptions::default(), Tolerance::default()).unwrap();
        assert!((m.leaf_term - expected).abs() < 1e-9, "{t0}: {}", m.leaf_term);
        assert!(m.report.pass, "{:?}", m.report);
    }
}

#[test]
fn mismatched_bend_paths_are_rejected() {
    let s = random_pleat_scenario(&mut rng(4), "short", 3);
    let bends = DeformationFamily::new("two", 0.05, None, |_| Ok(vec![0.0, 0.0]));
    assert!(verify_main_finite(&s.family(), &bends, 0.01, &FdOptions::default(), Tolerance::default()).is_err());
}
