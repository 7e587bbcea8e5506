use std::f64::consts::PI;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schlafli_core::kernel::{IdealPoint, Point, Vertex};
use schlafli_core::oracle::{lobachevsky_quadrature, tet_volume_quadrature};
use schlafli_core::volume::{
    chain_volume, ideal_tet_volume, lobachevsky, regular_ideal_volume, tet_volume_signed, SimplicialChain, Tetrahedron,
};

fn random_point(rng: &mut ChaCha8Rng, r: f64) -> Point {
    Point::from_spatial([rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r)])
}

fn random_tet(rng: &mut ChaCha8Rng, r: f64) -> [Point; 4] {
    [random_point(rng, r), random_point(rng, r), random_point(rng, r), random_point(rng, r)]
}

fn tet(p: &[Point; 4]) -> Tetrahedron {
    Tetrahedron::new(p.map(Vertex::Finite))
}

#[test]
fn lobachevsky_matches_quadrature() {
    for i in 1..200 {
        let t = -PI + 2.0 * PI * f64::from(i) / 200.0;
        let d = (lobachevsky(t) - lobachevsky_quadrature(t)).abs();
        assert!(d < 1e-12, "theta {t}: {d}");
    }
}

#[test]
fn finite_tetrahedra_match_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let p = random_tet(&mut rng, 1.0);
        let v = tet_volume_signed(&tet(&p));
        let q = tet_volume_quadrature(&p, 24);
        assert!((v.abs() - q).abs() < 1e-6, "{v} vs {q}");
        let det = schlafli_core::kernel::det4(p[0].coords(), p[1].coords(), p[2].coords(), p[3].coords());
        assert_eq!(v.signum(), det.signum());
    }
}

#[test]
fn odd_permutation_negates() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let p = random_tet(&mut rng, 1.5);
        let v = tet_volume_signed(&tet(&p));
        let w = tet_volume_signed(&tet(&[p[1], p[0], p[2], p[3]]));
        let x = tet_volume_signed(&tet(&[p[0], p[2], p[3], p[1]]));
        assert!((v + w).abs() < 1e-12);
        assert!((v - x).abs() < 1e-12);
    }
}

#[test]
fn subdivision_by_interior_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let p = random_tet(&mut rng, 1.5);
        let y = Point::centroid(&[p[0], p[1], p[2], p[3]]).unwrap();
        let whole = tet_volume_signed(&tet(&p));
        let mut parts = 0.0;
        for i in 0..4 {
            let mut q = p;
            q[i] = y;
            parts += tet_volume_signed(&tet(&q));
        }
        assert!((whole - parts).abs() < 1e-9, "{whole} vs {parts}");
    }
}

#[test]
fn ideal_and_mixed_vertices_subdivide() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let mut v: Vec<Vertex> = (0..2).map(|_| Vertex::Finite(random_point(&mut rng, 1.0))).collect();
        for _ in 0..2 {
            v.push(Vertex::Ideal(IdealPoint::finite(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))));
        }
        let vs: [Vertex; 4] = v.clone().try_into().unwrap();
        let y = Vertex::Finite(random_point(&mut rng, 0.3));
        let whole = tet_volume_signed(&Tetrahedron::new(vs));
        let mut parts = 0.0;
        for i in 0..4 {
            let mut q = vs;
            q[i] = y;
            parts += tet_volume_signed(&Tetrahedron::new(q));
        }
        assert!((whole - parts).abs() < 1e-9, "{whole} vs {parts}");
        assert!(whole.abs() <= regular_ideal_volume() + 1e-9);
    }
}

#[test]
fn ideal_tet_from_angles_matches_vertex_form() {
    // ideal tetrahedron 0, 1, z, ∞ has dihedral angles arg z, arg 1/(1-z), arg (1-1/z)
    let z = num_complex::Complex64::new(0.3, 0.8);
    let a = z.arg();
    let b = (1.0 / (1.0 - z)).arg();
    let c = (1.0 - 1.0 / z).arg();
    let from_angles = ideal_tet_volume(a, b, c).unwrap();
    let t = Tetrahedron::new([
        IdealPoint::finite(0.0, 0.0).into(),
        IdealPoint::finite(1.0, 0.0).into(),
        IdealPoint::Finite(z).into(),
        IdealPoint::Infinity.into(),
    ]);
    assert!((tet_volume_signed(&t).abs() - from_angles).abs() < 1e-12);
    let third = PI / 3.0;
    assert!((ideal_tet_volume(third, third, third).unwrap() - 3.0 * lobachevsky_quadrature(third)).abs() < 1e-12);
}

#[test]
fn chain_reordering_and_json() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let tets: Vec<Tetrahedron> = (0..5).map(|_| tet(&random_tet(&mut rng, 1.0))).collect();
    let c = SimplicialChain::from_tetrahedra("five", &tets).unwrap();
    let mut rev = tets.clone();
    rev.reverse();
    let d = SimplicialChain::from_tetrahedra("five", &rev).unwrap();
    assert!((chain_volume(&c) - chain_volume(&d)).abs() < 1e-13);
    let e = SimplicialChain::from_json(&c.to_json()).unwrap();
    assert!((chain_volume(&c) - chain_volume(&e)).abs() < 1e-13);
    assert!((chain_volume(&c.concat(&d)) - 2.0 * chain_volume(&c)).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lobachevsky_odd_periodic(t in -20.0f64..20.0) {
        prop_assert!((lobachevsky(-t) + lobachevsky(t)).abs() <= 1e-10);
        prop_assert!((lobachevsky(t + PI) - lobachevsky(t)).abs() <= 1e-10);
    }

    #[test]
    fn regular_ideal_is_maximal(a in 1e-4f64..PI, f in 0.0f64..1.0) {
        let b = (PI - a) * f.clamp(1e-4, 1.0 - 1e-4);
        let c = PI - a - b;
        prop_assume!(c > 0.0);
        prop_assert!(ideal_tet_volume(a, b, c).unwrap() <= regular_ideal_volume() + 1e-14);
        prop_assert!((ideal_tet_volume(a, b, c).unwrap() - ideal_tet_volume(c, a, b).unwrap()).abs() <= 1e-14);
    }
}
