//! Seeded random deformation families used by the built-in verification
//! suite and the tests.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::family::{DeformationFamily, PolyPath};
use crate::error::Result;
use crate::kernel::{screw_motion, Geodesic, IdealPoint, Point, Vertex};
use crate::schlafli::{PolyhedralSurfaceMap, Polyhedron, TET_FACES};
use crate::volume::{chain_volume, orientation};

/// Seed used by the suite unless overridden.
pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ball(rng: &mut ChaCha8Rng, r: f64) -> [f64; 3] {
    loop {
        let p = [rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r)];
        if p.iter().map(|x| x * x).sum::<f64>() <= r * r {
            return p;
        }
    }
}

fn random_path(rng: &mut ChaCha8Rng, base: [f64; 3], degree: usize, scale: f64) -> PolyPath {
    let mut coeffs = vec![base];
    for _ in 0..degree {
        coeffs.push(ball(rng, scale));
    }
    PolyPath { coeffs }
}

fn tet_from_paths(paths: &[PolyPath], t: f64) -> Result<Polyhedron> {
    let vs: Vec<Point> = paths.iter().map(|p| p.at(t)).collect();
    Polyhedron::new(vs, TET_FACES.iter().map(|f| f.to_vec()).collect())
}

/// A tetrahedron whose vertices follow independent cubic paths, positively
/// oriented and comfortably non-degenerate over the whole interval.
pub fn random_tet_family(rng: &mut ChaCha8Rng, label: impl Into<String>) -> DeformationFamily<Polyhedron> {
    let eps = 0.05;
    loop {
        let mut paths: Vec<PolyPath> = (0..4)
            .map(|_| {
                let base = ball(rng, 1.0);
                random_path(rng, base, 3, 0.6)
            })
            .collect();
        let vol0 = |ps: &[PolyPath]| tet_from_paths(ps, 0.0).and_then(|p| p.volume()).unwrap_or(0.0);
        if vol0(&paths) < 0.0 {
            paths.swap(0, 1);
        }
        let ok = [0.0, eps / 2.0, eps].iter().all(|&t| {
            let vs: Vec<Point> = paths.iter().map(|p| p.at(t)).collect();
            let min_edge = (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .map(|(i, j)| vs[i].dist(&vs[j]))
                .fold(f64::INFINITY, f64::min);
            min_edge > 0.25 && tet_from_paths(&paths, t).and_then(|p| p.volume()).unwrap_or(0.0) > 0.02
        });
        if ok {
            return DeformationFamily::new(label, eps, Some(3), move |t| tet_from_paths(&paths, t));
        }
    }
}

/// A fixed tetrahedron carried along by screw motions `t ↦ U^{tz}` about
/// a random axis.
pub fn rigid_motion_family(rng: &mut ChaCha8Rng) -> DeformationFamily<Polyhedron> {
    let base = random_tet_family(rng, "rigid").at(0.0).expect("base tetrahedron");
    let a = IdealPoint::finite(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let b = IdealPoint::finite(rng.gen_range(2.0..3.0), rng.gen_range(-1.0..1.0));
    let axis = Geodesic::from_endpoints(a, b).expect("distinct endpoints");
    let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    DeformationFamily::new("rigid motion", 0.05, None, move |t| {
        let g = screw_motion(&axis, z * t);
        base.with_vertices(base.vertices.iter().map(|p| g.apply_point(p)).collect())
    })
}

/// Outward triangles of the octahedron on `±e1, ±e2, ±e3` (vertex `2k` is
/// `+e_{k+1}`, vertex `2k+1` is `-e_{k+1}`).
pub fn octahedron_triangles() -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for sx in [0, 1] {
        for sy in [0, 1] {
            for sz in [0, 1] {
                let (x, y, z) = (sx, 2 + sy, 4 + sz);
                if (sx + sy + sz) % 2 == 0 {
                    out.push([x, y, z]);
                } else {
                    out.push([x, z, y]);
                }
            }
        }
    }
    out
}

/// Octahedral 2-sphere with randomly moving vertices, bounded by the cone
/// from a fixed random apex (not necessarily inside the sphere).
pub fn octahedral_family(rng: &mut ChaCha8Rng, label: impl Into<String>) -> DeformationFamily<PolyhedralSurfaceMap> {
    let (paths, apex) = octahedral_paths(rng);
    surface_family(label, paths, apex)
}

/// Paths and apex of a random octahedral family, exposed so the same
/// surface can be given several bounding chains.
pub fn octahedral_paths(rng: &mut ChaCha8Rng) -> (Vec<PolyPath>, [f64; 3]) {
    let r = 0.9;
    let eps = 0.05;
    loop {
        let mut paths = Vec::new();
        for k in 0..3 {
            for s in [1.0, -1.0] {
                let mut base = ball(rng, 0.2);
                base[k] += s * r;
                paths.push(random_path(rng, base, 3, 0.5));
            }
        }
        let apex = ball(rng, 0.6);
        let ok = [0.0, eps].iter().all(|&t| {
            octahedron_surface(&paths, apex, t)
                .map(|s| {
                    s.bounding_chain.tetrahedra().all(|tet| orientation(&tet.vectors()) != 0)
                        && chain_volume(&s.bounding_chain) > 0.5
                })
                .unwrap_or(false)
        });
        if ok {
            return (paths, apex);
        }
    }
}

fn octahedron_surface(paths: &[PolyPath], apex: [f64; 3], t: f64) -> Result<PolyhedralSurfaceMap> {
    let images = paths.iter().map(|p| p.at(t)).collect();
    PolyhedralSurfaceMap::with_cone(octahedron_triangles(), images, Vertex::Finite(Point::from_spatial(apex)))
}

pub fn surface_family(
    label: impl Into<String>,
    paths: Vec<PolyPath>,
    apex: [f64; 3],
) -> DeformationFamily<PolyhedralSurfaceMap> {
    DeformationFamily::new(label, 0.05, Some(3), move |t| octahedron_surface(&paths, apex, t))
}
