use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::polyhedron::{pair_edges, surface_edge_data, Edge, EdgeDatum};
use crate::error::{Error, Result};
use crate::kernel::{internal_angle, mink_cross, normalize_spacelike, Geodesic, IdealPoint, Point, Vec4, Vertex};
use crate::volume::{orientation, SimplicialChain};

/// A closed oriented triangulated surface mapped into H^3 by its vertex
/// images, with a 3-chain whose boundary is the image 2-cycle. The chain's
/// first `images.len()` vertices are the images, in order.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralSurfaceMap {
    pub triangles: Vec<[usize; 3]>,
    pub images: Vec<Point>,
    pub bounding_chain: SimplicialChain,
    edges: Vec<Edge>,
}

/// The 2-cycle of a list of oriented triangles, keyed like
/// `SimplicialChain::boundary`.
fn triangle_cycle(triangles: &[[usize; 3]]) -> BTreeMap<[usize; 3], i32> {
    let mut out = BTreeMap::new();
    for t in triangles {
        let mut s = *t;
        let mut parity = 1;
        for i in 0..3 {
            for j in 0..2 - i {
                if s[j] > s[j + 1] {
                    s.swap(j, j + 1);
                    parity = -parity;
                }
            }
        }
        *out.entry(s).or_insert(0) += parity;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Cone from `apex` over the triangles: `Σ (apex, a, b, c)`, whose boundary
/// is the triangle cycle of a closed surface.
pub fn cone_chain(triangles: &[[usize; 3]], images: &[Point], apex: Vertex) -> Result<SimplicialChain> {
    let mut verts: Vec<Vertex> = images.iter().copied().map(Vertex::Finite).collect();
    verts.push(apex);
    let y = verts.len() - 1;
    let mut chain = SimplicialChain::new("cone", verts);
    for t in triangles {
        chain.push([y, t[0], t[1], t[2]], 1)?;
    }
    Ok(chain)
}

impl PolyhedralSurfaceMap {
    pub fn new(triangles: Vec<[usize; 3]>, images: Vec<Point>, bounding_chain: SimplicialChain) -> Result<Self> {
        let faces: Vec<Vec<usize>> = triangles.iter().map(|t| t.to_vec()).collect();
        let edges = pair_edges(&faces, images.len())?;
        if bounding_chain.vertices.len() < images.len() {
            return Err(Error::IndexMismatch("bounding chain lacks the surface vertices".into()));
        }
        for (i, p) in images.iter().enumerate() {
            let same = match bounding_chain.vertices[i] {
                Vertex::Finite(q) => (q.coords() - p.coords()).norm() <= 1e-12 * p.coords()[0],
                Vertex::Ideal(_) => false,
            };
            if !same {
                return Err(Error::IndexMismatch(format!("chain vertex {i} is not the image of surface vertex {i}")));
            }
        }
        if bounding_chain.boundary() != triangle_cycle(&triangles) {
            return Err(Error::UnmatchedBoundary("boundary of the chain differs from the surface cycle".into()));
        }
        Ok(PolyhedralSurfaceMap { triangles, images, bounding_chain, edges })
    }

    /// Surface bounded by the cone from `apex`.
    pub fn with_cone(triangles: Vec<[usize; 3]>, images: Vec<Point>, apex: Vertex) -> Result<Self> {
        let chain = cone_chain(&triangles, &images, apex)?;
        Self::new(triangles, images, chain)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Unit normal of triangle `f`, on the side where the bounding chain
    /// (with positive coefficient) is not.
    pub fn normal(&self, f: usize) -> Result<Vec4> {
        let [a, b, c] = self.triangles[f].map(|i| *self.images[i].coords());
        normalize_spacelike(&mink_cross(&a, &b, &c)).ok_or_else(|| Error::Degenerate(format!("triangle {f} is flat")))
    }

    /// Lengths and external angles of the surface edges.
    pub fn edge_data(&self) -> Result<Vec<EdgeDatum>> {
        let normals = (0..self.triangles.len()).map(|f| self.normal(f)).collect::<Result<Vec<_>>>()?;
        surface_edge_data(&self.images, &self.edges, &normals)
    }
}

/// Signed sum of internal dihedral angles of the chain simplices at one edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeSum {
    pub edge: (usize, usize),
    pub angle_sum: f64,
    /// Distance from the expected value, measured in `R / 2πZ`.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeCheckReport {
    /// Chain edges that are not surface edges; expected sum `0 mod 2π`.
    pub interior: Vec<EdgeSum>,
    /// Surface edges; expected `π - sum ≡ b(e) mod 2π`.
    pub surface: Vec<EdgeSum>,
    pub max_interior_deviation: f64,
    pub max_surface_deviation: f64,
}

fn wrap_abs(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    y.min(2.0 * PI - y)
}

/// A finite point on the line through two chain vertices, used as the base
/// of the angle measurement there, and the other end.
fn edge_base(a: &Vertex, b: &Vertex) -> Result<(Point, Vec4)> {
    match (a, b) {
        (Vertex::Finite(p), _) => Ok((*p, b.vector())),
        (_, Vertex::Finite(q)) => Ok((*q, a.vector())),
        (Vertex::Ideal(x), Vertex::Ideal(y)) => {
            let g = Geodesic::from_endpoints(*x, *y)?;
            Ok((g.point_at(0.0), IdealPoint::null_vector(y)))
        }
    }
}

/// Checks that the chain closes up around every edge not on the surface,
/// and that at surface edges it reproduces the surface's external angle.
///
/// Each simplex contributes its internal dihedral angle at the edge,
/// weighted by its chain coefficient times its orientation sign.
pub fn internal_edge_check(chain: &SimplicialChain, surface: &PolyhedralSurfaceMap) -> Result<EdgeCheckReport> {
    if chain.boundary() != triangle_cycle(&surface.triangles) {
        return Err(Error::UnmatchedBoundary("boundary of the chain differs from the surface cycle".into()));
    }
    let mut sums: BTreeMap<(usize, usize), Vec<f64>> = BTreeMap::new();
    for s in &chain.simplices {
        let vs = s.v.map(|i| chain.vertices[i]);
        let o = orientation(&vs.map(|v| v.vector()));
        if o == 0 {
            continue;
        }
        let sigma = f64::from(s.sign * o);
        for i in 0..4 {
            for j in i + 1..4 {
                let others: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
                let (base, far) = edge_base(&vs[i], &vs[j])?;
                let theta = internal_angle(&base, &far, &vs[others[0]].vector(), &vs[others[1]].vector())?;
                let key = (s.v[i].min(s.v[j]), s.v[i].max(s.v[j]));
                sums.entry(key).or_default().push(sigma * theta);
            }
        }
    }
    let surface_angles: BTreeMap<(usize, usize), f64> =
        surface.edge_data()?.into_iter().map(|d| (d.edge, d.external_angle)).collect();
    let mut interior = Vec::new();
    let mut on_surface = Vec::new();
    for (edge, parts) in sums {
        let angle_sum = crate::kernel::compensated_sum(parts);
        match surface_angles.get(&edge) {
            Some(b) => on_surface.push(EdgeSum { edge, angle_sum, deviation: wrap_abs(PI - angle_sum - b) }),
            None => interior.push(EdgeSum { edge, angle_sum, deviation: wrap_abs(angle_sum) }),
        }
    }
    let max = |v: &[EdgeSum]| v.iter().map(|e| e.deviation).fold(0.0, f64::max);
    Ok(EdgeCheckReport {
        max_interior_deviation: max(&interior),
        max_surface_deviation: max(&on_surface),
        interior,
        surface: on_surface,
    })
}
