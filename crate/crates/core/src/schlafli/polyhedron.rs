use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{edge_external_angle, mink_cross, normalize_spacelike, Point, Vec4, Vertex};
use crate::volume::SimplicialChain;

/// Tolerance on the distance of a face vertex from the face plane.
pub const PLANARITY_TOL: f64 = 1e-9;

/// An edge with the face on its left along `a -> b` and the face on its
/// left along `b -> a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub left: usize,
    pub right: usize,
}

/// Polyhedron with totally geodesic faces given as vertex cycles, oriented
/// so that each face runs counterclockwise seen from outside. Convexity is
/// not required.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyhedron {
    pub vertices: Vec<Point>,
    pub faces: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

/// Length and external angle of one edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeDatum {
    pub edge: (usize, usize),
    pub length: f64,
    pub external_angle: f64,
}

/// Pairs every directed edge of the face cycles with its reverse.
pub(crate) fn pair_edges(faces: &[Vec<usize>], n_vertices: usize) -> Result<Vec<Edge>> {
    let mut directed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (f, face) in faces.iter().enumerate() {
        if face.len() < 3 {
            return Err(Error::Degenerate(format!("face {f} has fewer than three vertices")));
        }
        for i in 0..face.len() {
            let (a, b) = (face[i], face[(i + 1) % face.len()]);
            if a >= n_vertices || b >= n_vertices {
                return Err(Error::IndexMismatch(format!("face {f} uses vertex {} of {n_vertices}", a.max(b))));
            }
            if directed.insert((a, b), f).is_some() {
                return Err(Error::UnmatchedBoundary(format!("directed edge {a}->{b} used twice")));
            }
        }
    }
    let mut edges = Vec::new();
    for (&(a, b), &left) in &directed {
        match directed.get(&(b, a)) {
            Some(&right) if a < b => edges.push(Edge { a, b, left, right }),
            Some(_) => {}
            None => {
                return Err(Error::UnmatchedBoundary(format!("edge {a}->{b} has no opposite face")));
            }
        }
    }
    Ok(edges)
}

/// Normal of a (planar) face cycle, summed over its fan so that the result
/// does not depend on which vertex is first.
pub(crate) fn face_normal(vs: &[Vec4]) -> Result<Vec4> {
    let mut n = Vec4::zeros();
    for i in 1..vs.len() - 1 {
        n += mink_cross(&vs[0], &vs[i], &vs[i + 1]);
    }
    normalize_spacelike(&n).ok_or_else(|| Error::Degenerate("face with no well-defined plane".into()))
}

impl Polyhedron {
    pub fn new(vertices: Vec<Point>, faces: Vec<Vec<usize>>) -> Result<Self> {
        let edges = pair_edges(&faces, vertices.len())?;
        let p = Polyhedron { vertices, faces, edges };
        for f in 0..p.faces.len() {
            let n = p.normal(f)?;
            for &v in &p.faces[f] {
                let off = crate::kernel::mink_inner(&n, p.vertices[v].coords()).asinh().abs();
                if off > PLANARITY_TOL {
                    return Err(Error::Degenerate(format!("face {f} is not planar (offset {off:e})")));
                }
            }
        }
        Ok(p)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Outward unit normal of face `f`.
    pub fn normal(&self, f: usize) -> Result<Vec4> {
        let vs: Vec<Vec4> = self.faces[f].iter().map(|&i| *self.vertices[i].coords()).collect();
        face_normal(&vs)
    }

    /// Same combinatorics at new vertex positions.
    pub fn with_vertices(&self, vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() != self.vertices.len() {
            return Err(Error::IndexMismatch("vertex count changed".into()));
        }
        Polyhedron::new(vertices, self.faces.clone())
    }

    /// Cone from the vertex barycenter over fan-triangulated faces.
    pub fn to_chain(&self) -> Result<SimplicialChain> {
        let center = Point::centroid(&self.vertices)?;
        let mut verts: Vec<Vertex> = self.vertices.iter().copied().map(Vertex::Finite).collect();
        verts.push(Vertex::Finite(center));
        let apex = verts.len() - 1;
        let mut chain = SimplicialChain::new("polyhedron", verts);
        for face in &self.faces {
            for i in 1..face.len() - 1 {
                chain.push([apex, face[0], face[i], face[i + 1]], 1)?;
            }
        }
        Ok(chain)
    }

    pub fn volume(&self) -> Result<f64> {
        Ok(crate::volume::chain_volume(&self.to_chain()?))
    }
}

/// Lengths and signed external angles of every edge. The angle is 0 where
/// the boundary is flat, π where the two faces fold onto each other, and
/// negative at reflex edges.
pub fn edge_data(p: &Polyhedron) -> Result<Vec<EdgeDatum>> {
    let normals = (0..p.faces.len()).map(|f| p.normal(f)).collect::<Result<Vec<_>>>()?;
    surface_edge_data(&p.vertices, p.edges(), &normals)
}

pub(crate) fn surface_edge_data(vertices: &[Point], edges: &[Edge], normals: &[Vec4]) -> Result<Vec<EdgeDatum>> {
    edges
        .iter()
        .map(|e| {
            let a = &vertices[e.a];
            let b = &vertices[e.b];
            Ok(EdgeDatum {
                edge: (e.a, e.b),
                length: a.distance(b)?,
                external_angle: edge_external_angle(a, b.coords(), &normals[e.left], &normals[e.right])?,
            })
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PolyhedronFile {
    pub vertices: Vec<[f64; 4]>,
    pub faces: Vec<Vec<usize>>,
}

impl Polyhedron {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: PolyhedronFile = serde_json::from_str(text)?;
        let vs = f.vertices.into_iter().map(Point::from_hyperboloid).collect::<Result<Vec<_>>>()?;
        Polyhedron::new(vs, f.faces)
    }

    pub fn to_json(&self) -> String {
        let f = PolyhedronFile {
            vertices: self.vertices.iter().map(|p| (*p.coords()).into()).collect(),
            faces: self.faces.clone(),
        };
        serde_json::to_string_pretty(&f).expect("polyhedron serializes")
    }
}

/// Faces of the tetrahedron `0 1 2 3`, outward for `det[v0..v3] > 0`.
pub const TET_FACES: [[usize; 3]; 4] = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]];

/// Tetrahedron as a polyhedron; the vertex order is swapped if needed so
/// that the faces are outward.
pub fn tetrahedron(vs: [Point; 4]) -> Result<Polyhedron> {
    let mut vs = vs;
    let d = crate::kernel::det4(vs[0].coords(), vs[1].coords(), vs[2].coords(), vs[3].coords());
    if d < 0.0 {
        vs.swap(0, 1);
    }
    Polyhedron::new(vs.to_vec(), TET_FACES.iter().map(|f| f.to_vec()).collect())
}
