use super::rectangle::PleatedRectangle;
use crate::kernel::{
    det4, edge_external_angle, mink_cross, normalize_spacelike, Plane, Point, Vertex,
};
use crate::schlafli::{PolyhedralSurfaceMap, Polyhedron, TET_FACES};
use crate::volume::{chain_volume, SimplicialChain};
use crate::{Error, Result};

/// Default lower bound on the distance from an apex to the leaves.
pub const APEX_FLOOR: f64 = 1e-3;

/// Smallest allowed distance from a vertex to the opposite face of a piece.
pub const PIECE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Bottom,
    Top,
}

/// The joint of an apex with the image of one side of a pleated rectangle:
/// triangle `k` is `(apex, base[k], base[k + 1])`, one per panel.
#[derive(Debug, Clone)]
pub struct PleatedFan {
    pub apex: Point,
    pub base: Vec<Point>,
    pub side: Side,
}

impl PleatedFan {
    pub fn triangles(&self) -> Vec<[Point; 3]> {
        self.base.windows(2).map(|w| [self.apex, w[0], w[1]]).collect()
    }

    /// Lengths of the interior fan edges `apex base[j]`, `j = 1..n`.
    pub fn leaf_lengths(&self) -> Vec<f64> {
        self.base[1..self.base.len() - 1].iter().map(|b| self.apex.dist(b)).collect()
    }

    /// External angle of the fan at each interior edge `apex base[j]`,
    /// measured with the triangle normals of `(apex, base[k], base[k + 1])`
    /// reversed, so that the side of the bent panels counts as inside.
    pub fn bends(&self) -> Result<Vec<f64>> {
        let normals = self
            .triangles()
            .iter()
            .map(|[a, b, c]| {
                normalize_spacelike(&mink_cross(a.coords(), b.coords(), c.coords()))
                    .map(|n| -n)
                    .ok_or_else(|| Error::Degenerate("flat fan triangle".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        (1..self.base.len() - 1)
            .map(|j| edge_external_angle(&self.apex, self.base[j].coords(), &normals[j - 1], &normals[j]))
            .collect()
    }
}

fn check_apex(apex: &Point, r: &PleatedRectangle, floor: f64) -> Result<()> {
    for j in 0..r.leaf_count() {
        let d = r.leaf_geodesic(j)?.distance_to(apex);
        if d < floor {
            return Err(Error::ApexTooClose { distance: d, floor });
        }
    }
    let bottom = r.bottom_images();
    let top = r.top_images();
    for k in 0..r.panel_count() {
        let plane = Plane::through(bottom[k].coords(), bottom[k + 1].coords(), top[k].coords())?;
        if plane.distance_to(apex) <= PIECE_TOL {
            return Err(Error::Degenerate(format!("apex lies in the plane of panel {k}")));
        }
    }
    Ok(())
}

/// Fan from `apex` over the image of one side. Fails if the apex is within
/// `floor` of a leaf or lies in the plane of a panel.
pub fn fan_build(apex: Point, r: &PleatedRectangle, side: Side, floor: f64) -> Result<PleatedFan> {
    check_apex(&apex, r, floor)?;
    let base = match side {
        Side::Bottom => r.bottom_images(),
        Side::Top => r.top_images(),
    };
    Ok(PleatedFan { apex, base, side })
}

/// One pyramid over each panel with apex `y`, and one tetrahedron
/// `x y p q` over each bottom edge `p q`.
///
/// Vertex table: `B_0..B_{n+1}`, then `T_0..T_{n+1}`, then `x`, `y`. Panel
/// `k` has `p = B_k`, `q = B_{k+1}`, `r = T_k`, `s = T_{k+1}`.
#[derive(Debug, Clone)]
pub struct PrismDecomposition {
    pub rect: PleatedRectangle,
    pub vertices: Vec<Point>,
    /// Divergence radius of each panel, when known.
    pub radii: Option<Vec<u32>>,
}

/// Local vertex order of a pyramid: `y p q s r`.
pub const PYRAMID_FACES: [&[usize]; 5] = [&[1, 2, 3, 4], &[0, 2, 1], &[0, 3, 2], &[0, 4, 3], &[0, 1, 4]];

fn reversed_faces(faces: &[&[usize]], flip: bool) -> Vec<Vec<usize>> {
    faces
        .iter()
        .map(|f| {
            let mut f = f.to_vec();
            if flip {
                f.reverse();
            }
            f
        })
        .collect()
}

fn min_height(vs: &[Point; 4]) -> f64 {
    (0..4)
        .map(|i| {
            let o: Vec<&Point> = (0..4).filter(|&j| j != i).map(|j| &vs[j]).collect();
            Plane::through(o[0].coords(), o[1].coords(), o[2].coords()).map_or(0.0, |p| p.distance_to(&vs[i]))
        })
        .fold(f64::INFINITY, f64::min)
}

impl PrismDecomposition {
    pub fn component_count(&self) -> usize {
        self.rect.panel_count()
    }

    pub fn b(&self, k: usize) -> usize {
        k
    }

    pub fn t(&self, k: usize) -> usize {
        self.rect.leaf_count() + 2 + k
    }

    pub fn x(&self) -> usize {
        self.vertices.len() - 2
    }

    pub fn y(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Pyramid `k` as vertex indices `y p q s r`.
    pub fn pyramid(&self, k: usize) -> [usize; 5] {
        [self.y(), self.b(k), self.b(k + 1), self.t(k + 1), self.t(k)]
    }

    /// Tetrahedron `k` as vertex indices `x y p q`.
    pub fn tet(&self, k: usize) -> [usize; 4] {
        [self.x(), self.y(), self.b(k), self.b(k + 1)]
    }

    fn pts<const N: usize>(&self, idx: [usize; N]) -> [Point; N] {
        idx.map(|i| self.vertices[i])
    }

    /// Orientation sign of pyramid `k` (that of its simplex `y p q s`).
    pub fn pyramid_sign(&self, k: usize) -> f64 {
        let [y, p, q, s, _] = self.pts(self.pyramid(k));
        det4(y.coords(), p.coords(), q.coords(), s.coords()).signum()
    }

    pub fn tet_sign(&self, k: usize) -> f64 {
        let [x, y, p, q] = self.pts(self.tet(k));
        det4(x.coords(), y.coords(), p.coords(), q.coords()).signum()
    }

    /// Pyramid `k` as a polyhedron with outward faces, local order `y p q s r`.
    pub fn pyramid_polyhedron(&self, k: usize) -> Result<Polyhedron> {
        let flip = self.pyramid_sign(k) < 0.0;
        Polyhedron::new(self.pts(self.pyramid(k)).to_vec(), reversed_faces(&PYRAMID_FACES, flip))
    }

    /// Tetrahedron `k` as a polyhedron with outward faces, local order `x y p q`.
    pub fn tet_polyhedron(&self, k: usize) -> Result<Polyhedron> {
        let flip = self.tet_sign(k) < 0.0;
        let faces: Vec<&[usize]> = TET_FACES.iter().map(|f| f.as_slice()).collect();
        Polyhedron::new(self.pts(self.tet(k)).to_vec(), reversed_faces(&faces, flip))
    }

    fn chain_with(&self, split: fn([usize; 5]) -> [[usize; 4]; 2]) -> Result<SimplicialChain> {
        let mut c = SimplicialChain::new("prism", self.vertices.iter().copied().map(Vertex::Finite).collect());
        for k in 0..self.component_count() {
            for s in split(self.pyramid(k)) {
                c.push(s, 1)?;
            }
            c.push(self.tet(k), 1)?;
        }
        Ok(c)
    }

    /// Pyramids split along `p s`, plus the tetrahedra.
    pub fn chain(&self) -> Result<SimplicialChain> {
        self.chain_with(|[y, p, q, s, r]| [[y, p, q, s], [y, p, s, r]])
    }

    /// Pyramids split along the other diagonal `q r`.
    pub fn alternate_chain(&self) -> Result<SimplicialChain> {
        self.chain_with(|[y, p, q, s, r]| [[y, p, q, r], [y, q, s, r]])
    }

    pub fn volume(&self) -> Result<f64> {
        Ok(chain_volume(&self.chain()?))
    }

    /// Closed triangulated boundary of the chain: the pleated rectangle,
    /// the cone from `y` over the other three sides, the fan from `x` over
    /// the bottom, and the two triangles on `x y`.
    pub fn boundary_triangles(&self) -> Vec<[usize; 3]> {
        let n1 = self.rect.leaf_count() + 1;
        let (x, y) = (self.x(), self.y());
        let mut tri = Vec::new();
        for k in 0..n1 {
            let (p, q, r, s) = (self.b(k), self.b(k + 1), self.t(k), self.t(k + 1));
            tri.push([p, q, s]);
            tri.push([p, s, r]);
            tri.push([y, r, s]);
            tri.push([x, q, p]);
        }
        tri.push([y, self.b(0), self.t(0)]);
        tri.push([y, self.t(n1), self.b(n1)]);
        tri.push([x, self.b(0), y]);
        tri.push([x, y, self.b(n1)]);
        tri
    }

    pub fn surface(&self) -> Result<PolyhedralSurfaceMap> {
        let n_surface = self.vertices.len();
        let mut chain = self.chain()?;
        chain.vertices.truncate(n_surface);
        PolyhedralSurfaceMap::new(self.boundary_triangles(), self.vertices.clone(), chain)
    }

    /// Surface vertex pairs of the leaf edges `B_j T_j`.
    pub fn leaf_edges(&self) -> Vec<(usize, usize)> {
        (1..=self.rect.leaf_count()).map(|j| (self.b(j), self.t(j))).collect()
    }

    pub fn fan(&self) -> PleatedFan {
        PleatedFan { apex: self.vertices[self.y()], base: self.vertices[..self.rect.leaf_count() + 2].to_vec(), side: Side::Bottom }
    }
}

/// Cuts the region between the pleated rectangle and the apexes into
/// pyramids and tetrahedra. Rejects apexes closer than `floor` to a leaf
/// and any flat piece.
pub fn prism_decompose(r: &PleatedRectangle, x: Point, y: Point, floor: f64) -> Result<PrismDecomposition> {
    check_apex(&y, r, floor)?;
    check_apex(&x, r, floor)?;
    let mut vertices = r.bottom_images();
    vertices.extend(r.top_images());
    vertices.push(x);
    vertices.push(y);
    let d = PrismDecomposition { rect: r.clone(), vertices, radii: None };
    for k in 0..d.component_count() {
        let [y, p, q, s, rr] = d.pts(d.pyramid(k));
        let h = min_height(&[y, p, q, s]).min(min_height(&[y, p, s, rr]));
        if h <= PIECE_TOL {
            return Err(Error::Degenerate(format!("pyramid {k} is flat")));
        }
        if min_height(&d.pts(d.tet(k))) <= PIECE_TOL {
            return Err(Error::Degenerate(format!("tetrahedron {k} is flat")));
        }
    }
    Ok(d)
}
