//! Volume derivatives of deforming polyhedra and of polyhedral surfaces
//! bounding 3-chains, from edge lengths and external dihedral angles.

mod derivative;
mod polyhedron;
mod surface;

pub use derivative::{
    corollary2_derivative, corollary2_terms, schlafli_derivative, schlafli_terms, EdgeTerm, SchlafliTerms,
};
pub use polyhedron::{edge_data, tetrahedron, Edge, EdgeDatum, Polyhedron, PLANARITY_TOL, TET_FACES};
pub use surface::{cone_chain, internal_edge_check, EdgeCheckReport, EdgeSum, PolyhedralSurfaceMap};
