//! Volumes of geodesic tetrahedra and signed simplicial chains.

mod chain;
mod lobachevsky;
mod tet;

pub use chain::{chain_volume, ChainSimplex, SimplicialChain};
pub use lobachevsky::{ideal_tet_volume, lobachevsky, regular_ideal_volume};
pub use tet::{orientation, signed_volume_of, tet_volume_signed, Tetrahedron, FLAT_TOL};
