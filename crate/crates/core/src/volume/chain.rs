use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::tet::{tet_volume_signed, Tetrahedron};
use crate::error::{Error, Result};
use crate::kernel::{compensated_sum, IdealPoint, Point, Vertex};

/// One simplex of a chain: four indices into the chain's vertex table and a
/// coefficient `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSimplex {
    pub v: [usize; 4],
    pub sign: i32,
}

/// Signed finite sum of geodesic tetrahedra over a shared vertex table.
/// Sharing vertices lets the boundary operator pair faces exactly.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SimplicialChain {
    pub label: String,
    pub vertices: Vec<Vertex>,
    pub simplices: Vec<ChainSimplex>,
}

impl SimplicialChain {
    pub fn new(label: impl Into<String>, vertices: Vec<Vertex>) -> Self {
        SimplicialChain { label: label.into(), vertices, simplices: Vec::new() }
    }

    pub fn push(&mut self, v: [usize; 4], sign: i32) -> Result<()> {
        if let Some(&bad) = v.iter().find(|&&i| i >= self.vertices.len()) {
            return Err(Error::IndexMismatch(format!(
                "simplex vertex {bad} out of range for {} vertices",
                self.vertices.len()
            )));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::Precondition(format!("chain coefficient {sign} is not ±1")));
        }
        self.simplices.push(ChainSimplex { v, sign });
        Ok(())
    }

    /// Builds a chain from free-standing tetrahedra, merging vertices that
    /// agree to within `1e-12`.
    pub fn from_tetrahedra(label: impl Into<String>, tets: &[Tetrahedron]) -> Result<Self> {
        let mut chain = SimplicialChain::new(label, Vec::new());
        for t in tets {
            let mut idx = [0usize; 4];
            for (slot, vert) in idx.iter_mut().zip(t.vertices.iter()) {
                *slot = chain.intern(vert);
            }
            chain.push(idx, t.sign)?;
        }
        Ok(chain)
    }

    fn intern(&mut self, v: &Vertex) -> usize {
        let key = v.vector();
        let scale = key.norm().max(1.0);
        if let Some(i) = self.vertices.iter().position(|w| {
            w.is_ideal() == v.is_ideal() && (w.vector() - key).norm() <= 1e-12 * scale
        }) {
            return i;
        }
        self.vertices.push(*v);
        self.vertices.len() - 1
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn tetrahedron(&self, s: &ChainSimplex) -> Tetrahedron {
        Tetrahedron::with_sign(s.v.map(|i| self.vertices[i]), s.sign)
    }

    pub fn tetrahedra(&self) -> impl Iterator<Item = Tetrahedron> + '_ {
        self.simplices.iter().map(|s| self.tetrahedron(s))
    }

    /// Same simplices with every coefficient negated.
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        for s in &mut out.simplices {
            s.sign = -s.sign;
        }
        out
    }

    /// Formal sum of two chains; the vertex tables are concatenated.
    pub fn concat(&self, other: &SimplicialChain) -> Self {
        let mut out = self.clone();
        let shift = out.vertices.len();
        out.vertices.extend_from_slice(&other.vertices);
        out.simplices.extend(other.simplices.iter().map(|s| ChainSimplex {
            v: s.v.map(|i| i + shift),
            sign: s.sign,
        }));
        out
    }

    /// Same combinatorics with the vertex table replaced.
    pub fn with_vertices(&self, vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.len() != self.vertices.len() {
            return Err(Error::IndexMismatch(format!(
                "{} vertices supplied for a chain on {}",
                vertices.len(),
                self.vertices.len()
            )));
        }
        Ok(SimplicialChain { label: self.label.clone(), vertices, simplices: self.simplices.clone() })
    }

    /// Boundary 2-chain: oriented triangles (sorted vertex indices) with
    /// nonzero integer coefficients.
    pub fn boundary(&self) -> BTreeMap<[usize; 3], i32> {
        let mut out: BTreeMap<[usize; 3], i32> = BTreeMap::new();
        for s in &self.simplices {
            for i in 0..4 {
                let mut face = [0usize; 3];
                let mut k = 0;
                for (j, &vj) in s.v.iter().enumerate() {
                    if j != i {
                        face[k] = vj;
                        k += 1;
                    }
                }
                let face_sign = if i % 2 == 0 { 1 } else { -1 };
                if let Some((sorted, parity)) = sort_with_parity(face) {
                    *out.entry(sorted).or_insert(0) += s.sign * face_sign * parity;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ChainFile = serde_json::from_str(text)?;
        let mut tets = Vec::with_capacity(file.simplices.len());
        for s in file.simplices {
            let mut vs = Vec::with_capacity(4);
            for v in s.vertices {
                vs.push(v.into_vertex()?);
            }
            let arr: [Vertex; 4] = vs
                .try_into()
                .map_err(|_| Error::Parse("a simplex needs exactly four vertices".into()))?;
            tets.push(Tetrahedron::with_sign(arr, s.sign));
        }
        Self::from_tetrahedra(file.label.unwrap_or_default(), &tets)
    }

    pub fn to_json(&self) -> String {
        let file = ChainFile {
            label: if self.label.is_empty() { None } else { Some(self.label.clone()) },
            simplices: self
                .simplices
                .iter()
                .map(|s| SimplexFile {
                    vertices: s.v.iter().map(|&i| VertexFile::from_vertex(&self.vertices[i])).collect(),
                    sign: s.sign,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("chain serializes")
    }
}

fn sort_with_parity(mut f: [usize; 3]) -> Option<([usize; 3], i32)> {
    let mut parity = 1;
    for i in 0..3 {
        for j in 0..2 - i {
            if f[j] > f[j + 1] {
                f.swap(j, j + 1);
                parity = -parity;
            }
        }
    }
    if f[0] == f[1] || f[1] == f[2] {
        None
    } else {
        Some((f, parity))
    }
}

/// Sum of signed tetrahedron volumes, with compensated summation.
pub fn chain_volume(c: &SimplicialChain) -> f64 {
    compensated_sum(c.tetrahedra().map(|t| tet_volume_signed(&t)))
}

#[derive(Serialize, Deserialize)]
struct ChainFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    simplices: Vec<SimplexFile>,
}

#[derive(Serialize, Deserialize)]
struct SimplexFile {
    vertices: Vec<VertexFile>,
    #[serde(default = "one")]
    sign: i32,
}

fn one() -> i32 {
    1
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum VertexFile {
    Hyperboloid([f64; 4]),
    Ideal { ideal: IdealFile },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IdealFile {
    Finite([f64; 2]),
    Named(String),
}

impl VertexFile {
    fn into_vertex(self) -> Result<Vertex> {
        match self {
            VertexFile::Hyperboloid(x) => Ok(Vertex::Finite(Point::from_hyperboloid(x)?)),
            VertexFile::Ideal { ideal: IdealFile::Finite([re, im]) } => {
                Ok(Vertex::Ideal(IdealPoint::Finite(Complex64::new(re, im))))
            }
            VertexFile::Ideal { ideal: IdealFile::Named(s) } if s == "inf" => Ok(Vertex::Ideal(IdealPoint::Infinity)),
            VertexFile::Ideal { ideal: IdealFile::Named(s) } => {
                Err(Error::Parse(format!("unknown ideal point {s:?}; use [re, im] or \"inf\"")))
            }
        }
    }

    fn from_vertex(v: &Vertex) -> Self {
        match v {
            Vertex::Finite(p) => VertexFile::Hyperboloid((*p.coords()).into()),
            Vertex::Ideal(IdealPoint::Finite(z)) => VertexFile::Ideal { ideal: IdealFile::Finite([z.re, z.im]) },
            Vertex::Ideal(IdealPoint::Infinity) => VertexFile::Ideal { ideal: IdealFile::Named("inf".into()) },
        }
    }
}
