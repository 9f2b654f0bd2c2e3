//! Δ-complexes presented by face-map tables.
//!
//! A complex of dimension `n` stores, for every degree `k`, an indexed family
//! of `k`-simplices.  Degree 0 is just a vertex count, degree 1 is a list of
//! `[tail, head]` pairs, and for `k ≥ 2` each `k`-simplex lists the ids of
//! its `k + 1` codimension-one faces, where face `j` is the one omitting
//! vertex `j`.  Distinct simplices may share vertex tuples (loops, doubled
//! edges and so on are all allowed), which is what lets a closed surface be
//! presented with a single vertex.
//!
//! Construction checks the simplicial identity
//! `face_i ∘ face_j = face_{j-1} ∘ face_i` for `i < j`, so every complex that
//! exists is structurally coherent; global properties (pseudomanifold,
//! connectivity, orientability) are reported by [`DeltaComplex::validate`].

pub mod builtin;
mod canonical;
mod document;
mod subdivide;
mod validate;

pub use validate::ValidationReport;

use crate::chain::ChainVector;
use crate::error::{Error, Result};

/// A finite Δ-complex given by face-map tables.
///
/// Equality compares the tables only; the optional name is cosmetic.
#[derive(Debug, Clone)]
pub struct DeltaComplex {
    name: Option<String>,
    dimension: usize,
    vertex_count: usize,
    /// `edges[i] = [tail, head]`: face 0 of an edge is its head (omitting
    /// vertex 0), face 1 its tail.
    edges: Vec<[usize; 2]>,
    /// `faces[k - 2][i]` lists the `k + 1` face ids of the `i`-th `k`-simplex
    /// for `2 ≤ k ≤ dimension`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `tuples[k - 1][i]` is the vertex tuple of the `i`-th `k`-simplex for
    /// `1 ≤ k ≤ dimension` (derived data, computed at construction).
    tuples: Vec<Vec<Vec<usize>>>,
}

impl PartialEq for DeltaComplex {
    fn eq(&self, other: &Self) -> bool {
        self.dimension == other.dimension
            && self.vertex_count == other.vertex_count
            && self.edges == other.edges
            && self.faces == other.faces
    }
}

impl Eq for DeltaComplex {}

impl DeltaComplex {
    /// Builds a complex from raw tables, checking arities, index ranges and
    /// the simplicial identities.
    ///
    /// `faces` must have one layer per degree from 2 up to `dimension`.
    pub fn new(
        dimension: usize,
        vertex_count: usize,
        edges: Vec<[usize; 2]>,
        faces: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Malformed("a complex needs at least one vertex".into()));
        }
        if dimension == 0 && !edges.is_empty() {
            return Err(Error::Malformed(
                "a 0-dimensional complex cannot contain edges".into(),
            ));
        }
        let expected_layers = dimension.saturating_sub(1);
        if faces.len() != expected_layers {
            return Err(Error::Malformed(format!(
                "dimension {} needs {} face layers (degrees 2..={}), got {}",
                dimension,
                expected_layers,
                dimension,
                faces.len()
            )));
        }
        for (i, e) in edges.iter().enumerate() {
            if e[0] >= vertex_count || e[1] >= vertex_count {
                return Err(Error::Malformed(format!(
                    "edge {i} = [{}, {}] refers to a vertex >= vertex_count = {}",
                    e[0], e[1], vertex_count
                )));
            }
        }
        let complex = DeltaComplex {
            name: None,
            dimension,
            vertex_count,
            edges,
            faces,
            tuples: Vec::new(),
        };
        complex.check_structure()?;
        complex.with_tuples()
    }

    /// Checks arities, face-id ranges, and the simplicial identities.
    fn check_structure(&self) -> Result<()> {
        for k in 2..=self.dimension {
            let layer = &self.faces[k - 2];
            let below = self.simplex_count(k - 1);
            for (id, fs) in layer.iter().enumerate() {
                if fs.len() != k + 1 {
                    return Err(Error::Malformed(format!(
                        "{k}-simplex {id} lists {} faces, expected {}",
                        fs.len(),
                        k + 1
                    )));
                }
                for (j, &f) in fs.iter().enumerate() {
                    if f >= below {
                        return Err(Error::Malformed(format!(
                            "{k}-simplex {id}: face {j} = {f} is not a valid \
                             {}-simplex id (count {below})",
                            k - 1
                        )));
                    }
                }
                // Simplicial identity: face_i(face_j(s)) == face_{j-1}(face_i(s))
                // for i < j, stated on face ids of the layer below.
                if k >= 2 {
                    for j in 1..=k {
                        for i in 0..j {
                            let lhs = self.face(k - 1, fs[j], i);
                            let rhs = self.face(k - 1, fs[i], j - 1);
                            if lhs != rhs {
                                return Err(Error::InconsistentFaces(format!(
                                    "{k}-simplex {id}: face_{i}(face_{j}) = {lhs} but \
                                     face_{}(face_{i}) = {rhs}",
                                    j - 1
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Computes vertex tuples bottom-up; the simplicial identities guarantee
    /// consistency, which is re-asserted per face as a defensive check.
    fn with_tuples(mut self) -> Result<Self> {
        let mut tuples: Vec<Vec<Vec<usize>>> = Vec::new();
        if self.dimension >= 1 {
            tuples.push(self.edges.iter().map(|e| vec![e[0], e[1]]).collect());
        }
        for k in 2..=self.dimension {
            let layer = &self.faces[k - 2];
            let mut level = Vec::with_capacity(layer.len());
            for fs in layer {
                // Vertices 0..k-1 come from face k (which omits vertex k);
                // vertex k is the last vertex of face 0 (which omits vertex 0).
                let mut tuple = tuples[k - 2][fs[k]].clone();
                tuple.push(*tuples[k - 2][fs[0]].last().expect("face tuple is nonempty"));
                level.push(tuple);
            }
            tuples.push(level);
        }
        // Defensive cross-check: dropping entry j of a tuple must reproduce
        // the tuple of face j.
        for k in 2..=self.dimension {
            for (id, fs) in self.faces[k - 2].iter().enumerate() {
                for (j, &f) in fs.iter().enumerate() {
                    let mut expect = tuples[k - 1][id].clone();
                    expect.remove(j);
                    if expect != tuples[k - 2][f] {
                        return Err(Error::InconsistentFaces(format!(
                            "{k}-simplex {id}: vertex tuple of face {j} does not match"
                        )));
                    }
                }
            }
        }
        self.tuples = tuples;
        Ok(self)
    }

    /// Optional human-readable name (carried through documents, ignored by
    /// equality and canonical forms).
    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Returns the same complex with the given name.
    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Top dimension of the complex.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// The edge table (`[tail, head]` per edge).
    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    /// Number of `k`-simplices (0 for `k > dimension`).
    pub fn simplex_count(&self, k: usize) -> usize {
        if k > self.dimension {
            0
        } else if k == 0 {
            self.vertex_count
        } else if k == 1 {
            self.edges.len()
        } else {
            self.faces[k - 2].len()
        }
    }

    /// Simplex counts for all degrees `0..=dimension`.
    pub fn counts(&self) -> Vec<usize> {
        (0..=self.dimension).map(|k| self.simplex_count(k)).collect()
    }

    /// The id of face `j` of the `id`-th `k`-simplex (`1 ≤ k ≤ dimension`).
    ///
    /// # Panics
    /// Panics on out-of-range arguments; callers validate degrees first.
    pub fn face(&self, k: usize, id: usize, j: usize) -> usize {
        assert!(k >= 1 && k <= self.dimension, "face: degree {k} out of range");
        if k == 1 {
            // Face 0 omits vertex 0, leaving the head; face 1 leaves the tail.
            match j {
                0 => self.edges[id][1],
                1 => self.edges[id][0],
                _ => panic!("an edge has faces 0 and 1, got {j}"),
            }
        } else {
            self.faces[k - 2][id][j]
        }
    }

    /// All face ids of the `id`-th `k`-simplex, in face order.
    pub fn faces_of(&self, k: usize, id: usize) -> Vec<usize> {
        (0..=k).map(|j| self.face(k, id, j)).collect()
    }

    /// The vertex tuple of the `id`-th `k`-simplex.
    pub fn vertex_tuple(&self, k: usize, id: usize) -> Vec<usize> {
        if k == 0 {
            vec![id]
        } else {
            self.tuples[k - 1][id].clone()
        }
    }

    /// Borrowed vertex tuple for `k ≥ 1`.
    pub fn tuple_ref(&self, k: usize, id: usize) -> &[usize] {
        &self.tuples[k - 1][id]
    }

    /// The alternating sum of simplex counts.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dimension)
            .map(|k| {
                let c = self.simplex_count(k) as i64;
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// The boundary of a single simplex as a chain in one degree lower.
    pub fn simplex_boundary(&self, k: usize, id: usize) -> ChainVector {
        let mut out = ChainVector::new(k - 1);
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            out.add_to(self.face(k, id, j), sign);
        }
        out
    }

    /// The boundary of a `k`-chain (`1 ≤ k ≤ dimension`).
    pub fn boundary(&self, chain: &ChainVector) -> Result<ChainVector> {
        let k = chain.degree();
        if k == 0 || k > self.dimension {
            return Err(Error::DegreeOutOfRange { degree: k, dimension: self.dimension });
        }
        let count = self.simplex_count(k);
        let mut out = ChainVector::new(k - 1);
        for (id, c) in chain.entries() {
            if id >= count {
                return Err(Error::BadChain(format!(
                    "chain mentions {k}-simplex {id}, but the complex has only {count}"
                )));
            }
            for j in 0..=k {
                let sign = if j % 2 == 0 { c } else { -c };
                out.add_to(self.face(k, id, j), sign);
            }
        }
        Ok(out)
    }

    /// True iff the chain's degree is in range and its support exists.
    pub fn carries(&self, chain: &ChainVector) -> bool {
        chain.degree() <= self.dimension
            && chain.max_id().map_or(true, |m| m < self.simplex_count(chain.degree()))
    }

    /// One-line summary, used by the CLI.
    pub fn summary(&self) -> String {
        let counts = self
            .counts()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        format!(
            "{}: dimension {}, simplices per degree [{}]",
            self.name.as_deref().unwrap_or("complex"),
            self.dimension,
            counts
        )
    }
}
