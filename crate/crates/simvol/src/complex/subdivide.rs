//! Barycentric subdivision, simpliciality, and cones.

use std::collections::BTreeMap;

use super::DeltaComplex;
use crate::error::{Error, Result};

/// A simplex of the subdivision: the carrier simplex of the original complex
/// together with a strictly increasing flag of vertex subsets of the carrier,
/// ending at the full subset.  Subsets are bitmasks over the carrier's
/// `p + 1` vertex positions.
type Flag = (usize, usize, Vec<u32>); // (carrier degree, carrier id, subset chain)

fn submask_chains(full: u32, max_len: usize) -> Vec<Vec<u32>> {
    // All strictly increasing chains of non-empty proper submasks below
    // `full`, of length 0..max_len, each returned *without* the final `full`.
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for chain in &frontier {
            let top = chain.first().copied().unwrap_or(full);
            // Proper non-empty submasks of `top`.
            let mut sub = (top - 1) & top;
            while sub != 0 {
                let mut longer = Vec::with_capacity(chain.len() + 1);
                longer.push(sub);
                longer.extend_from_slice(chain);
                next.push(longer);
                sub = (sub - 1) & top;
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

impl DeltaComplex {
    /// True iff the complex is simplicial: every simplex has pairwise
    /// distinct vertices and is determined by its vertex set.
    pub fn is_simplicial(&self) -> bool {
        for k in 1..=self.dimension {
            let mut seen = std::collections::HashSet::new();
            for id in 0..self.simplex_count(k) {
                let mut set = self.vertex_tuple(k, id);
                set.sort_unstable();
                if set.windows(2).any(|w| w[0] == w[1]) {
                    return false;
                }
                if !seen.insert(set) {
                    return false;
                }
            }
        }
        true
    }

    /// Resolves the sub-simplex of `(p, id)` spanned by the vertex positions
    /// in `mask`, by dropping the complementary positions from the top down.
    fn subsimplex(&self, p: usize, id: usize, mask: u32) -> (usize, usize) {
        let mut deg = p;
        let mut cur = id;
        for q in (0..=p).rev() {
            if mask & (1 << q) == 0 {
                assert!(deg > 0, "mask must be non-empty");
                cur = self.face(deg, cur, q);
                deg -= 1;
            }
        }
        (deg, cur)
    }

    /// The barycentric subdivision.
    ///
    /// Vertices of the result are the simplices of the input (barycenters),
    /// numbered by degree then id; `k`-simplices are flags of faces.  Each
    /// input `p`-simplex is split into `(p + 1)!` top pieces, so a
    /// subdivision multiplies the top count of an `n`-complex by `(n + 1)!`.
    ///
    /// Every simplex of the result has pairwise-distinct vertices, but the
    /// result need not yet be simplicial when the input glues simplices to
    /// themselves (two barycenter edges can share their endpoints); a second
    /// subdivision always is.
    pub fn barycentric_subdivision(&self) -> DeltaComplex {
        let n = self.dimension;
        // Barycenter (vertex) ids: simplices ordered by (degree, id).
        let mut offset = vec![0usize; n + 1];
        for k in 1..=n {
            offset[k] = offset[k - 1] + self.simplex_count(k - 1);
        }
        let new_vertex_count = offset[n] + self.simplex_count(n);
        let barycenter = |deg: usize, id: usize| -> usize { offset[deg] + id };

        // Enumerate flags per result degree, with a deterministic order:
        // carrier degree, carrier id, then chain (lexicographic on masks).
        let mut flags_by_degree: Vec<Vec<Flag>> = vec![Vec::new(); n + 1];
        let mut index: Vec<BTreeMap<Flag, usize>> = vec![BTreeMap::new(); n + 1];
        for p in 0..=n {
            for id in 0..self.simplex_count(p) {
                let full: u32 = (1 << (p + 1)) - 1;
                for chain in submask_chains(full, p) {
                    let k = chain.len(); // result degree = chain length (+ full)
                    let mut flag_chain = chain;
                    flag_chain.push(full);
                    flags_by_degree[k].push((p, id, flag_chain));
                }
            }
        }
        for k in 0..=n {
            flags_by_degree[k].sort();
            for (i, flag) in flags_by_degree[k].iter().enumerate() {
                index[k].insert(flag.clone(), i);
            }
        }

        // The face of a flag: dropping an inner subset keeps the carrier;
        // dropping the full subset renormalizes to the sub-simplex spanned by
        // the new top subset.
        let flag_face = |flag: &Flag, j: usize| -> Flag {
            let (p, id, chain) = flag;
            let k = chain.len() - 1;
            if j < k {
                let mut shorter = chain.clone();
                shorter.remove(j);
                (*p, *id, shorter)
            } else {
                let new_top = chain[k - 1];
                let (q, sub_id) = self.subsimplex(*p, *id, new_top);
                // Re-express the lower subsets in the positions of new_top.
                let positions: Vec<usize> =
                    (0..=*p).filter(|&b| new_top & (1 << b) != 0).collect();
                let remap = |mask: u32| -> u32 {
                    let mut out = 0u32;
                    for (new_bit, &old_bit) in positions.iter().enumerate() {
                        if mask & (1 << old_bit) != 0 {
                            out |= 1 << new_bit;
                        }
                    }
                    out
                };
                debug_assert_eq!(positions.len(), q + 1);
                let new_chain: Vec<u32> = chain[..k].iter().map(|&m| remap(m)).collect();
                (q, sub_id, new_chain)
            }
        };

        // Edges: flag (A0, full) runs from the barycenter of the sub-simplex
        // at A0 (smaller) to the carrier's barycenter.
        let edges: Vec<[usize; 2]> = flags_by_degree[1]
            .iter()
            .map(|(p, id, chain)| {
                let (q, sub_id) = self.subsimplex(*p, *id, chain[0]);
                [barycenter(q, sub_id), barycenter(*p, *id)]
            })
            .collect();

        let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
        for k in 2..=n {
            let layer = flags_by_degree[k]
                .iter()
                .map(|flag| {
                    (0..=k)
                        .map(|j| {
                            let f = flag_face(flag, j);
                            *index[k - 1].get(&f).expect("face flag is enumerated")
                        })
                        .collect()
                })
                .collect();
            faces.push(layer);
        }

        let mut out = DeltaComplex::new(n, new_vertex_count, edges, faces)
            .expect("barycentric subdivision is structurally coherent");
        if let Some(name) = &self.name {
            out = out.named(format!("{name}.sd"));
        }
        out
    }

    /// The cone over a simplicial complex: a new apex vertex (the largest
    /// vertex id) joined to every simplex.  Faces of `cone(s)` are the cones
    /// of the faces of `s` followed by `s` itself.
    ///
    /// Requires [`DeltaComplex::is_simplicial`]; subdivide (twice if needed)
    /// first when the complex glues simplices to themselves.
    pub fn cone(&self) -> Result<DeltaComplex> {
        if !self.is_simplicial() {
            return Err(Error::NotSimplicial(
                "cone needs a simplicial complex; barycentrically subdivide first".into(),
            ));
        }
        let n = self.dimension;
        let apex = self.vertex_count;
        let mut edges = self.edges.clone();
        // cone(vertex v) = edge [v, apex], id = old edge count + v.
        for v in 0..self.vertex_count {
            edges.push([v, apex]);
        }
        let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
        for k in 2..=n + 1 {
            let old_layer: Vec<Vec<usize>> = if k <= n {
                (0..self.simplex_count(k)).map(|id| self.faces_of(k, id)).collect()
            } else {
                Vec::new()
            };
            let old_below = self.simplex_count(k - 1);
            let mut layer = old_layer;
            // cone(s) for every (k−1)-simplex s; its face j < k is
            // cone(face_j(s)) (offset into the coned part of degree k−1), and
            // face k is s itself.
            for id in 0..self.simplex_count(k - 1) {
                let mut fs: Vec<usize> = (0..k)
                    .map(|j| old_below + self.face(k - 1, id, j))
                    .collect();
                fs.push(id);
                layer.push(fs);
            }
            faces.push(layer);
        }
        // Degree-1 coning of vertices is already in `edges`; degree k = 1
        // has cone faces handled by the k = 2 layer referencing edge ids.
        let mut out = DeltaComplex::new(n + 1, self.vertex_count + 1, edges, faces)?;
        if let Some(name) = &self.name {
            out = out.named(format!("{name}.cone"));
        }
        Ok(out)
    }
}
