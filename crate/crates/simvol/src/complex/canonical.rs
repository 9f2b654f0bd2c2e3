//! Canonical relabeling for content-addressed caching.
//!
//! Two Δ-complexes are isomorphic iff there are degreewise bijections
//! commuting with the face maps — face *indices* are rigid, so the only
//! freedom is the numbering of simplices.  For a closed strongly-connected
//! pseudomanifold a breadth-first traversal of the dual graph from a fixed
//! root visits everything in a structurally determined order; minimizing the
//! resulting encoding over root choices therefore yields a true canonical
//! form.  For anything else the encoding falls back to the identity
//! labeling, which still gives deterministic (exact-structure) cache keys.

use sha2::{Digest, Sha256};

use super::DeltaComplex;

impl DeltaComplex {
    /// A canonical byte encoding of the complex (name excluded).
    ///
    /// Isomorphism-invariant for closed strongly-connected pseudomanifolds;
    /// deterministic for everything.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let report = self.validate();
        if self.dimension() >= 1
            && report.pseudomanifold
            && report.strongly_connected
            && self.simplex_count(self.dimension()) > 0
        {
            (0..self.simplex_count(self.dimension()))
                .map(|root| self.encode_from(root))
                .min()
                .expect("at least one top simplex")
        } else {
            self.encode_identity()
        }
    }

    /// Hex SHA-256 of [`DeltaComplex::canonical_bytes`].
    pub fn content_key(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.canonical_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn encode_identity(&self) -> Vec<u8> {
        let mut out = format!("dim {};v {}", self.dimension, self.vertex_count).into_bytes();
        out.extend(b";e");
        for e in &self.edges {
            out.extend(format!(" {},{}", e[0], e[1]).into_bytes());
        }
        for layer in &self.faces {
            out.extend(b";s");
            for fs in layer {
                out.push(b' ');
                out.extend(
                    fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(",").into_bytes(),
                );
            }
        }
        out
    }

    /// Relabels every simplex by first encounter in a BFS of the dual graph
    /// rooted at `root`, then encodes the relabeled tables.
    fn encode_from(&self, root: usize) -> Vec<u8> {
        let n = self.dimension;
        // new_id[k][old] = Some(new).
        let mut new_id: Vec<Vec<Option<usize>>> =
            (0..=n).map(|k| vec![None; self.simplex_count(k)]).collect();
        let mut order: Vec<Vec<usize>> = vec![Vec::new(); n + 1]; // new -> old
        // Assign `old` (degree k) and all of its faces depth-first in face
        // order; children after the parent.
        fn assign(
            complex: &DeltaComplex,
            new_id: &mut [Vec<Option<usize>>],
            order: &mut [Vec<usize>],
            k: usize,
            old: usize,
        ) {
            if new_id[k][old].is_some() {
                return;
            }
            new_id[k][old] = Some(order[k].len());
            order[k].push(old);
            if k >= 1 {
                for j in 0..=k {
                    assign(complex, new_id, order, k - 1, complex.face(k, old, j));
                }
            }
        }

        // Pair up top incidences across codimension-one faces.
        let mut incidences = vec![Vec::new(); self.simplex_count(n - 1)];
        for id in 0..self.simplex_count(n) {
            for j in 0..=n {
                incidences[self.face(n, id, j)].push((id, j));
            }
        }

        assign(self, &mut new_id, &mut order, n, root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(s) = queue.pop_front() {
            for j in 0..=n {
                let f = self.face(n, s, j);
                let inc = &incidences[f];
                let (other, _) = if inc[0] == (s, j) { inc[1] } else { inc[0] };
                if new_id[n][other].is_none() {
                    assign(self, &mut new_id, &mut order, n, other);
                    queue.push_back(other);
                }
            }
        }

        // Pseudomanifold purity guarantees everything got assigned.
        debug_assert!(new_id.iter().all(|layer| layer.iter().all(|x| x.is_some())));

        let relabel = |k: usize, old: usize| -> usize {
            new_id[k][old].expect("assigned during traversal")
        };
        let mut out = format!("dim {};v {}", n, self.vertex_count).into_bytes();
        out.extend(b";e");
        for &old in &order[1] {
            let e = self.edges[old];
            out.extend(format!(" {},{}", relabel(0, e[0]), relabel(0, e[1])).into_bytes());
        }
        for k in 2..=n {
            out.extend(b";s");
            for &old in &order[k] {
                out.push(b' ');
                let row: Vec<String> = (0..=k)
                    .map(|j| relabel(k - 1, self.face(k, old, j)).to_string())
                    .collect();
                out.extend(row.join(",").into_bytes());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtin;
    use super::*;

    /// Relabels top simplices (and nothing else) by a rotation, producing an
    /// isomorphic complex with different tables.
    fn rotate_tops(c: &DeltaComplex, by: usize) -> DeltaComplex {
        let n = c.dimension();
        let count = c.simplex_count(n);
        let mut layers: Vec<Vec<Vec<usize>>> = Vec::new();
        for k in 2..=n {
            let layer = (0..c.simplex_count(k)).map(|id| c.faces_of(k, id)).collect();
            layers.push(layer);
        }
        if n >= 2 {
            let top: Vec<Vec<usize>> =
                (0..count).map(|i| c.faces_of(n, (i + by) % count)).collect();
            let last = layers.len() - 1;
            layers[last] = top;
        }
        DeltaComplex::new(n, c.vertex_count(), c.edges().to_vec(), layers).unwrap()
    }

    #[test]
    fn canonical_form_is_rotation_invariant() {
        for complex in [builtin::torus(), builtin::genus_surface(2), builtin::three_torus()] {
            let base = complex.canonical_bytes();
            for by in 1..complex.simplex_count(complex.dimension()) {
                let rotated = rotate_tops(&complex, by);
                assert_eq!(rotated.canonical_bytes(), base, "rotation {by}");
            }
        }
    }

    #[test]
    fn different_manifolds_get_different_keys() {
        let keys: Vec<String> = [
            builtin::torus(),
            builtin::genus_surface(2),
            builtin::real_projective_plane(),
            builtin::tetrahedron_boundary(),
            builtin::three_torus(),
        ]
        .iter()
        .map(|c| c.content_key())
        .collect();
        for i in 0..keys.len() {
            for j in 0..i {
                assert_ne!(keys[i], keys[j]);
            }
        }
    }

    #[test]
    fn name_does_not_affect_the_key() {
        let a = builtin::torus();
        let b = builtin::torus().named("renamed");
        assert_eq!(a.content_key(), b.content_key());
    }
}
