//! Global validation: pseudomanifold structure, connectivity, orientation,
//! and the fundamental cycle.

use serde::Serialize;

use super::DeltaComplex;
use crate::chain::ChainVector;
use crate::error::{Error, Result};

/// Outcome of [`DeltaComplex::validate`].
///
/// Structural coherence (arities, index ranges, simplicial identities) is
/// enforced at construction, so the report concentrates on the global
/// properties an operation might require.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    /// Top dimension.
    pub dimension: usize,
    /// Simplices per degree `0..=dimension`.
    pub counts: Vec<usize>,
    /// Alternating sum of the counts.
    pub euler_characteristic: i64,
    /// Every pair of vertices is joined by an edge path.
    pub connected: bool,
    /// Closed pseudomanifold: every simplex is a face of a top simplex and
    /// every `(n−1)`-simplex lies in exactly two top-simplex slots (counted
    /// with multiplicity).
    pub pseudomanifold: bool,
    /// The dual graph on top simplices (adjacency across shared
    /// codimension-one faces) is connected.
    pub strongly_connected: bool,
    /// A coherent orientation exists (meaningful only for pseudomanifolds).
    pub orientable: bool,
    /// Signs per top simplex when orientable, each dual component rooted at
    /// its smallest top id with sign `+1`.
    pub orientation: Option<Vec<i8>>,
    /// Human-readable diagnostics for every failed property.
    pub issues: Vec<String>,
}

impl ValidationReport {
    /// True when the complex is a closed, connected, orientable
    /// pseudomanifold — the hypotheses for a fundamental cycle.
    pub fn is_closed_oriented_manifold_like(&self) -> bool {
        self.pseudomanifold && self.connected && self.strongly_connected && self.orientable
    }
}

/// Incidence of codimension-one faces in top simplices: for each
/// `(n−1)`-simplex, the list of `(top simplex, slot)` pairs.
fn top_incidences(complex: &DeltaComplex) -> Vec<Vec<(usize, usize)>> {
    let n = complex.dimension();
    let mut incidences = vec![Vec::new(); complex.simplex_count(n - 1)];
    for id in 0..complex.simplex_count(n) {
        for j in 0..=n {
            incidences[complex.face(n, id, j)].push((id, j));
        }
    }
    incidences
}

/// Union-find with path halving.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn component_count(&mut self, n: usize) -> usize {
        (0..n).filter(|&x| self.find(x) == x).count()
    }
}

impl DeltaComplex {
    /// Checks the global properties of the complex and reports them together
    /// with diagnostics; it never fails (structural errors are impossible
    /// post-construction).
    pub fn validate(&self) -> ValidationReport {
        let n = self.dimension();
        let mut issues = Vec::new();

        // Vertex connectivity via edges.
        let mut uf = UnionFind::new(self.vertex_count());
        for e in self.edges() {
            uf.union(e[0], e[1]);
        }
        let connected = uf.component_count(self.vertex_count()) == 1;
        if !connected {
            issues.push("vertices split into more than one edge component".into());
        }

        let mut pseudomanifold = n >= 1;
        let mut strongly_connected = false;
        let mut orientable = false;
        let mut orientation = None;

        if n == 0 {
            issues.push("dimension 0: pseudomanifold and orientation checks do not apply".into());
        } else {
            let top_count = self.simplex_count(n);
            if top_count == 0 {
                pseudomanifold = false;
                issues.push(format!("no simplices in top degree {n}"));
            }

            let incidences = top_incidences(self);
            for (f, inc) in incidences.iter().enumerate() {
                if inc.len() != 2 {
                    pseudomanifold = false;
                    issues.push(format!(
                        "{}-simplex {f} lies in {} top slots, expected 2",
                        n - 1,
                        inc.len()
                    ));
                    if issues.len() > 8 {
                        issues.push("further pseudomanifold violations suppressed".into());
                        break;
                    }
                }
            }

            // Purity: every simplex must be reachable from the top layer by
            // iterated face maps.
            if pseudomanifold {
                let mut reachable: Vec<Vec<bool>> =
                    (0..=n).map(|k| vec![false; self.simplex_count(k)]).collect();
                for id in 0..top_count {
                    reachable[n][id] = true;
                }
                for k in (1..=n).rev() {
                    for id in 0..self.simplex_count(k) {
                        if reachable[k][id] {
                            for j in 0..=k {
                                reachable[k - 1][self.face(k, id, j)] = true;
                            }
                        }
                    }
                }
                for (k, layer) in reachable.iter().enumerate() {
                    if let Some(id) = layer.iter().position(|r| !r) {
                        pseudomanifold = false;
                        issues.push(format!(
                            "{k}-simplex {id} is not a face of any top simplex"
                        ));
                        break;
                    }
                }
            }

            // Dual-graph connectivity over shared codimension-one faces.
            if top_count > 0 {
                let mut duf = UnionFind::new(top_count);
                for inc in &incidences {
                    if inc.len() == 2 {
                        duf.union(inc[0].0, inc[1].0);
                    }
                }
                strongly_connected = duf.component_count(top_count) == 1;
                if !strongly_connected {
                    issues.push("dual graph on top simplices is disconnected".into());
                }
            }

            if pseudomanifold {
                match self.orientation_signs(&incidences) {
                    Ok(signs) => {
                        orientable = true;
                        orientation = Some(signs);
                    }
                    Err(reason) => {
                        issues.push(reason);
                    }
                }
            } else {
                issues.push("orientation undefined: not a closed pseudomanifold".into());
            }
        }

        ValidationReport {
            dimension: n,
            counts: self.counts(),
            euler_characteristic: self.euler_characteristic(),
            connected,
            pseudomanifold,
            strongly_connected,
            orientable,
            orientation,
            issues,
        }
    }

    /// Propagates signs over the dual graph.  For a shared face with
    /// incidences `(s, j)` and `(t, l)` the boundary contributions cancel iff
    /// `sign(t) = sign(s) · (−1)^{j+l+1}`; a self-incidence needs `j, l` of
    /// opposite parity.
    fn orientation_signs(&self, incidences: &[Vec<(usize, usize)>]) -> std::result::Result<Vec<i8>, String> {
        let n = self.dimension();
        let top_count = self.simplex_count(n);
        let mut signs: Vec<i8> = vec![0; top_count];
        for root in 0..top_count {
            if signs[root] != 0 {
                continue;
            }
            signs[root] = 1;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(s) = queue.pop_front() {
                for j in 0..=n {
                    let f = self.face(n, s, j);
                    let inc = &incidences[f];
                    debug_assert_eq!(inc.len(), 2);
                    let (other, l) = if inc[0] == (s, j) { inc[1] } else { inc[0] };
                    if other == s {
                        let (_, l2) = inc[0];
                        let (_, l3) = inc[1];
                        if (l2 + l3) % 2 == 0 {
                            return Err(format!(
                                "self-glued face {f} of top simplex {s} has slots of equal \
                                 parity; no coherent orientation exists"
                            ));
                        }
                        continue;
                    }
                    let required = if (j + l) % 2 == 0 { -signs[s] } else { signs[s] };
                    if signs[other] == 0 {
                        signs[other] = required;
                        queue.push_back(other);
                    } else if signs[other] != required {
                        return Err(format!(
                            "orientation conflict across face {f} between top simplices \
                             {s} and {other}"
                        ));
                    }
                }
            }
        }
        Ok(signs)
    }

    /// The coherent orientation (one sign per top simplex), if it exists.
    ///
    /// Requires a closed pseudomanifold; each dual component is rooted at its
    /// smallest top id with sign `+1`.
    pub fn orientation(&self) -> Result<Vec<i8>> {
        let report = self.validate();
        if !report.pseudomanifold {
            return Err(Error::NotPseudomanifold(
                report
                    .issues
                    .first()
                    .cloned()
                    .unwrap_or_else(|| "validation failed".into()),
            ));
        }
        report.orientation.ok_or_else(|| {
            Error::NotOrientable(
                report
                    .issues
                    .last()
                    .cloned()
                    .unwrap_or_else(|| "no coherent orientation".into()),
            )
        })
    }

    /// The fundamental cycle `Σ ε_s · s` of a closed, connected, oriented
    /// pseudomanifold: the signed sum of all top simplices, normalized so the
    /// smallest top id carries `+1`.  Its boundary is verified to vanish.
    pub fn fundamental_cycle(&self) -> Result<ChainVector> {
        if self.dimension() == 0 {
            return Err(Error::Malformed(
                "fundamental cycle needs dimension >= 1".into(),
            ));
        }
        let report = self.validate();
        if !report.pseudomanifold {
            return Err(Error::NotPseudomanifold(
                report
                    .issues
                    .first()
                    .cloned()
                    .unwrap_or_else(|| "validation failed".into()),
            ));
        }
        if !report.strongly_connected || !report.connected {
            return Err(Error::NotConnected);
        }
        let signs = report.orientation.ok_or_else(|| {
            Error::NotOrientable(
                report
                    .issues
                    .last()
                    .cloned()
                    .unwrap_or_else(|| "no coherent orientation".into()),
            )
        })?;
        let cycle = ChainVector::from_entries(
            self.dimension(),
            signs.iter().enumerate().map(|(id, &s)| (id, s as i64)),
        );
        let boundary = self.boundary(&cycle)?;
        assert!(
            boundary.is_zero(),
            "internal error: fundamental cycle has non-zero boundary"
        );
        Ok(cycle)
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtin;
    use super::*;

    #[test]
    fn torus_is_a_closed_oriented_manifold() {
        let report = builtin::torus().validate();
        assert!(report.is_closed_oriented_manifold_like());
        assert_eq!(report.orientation, Some(vec![1, -1]));
        assert_eq!(report.euler_characteristic, 0);
    }

    #[test]
    fn torus_fundamental_cycle_is_the_signed_top_sum() {
        let cycle = builtin::torus().fundamental_cycle().unwrap();
        assert_eq!(cycle, ChainVector::from_entries(2, [(0, 1), (1, -1)]));
        assert_eq!(cycle.l1(), 2);
    }

    #[test]
    fn projective_plane_is_not_orientable() {
        let rp2 = builtin::real_projective_plane();
        let report = rp2.validate();
        assert!(report.pseudomanifold);
        assert!(report.connected && report.strongly_connected);
        assert!(!report.orientable);
        assert!(matches!(rp2.fundamental_cycle(), Err(Error::NotOrientable(_))));
    }

    #[test]
    fn spheres_and_t3_orient_coherently() {
        for complex in [
            builtin::tetrahedron_boundary(),
            builtin::octahedron(),
            builtin::three_sphere(),
            builtin::three_torus(),
            builtin::genus_surface(3),
        ] {
            let cycle = complex.fundamental_cycle().unwrap();
            assert_eq!(cycle.support_size(), complex.simplex_count(complex.dimension()));
            assert!(complex.boundary(&cycle).unwrap().is_zero());
        }
    }

    #[test]
    fn open_surfaces_are_rejected() {
        // A single triangle: its edges lie in one top slot each.
        let c = DeltaComplex::from_facets(&[vec![0, 1, 2]], None).unwrap();
        let report = c.validate();
        assert!(!report.pseudomanifold);
        assert!(matches!(c.fundamental_cycle(), Err(Error::NotPseudomanifold(_))));
    }

    #[test]
    fn disjoint_tori_are_not_connected() {
        // Two copies of the one-vertex torus, ids shifted.
        let edges = vec![[0, 0], [0, 0], [0, 0], [1, 1], [1, 1], [1, 1]];
        let tris = vec![
            vec![1, 2, 0],
            vec![0, 2, 1],
            vec![4, 5, 3],
            vec![3, 5, 4],
        ];
        let c = DeltaComplex::new(2, 2, edges, vec![tris]).unwrap();
        let report = c.validate();
        assert!(report.pseudomanifold);
        assert!(!report.connected);
        assert!(!report.strongly_connected);
        assert!(report.orientable, "each component orients");
        assert!(matches!(c.fundamental_cycle(), Err(Error::NotConnected)));
    }

    #[test]
    fn circle_orients() {
        // Facet construction sorts, so the edges are [0,1], [0,2], [1,2].
        let c = builtin::circle();
        let cycle = c.fundamental_cycle().unwrap();
        assert_eq!(cycle, ChainVector::from_entries(1, [(0, 1), (1, -1), (2, 1)]));
    }
}
