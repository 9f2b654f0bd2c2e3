//! Bistellar (Pachner) moves on closed simplicial 3-manifolds.
//!
//! A simplicial complex is determined by its facet list, so the moves work
//! on a plain set of 4-element vertex sets and the complex is rebuilt from
//! facets afterwards, which re-derives every face table and re-checks the
//! structural identities.  The classical admissibility conditions (the
//! introduced simplex must be absent, the removed star must be full) make
//! each move a homeomorphism of the underlying space.

use std::collections::BTreeSet;

use crate::complex::DeltaComplex;
use crate::error::{Error, Result};

/// A closed simplicial 3-manifold as its set of tetrahedra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TetSet {
    facets: BTreeSet<[usize; 4]>,
}

fn sorted4(mut f: [usize; 4]) -> [usize; 4] {
    f.sort_unstable();
    f
}

impl TetSet {
    /// Reads the facet set off a 3-dimensional simplicial complex.
    pub fn from_complex(complex: &DeltaComplex) -> Result<Self> {
        if complex.dimension() != 3 {
            return Err(Error::UnsupportedDimension {
                dimension: complex.dimension(),
                context: "bistellar moves".into(),
            });
        }
        if !complex.is_simplicial() {
            return Err(Error::NotSimplicial(
                "bistellar moves need a simplicial complex; subdivide first".into(),
            ));
        }
        let mut facets = BTreeSet::new();
        for t in 0..complex.simplex_count(3) {
            let tuple = complex.vertex_tuple(3, t);
            facets.insert(sorted4([tuple[0], tuple[1], tuple[2], tuple[3]]));
        }
        if facets.len() != complex.simplex_count(3) {
            return Err(Error::NotSimplicial(
                "two tetrahedra share a vertex set".into(),
            ));
        }
        Ok(TetSet { facets })
    }

    /// Rebuilds the Δ-complex, compacting vertex labels first.
    pub fn to_complex(&self) -> Result<DeltaComplex> {
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for f in &self.facets {
            used.extend(f.iter().copied());
        }
        let relabel: std::collections::BTreeMap<usize, usize> = used
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let facets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| f.iter().map(|v| relabel[v]).collect())
            .collect();
        DeltaComplex::from_facets(&facets, Some(used.len()))
    }

    pub fn tet_count(&self) -> usize {
        self.facets.len()
    }

    /// The facets in sorted order (stable indexing for move targets).
    pub fn facet(&self, i: usize) -> Option<[usize; 4]> {
        self.facets.iter().nth(i).copied()
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for f in &self.facets {
            used.extend(f.iter().copied());
        }
        used.into_iter().collect()
    }

    fn fresh_vertex(&self) -> usize {
        self.facets
            .iter()
            .flat_map(|f| f.iter().copied())
            .max()
            .unwrap_or(0)
            + 1
    }

    fn contains_edge(&self, d: usize, e: usize) -> bool {
        self.facets
            .iter()
            .any(|f| f.contains(&d) && f.contains(&e))
    }

    fn contains_triangle(&self, tri: [usize; 3]) -> bool {
        self.facets
            .iter()
            .any(|f| tri.iter().all(|v| f.contains(v)))
    }

    fn star_of_vertex(&self, v: usize) -> Vec<[usize; 4]> {
        self.facets
            .iter()
            .filter(|f| f.contains(&v))
            .copied()
            .collect()
    }

    fn star_of_edge(&self, d: usize, e: usize) -> Vec<[usize; 4]> {
        self.facets
            .iter()
            .filter(|f| f.contains(&d) && f.contains(&e))
            .copied()
            .collect()
    }
}

/// 1→4: cones a tetrahedron over a fresh interior vertex.
pub fn move_1_4(tets: &TetSet, tet: [usize; 4]) -> Result<TetSet> {
    let tet = sorted4(tet);
    if !tets.facets.contains(&tet) {
        return Err(Error::MoveInadmissible(format!(
            "no tetrahedron {tet:?} to subdivide"
        )));
    }
    let u = tets.fresh_vertex();
    let mut facets = tets.facets.clone();
    facets.remove(&tet);
    let [a, b, c, d] = tet;
    for new in [[a, b, c, u], [a, b, d, u], [a, c, d, u], [b, c, d, u]] {
        facets.insert(sorted4(new));
    }
    Ok(TetSet { facets })
}

/// 4→1: removes an interior vertex of degree four, restoring the single
/// tetrahedron on its link.
pub fn move_4_1(tets: &TetSet, v: usize) -> Result<TetSet> {
    let star = tets.star_of_vertex(v);
    if star.len() != 4 {
        return Err(Error::MoveInadmissible(format!(
            "vertex {v} lies in {} tetrahedra, need exactly 4",
            star.len()
        )));
    }
    let mut link: BTreeSet<usize> = BTreeSet::new();
    for f in &star {
        link.extend(f.iter().copied().filter(|&x| x != v));
    }
    if link.len() != 4 {
        return Err(Error::MoveInadmissible(
            "the link of the vertex does not span four vertices".into(),
        ));
    }
    let link: Vec<usize> = link.into_iter().collect();
    let tet = sorted4([link[0], link[1], link[2], link[3]]);
    // The star must consist of the four cones over the link's triangles.
    for skip in 0..4 {
        let mut face: Vec<usize> = link.clone();
        face.remove(skip);
        let expected = sorted4([face[0], face[1], face[2], v]);
        if !star.contains(&expected) {
            return Err(Error::MoveInadmissible(
                "the star is not a cone over a tetrahedron boundary".into(),
            ));
        }
    }
    if tets.facets.contains(&tet) {
        return Err(Error::MoveInadmissible(
            "the tetrahedron to restore already exists".into(),
        ));
    }
    let mut facets = tets.facets.clone();
    for f in &star {
        facets.remove(f);
    }
    facets.insert(tet);
    Ok(TetSet { facets })
}

/// 2→3: replaces two tetrahedra sharing a triangle by three sharing the
/// opposite edge.  Admissible only when that edge is not yet present.
pub fn move_2_3(tets: &TetSet, f1: [usize; 4], f2: [usize; 4]) -> Result<TetSet> {
    let f1 = sorted4(f1);
    let f2 = sorted4(f2);
    if !tets.facets.contains(&f1) || !tets.facets.contains(&f2) || f1 == f2 {
        return Err(Error::MoveInadmissible(
            "need two distinct existing tetrahedra".into(),
        ));
    }
    let shared: Vec<usize> = f1.iter().copied().filter(|v| f2.contains(v)).collect();
    if shared.len() != 3 {
        return Err(Error::MoveInadmissible(
            "the tetrahedra do not share a triangle".into(),
        ));
    }
    let d = *f1.iter().find(|v| !shared.contains(v)).expect("apex of f1");
    let e = *f2.iter().find(|v| !shared.contains(v)).expect("apex of f2");
    if tets.contains_edge(d, e) {
        return Err(Error::MoveInadmissible(
            "the apexes are already joined by an edge".into(),
        ));
    }
    let mut facets = tets.facets.clone();
    facets.remove(&f1);
    facets.remove(&f2);
    let [a, b, c] = [shared[0], shared[1], shared[2]];
    for new in [[a, b, d, e], [a, c, d, e], [b, c, d, e]] {
        let new = sorted4(new);
        if !facets.insert(new) {
            return Err(Error::MoveInadmissible(format!(
                "tetrahedron {new:?} already exists"
            )));
        }
    }
    Ok(TetSet { facets })
}

/// 3→2: replaces the three tetrahedra around an edge of degree three by
/// two sharing the opposite triangle.  Admissible only when that triangle
/// is not yet present.
pub fn move_3_2(tets: &TetSet, d: usize, e: usize) -> Result<TetSet> {
    let star = tets.star_of_edge(d, e);
    if star.len() != 3 {
        return Err(Error::MoveInadmissible(format!(
            "edge ({d}, {e}) lies in {} tetrahedra, need exactly 3",
            star.len()
        )));
    }
    let mut ring: BTreeSet<usize> = BTreeSet::new();
    for f in &star {
        ring.extend(f.iter().copied().filter(|&x| x != d && x != e));
    }
    if ring.len() != 3 {
        return Err(Error::MoveInadmissible(
            "the link of the edge does not span three vertices".into(),
        ));
    }
    let ring: Vec<usize> = ring.into_iter().collect();
    let [a, b, c] = [ring[0], ring[1], ring[2]];
    // The star must consist of the three tetrahedra over the ring's edges.
    for (x, y) in [(a, b), (a, c), (b, c)] {
        let expected = sorted4([x, y, d, e]);
        if !star.contains(&expected) {
            return Err(Error::MoveInadmissible(
                "the star is not the join of the edge with a triangle".into(),
            ));
        }
    }
    if tets.contains_triangle([a, b, c]) {
        return Err(Error::MoveInadmissible(
            "the triangle to introduce already exists".into(),
        ));
    }
    let mut facets = tets.facets.clone();
    for f in &star {
        facets.remove(f);
    }
    for new in [[a, b, c, d], [a, b, c, e]] {
        let new = sorted4(new);
        if !facets.insert(new) {
            return Err(Error::MoveInadmissible(format!(
                "tetrahedron {new:?} already exists"
            )));
        }
    }
    Ok(TetSet { facets })
}

/// Contracts the edge `(d, e)`, replacing `e` by `d` everywhere and
/// deleting the tetrahedra around the edge.  Admissible only under the
/// link condition — the links of `d` and `e` intersect exactly in the link
/// of the edge — which makes the contraction a homeomorphism.
pub fn contract_edge(tets: &TetSet, d: usize, e: usize) -> Result<TetSet> {
    if d == e {
        return Err(Error::MoveInadmissible("need two distinct vertices".into()));
    }
    let star = tets.star_of_edge(d, e);
    if star.is_empty() {
        return Err(Error::MoveInadmissible(format!(
            "({d}, {e}) is not an edge of the complex"
        )));
    }
    if star.len() == tets.facets.len() {
        return Err(Error::MoveInadmissible(
            "contraction would remove every tetrahedron".into(),
        ));
    }

    // Link of the edge: vertices and edges of the ring around (d, e).
    let mut ring_vertices: BTreeSet<usize> = BTreeSet::new();
    let mut ring_edges: BTreeSet<[usize; 2]> = BTreeSet::new();
    for f in &star {
        let others: Vec<usize> = f.iter().copied().filter(|&v| v != d && v != e).collect();
        ring_vertices.extend(others.iter().copied());
        ring_edges.insert([others[0].min(others[1]), others[0].max(others[1])]);
    }

    // Common vertices of the two vertex links must be exactly the ring.
    let neighbors = |v: usize| -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for f in &tets.facets {
            if f.contains(&v) {
                out.extend(f.iter().copied().filter(|&x| x != v));
            }
        }
        out
    };
    let mut common_vertices = &neighbors(d) & &neighbors(e);
    common_vertices.remove(&d);
    common_vertices.remove(&e);
    if common_vertices != ring_vertices {
        return Err(Error::MoveInadmissible(
            "vertex links meet outside the link of the edge".into(),
        ));
    }

    // Common edges of the two vertex links must be exactly the ring edges.
    let link_edges = |v: usize| -> BTreeSet<[usize; 2]> {
        let mut out = BTreeSet::new();
        for f in &tets.facets {
            if !f.contains(&v) {
                continue;
            }
            let others: Vec<usize> = f
                .iter()
                .copied()
                .filter(|&x| x != v && x != d && x != e)
                .collect();
            for a in 0..others.len() {
                for b in (a + 1)..others.len() {
                    out.insert([others[a].min(others[b]), others[a].max(others[b])]);
                }
            }
        }
        out
    };
    if &link_edges(d) & &link_edges(e) != ring_edges {
        return Err(Error::MoveInadmissible(
            "edge links meet outside the link of the edge".into(),
        ));
    }

    // No triangle may lie in both vertex links.
    for f in &tets.facets {
        if !f.contains(&d) || f.contains(&e) {
            continue;
        }
        let mut mirror: Vec<usize> = f.iter().copied().filter(|&v| v != d).collect();
        mirror.push(e);
        if tets.facets.contains(&sorted4([mirror[0], mirror[1], mirror[2], mirror[3]])) {
            return Err(Error::MoveInadmissible(
                "a triangle lies in both vertex links".into(),
            ));
        }
    }

    let mut facets = BTreeSet::new();
    for f in &tets.facets {
        if f.contains(&d) && f.contains(&e) {
            continue;
        }
        let renamed: Vec<usize> = f
            .iter()
            .map(|&v| if v == e { d } else { v })
            .collect();
        let renamed = sorted4([renamed[0], renamed[1], renamed[2], renamed[3]]);
        if !facets.insert(renamed) {
            return Err(Error::MoveInadmissible(
                "contraction would merge two tetrahedra".into(),
            ));
        }
    }
    Ok(TetSet { facets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builtin;
    use crate::homology::HomologyProfile;

    fn same_topology(a: &DeltaComplex, b: &DeltaComplex) {
        let (ra, rb) = (a.validate(), b.validate());
        assert_eq!(ra.euler_characteristic, rb.euler_characteristic);
        assert_eq!(ra.orientable, rb.orientable);
        assert!(rb.connected && rb.pseudomanifold && rb.strongly_connected);
        let ha = HomologyProfile::compute(a, &[2, 3], 30).unwrap();
        let hb = HomologyProfile::compute(b, &[2, 3], 30).unwrap();
        for k in 0..=3 {
            assert_eq!(ha.degrees[k].betti, hb.degrees[k].betti, "betti {k}");
            assert_eq!(
                ha.degrees[k].torsion_divisors,
                hb.degrees[k].torsion_divisors
            );
        }
    }

    #[test]
    fn facet_round_trip_is_faithful() {
        let sphere = builtin::three_sphere();
        let tets = TetSet::from_complex(&sphere).unwrap();
        assert_eq!(tets.tet_count(), 5);
        let back = tets.to_complex().unwrap();
        assert_eq!(back.canonical_bytes(), sphere.canonical_bytes());
    }

    #[test]
    fn one_vertex_complexes_are_rejected() {
        let t3 = builtin::three_torus();
        assert!(matches!(
            TetSet::from_complex(&t3),
            Err(Error::NotSimplicial(_))
        ));
    }

    #[test]
    fn cone_and_uncone_round_trip() {
        let sphere = builtin::three_sphere();
        let tets = TetSet::from_complex(&sphere).unwrap();
        let tet = tets.facet(0).unwrap();
        let bigger = move_1_4(&tets, tet).unwrap();
        assert_eq!(bigger.tet_count(), 8);
        same_topology(&sphere, &bigger.to_complex().unwrap());

        let fresh = bigger.vertices().into_iter().max().unwrap();
        let restored = move_4_1(&bigger, fresh).unwrap();
        assert_eq!(restored, tets);
    }

    #[test]
    fn unconing_needs_the_right_star() {
        let sphere = builtin::three_sphere();
        let tets = TetSet::from_complex(&sphere).unwrap();
        // Every original vertex lies in 4 tetrahedra, but its link is the
        // whole remaining sphere minus nothing sensible to restore: the
        // candidate tetrahedron already exists.
        for v in tets.vertices() {
            assert!(matches!(
                move_4_1(&tets, v),
                Err(Error::MoveInadmissible(_))
            ));
        }
    }

    #[test]
    fn two_three_and_back() {
        let sphere = builtin::three_sphere();
        let tets = TetSet::from_complex(&sphere).unwrap();
        let mut worked = 0;
        for i in 0..tets.tet_count() {
            for k in (i + 1)..tets.tet_count() {
                let f1 = tets.facet(i).unwrap();
                let f2 = tets.facet(k).unwrap();
                match move_2_3(&tets, f1, f2) {
                    Ok(bigger) => {
                        assert_eq!(bigger.tet_count(), 6);
                        same_topology(&sphere, &bigger.to_complex().unwrap());
                        // The new edge joins the two apexes; undo it.
                        let shared: Vec<usize> =
                            f1.iter().copied().filter(|v| f2.contains(v)).collect();
                        let d = *f1.iter().find(|v| !shared.contains(v)).unwrap();
                        let e = *f2.iter().find(|v| !shared.contains(v)).unwrap();
                        let restored = move_3_2(&bigger, d, e).unwrap();
                        assert_eq!(restored, tets);
                        worked += 1;
                    }
                    Err(Error::MoveInadmissible(_)) => {}
                    Err(e) => panic!("unexpected error: {e}"),
                }
            }
        }
        // On the boundary of the 4-simplex every pair shares a triangle but
        // every edge already exists, so no 2->3 move applies; subdivide one
        // tetrahedron first and try again there.
        assert_eq!(worked, 0);
        let bigger = move_1_4(&tets, tets.facet(0).unwrap()).unwrap();
        let mut worked_after = 0;
        for i in 0..bigger.tet_count() {
            for k in (i + 1)..bigger.tet_count() {
                let f1 = bigger.facet(i).unwrap();
                let f2 = bigger.facet(k).unwrap();
                if let Ok(next) = move_2_3(&bigger, f1, f2) {
                    assert_eq!(next.tet_count(), 9);
                    same_topology(&sphere, &next.to_complex().unwrap());
                    worked_after += 1;
                }
            }
        }
        assert!(worked_after > 0, "no 2->3 move on the subdivided sphere");
    }

    #[test]
    fn edge_contraction_respects_the_link_condition() {
        let sphere = builtin::three_sphere();
        let tets = TetSet::from_complex(&sphere).unwrap();
        // On the boundary of the 4-simplex every pair of vertices spans an
        // edge whose endpoint links share extra simplices, so nothing is
        // contractible.
        for (i, &d) in tets.vertices().iter().enumerate() {
            for &e in tets.vertices().iter().skip(i + 1) {
                assert!(matches!(
                    contract_edge(&tets, d, e),
                    Err(Error::MoveInadmissible(_))
                ));
            }
        }

        // After subdividing, plenty of edges satisfy the condition.
        let sd = sphere.barycentric_subdivision();
        let tets = TetSet::from_complex(&sd).unwrap();
        let mut contracted = 0;
        'outer: for i in 0..tets.tet_count() {
            let f = tets.facet(i).unwrap();
            for (ai, &d) in f.iter().enumerate() {
                for &e in f.iter().skip(ai + 1) {
                    if let Ok(smaller) = contract_edge(&tets, d, e) {
                        assert!(smaller.tet_count() < tets.tet_count());
                        same_topology(&sd, &smaller.to_complex().unwrap());
                        contracted += 1;
                        if contracted >= 2 {
                            break 'outer;
                        }
                    }
                }
            }
        }
        assert!(contracted > 0, "no contractible edge after subdivision");
    }

    #[test]
    fn three_two_needs_a_degree_three_edge() {
        let sphere = builtin::three_sphere();
        let sd = sphere.barycentric_subdivision();
        assert_eq!(sd.simplex_count(3), 120);
        let tets = TetSet::from_complex(&sd).unwrap();
        // Every edge of a barycentric subdivision lies in at least four
        // tetrahedra, so no 3->2 move is admissible on the raw subdivision.
        for f in tets.facets.iter() {
            for (ai, &d) in f.iter().enumerate() {
                for &e in f.iter().skip(ai + 1) {
                    assert!(matches!(
                        move_3_2(&tets, d, e),
                        Err(Error::MoveInadmissible(_))
                    ));
                }
            }
        }
        // A 2->3 move manufactures a degree-three edge, and undoing it with
        // the matching 3->2 restores the complex.
        let mut roundtripped = false;
        'outer: for (i, f1) in tets.facets.iter().enumerate() {
            for f2 in tets.facets.iter().skip(i + 1) {
                let shared: Vec<usize> =
                    f1.iter().copied().filter(|v| f2.contains(v)).collect();
                if shared.len() != 3 {
                    continue;
                }
                if let Ok(bigger) = move_2_3(&tets, *f1, *f2) {
                    assert_eq!(bigger.tet_count(), 121);
                    same_topology(&sd, &bigger.to_complex().unwrap());
                    let d = *f1.iter().find(|v| !shared.contains(v)).unwrap();
                    let e = *f2.iter().find(|v| !shared.contains(v)).unwrap();
                    let restored = move_3_2(&bigger, d, e).unwrap();
                    assert_eq!(restored, tets);
                    roundtripped = true;
                    break 'outer;
                }
            }
        }
        assert!(roundtripped, "no admissible 2->3 on the subdivided sphere");
    }
}
