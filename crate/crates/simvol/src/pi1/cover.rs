//! Finite covers from subgroup records.
//!
//! A coset table for a subgroup of index `d` assigns to every edge of the
//! complex a permutation of `d` sheets. The cover has one copy of each
//! simplex per sheet; face maps keep the sheet except for face 0, which
//! transports it along the simplex's leading edge (between its vertices 0
//! and 1). The resulting face tables satisfy the simplicial identities
//! precisely because the table satisfies every triangle relator.

use crate::chain::ChainVector;
use crate::complex::DeltaComplex;
use crate::error::{Error, Result};
use crate::pi1::{presentation, EdgeWord, Letter, SubgroupRecord};

/// Per-edge sheet permutations induced by a subgroup record: entry `e` maps
/// the sheet at the edge's tail to the sheet at its head.
fn edge_permutations(
    complex: &DeltaComplex,
    record: &SubgroupRecord,
) -> Result<Vec<Vec<usize>>> {
    let pres = presentation(complex)?;
    if record.generator_count() != pres.generator_count() && record.index > 1 {
        return Err(Error::BadSubgroupRecord(format!(
            "record has {} generators, presentation has {}",
            record.generator_count(),
            pres.generator_count()
        )));
    }
    record.validate(&pres)?;
    let d = record.index;
    let identity: Vec<usize> = (0..d).collect();
    let perms = (0..complex.simplex_count(1))
        .map(|e| match pres.edge_word(e) {
            EdgeWord::Tree => identity.clone(),
            EdgeWord::Generator(g) => record.word_permutation(&[Letter::new(g, false)]),
        })
        .collect();
    Ok(perms)
}

/// The leading edge (between vertices 0 and 1) of a `k`-simplex, `k ≥ 1`,
/// found by repeatedly dropping the last vertex.
fn leading_edge(complex: &DeltaComplex, k: usize, id: usize) -> usize {
    let mut s = id;
    for degree in (2..=k).rev() {
        s = complex.face(degree, s, degree);
    }
    s
}

/// Builds the finite cover of a connected complex described by a subgroup
/// record. Simplex `(σ, sheet i)` of the cover gets id `σ·d + i`; faces
/// `j ≥ 1` stay on the sheet, face 0 moves the sheet through the leading
/// edge's permutation.
pub fn build_cover(complex: &DeltaComplex, record: &SubgroupRecord) -> Result<DeltaComplex> {
    let d = record.index;
    let perms = edge_permutations(complex, record)?;
    let sheet = |k: usize, id: usize, i: usize| -> usize {
        if k >= 1 {
            perms[leading_edge(complex, k, id)][i]
        } else {
            i
        }
    };

    let mut edges = Vec::with_capacity(complex.simplex_count(1) * d);
    for e in 0..complex.simplex_count(1) {
        let tail = complex.face(1, e, 1);
        let head = complex.face(1, e, 0);
        for i in 0..d {
            edges.push([tail * d + i, head * d + sheet(1, e, i)]);
        }
    }

    let mut faces = Vec::with_capacity(complex.dimension().saturating_sub(1));
    for k in 2..=complex.dimension() {
        let mut layer = Vec::with_capacity(complex.simplex_count(k) * d);
        for id in 0..complex.simplex_count(k) {
            for i in 0..d {
                let mut fs = Vec::with_capacity(k + 1);
                fs.push(complex.face(k, id, 0) * d + sheet(k, id, i));
                for j in 1..=k {
                    fs.push(complex.face(k, id, j) * d + i);
                }
                layer.push(fs);
            }
        }
        faces.push(layer);
    }

    let cover = DeltaComplex::new(
        complex.dimension(),
        complex.vertex_count() * d,
        edges,
        faces,
    )?;
    Ok(match complex.name() {
        Some(name) => cover.named(format!("{name} (index-{d} cover)")),
        None => cover,
    })
}

/// The transfer of a top-degree chain into a degree-`index` cover built by
/// [`build_cover`]: every simplex receives the coefficient of its image.
/// The ℓ¹-norm multiplies by exactly the index.
pub fn transfer_chain(chain: &ChainVector, index: usize) -> ChainVector {
    let mut out = ChainVector::new(chain.degree());
    for (id, c) in chain.entries() {
        for i in 0..index {
            out.add_to(id * index + i, c);
        }
    }
    out
}

/// One stage of a tower of covers.
#[derive(Debug, Clone)]
pub struct TowerStage {
    pub complex: DeltaComplex,
    /// Total covering degree over the tower's base.
    pub index_over_base: u64,
    /// Covering degree over the previous stage (1 for the base itself).
    pub index_over_previous: u64,
}

/// Builds a tower of covers by repeatedly passing to an index-2 subgroup:
/// base, double cover, double cover of that, and so on — at most `depth`
/// stages in total. The first index-2 record in search order is chosen at
/// every stage; the tower stops early when none exists. Covering degrees
/// over the base are verified against simplex counts at every stage.
pub fn subgroup_chain(complex: &DeltaComplex, depth: usize) -> Result<Vec<TowerStage>> {
    if depth == 0 {
        return Err(Error::BadParameter("depth must be at least 1".into()));
    }
    let top = complex.dimension();
    let base_tops = complex.simplex_count(top) as u64;
    let mut stages = vec![TowerStage {
        complex: complex.clone(),
        index_over_base: 1,
        index_over_previous: 1,
    }];
    while stages.len() < depth {
        let current = &stages.last().unwrap().complex;
        let pres = presentation(current)?;
        let records = crate::pi1::low_index(&pres, 2)?;
        let Some(record) = records.into_iter().find(|r| r.index == 2) else {
            break;
        };
        let cover = build_cover(current, &record)?;
        let index_over_base = stages.last().unwrap().index_over_base * 2;
        assert_eq!(
            cover.simplex_count(top) as u64,
            base_tops * index_over_base,
            "covering degree does not match the simplex count"
        );
        stages.push(TowerStage { complex: cover, index_over_base, index_over_previous: 2 });
    }
    Ok(stages)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builtin;
    use crate::homology;
    use crate::pi1::low_index;

    fn double_covers(c: &DeltaComplex) -> Vec<DeltaComplex> {
        let pres = presentation(c).unwrap();
        low_index(&pres, 2)
            .unwrap()
            .into_iter()
            .filter(|r| r.index == 2)
            .map(|r| build_cover(c, &r).unwrap())
            .collect()
    }

    /// Face maps of a cover must project to the base's face maps, moving
    /// sheets only through face 0.
    fn check_projection(base: &DeltaComplex, cover: &DeltaComplex, d: usize) {
        assert_eq!(cover.vertex_count(), base.vertex_count() * d);
        for k in 1..=base.dimension() {
            assert_eq!(cover.simplex_count(k), base.simplex_count(k) * d);
            for id in 0..cover.simplex_count(k) {
                for j in 0..=k {
                    let down = cover.face(k, id, j);
                    assert_eq!(down / d, base.face(k, id / d, j), "projection breaks");
                    if j >= 1 {
                        assert_eq!(down % d, id % d, "face {j} moved the sheet");
                    }
                }
            }
        }
    }

    #[test]
    fn double_covers_of_the_torus_are_tori() {
        let t = builtin::torus();
        let covers = double_covers(&t);
        assert_eq!(covers.len(), 3);
        for cover in &covers {
            check_projection(&t, cover, 2);
            let report = cover.validate();
            assert!(report.is_closed_oriented_manifold_like());
            assert_eq!(report.euler_characteristic, 0);
            let h = homology::HomologyProfile::compute(cover, &[2], 30).unwrap();
            assert_eq!(
                (h.degrees[0].betti, h.degrees[1].betti, h.degrees[2].betti),
                (1, 2, 1)
            );
            assert!(h.degrees[1].torsion_divisors.is_empty());
        }
    }

    #[test]
    fn the_orientation_double_cover_of_the_projective_plane_is_a_sphere() {
        let rp2 = builtin::real_projective_plane();
        let covers = double_covers(&rp2);
        assert_eq!(covers.len(), 1);
        let sphere = &covers[0];
        check_projection(&rp2, sphere, 2);
        let report = sphere.validate();
        assert!(report.is_closed_oriented_manifold_like());
        assert_eq!(report.euler_characteristic, 2);
        let h = homology::HomologyProfile::compute(sphere, &[], 30).unwrap();
        assert_eq!((h.degrees[1].betti, h.degrees[2].betti), (0, 1));
        assert!(h.degrees[1].torsion_divisors.is_empty());
    }

    #[test]
    fn double_covers_of_the_genus_two_surface_have_genus_three() {
        let g2 = builtin::genus_surface(2);
        let covers = double_covers(&g2);
        assert_eq!(covers.len(), 15);
        for cover in covers.iter().take(4) {
            check_projection(&g2, cover, 2);
            assert_eq!(cover.euler_characteristic(), -4); // χ = 2 − 2·3
            let h = homology::HomologyProfile::compute(cover, &[], 30).unwrap();
            assert_eq!(h.degrees[1].betti, 6);
        }
    }

    #[test]
    fn three_torus_double_covers_are_three_tori() {
        let t3 = builtin::three_torus();
        let covers = double_covers(&t3);
        assert_eq!(covers.len(), 7);
        let cover = &covers[0];
        check_projection(&t3, cover, 2);
        let report = cover.validate();
        assert!(report.is_closed_oriented_manifold_like());
        let h = homology::HomologyProfile::compute(cover, &[], 30).unwrap();
        assert_eq!(
            (h.degrees[1].betti, h.degrees[2].betti, h.degrees[3].betti),
            (3, 3, 1)
        );
    }

    #[test]
    fn transfer_lifts_the_fundamental_cycle() {
        for base in [builtin::torus(), builtin::genus_surface(2), builtin::three_torus()] {
            let z = base.fundamental_cycle().unwrap();
            for cover in double_covers(&base).iter().take(3) {
                let lifted = transfer_chain(&z, 2);
                assert_eq!(lifted, cover.fundamental_cycle().unwrap());
                assert_eq!(lifted.l1(), 2 * z.l1());
                assert!(cover.boundary(&lifted).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn torus_towers_double_at_every_stage() {
        let tower = subgroup_chain(&builtin::torus(), 4).unwrap();
        let indices: Vec<u64> = tower.iter().map(|s| s.index_over_base).collect();
        assert_eq!(indices, vec![1, 2, 4, 8]);
        for stage in &tower {
            let report = stage.complex.validate();
            assert!(report.is_closed_oriented_manifold_like());
            assert_eq!(report.euler_characteristic, 0);
            assert_eq!(
                stage.complex.simplex_count(2) as u64,
                2 * stage.index_over_base
            );
        }
        // Every stage of a torus tower is again a torus.
        let last = &tower.last().unwrap().complex;
        let h = homology::HomologyProfile::compute(last, &[], 30).unwrap();
        assert_eq!(h.degrees[1].betti, 2);
    }

    #[test]
    fn towers_stop_when_no_double_cover_exists() {
        let tower = subgroup_chain(&builtin::real_projective_plane(), 5).unwrap();
        // RP² has exactly one double cover, the sphere, which is simply
        // connected: the tower stops after two stages.
        assert_eq!(tower.len(), 2);
        assert_eq!(tower[1].index_over_base, 2);
        assert_eq!(tower[1].complex.euler_characteristic(), 2);

        let trivial = subgroup_chain(&builtin::three_sphere(), 3).unwrap();
        assert_eq!(trivial.len(), 1);
    }

    #[test]
    fn identity_records_reproduce_the_base() {
        let t = builtin::torus();
        let pres = presentation(&t).unwrap();
        let identity = low_index(&pres, 1).unwrap().remove(0);
        let cover = build_cover(&t, &identity).unwrap();
        assert_eq!(cover, t);
    }

    #[test]
    fn mismatched_records_are_rejected() {
        let circle_rec = low_index(&presentation(&builtin::circle()).unwrap(), 2)
            .unwrap()
            .into_iter()
            .find(|r| r.index == 2)
            .unwrap();
        assert!(build_cover(&builtin::torus(), &circle_rec).is_err());
    }
}
