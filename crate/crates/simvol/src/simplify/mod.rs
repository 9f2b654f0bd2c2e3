//! Triangulation simplification by seeded annealing over local moves.
//!
//! The objective is the number of top simplices.  Surfaces use edge flips,
//! vertex insertion/removal, and admissible edge contractions; simplicial
//! 3-manifolds use the four Pachner moves plus edge contraction under the
//! link condition.  Every applied move must leave a valid complex with the
//! input's Euler characteristic and orientability, and a final homology
//! comparison acts as an end-to-end tripwire.  Runs are reproducible: the
//! move log is a pure function of the input, the seed, and the config.

pub mod bistellar;
pub mod surface;

pub use bistellar::{contract_edge, move_1_4, move_2_3, move_3_2, move_4_1, TetSet};
pub use surface::{contract, flip, merge_vertex, split_triangle, Surface};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{DeltaComplex, ValidationReport};
use crate::error::{Error, Result};
use crate::homology::HomologyProfile;

/// Primes used by the end-of-run homology tripwire.
const GUARD_PRIMES: [u64; 3] = [2, 3, 5];
const GUARD_DIGITS: u32 = 30;

/// Parameters of one seeded search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    /// Seed of the proposal stream.
    pub seed: u64,
    /// Number of proposal steps.
    pub max_steps: u32,
    /// Initial temperature of the geometric cooling schedule.
    pub t0: f64,
    /// Cooling ratio per step.
    pub cooling: f64,
    /// Minimum acceptance probability for size-neutral moves, so plateau
    /// exploration never freezes out entirely.
    pub neutral_accept_floor: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            max_steps: 20_000,
            t0: 2.0,
            cooling: 0.995,
            neutral_accept_floor: 0.05,
        }
    }
}

/// One local move, addressed by the simplex ids of the complex it is
/// applied to.  Slots are `3t + j` (face `j` of triangle `t`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    /// 2↔2: re-cut the quadrilateral around the edge at this slot.
    EdgeFlip { slot: usize },
    /// 1→3: cone a triangle over a fresh interior vertex.
    VertexInsert { triangle: usize },
    /// 3→1: remove a vertex of degree three.
    VertexRemove { vertex: usize },
    /// Contract the edge at this slot, removing its two triangles.
    EdgeContraction { slot: usize },
    /// Pachner 1→4: cone a tetrahedron over a fresh interior vertex.
    Pachner14 { tet: [usize; 4] },
    /// Pachner 4→1: remove a vertex of degree four.
    Pachner41 { vertex: usize },
    /// Pachner 2→3: trade a shared triangle for its opposite edge.
    Pachner23 { tets: [[usize; 4]; 2] },
    /// Pachner 3→2: trade a degree-three edge for its opposite triangle.
    Pachner32 { edge: [usize; 2] },
    /// Contract a 3-manifold edge satisfying the link condition.
    TetEdgeContraction { edge: [usize; 2] },
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::EdgeFlip { .. } => "edge-flip",
            Move::VertexInsert { .. } => "vertex-insert",
            Move::VertexRemove { .. } => "vertex-remove",
            Move::EdgeContraction { .. } => "edge-contraction",
            Move::Pachner14 { .. } => "pachner-1-4",
            Move::Pachner41 { .. } => "pachner-4-1",
            Move::Pachner23 { .. } => "pachner-2-3",
            Move::Pachner32 { .. } => "pachner-3-2",
            Move::TetEdgeContraction { .. } => "tet-edge-contraction",
        }
    }

    /// Whether the move strictly decreases the top-simplex count.
    pub fn is_decreasing(&self) -> bool {
        matches!(
            self,
            Move::VertexRemove { .. }
                | Move::EdgeContraction { .. }
                | Move::Pachner41 { .. }
                | Move::Pachner32 { .. }
                | Move::TetEdgeContraction { .. }
        )
    }
}

/// One accepted step of a search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub step: u32,
    pub applied: Move,
    pub count_after: usize,
}

/// Outcome of a search: the best complex seen plus the full trace.
#[derive(Clone, Debug)]
pub struct SimplifyResult {
    pub complex: DeltaComplex,
    pub initial_count: usize,
    pub final_count: usize,
    /// Top-simplex count after each accepted move, starting at the input.
    pub size_trace: Vec<usize>,
    pub move_log: Vec<MoveRecord>,
    pub config: SearchConfig,
    pub notes: Vec<String>,
}

/// The structural profile every accepted move must preserve.
struct Guard {
    euler_characteristic: i64,
    orientable: bool,
}

impl Guard {
    fn of(report: &ValidationReport) -> Guard {
        Guard {
            euler_characteristic: report.euler_characteristic,
            orientable: report.orientable,
        }
    }

    fn admits(&self, candidate: &DeltaComplex) -> bool {
        let r = candidate.validate();
        r.pseudomanifold
            && r.connected
            && r.euler_characteristic == self.euler_characteristic
            && r.orientable == self.orientable
    }
}

fn checked_input_report(complex: &DeltaComplex) -> Result<ValidationReport> {
    let report = complex.validate();
    if !report.pseudomanifold {
        return Err(Error::NotPseudomanifold(
            "simplification needs every ridge in exactly two top simplices".into(),
        ));
    }
    if !report.connected {
        return Err(Error::NotConnected);
    }
    Ok(report)
}

/// Enumerates every admissible move, in a deterministic order.  Dimensions
/// outside the catalog (or non-simplicial 3-complexes) yield an empty list
/// plus a warning.
pub fn applicable_moves(complex: &DeltaComplex) -> Result<(Vec<Move>, Option<String>)> {
    match complex.dimension() {
        2 => {
            let report = checked_input_report(complex)?;
            let guard = Guard::of(&report);
            let state = Surface::from_complex(complex)?;
            let mut moves = Vec::new();
            let admits = |s: &Surface| s.to_complex().is_ok_and(|c| guard.admits(&c));
            for slot in 0..state.partner.len() {
                if state.partner[slot] < slot {
                    continue;
                }
                if flip(&state, slot).is_ok_and(|s| admits(&s)) {
                    moves.push(Move::EdgeFlip { slot });
                }
            }
            for triangle in 0..state.triangle_count() {
                moves.push(Move::VertexInsert { triangle });
            }
            let mut classes: Vec<usize> = state.tris.iter().flatten().copied().collect();
            classes.sort_unstable();
            classes.dedup();
            for vertex in classes {
                if merge_vertex(&state, vertex).is_ok_and(|s| admits(&s)) {
                    moves.push(Move::VertexRemove { vertex });
                }
            }
            for slot in 0..state.partner.len() {
                if state.partner[slot] < slot {
                    continue;
                }
                if contract(&state, slot).is_ok_and(|s| admits(&s)) {
                    moves.push(Move::EdgeContraction { slot });
                }
            }
            Ok((moves, None))
        }
        3 if complex.is_simplicial() => {
            let report = checked_input_report(complex)?;
            let guard = Guard::of(&report);
            let state = TetSet::from_complex(complex)?;
            let mut moves = Vec::new();
            let admits = |s: &TetSet| s.to_complex().is_ok_and(|c| guard.admits(&c));
            let facets: Vec<[usize; 4]> = (0..state.tet_count())
                .map(|i| state.facet(i).expect("index in range"))
                .collect();
            for &tet in &facets {
                moves.push(Move::Pachner14 { tet });
            }
            let vertices = state.vertices();
            for &vertex in &vertices {
                if move_4_1(&state, vertex).is_ok_and(|s| admits(&s)) {
                    moves.push(Move::Pachner41 { vertex });
                }
            }
            for (i, &f1) in facets.iter().enumerate() {
                for &f2 in facets.iter().skip(i + 1) {
                    if f1.iter().filter(|v| f2.contains(v)).count() == 3
                        && move_2_3(&state, f1, f2).is_ok_and(|s| admits(&s))
                    {
                        moves.push(Move::Pachner23 { tets: [f1, f2] });
                    }
                }
            }
            let mut edges: Vec<[usize; 2]> = Vec::new();
            for f in &facets {
                for a in 0..4 {
                    for b in (a + 1)..4 {
                        edges.push([f[a], f[b]]);
                    }
                }
            }
            edges.sort_unstable();
            edges.dedup();
            for &[d, e] in &edges {
                if move_3_2(&state, d, e).is_ok_and(|s| admits(&s)) {
                    moves.push(Move::Pachner32 { edge: [d, e] });
                }
            }
            for &[d, e] in &edges {
                if contract_edge(&state, d, e).is_ok_and(|s| admits(&s)) {
                    moves.push(Move::TetEdgeContraction { edge: [d, e] });
                }
            }
            Ok((moves, None))
        }
        3 => Ok((
            Vec::new(),
            Some("not a simplicial complex; barycentric subdivision enables moves".into()),
        )),
        d => Ok((
            Vec::new(),
            Some(format!("no move catalog for dimension {d}")),
        )),
    }
}

/// Applies one move, re-validating the result against the input's profile.
pub fn apply_move(complex: &DeltaComplex, mv: &Move) -> Result<DeltaComplex> {
    let report = checked_input_report(complex)?;
    let guard = Guard::of(&report);
    let candidate = match (complex.dimension(), mv) {
        (2, Move::EdgeFlip { slot }) => flip(&Surface::from_complex(complex)?, *slot)?.to_complex()?,
        (2, Move::VertexInsert { triangle }) => {
            split_triangle(&Surface::from_complex(complex)?, *triangle)?.to_complex()?
        }
        (2, Move::VertexRemove { vertex }) => {
            merge_vertex(&Surface::from_complex(complex)?, *vertex)?.to_complex()?
        }
        (2, Move::EdgeContraction { slot }) => {
            contract(&Surface::from_complex(complex)?, *slot)?.to_complex()?
        }
        (3, Move::Pachner14 { tet }) => {
            move_1_4(&TetSet::from_complex(complex)?, *tet)?.to_complex()?
        }
        (3, Move::Pachner41 { vertex }) => {
            move_4_1(&TetSet::from_complex(complex)?, *vertex)?.to_complex()?
        }
        (3, Move::Pachner23 { tets }) => {
            move_2_3(&TetSet::from_complex(complex)?, tets[0], tets[1])?.to_complex()?
        }
        (3, Move::Pachner32 { edge }) => {
            move_3_2(&TetSet::from_complex(complex)?, edge[0], edge[1])?.to_complex()?
        }
        (3, Move::TetEdgeContraction { edge }) => {
            contract_edge(&TetSet::from_complex(complex)?, edge[0], edge[1])?.to_complex()?
        }
        (d, m) => {
            return Err(Error::MoveInadmissible(format!(
                "move {} does not apply in dimension {d}",
                m.kind()
            )))
        }
    };
    if !guard.admits(&candidate) {
        return Err(Error::MoveInadmissible(format!(
            "move {} would change the structural profile",
            mv.kind()
        )));
    }
    Ok(candidate)
}

/// Metropolis acceptance over the geometric cooling schedule: decreasing
/// moves always pass, neutral moves pass with a floored
/// temperature-dependent probability, increasing moves with exp(-Δ/T).
fn accepts(rng: &mut ChaCha8Rng, config: &SearchConfig, step: u32, delta: i64) -> bool {
    if delta < 0 {
        return true;
    }
    let t = config.t0 * config.cooling.powi(step as i32);
    let p = if delta == 0 {
        (-1.0 / t).exp().max(config.neutral_accept_floor)
    } else if t <= f64::MIN_POSITIVE {
        0.0
    } else {
        (-(delta as f64) / t).exp()
    };
    rng.gen::<f64>() < p
}

/// Shared annealing loop over an abstract move engine.
trait MoveEngine: Sized {
    fn count(&self) -> usize;
    /// Proposes one random move; `None` when the target sampling itself
    /// failed (e.g. no vertices).  The move is not yet admissibility-checked.
    fn propose(&self, rng: &mut ChaCha8Rng) -> Option<Move>;
    fn apply(&self, mv: &Move) -> Result<Self>;
    fn realize(&self) -> Result<DeltaComplex>;
}

impl MoveEngine for Surface {
    fn count(&self) -> usize {
        self.triangle_count()
    }

    fn propose(&self, rng: &mut ChaCha8Rng) -> Option<Move> {
        let f = self.triangle_count();
        if f == 0 {
            return None;
        }
        Some(match rng.gen_range(0..4u8) {
            0 => Move::EdgeFlip {
                slot: rng.gen_range(0..3 * f),
            },
            1 => Move::VertexInsert {
                triangle: rng.gen_range(0..f),
            },
            2 => {
                let t = rng.gen_range(0..f);
                let corner = rng.gen_range(0..3);
                Move::VertexRemove {
                    vertex: self.tris[t][corner],
                }
            }
            _ => Move::EdgeContraction {
                slot: rng.gen_range(0..3 * f),
            },
        })
    }

    fn apply(&self, mv: &Move) -> Result<Self> {
        match mv {
            Move::EdgeFlip { slot } => flip(self, *slot),
            Move::VertexInsert { triangle } => split_triangle(self, *triangle),
            Move::VertexRemove { vertex } => merge_vertex(self, *vertex),
            Move::EdgeContraction { slot } => contract(self, *slot),
            other => Err(Error::MoveInadmissible(format!(
                "{} is not a surface move",
                other.kind()
            ))),
        }
    }

    fn realize(&self) -> Result<DeltaComplex> {
        self.to_complex()
    }
}

impl MoveEngine for TetSet {
    fn count(&self) -> usize {
        self.tet_count()
    }

    fn propose(&self, rng: &mut ChaCha8Rng) -> Option<Move> {
        let n = self.tet_count();
        if n == 0 {
            return None;
        }
        let pick_facet = |rng: &mut ChaCha8Rng| self.facet(rng.gen_range(0..n)).expect("in range");
        let pick_edge = |rng: &mut ChaCha8Rng| {
            let f = pick_facet(rng);
            let a = rng.gen_range(0..4);
            let b = (a + rng.gen_range(1..4)) % 4;
            [f[a.min(b)], f[a.max(b)]]
        };
        Some(match rng.gen_range(0..5u8) {
            0 => Move::Pachner14 {
                tet: pick_facet(rng),
            },
            1 => {
                let f = pick_facet(rng);
                Move::Pachner41 {
                    vertex: f[rng.gen_range(0..4)],
                }
            }
            2 => {
                let f1 = pick_facet(rng);
                let drop = rng.gen_range(0..4);
                let tri: Vec<usize> = (0..4).filter(|&i| i != drop).map(|i| f1[i]).collect();
                let f2 = (0..n)
                    .map(|i| self.facet(i).expect("in range"))
                    .find(|g| *g != f1 && tri.iter().all(|v| g.contains(v)))?;
                Move::Pachner23 { tets: [f1, f2] }
            }
            3 => Move::Pachner32 {
                edge: pick_edge(rng),
            },
            _ => Move::TetEdgeContraction {
                edge: pick_edge(rng),
            },
        })
    }

    fn apply(&self, mv: &Move) -> Result<Self> {
        match mv {
            Move::Pachner14 { tet } => move_1_4(self, *tet),
            Move::Pachner41 { vertex } => move_4_1(self, *vertex),
            Move::Pachner23 { tets } => move_2_3(self, tets[0], tets[1]),
            Move::Pachner32 { edge } => move_3_2(self, edge[0], edge[1]),
            Move::TetEdgeContraction { edge } => contract_edge(self, edge[0], edge[1]),
            other => Err(Error::MoveInadmissible(format!(
                "{} is not a 3-manifold move",
                other.kind()
            ))),
        }
    }

    fn realize(&self) -> Result<DeltaComplex> {
        self.to_complex()
    }
}

struct AnnealOutcome {
    best_complex: DeltaComplex,
    size_trace: Vec<usize>,
    move_log: Vec<MoveRecord>,
    note: Option<String>,
}

fn anneal<S: MoveEngine>(
    start: S,
    start_complex: DeltaComplex,
    guard: &Guard,
    floor: usize,
    config: &SearchConfig,
) -> AnnealOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut current = start;
    let mut best_complex = start_complex;
    let mut best_count = current.count();
    let mut size_trace = vec![best_count];
    let mut move_log = Vec::new();
    let mut note = None;
    for step in 0..config.max_steps {
        if best_count <= floor {
            note = Some(format!(
                "stopped at step {step}: reached the size floor of {floor}"
            ));
            break;
        }
        let Some(mv) = current.propose(&mut rng) else {
            continue;
        };
        let Ok(candidate) = current.apply(&mv) else {
            continue;
        };
        let delta = candidate.count() as i64 - current.count() as i64;
        if !accepts(&mut rng, config, step, delta) {
            continue;
        }
        let Ok(realized) = candidate.realize() else {
            continue;
        };
        if !guard.admits(&realized) {
            continue;
        }
        current = candidate;
        let count = current.count();
        size_trace.push(count);
        move_log.push(MoveRecord {
            step,
            applied: mv,
            count_after: count,
        });
        if count < best_count {
            best_count = count;
            best_complex = realized;
        }
    }
    AnnealOutcome {
        best_complex,
        size_trace,
        move_log,
        note,
    }
}

/// Runs one seeded annealing search.  Dimensions outside the move catalog
/// pass the input through unchanged, with a note.
pub fn simplify(complex: &DeltaComplex, config: &SearchConfig) -> Result<SimplifyResult> {
    let dimension = complex.dimension();
    let initial_count = complex.simplex_count(dimension);
    let pass_through = |reason: String| SimplifyResult {
        complex: complex.clone(),
        initial_count,
        final_count: initial_count,
        size_trace: vec![initial_count],
        move_log: Vec::new(),
        config: config.clone(),
        notes: vec![reason],
    };
    let (best_complex, outcome_trace, outcome_log, mut notes) = match dimension {
        2 => {
            let report = checked_input_report(complex)?;
            let guard = Guard::of(&report);
            let floor = std::cmp::max(2, 2 - 2 * report.euler_characteristic) as usize;
            let state = Surface::from_complex(complex)?;
            let out = anneal(state, complex.clone(), &guard, floor, config);
            (
                out.best_complex,
                out.size_trace,
                out.move_log,
                out.note.into_iter().collect::<Vec<_>>(),
            )
        }
        3 if complex.is_simplicial() => {
            let report = checked_input_report(complex)?;
            let guard = Guard::of(&report);
            let state = TetSet::from_complex(complex)?;
            let out = anneal(state, complex.clone(), &guard, 5, config);
            (
                out.best_complex,
                out.size_trace,
                out.move_log,
                out.note.into_iter().collect::<Vec<_>>(),
            )
        }
        3 => {
            return Ok(pass_through(
                "pass-through: not a simplicial complex; barycentric subdivision enables moves"
                    .into(),
            ))
        }
        d => return Ok(pass_through(format!("pass-through: no move catalog for dimension {d}"))),
    };

    let final_count = best_complex.simplex_count(dimension);
    debug_assert_eq!(Some(&final_count), outcome_trace.iter().min());
    if final_count < initial_count || !outcome_log.is_empty() {
        let before = HomologyProfile::compute(complex, &GUARD_PRIMES, GUARD_DIGITS)?;
        let after = HomologyProfile::compute(&best_complex, &GUARD_PRIMES, GUARD_DIGITS)?;
        for k in 0..=dimension {
            let (b, a) = (&before.degrees[k], &after.degrees[k]);
            if b.betti != a.betti || b.torsion_divisors != a.torsion_divisors {
                return Err(Error::Contradiction(format!(
                    "homology changed in degree {k}: betti {} -> {}, torsion {:?} -> {:?}",
                    b.betti, a.betti, b.torsion_divisors, a.torsion_divisors
                )));
            }
        }
    }
    notes.push(format!(
        "{} accepted moves, size {} -> {}",
        outcome_log.len(),
        initial_count,
        final_count
    ));
    Ok(SimplifyResult {
        complex: best_complex,
        initial_count,
        final_count,
        size_trace: outcome_trace,
        move_log: outcome_log,
        config: config.clone(),
        notes,
    })
}

/// Runs independent seeded searches in parallel and keeps the best result
/// (ties broken by the earliest seed in the list).
pub fn simplify_best(
    complex: &DeltaComplex,
    config: &SearchConfig,
    seeds: &[u64],
) -> Result<SimplifyResult> {
    if seeds.is_empty() {
        return simplify(complex, config);
    }
    let runs: Vec<Result<SimplifyResult>> = seeds
        .par_iter()
        .map(|&seed| {
            simplify(
                complex,
                &SearchConfig {
                    seed,
                    ..config.clone()
                },
            )
        })
        .collect();
    let mut best: Option<SimplifyResult> = None;
    for run in runs {
        let run = run?;
        let better = match &best {
            None => true,
            Some(b) => run.final_count < b.final_count,
        };
        if better {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one seed"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builtin;

    #[test]
    fn minimal_torus_is_left_alone() {
        let torus = builtin::torus();
        let result = simplify(&torus, &SearchConfig::default()).unwrap();
        assert_eq!(result.final_count, 2);
        assert!(result.move_log.is_empty());
        assert_eq!(result.complex.canonical_bytes(), torus.canonical_bytes());

        let (moves, warning) = applicable_moves(&torus).unwrap();
        assert!(warning.is_none());
        assert!(moves.iter().any(|m| matches!(m, Move::EdgeFlip { .. })));
        assert!(moves.iter().any(|m| matches!(m, Move::VertexInsert { .. })));
        assert!(
            moves.iter().all(|m| !m.is_decreasing()),
            "a 2-triangle torus admits no decreasing move"
        );
    }

    #[test]
    fn tetrahedron_boundary_admits_flips_and_contractions() {
        let (moves, warning) = applicable_moves(&builtin::tetrahedron_boundary()).unwrap();
        assert!(warning.is_none());
        assert!(moves.iter().any(|m| matches!(m, Move::EdgeFlip { .. })));
        assert!(moves.iter().any(|m| m.is_decreasing()));
    }

    #[test]
    fn inadmissible_moves_error_out() {
        let torus = builtin::torus();
        // Every edge of the one-vertex torus is a loop.
        let err = apply_move(&torus, &Move::EdgeContraction { slot: 0 }).unwrap_err();
        assert!(matches!(err, Error::MoveInadmissible(_)));
        let err = apply_move(&torus, &Move::Pachner14 { tet: [0, 1, 2, 3] }).unwrap_err();
        assert!(matches!(err, Error::MoveInadmissible(_)));
    }

    #[test]
    fn enumerated_moves_all_apply() {
        let oct = builtin::octahedron();
        let (moves, _) = applicable_moves(&oct).unwrap();
        assert!(!moves.is_empty());
        for mv in &moves {
            let next = apply_move(&oct, mv).unwrap();
            assert!(next.validate().pseudomanifold);
        }
    }

    #[test]
    fn four_dimensional_input_passes_through() {
        // Boundary of the 5-simplex: all 5-element subsets of 6 vertices.
        let mut facets = Vec::new();
        for skip in 0..6 {
            facets.push((0..6usize).filter(|&v| v != skip).collect::<Vec<_>>());
        }
        let four_sphere = DeltaComplex::from_facets(&facets, Some(6)).unwrap();
        assert_eq!(four_sphere.dimension(), 4);

        let (moves, warning) = applicable_moves(&four_sphere).unwrap();
        assert!(moves.is_empty());
        assert!(warning.is_some());

        let result = simplify(&four_sphere, &SearchConfig::default()).unwrap();
        assert_eq!(result.final_count, result.initial_count);
        assert!(result.notes[0].contains("pass-through"));
    }

    #[test]
    fn one_vertex_three_torus_passes_through_with_subdivision_hint() {
        let t3 = builtin::three_torus();
        let result = simplify(&t3, &SearchConfig::default()).unwrap();
        assert_eq!(result.final_count, 6);
        assert!(result.notes[0].contains("subdivision"));
    }

    #[test]
    fn double_cover_of_the_torus_reaches_two_triangles() {
        let torus = builtin::torus();
        let pres = crate::pi1::presentation(&torus).unwrap();
        let record = crate::pi1::low_index(&pres, 2)
            .unwrap()
            .into_iter()
            .find(|r| r.index == 2)
            .unwrap();
        let cover = crate::pi1::build_cover(&torus, &record).unwrap();
        assert_eq!(cover.simplex_count(2), 4);

        let result = simplify(&cover, &SearchConfig::default()).unwrap();
        assert_eq!(result.final_count, 2);
        let r = result.complex.validate();
        assert!(r.is_closed_oriented_manifold_like());
        assert_eq!(r.euler_characteristic, 0);
    }

    #[test]
    fn subdivided_torus_simplifies_with_the_default_budget() {
        let sd = builtin::torus().barycentric_subdivision();
        assert_eq!(sd.simplex_count(2), 12);
        let result = simplify(&sd, &SearchConfig::default()).unwrap();
        assert_eq!(
            result.final_count, 2,
            "seed 0 run reached {} triangles",
            result.final_count
        );
        assert_eq!(*result.size_trace.iter().min().unwrap(), result.final_count);
    }

    #[test]
    fn subdivided_projective_plane_simplifies() {
        let sd = builtin::real_projective_plane().barycentric_subdivision();
        assert_eq!(sd.simplex_count(2), 12);
        let result = simplify(&sd, &SearchConfig::default()).unwrap();
        assert_eq!(result.final_count, 2);
        let r = result.complex.validate();
        assert!(r.pseudomanifold && r.connected && !r.orientable);
        assert_eq!(r.euler_characteristic, 1);
    }

    #[test]
    fn octahedron_becomes_a_pillow() {
        let result = simplify(&builtin::octahedron(), &SearchConfig::default()).unwrap();
        assert_eq!(result.final_count, 2);
        assert_eq!(result.complex.validate().euler_characteristic, 2);
    }

    #[test]
    fn genus_two_surface_is_already_at_the_floor() {
        let g2 = builtin::genus_surface(2);
        let result = simplify(&g2, &SearchConfig::default()).unwrap();
        assert_eq!(result.final_count, 6);
        assert!(result.move_log.is_empty(), "floor reached before any move");
    }

    #[test]
    fn five_tet_sphere_is_left_alone() {
        let sphere = builtin::three_sphere();
        let result = simplify(&sphere, &SearchConfig::default()).unwrap();
        assert_eq!(result.final_count, 5);
        assert!(result.move_log.is_empty());
    }

    #[test]
    fn subdivided_three_sphere_simplifies_back_to_five_tets() {
        let sd = builtin::three_sphere().barycentric_subdivision();
        assert_eq!(sd.simplex_count(3), 120);
        let config = SearchConfig {
            max_steps: 6_000,
            ..SearchConfig::default()
        };
        let result = simplify(&sd, &config).unwrap();
        assert!(
            result.final_count <= 12,
            "seed 0 run only reached {} tetrahedra",
            result.final_count
        );
    }

    #[test]
    fn identical_seeds_give_identical_logs() {
        let sd = builtin::torus().barycentric_subdivision();
        let config = SearchConfig::default();
        let a = simplify(&sd, &config).unwrap();
        let b = simplify(&sd, &config).unwrap();
        assert_eq!(a.move_log, b.move_log);
        assert_eq!(a.size_trace, b.size_trace);
        assert_eq!(
            a.complex.canonical_bytes(),
            b.complex.canonical_bytes()
        );
    }

    #[test]
    fn multi_seed_search_returns_the_best_run() {
        let sd = builtin::torus().barycentric_subdivision();
        let config = SearchConfig {
            max_steps: 2_000,
            ..SearchConfig::default()
        };
        let best = simplify_best(&sd, &config, &[0, 1, 2, 3]).unwrap();
        let solo = simplify(&sd, &config).unwrap();
        assert!(best.final_count <= solo.final_count);
    }
}
