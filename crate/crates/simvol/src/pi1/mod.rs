//! Fundamental groups of connected Δ-complexes.
//!
//! The edge-path presentation: pick a spanning tree of the 1-skeleton, turn
//! every non-tree edge into a generator, and read one relator off the
//! boundary of every triangle. Together with coset enumeration this yields
//! finite-index subgroups, and each subgroup record determines a finite
//! cover of the complex (see [`cover`]).

mod low_index;
pub mod cover;

pub use cover::{build_cover, subgroup_chain, transfer_chain, TowerStage};
pub use low_index::{count_by_index, low_index, SubgroupRecord};

use std::collections::VecDeque;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::complex::DeltaComplex;
use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntMatrix};

/// One letter of a word: a generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    /// Column of this letter in a coset table with interleaved columns
    /// `g_0, g_0⁻¹, g_1, g_1⁻¹, …`.
    pub fn column(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }
}

/// Freely reduces a word by cancelling adjacent inverse pairs.
fn free_reduce(word: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for l in word {
        if out.last().is_some_and(|t| *t == l.inverted()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// How an edge of the complex reads as a word in the generators
/// (in its tail-to-head direction).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeWord {
    /// Spanning-tree edge: trivial in the group.
    Tree,
    /// Non-tree edge: the generator with this id.
    Generator(usize),
}

/// A finite presentation of the fundamental group, tied to the complex it
/// came from through the per-edge words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Vec<Letter>>,
    edge_words: Vec<EdgeWord>,
}

impl Presentation {
    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Vec<Letter>] {
        &self.relators
    }

    /// The word of an edge of the underlying complex (tail to head).
    pub fn edge_word(&self, edge: usize) -> EdgeWord {
        self.edge_words[edge]
    }

    pub fn edge_count(&self) -> usize {
        self.edge_words.len()
    }

    /// Renders a word like `x0 x2^-1 x0`; the empty word renders as `1`.
    pub fn render_word(word: &[Letter]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter()
            .map(|l| {
                if l.inverse {
                    format!("x{}^-1", l.generator)
                } else {
                    format!("x{}", l.generator)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Rank and torsion divisors (`> 1`) of the abelianized group, via the
    /// Smith normal form of the relator exponent matrix.
    pub fn abelianization(&self) -> (usize, Vec<BigUint>) {
        let rows = self.relators.len();
        let cols = self.generator_count;
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, rel) in self.relators.iter().enumerate() {
            for l in rel {
                let delta = BigInt::from(if l.inverse { -1 } else { 1 });
                let cur = m.get(i, l.generator) + delta;
                m.set(i, l.generator, cur);
            }
        }
        let snf = smith_normal_form(&m);
        let rank = snf.rank;
        let torsion = snf
            .divisors
            .iter()
            .filter(|d| **d > BigInt::from(1))
            .map(|d| d.to_biguint().expect("normalized divisors are positive"))
            .collect();
        (cols - rank, torsion)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = (0..self.generator_count)
            .map(|g| format!("x{g}"))
            .collect::<Vec<_>>()
            .join(", ");
        let rels = self
            .relators
            .iter()
            .map(|r| Self::render_word(r))
            .collect::<Vec<_>>()
            .join(", ");
        write!(f, "< {gens} | {rels} >")
    }
}

/// The edge-path presentation of `π₁(complex, vertex 0)`.
///
/// A breadth-first spanning tree is grown from vertex 0; every non-tree edge
/// becomes a generator (numbered by ascending edge id) and every triangle
/// contributes the relator `[f₂][f₀][f₁]⁻¹` — its boundary loop read along
/// vertices `0 → 1 → 2 → 0` — with tree edges dropped. Higher-dimensional
/// simplices do not affect the group.
pub fn presentation(complex: &DeltaComplex) -> Result<Presentation> {
    let v = complex.vertex_count();
    let e = complex.simplex_count(1);

    // Breadth-first tree in the 1-skeleton.
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); v];
    for id in 0..e {
        let tail = complex.face(1, id, 1);
        let head = complex.face(1, id, 0);
        adjacency[tail].push((head, id));
        adjacency[head].push((tail, id));
    }
    let mut seen = vec![false; v];
    let mut in_tree = vec![false; e];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &(w, id) in &adjacency[u] {
            if !seen[w] {
                seen[w] = true;
                in_tree[id] = true;
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::NotConnected);
    }

    let mut edge_words = Vec::with_capacity(e);
    let mut generator_count = 0;
    for id in 0..e {
        if in_tree[id] {
            edge_words.push(EdgeWord::Tree);
        } else {
            edge_words.push(EdgeWord::Generator(generator_count));
            generator_count += 1;
        }
    }

    let letter = |edge: usize, inverse: bool| -> Option<Letter> {
        match edge_words[edge] {
            EdgeWord::Tree => None,
            EdgeWord::Generator(g) => Some(Letter::new(g, inverse)),
        }
    };

    let mut relators = Vec::new();
    if complex.dimension() >= 2 {
        for t in 0..complex.simplex_count(2) {
            let mut word = Vec::with_capacity(3);
            word.extend(letter(complex.face(2, t, 2), false));
            word.extend(letter(complex.face(2, t, 0), false));
            word.extend(letter(complex.face(2, t, 1), true));
            let word = free_reduce(word);
            if !word.is_empty() {
                relators.push(word);
            }
        }
    }

    Ok(Presentation { generator_count, relators, edge_words })
}
