//! Coset enumeration of low-index subgroups.
//!
//! Depth-first search over standardized coset tables. A subgroup of index
//! `d` corresponds to a transitive action on `d` cosets with a marked base
//! coset; numbering cosets by first appearance in the table scan makes that
//! correspondence one-to-one, so the search counts *subgroups* (not
//! conjugacy classes) exactly once each.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pi1::{Letter, Presentation};

/// A finite-index subgroup, stored as its completed coset table.
///
/// Rows are cosets (row 0 is the subgroup itself), columns are interleaved
/// generator actions `g_0, g_0⁻¹, g_1, g_1⁻¹, …` under right multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRecord {
    pub index: usize,
    pub table: Vec<Vec<usize>>,
}

impl SubgroupRecord {
    pub fn generator_count(&self) -> usize {
        self.table.first().map_or(0, |row| row.len() / 2)
    }

    /// Image of `coset` under one letter.
    pub fn step(&self, coset: usize, letter: Letter) -> usize {
        self.table[coset][letter.column()]
    }

    /// Image of `coset` under a word, letters applied left to right.
    pub fn word_action(&self, word: &[Letter], coset: usize) -> usize {
        word.iter().fold(coset, |c, &l| self.step(c, l))
    }

    /// The permutation a word induces on all cosets.
    pub fn word_permutation(&self, word: &[Letter]) -> Vec<usize> {
        (0..self.index).map(|c| self.word_action(word, c)).collect()
    }

    /// Checks that the table is a complete, involution-consistent,
    /// transitive action satisfying every relator of the presentation.
    pub fn validate(&self, presentation: &Presentation) -> Result<()> {
        let r = presentation.generator_count();
        let d = self.index;
        if d == 0 || self.table.len() != d {
            return Err(Error::BadSubgroupRecord(format!(
                "table has {} rows for claimed index {d}",
                self.table.len()
            )));
        }
        for (i, row) in self.table.iter().enumerate() {
            if row.len() != 2 * r {
                return Err(Error::BadSubgroupRecord(format!(
                    "row {i} has {} columns, expected {}",
                    row.len(),
                    2 * r
                )));
            }
            for (j, &k) in row.iter().enumerate() {
                if k >= d {
                    return Err(Error::BadSubgroupRecord(format!(
                        "entry ({i}, {j}) = {k} out of range"
                    )));
                }
                if self.table[k][j ^ 1] != i {
                    return Err(Error::BadSubgroupRecord(format!(
                        "columns {j} and {} are not mutually inverse at coset {i}",
                        j ^ 1
                    )));
                }
            }
        }
        // Transitivity: every coset reachable from 0.
        let mut seen = vec![false; d];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(c) = stack.pop() {
            for &k in &self.table[c] {
                if !seen[k] {
                    seen[k] = true;
                    stack.push(k);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::BadSubgroupRecord(
                "action is not transitive".into(),
            ));
        }
        for rel in presentation.relators() {
            for c in 0..d {
                if self.word_action(rel, c) != c {
                    return Err(Error::RelatorViolation(format!(
                        "relator {} moves coset {c}",
                        Presentation::render_word(rel)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The search state: a partial coset table plus an undo log.
struct Search<'a> {
    relators: &'a [Vec<Letter>],
    cols: usize,
    max: usize,
    /// `usize::MAX` marks an undefined entry.
    table: Vec<Vec<usize>>,
    /// Definitions in application order, for backtracking.
    log: Vec<(usize, usize)>,
    out: Vec<SubgroupRecord>,
}

const UNDEF: usize = usize::MAX;

impl<'a> Search<'a> {
    fn define(&mut self, i: usize, j: usize, k: usize) {
        debug_assert_eq!(self.table[i][j], UNDEF);
        self.table[i][j] = k;
        self.log.push((i, j));
    }

    /// Sets `i·j = k` together with the inverse entry `k·j⁻¹ = i`.
    /// Returns false on a clash with existing entries.
    fn deduce(&mut self, i: usize, j: usize, k: usize) -> bool {
        match self.table[i][j] {
            UNDEF => self.define(i, j, k),
            v if v == k => {}
            _ => return false,
        }
        match self.table[k][j ^ 1] {
            UNDEF => self.define(k, j ^ 1, i),
            v if v == i => {}
            _ => return false,
        }
        true
    }

    /// Scans one relator at one coset; fills a single gap when forced.
    /// Returns `Err(())` on contradiction, `Ok(true)` if something new was
    /// deduced.
    fn scan(&mut self, rel: &[Letter], c: usize) -> std::result::Result<bool, ()> {
        let mut f = 0usize; // next unread position from the front
        let mut cf = c;
        while f < rel.len() {
            let next = self.table[cf][rel[f].column()];
            if next == UNDEF {
                break;
            }
            cf = next;
            f += 1;
        }
        if f == rel.len() {
            return if cf == c { Ok(false) } else { Err(()) };
        }
        let mut b = rel.len(); // positions b.. are consumed from the back
        let mut cb = c;
        while b > f + 1 {
            let prev = self.table[cb][rel[b - 1].inverted().column()];
            if prev == UNDEF {
                break;
            }
            cb = prev;
            b -= 1;
        }
        if b == f + 1 {
            // Exactly one undefined letter: its action is forced.
            if self.deduce(cf, rel[f].column(), cb) {
                Ok(true)
            } else {
                Err(())
            }
        } else {
            Ok(false)
        }
    }

    /// Relator closure over the whole table, to a fixpoint.
    fn propagate(&mut self) -> std::result::Result<(), ()> {
        let relators = self.relators;
        loop {
            let mut changed = false;
            for rel in relators {
                for c in 0..self.table.len() {
                    changed |= self.scan(rel, c)?;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn first_undefined(&self) -> Option<(usize, usize)> {
        for i in 0..self.table.len() {
            for j in 0..self.cols {
                if self.table[i][j] == UNDEF {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn dfs(&mut self) {
        let Some((i, j)) = self.first_undefined() else {
            let record = SubgroupRecord {
                index: self.table.len(),
                table: self.table.clone(),
            };
            self.out.push(record);
            return;
        };
        let n = self.table.len();
        let mut candidates: Vec<usize> = (0..n)
            .filter(|&k| {
                let back = self.table[k][j ^ 1];
                back == UNDEF || back == i
            })
            .collect();
        if n < self.max {
            candidates.push(n); // a fresh coset, numbered by first appearance
        }
        for k in candidates {
            let mark = self.log.len();
            let fresh = k == n;
            if fresh {
                self.table.push(vec![UNDEF; self.cols]);
            }
            if self.deduce(i, j, k) && self.propagate().is_ok() {
                self.dfs();
            }
            while self.log.len() > mark {
                let (a, b) = self.log.pop().unwrap();
                self.table[a][b] = UNDEF;
            }
            if fresh {
                debug_assert!(self.table[n].iter().all(|&v| v == UNDEF));
                self.table.pop();
            }
        }
    }
}

/// Enumerates every subgroup of index at most `max_index`, each given by its
/// standardized coset table. Records appear in a deterministic search order;
/// the whole group itself is the unique index-1 record.
pub fn low_index(presentation: &Presentation, max_index: usize) -> Result<Vec<SubgroupRecord>> {
    if max_index == 0 {
        return Err(Error::BadParameter("max_index must be at least 1".into()));
    }
    let cols = 2 * presentation.generator_count();
    let mut search = Search {
        relators: presentation.relators(),
        cols,
        max: max_index,
        table: vec![vec![UNDEF; cols]],
        log: Vec::new(),
        out: Vec::new(),
    };
    search.dfs();
    let out = search.out;
    for rec in &out {
        rec.validate(presentation)?;
    }
    Ok(out)
}

/// Counts the records of each index `1..=max_index`.
pub fn count_by_index(records: &[SubgroupRecord], max_index: usize) -> Vec<usize> {
    let mut counts = vec![0usize; max_index];
    for r in records {
        counts[r.index - 1] += 1;
    }
    counts
}
