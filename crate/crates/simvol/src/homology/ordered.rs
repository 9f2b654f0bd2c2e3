//! Ordered chains on a simplicial host.
//!
//! An [`OrderedChain`] is a finitely supported integer combination of
//! *ordered* simplices: `(k+1)`-tuples of vertex ids with repeats allowed.
//! A tuple is carried by a simplicial complex when its set of distinct
//! vertices spans a simplex; this is the natural chain model for explicit
//! homotopies (prisms, cone contractions) where degenerate tuples arise.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::complex::DeltaComplex;
use crate::error::{Error, Result};

/// A sparse integer chain of ordered simplices of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedChain {
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, i64>,
}

impl OrderedChain {
    /// The zero chain of the given degree.
    pub fn new(degree: usize) -> Self {
        OrderedChain { degree, coeffs: BTreeMap::new() }
    }

    /// Builds a chain from `(tuple, coefficient)` entries.
    ///
    /// # Panics
    /// Panics if a tuple's arity does not match the degree.
    pub fn from_entries<I>(degree: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (Vec<usize>, i64)>,
    {
        let mut out = OrderedChain::new(degree);
        for (tuple, c) in entries {
            out.add_to(tuple, c);
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds `c` to the coefficient of an ordered tuple.
    ///
    /// # Panics
    /// Panics if the tuple's arity does not match the degree.
    pub fn add_to(&mut self, tuple: Vec<usize>, c: i64) {
        assert_eq!(
            tuple.len(),
            self.degree + 1,
            "tuple arity {} does not match degree {}",
            tuple.len(),
            self.degree
        );
        if c == 0 {
            return;
        }
        match self.coeffs.entry(tuple) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot
                    .get()
                    .checked_add(c)
                    .expect("ordered-chain coefficient overflow");
                if sum == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, tuple: &[usize]) -> i64 {
        self.coeffs.get(tuple).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize], i64)> + '_ {
        self.coeffs.iter().map(|(t, &c)| (t.as_slice(), c))
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of absolute coefficients.
    pub fn l1(&self) -> u64 {
        self.coeffs.values().map(|c| c.unsigned_abs()).sum()
    }

    /// Sum of signed coefficients (the augmentation in degree 0).
    pub fn coefficient_sum(&self) -> i64 {
        self.coeffs
            .values()
            .fold(0i64, |acc, &c| acc.checked_add(c).expect("coefficient sum overflow"))
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut out = OrderedChain::new(self.degree);
        for (t, c) in self.entries() {
            out.add_to(t.to_vec(), c.checked_mul(k).expect("coefficient overflow"));
        }
        out
    }

    /// # Panics
    /// Panics if the degrees differ.
    pub fn plus(&self, other: &OrderedChain) -> Self {
        assert_eq!(self.degree, other.degree, "cannot add chains of different degree");
        let mut out = self.clone();
        for (t, c) in other.entries() {
            out.add_to(t.to_vec(), c);
        }
        out
    }

    pub fn minus(&self, other: &OrderedChain) -> Self {
        self.plus(&other.scaled(-1))
    }

    /// The simplicial boundary `Σ_j (−1)^j ∂_j`; repeated vertices cancel in
    /// the usual way.
    ///
    /// # Panics
    /// Panics in degree 0 (use [`OrderedChain::is_cycle`], which treats every
    /// 0-chain as a cycle).
    pub fn boundary(&self) -> OrderedChain {
        assert!(self.degree >= 1, "boundary of a degree-0 ordered chain");
        let mut out = OrderedChain::new(self.degree - 1);
        for (tuple, c) in self.entries() {
            for j in 0..tuple.len() {
                let mut face = tuple.to_vec();
                face.remove(j);
                out.add_to(face, if j % 2 == 0 { c } else { -c });
            }
        }
        out
    }

    /// True iff the boundary vanishes (every 0-chain counts as a cycle).
    pub fn is_cycle(&self) -> bool {
        self.degree == 0 || self.boundary().is_zero()
    }

    /// Largest vertex id mentioned, if any.
    pub fn max_vertex(&self) -> Option<usize> {
        self.coeffs.keys().filter_map(|t| t.iter().max()).max().copied()
    }

    /// True iff every mentioned vertex id is `< limit`.
    pub fn supported_below(&self, limit: usize) -> bool {
        self.max_vertex().map_or(true, |m| m < limit)
    }
}

impl fmt::Display for OrderedChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, c) in self.entries() {
            let tuple = t.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
            if first {
                write!(f, "{c}*({tuple})")?;
                first = false;
            } else if c < 0 {
                write!(f, " - {}*({tuple})", -c)?;
            } else {
                write!(f, " + {c}*({tuple})")?;
            }
        }
        Ok(())
    }
}

/// A simplicial complex prepared for vertex-set lookups.
pub struct SimplicialHost<'a> {
    complex: &'a DeltaComplex,
    sets: Vec<HashSet<Vec<usize>>>,
}

impl<'a> SimplicialHost<'a> {
    /// Indexes the vertex sets of a simplicial complex.
    pub fn new(complex: &'a DeltaComplex) -> Result<Self> {
        if !complex.is_simplicial() {
            return Err(Error::NotSimplicial(
                "ordered chains need a simplicial host".into(),
            ));
        }
        let mut sets = Vec::with_capacity(complex.dimension());
        for k in 1..=complex.dimension() {
            let mut level = HashSet::with_capacity(complex.simplex_count(k));
            for id in 0..complex.simplex_count(k) {
                let mut tuple = complex.vertex_tuple(k, id);
                tuple.sort_unstable();
                level.insert(tuple);
            }
            sets.push(level);
        }
        Ok(SimplicialHost { complex, sets })
    }

    pub fn complex(&self) -> &DeltaComplex {
        self.complex
    }

    /// True iff the set of distinct vertices in `tuple` spans a simplex.
    pub fn carries_tuple(&self, tuple: &[usize]) -> bool {
        let mut set: Vec<usize> = tuple.to_vec();
        set.sort_unstable();
        set.dedup();
        match set.len() {
            0 => false,
            1 => set[0] < self.complex.vertex_count(),
            k => k - 1 <= self.complex.dimension() && self.sets[k - 2].contains(&set),
        }
    }

    /// Checks that every tuple of the chain is carried by the host.
    pub fn validate(&self, chain: &OrderedChain) -> Result<()> {
        for (tuple, _) in chain.entries() {
            if !self.carries_tuple(tuple) {
                return Err(Error::BadChain(format!(
                    "tuple ({}) does not span a simplex of the host",
                    tuple.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builtin;

    #[test]
    fn boundary_cancels_on_degenerate_tuples() {
        let loop_edge = OrderedChain::from_entries(1, [(vec![3, 3], 1)]);
        assert!(loop_edge.boundary().is_zero());
        assert!(loop_edge.is_cycle());
        let path = OrderedChain::from_entries(1, [(vec![0, 1], 1), (vec![1, 0], 1)]);
        assert!(path.is_cycle());
    }

    #[test]
    fn boundary_of_boundary_is_zero() {
        let c = OrderedChain::from_entries(
            2,
            [(vec![0, 1, 2], 3), (vec![2, 2, 4], -2), (vec![1, 1, 1], 7)],
        );
        assert!(c.boundary().boundary().is_zero());
    }

    #[test]
    fn host_lookup_respects_vertex_sets() {
        let oct = builtin::octahedron();
        let host = SimplicialHost::new(&oct).unwrap();
        assert!(host.carries_tuple(&[0, 2, 4]));
        assert!(host.carries_tuple(&[2, 0, 4, 0])); // same set, repeats
        assert!(host.carries_tuple(&[5])); // a vertex
        assert!(!host.carries_tuple(&[0, 1])); // poles are not adjacent
        assert!(!host.carries_tuple(&[9]));

        let chain = OrderedChain::from_entries(1, [(vec![0, 2], 1), (vec![0, 1], 1)]);
        assert!(host.validate(&chain).is_err());
    }

    #[test]
    fn non_simplicial_hosts_are_rejected() {
        assert!(matches!(
            SimplicialHost::new(&builtin::torus()),
            Err(Error::NotSimplicial(_))
        ));
    }

    #[test]
    fn l1_and_sums() {
        let c = OrderedChain::from_entries(1, [(vec![0, 1], 2), (vec![1, 2], -3)]);
        assert_eq!(c.l1(), 5);
        assert_eq!(c.coefficient_sum(), -1);
        assert_eq!(c.minus(&c), OrderedChain::new(1));
    }
}
