//! Sparse integer chains on a Δ-complex.
//!
//! A [`ChainVector`] is a finitely supported map from simplex ids (of one
//! fixed degree) to integer coefficients.  Ids refer to the indexing of the
//! complex the chain lives on; the complex itself is not stored so chains can
//! be moved between a complex and structurally compatible rebuilds of it.

use std::collections::BTreeMap;
use std::fmt;

/// A sparse integer chain of a fixed degree.
///
/// Zero coefficients are never stored; two chains are equal iff they have the
/// same degree and the same non-zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainVector {
    degree: usize,
    coeffs: BTreeMap<usize, i64>,
}

impl ChainVector {
    /// The zero chain in the given degree.
    pub fn new(degree: usize) -> Self {
        ChainVector { degree, coeffs: BTreeMap::new() }
    }

    /// Builds a chain from `(simplex id, coefficient)` entries.  Duplicate
    /// ids are summed; zero totals are dropped.
    pub fn from_entries<I>(degree: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut chain = ChainVector::new(degree);
        for (id, c) in entries {
            chain.add_to(id, c);
        }
        chain
    }

    /// The degree of the chain.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The coefficient of simplex `id` (zero if absent).
    pub fn coeff(&self, id: usize) -> i64 {
        self.coeffs.get(&id).copied().unwrap_or(0)
    }

    /// Adds `c` to the coefficient of simplex `id`.
    pub fn add_to(&mut self, id: usize, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(id).or_insert(0);
        *entry = entry.checked_add(c).expect("chain coefficient overflow");
        if *entry == 0 {
            self.coeffs.remove(&id);
        }
    }

    /// Iterates over `(simplex id, coefficient)` pairs in id order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&id, &c)| (id, c))
    }

    /// Number of simplices with non-zero coefficient.
    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest simplex id in the support, if any.
    pub fn max_id(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// True iff the chain is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The l1 norm: sum of absolute coefficients.
    pub fn l1(&self) -> u64 {
        self.coeffs.values().map(|c| c.unsigned_abs()).sum()
    }

    /// Sum of the (signed) coefficients.
    pub fn coefficient_sum(&self) -> i64 {
        self.coeffs
            .values()
            .fold(0i64, |acc, &c| acc.checked_add(c).expect("coefficient sum overflow"))
    }

    /// The chain scaled by `k`.
    pub fn scaled(&self, k: i64) -> Self {
        let mut out = ChainVector::new(self.degree);
        for (&id, &c) in &self.coeffs {
            out.add_to(id, c.checked_mul(k).expect("chain coefficient overflow"));
        }
        out
    }

    /// The sum of two chains of the same degree.
    ///
    /// # Panics
    /// Panics if the degrees differ (that is a programming error, not data).
    pub fn plus(&self, other: &ChainVector) -> Self {
        assert_eq!(self.degree, other.degree, "cannot add chains of different degree");
        let mut out = self.clone();
        for (id, c) in other.entries() {
            out.add_to(id, c);
        }
        out
    }

    /// `self - other`.
    pub fn minus(&self, other: &ChainVector) -> Self {
        self.plus(&other.scaled(-1))
    }
}

impl fmt::Display for ChainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (id, c) in self.entries() {
            if first {
                write!(f, "{c}*[{id}]")?;
                first = false;
            } else if c < 0 {
                write!(f, " - {}*[{id}]", -c)?;
            } else {
                write!(f, " + {c}*[{id}]")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_entries_are_summed_and_zeros_dropped() {
        let c = ChainVector::from_entries(1, [(3, 2), (3, -2), (5, 7)]);
        assert_eq!(c.coeff(3), 0);
        assert_eq!(c.coeff(5), 7);
        assert_eq!(c.support_size(), 1);
        assert_eq!(c.l1(), 7);
    }

    #[test]
    fn arithmetic() {
        let a = ChainVector::from_entries(2, [(0, 1), (1, -1)]);
        let b = ChainVector::from_entries(2, [(1, 1), (2, 4)]);
        let s = a.plus(&b);
        assert_eq!(s, ChainVector::from_entries(2, [(0, 1), (2, 4)]));
        assert_eq!(s.minus(&s), ChainVector::new(2));
        assert_eq!(a.scaled(-3).l1(), 6);
        assert_eq!(a.coefficient_sum(), 0);
    }

    #[test]
    fn display_is_readable() {
        let c = ChainVector::from_entries(1, [(0, 1), (2, -2)]);
        assert_eq!(c.to_string(), "1*[0] - 2*[2]");
    }
}
