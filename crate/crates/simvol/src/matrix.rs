//! Exact dense linear algebra: integer matrices with Smith normal form and
//! unimodular transforms, plus Gaussian elimination over Q and F_p.
//!
//! Sizes here are "desk scale" (boundary matrices of small triangulations
//! and their covers), so clarity and exactness win over asymptotics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A dense integer matrix (row-major, arbitrary-precision entries).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    /// The zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    /// The identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from machine-integer rows.
    ///
    /// # Panics
    /// Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row {i}");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_a += q * row_b`.
    fn add_row_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(a, j) + q * self.get(b, j);
            self.set(a, j, v);
        }
    }

    /// `col_a += q * col_b`.
    fn add_col_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, a) + q * self.get(i, b);
            self.set(i, a, v);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j).clone();
            self.set(a, j, v);
        }
    }

    /// The transposed matrix.
    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Exact determinant of a square matrix by Bareiss fraction-free
    /// elimination.
    ///
    /// # Panics
    /// Panics if the matrix is not square.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for t in 0..n - 1 {
            if m.get(t, t).is_zero() {
                match (t + 1..n).find(|&i| !m.get(i, t).is_zero()) {
                    Some(i) => {
                        m.swap_rows(t, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in t + 1..n {
                for j in t + 1..n {
                    let v = (m.get(i, j) * m.get(t, t) - m.get(i, t) * m.get(t, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, t, BigInt::zero());
            }
            prev = m.get(t, t).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }
}

/// Smith normal form `U * A * V = S` with `U`, `V` unimodular and `S`
/// diagonal with a divisibility chain `d_1 | d_2 | ... | d_r`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// The non-zero diagonal entries (all positive, each dividing the next).
    pub divisors: Vec<BigInt>,
    /// Number of non-zero diagonal entries = rank of `A` over Q.
    pub rank: usize,
}

/// Computes the Smith normal form with its unimodular transforms.
///
/// Pivoting picks a minimal-absolute-value non-zero entry, clears its row
/// and column by division with remainder swaps, and then enforces the
/// divisibility chain by folding any non-divisible entry into the pivot row.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut s = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    let limit = a.rows().min(a.cols());

    for t in 0..limit {
        // Locate a minimal non-zero pivot in the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..s.rows() {
            for j in t..s.cols() {
                if !s.get(i, j).is_zero()
                    && pivot.map_or(true, |(pi, pj)| s.get(i, j).abs() < s.get(pi, pj).abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        'reduce: loop {
            // Clear the column below the pivot.
            for i in t + 1..s.rows() {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = s.get(i, t).div_floor(s.get(t, t));
                s.add_row_multiple(i, t, &-q.clone());
                u.add_row_multiple(i, t, &-q);
                if !s.get(i, t).is_zero() {
                    // Remainder is a smaller candidate pivot.
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                    continue 'reduce;
                }
            }
            // Clear the row right of the pivot.
            for j in t + 1..s.cols() {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = s.get(t, j).div_floor(s.get(t, t));
                s.add_col_multiple(j, t, &-q.clone());
                v.add_col_multiple(j, t, &-q);
                if !s.get(t, j).is_zero() {
                    s.swap_cols(t, j);
                    v.swap_cols(t, j);
                    continue 'reduce;
                }
            }
            // Enforce divisibility into the trailing submatrix.
            let mut fixed = true;
            'divisibility: for i in t + 1..s.rows() {
                for j in t + 1..s.cols() {
                    if !s.get(i, j).mod_floor(s.get(t, t)).is_zero() {
                        s.add_row_multiple(t, i, &BigInt::one());
                        u.add_row_multiple(t, i, &BigInt::one());
                        fixed = false;
                        break 'divisibility;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    let mut divisors = Vec::new();
    for t in 0..limit {
        let d = s.get(t, t);
        if d.is_zero() {
            break;
        }
        divisors.push(d.clone());
    }
    let rank = divisors.len();
    debug_assert!(divisors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    SmithForm { u, s, v, divisors, rank }
}

/// A dense matrix over Q.
#[derive(Debug, Clone)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, BigRational::from_integer(m.get(i, j).clone()));
            }
        }
        out
    }

    /// Builds a matrix whose columns are the given vectors (each of length
    /// `rows`); an empty list yields a `rows × 0` matrix.
    pub fn from_columns(rows: usize, columns: &[Vec<BigRational>]) -> Self {
        let mut out = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has the wrong length");
            for (i, v) in col.iter().enumerate() {
                out.set(i, j, v.clone());
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    /// Row-echelon rank.
    pub fn rank(&self) -> usize {
        self.clone().echelon().0
    }

    /// In-place reduction; returns (rank, pivot columns).
    fn echelon(mut self) -> (usize, Vec<usize>, QMatrix) {
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for j in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, j).is_zero()) else {
                continue;
            };
            for c in 0..self.cols {
                self.data.swap(r * self.cols + c, p * self.cols + c);
            }
            let inv = self.get(r, j).recip();
            for c in j..self.cols {
                let v = self.get(r, c) * &inv;
                self.set(r, c, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, j).is_zero() {
                    let f = self.get(i, j).clone();
                    for c in j..self.cols {
                        let v = self.get(i, c) - &f * self.get(r, c);
                        self.set(i, c, v);
                    }
                }
            }
            pivots.push(j);
            r += 1;
        }
        (r, pivots, self)
    }

    /// A basis of the right kernel (columns `x` with `self * x = 0`).
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let (_, pivots, ech) = self.clone().echelon();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivot_set.contains(j)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![BigRational::zero(); self.cols];
            x[f] = BigRational::one();
            for (r, &pj) in pivots.iter().enumerate() {
                // Row r reads x_pj + sum coeff * x_free = 0.
                x[pj] = -ech.get(r, f).clone();
            }
            basis.push(x);
        }
        basis
    }
}

/// A dense matrix over the prime field F_p (`p < 2^31`).
#[derive(Debug, Clone)]
pub struct PMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        assert!(p >= 2 && p < (1 << 31), "modulus out of range");
        PMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    /// Reduces an integer matrix mod p.
    pub fn from_int(m: &IntMatrix, p: u64) -> Self {
        let mut out = Self::zeros(p, m.rows(), m.cols());
        let bp = BigInt::from(p);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let r = m.get(i, j).mod_floor(&bp);
                let digits = r.to_u64_digits().1;
                out.set(i, j, digits.first().copied().unwrap_or(0));
            }
        }
        out
    }

    /// Builds a matrix whose columns are the given vectors (entries already
    /// reduced mod `p`); an empty list yields a `rows × 0` matrix.
    pub fn from_columns(p: u64, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut out = Self::zeros(p, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has the wrong length");
            for (i, &v) in col.iter().enumerate() {
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn hstack(&self, other: &PMatrix) -> PMatrix {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        assert_eq!(self.p, other.p, "hstack needs one field");
        let mut out = Self::zeros(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, other: &PMatrix) -> PMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        assert_eq!(self.p, other.p, "product needs one field");
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let cur = (out.get(i, j) + a * b % self.p) % self.p;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat: p is prime (callers pass primes), a != 0.
        let mut base = a % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().0
    }

    fn echelon(mut self) -> (usize, Vec<usize>, PMatrix) {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for j in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, j) != 0) else {
                continue;
            };
            for c in 0..self.cols {
                self.data.swap(r * self.cols + c, pr * self.cols + c);
            }
            let inv = self.inv(self.get(r, j));
            for c in j..self.cols {
                let v = self.get(r, c) * inv % p;
                self.set(r, c, v);
            }
            for i in 0..self.rows {
                if i != r && self.get(i, j) != 0 {
                    let f = self.get(i, j);
                    for c in j..self.cols {
                        let v = (self.get(i, c) + (p - f) * self.get(r, c) % p) % p;
                        self.set(i, c, v);
                    }
                }
            }
            pivots.push(j);
            r += 1;
        }
        (r, pivots, self)
    }

    /// A basis of the right kernel over F_p.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let (_, pivots, ech) = self.clone().echelon();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivot_set.contains(j)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![0u64; self.cols];
            x[f] = 1;
            for (r, &pj) in pivots.iter().enumerate() {
                x[pj] = (self.p - ech.get(r, f)) % self.p;
            }
            basis.push(x);
        }
        basis
    }
}
