//! Cap products against a top-degree cycle, and the Poincaré-duality rank.
//!
//! For an `n`-cycle `z = Σ a_s · s` and a `(n−k)`-cochain `f`, the cap
//! product is
//!
//! ```text
//! f ∩ z = (−1)^{k(n−k)} Σ_s a_s · f(front_{n−k}(s)) · back_k(s)
//! ```
//!
//! where `front_m` keeps the first `m + 1` vertices (iterated top-index face
//! drops) and `back_k` the last `k + 1` (iterated face-0 drops).  On a closed
//! oriented manifold, capping with the fundamental cycle realizes the
//! duality isomorphism `H^{n−k} → H_k`; the rank of the induced map on
//! (co)homology is a cheap certified equality check for Betti numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::chain::ChainVector;
use crate::complex::DeltaComplex;
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, PMatrix, QMatrix};

use super::boundary_matrix;

/// Coefficient field for rank computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    /// The rationals.
    Q,
    /// The prime field `F_p`.
    Fp(u64),
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

/// The front face spanned by vertices `0..=m` (drops top positions).
fn front_face(complex: &DeltaComplex, deg: usize, id: usize, m: usize) -> usize {
    let mut d = deg;
    let mut cur = id;
    while d > m {
        cur = complex.face(d, cur, d);
        d -= 1;
    }
    cur
}

/// The back face spanned by the last `k + 1` vertices (drops position 0).
fn back_face(complex: &DeltaComplex, deg: usize, id: usize, k: usize) -> usize {
    let mut d = deg;
    let mut cur = id;
    while d > k {
        cur = complex.face(d, cur, 0);
        d -= 1;
    }
    cur
}

/// The matrix of `· ∩ z : C^{n−k} → C_k` in the simplex bases: rows are
/// `k`-simplices, columns are `(n−k)`-simplices.
pub fn cap_matrix(complex: &DeltaComplex, cycle: &ChainVector, k: usize) -> Result<IntMatrix> {
    let n = complex.dimension();
    if cycle.degree() != n {
        return Err(Error::BadChain(format!(
            "cap needs a top-degree ({n}) chain, got degree {}",
            cycle.degree()
        )));
    }
    if k > n {
        return Err(Error::DegreeOutOfRange { degree: k, dimension: n });
    }
    if !complex.carries(cycle) {
        return Err(Error::BadChain("cycle mentions unknown simplices".into()));
    }
    let m = n - k;
    let sign = if (k * m) % 2 == 0 { 1i64 } else { -1 };
    let mut out = IntMatrix::zeros(complex.simplex_count(k), complex.simplex_count(m));
    for (s, a) in cycle.entries() {
        let fr = front_face(complex, n, s, m);
        let bk = back_face(complex, n, s, k);
        let cur = out.get(bk, fr) + BigInt::from(sign * a);
        out.set(bk, fr, cur);
    }
    Ok(out)
}

/// Caps an integral cochain (given by its values on `(n−k)`-simplices) with
/// an integral top-degree cycle, producing a `k`-chain.
pub fn cap_with_cycle(
    complex: &DeltaComplex,
    cycle: &ChainVector,
    cochain: &ChainVector,
) -> Result<ChainVector> {
    let n = complex.dimension();
    let m = cochain.degree();
    if m > n {
        return Err(Error::DegreeOutOfRange { degree: m, dimension: n });
    }
    let k = n - m;
    let boundary = complex.boundary(cycle)?;
    if !boundary.is_zero() {
        return Err(Error::NotACycle(format!(
            "top chain has non-zero boundary {boundary}"
        )));
    }
    let matrix = cap_matrix(complex, cycle, k)?;
    let mut out = ChainVector::new(k);
    for (fr, f_val) in cochain.entries() {
        if fr >= complex.simplex_count(m) {
            return Err(Error::BadChain(format!(
                "cochain mentions {m}-simplex {fr}, which does not exist"
            )));
        }
        for row in 0..matrix.rows() {
            let c = matrix.get(row, fr);
            if !c.is_zero() {
                let c: i64 = c.try_into().map_err(|_| {
                    Error::Numeric("cap coefficient exceeds machine range".into())
                })?;
                out.add_to(row, c.checked_mul(f_val).expect("cap coefficient overflow"));
            }
        }
    }
    Ok(out)
}

fn check_cycle_over(complex: &DeltaComplex, cycle: &ChainVector, field: Field) -> Result<()> {
    let boundary = complex.boundary(cycle)?;
    let ok = match field {
        Field::Q => boundary.is_zero(),
        Field::Fp(p) => boundary.entries().all(|(_, c)| c.rem_euclid(p as i64) == 0),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::NotACycle(format!(
            "chain is not a cycle over {field}: boundary {boundary}"
        )))
    }
}

/// Rank of the map `H^{n−k}(·; F) → H_k(·; F)` induced by capping with the
/// given top-degree cycle.
///
/// Computed as `rank([cap·Z | B]) − rank(B)` where `Z` is a basis of the
/// `(n−k)`-cocycles and `B` the image of the `(k+1)`-boundary map.  On a
/// closed oriented manifold with its fundamental cycle (or any closed
/// pseudomanifold with its mod-p cycle over `F_p`), duality makes this equal
/// to the `k`-th Betti number over `F`.
pub fn duality_rank(
    complex: &DeltaComplex,
    cycle: &ChainVector,
    k: usize,
    field: Field,
) -> Result<usize> {
    let n = complex.dimension();
    if k > n {
        return Err(Error::DegreeOutOfRange { degree: k, dimension: n });
    }
    if let Field::Fp(p) = field {
        if !super::is_prime_u64(p) {
            return Err(Error::BadParameter(format!("{p} is not prime")));
        }
    }
    check_cycle_over(complex, cycle, field)?;
    let m = n - k;
    let cap = cap_matrix(complex, cycle, k)?;

    // Coboundary out of degree m is the transpose of the boundary into it.
    let delta = if m + 1 <= n {
        Some(boundary_matrix(complex, m + 1)?.transpose())
    } else {
        None
    };
    let b = if k + 1 <= n {
        Some(boundary_matrix(complex, k + 1)?)
    } else {
        None
    };

    match field {
        Field::Q => {
            let cocycles: Vec<Vec<BigRational>> = match delta {
                Some(d) => QMatrix::from_int(&d).kernel_basis(),
                None => (0..complex.simplex_count(m))
                    .map(|i| {
                        let mut v = vec![BigRational::zero(); complex.simplex_count(m)];
                        v[i] = BigRational::from_integer(1.into());
                        v
                    })
                    .collect(),
            };
            let z = QMatrix::from_columns(complex.simplex_count(m), &cocycles);
            let capped = QMatrix::from_int(&cap).mul(&z);
            let bq = match &b {
                Some(b) => QMatrix::from_int(b),
                None => QMatrix::zeros(complex.simplex_count(k), 0),
            };
            Ok(capped.hstack(&bq).rank() - bq.rank())
        }
        Field::Fp(p) => {
            let cocycles: Vec<Vec<u64>> = match delta {
                Some(d) => PMatrix::from_int(&d, p).kernel_basis(),
                None => (0..complex.simplex_count(m))
                    .map(|i| {
                        let mut v = vec![0u64; complex.simplex_count(m)];
                        v[i] = 1;
                        v
                    })
                    .collect(),
            };
            let z = PMatrix::from_columns(p, complex.simplex_count(m), &cocycles);
            let capped = PMatrix::from_int(&cap, p).mul(&z);
            let bp = match &b {
                Some(b) => PMatrix::from_int(b, p),
                None => PMatrix::zeros(p, complex.simplex_count(k), 0),
            };
            Ok(capped.hstack(&bp).rank() - bp.rank())
        }
    }
}
