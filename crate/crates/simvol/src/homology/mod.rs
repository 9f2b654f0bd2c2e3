//! Exact homology of Δ-complexes.
//!
//! Integral homology is computed degree by degree from Smith normal forms of
//! the boundary matrices: Betti numbers over Q, ranks over chosen prime
//! fields, and the elementary divisors of the torsion subgroup, together
//! with the torsion order and its natural logarithm at a configurable
//! precision.

mod cap;
mod fill;
pub mod ordered;

pub use cap::{cap_with_cycle, duality_rank, Field};
pub use fill::{efficient_fill, prism_homotopy, FillResult};

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::complex::DeltaComplex;
use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntMatrix, PMatrix};
use crate::real::{ln_biguint, Real};

/// The boundary matrix `D_k`: rows are `(k−1)`-simplices, columns are
/// `k`-simplices, entry = signed incidence count.
pub fn boundary_matrix(complex: &DeltaComplex, k: usize) -> Result<IntMatrix> {
    if k == 0 || k > complex.dimension() {
        return Err(Error::DegreeOutOfRange { degree: k, dimension: complex.dimension() });
    }
    let rows = complex.simplex_count(k - 1);
    let cols = complex.simplex_count(k);
    let mut m = IntMatrix::zeros(rows, cols);
    for id in 0..cols {
        for j in 0..=k {
            let f = complex.face(k, id, j);
            let sign = BigInt::from(if j % 2 == 0 { 1 } else { -1 });
            let cur = m.get(f, id) + sign;
            m.set(f, id, cur);
        }
    }
    Ok(m)
}

/// Homology of one degree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeHomology {
    pub degree: usize,
    /// Rank of the free part (Betti number over Q).
    pub betti: usize,
    /// `dim_{F_p} H_k(·; F_p)` per requested prime.
    pub field_ranks: BTreeMap<u64, usize>,
    /// Elementary divisors `> 1` of the torsion subgroup, in divisibility
    /// order.
    pub torsion_divisors: Vec<BigUint>,
    /// Product of the torsion divisors (1 when torsion-free).
    pub torsion_order: BigUint,
    /// `ln(torsion_order)` at the configured precision (0 when torsion-free).
    pub log_torsion: Real,
}

/// Full homology profile of a complex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomologyProfile {
    pub degrees: Vec<DegreeHomology>,
    pub euler_characteristic: i64,
    pub primes: Vec<u64>,
    pub digits: u32,
}

pub(crate) fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl HomologyProfile {
    /// Computes the profile over Z, Q, and the given prime fields.
    ///
    /// `digits` controls the precision of the torsion logarithms.
    pub fn compute(complex: &DeltaComplex, primes: &[u64], digits: u32) -> Result<Self> {
        for &p in primes {
            if !is_prime_u64(p) {
                return Err(Error::BadParameter(format!("{p} is not prime")));
            }
        }
        let n = complex.dimension();

        // Ranks and divisor data of every boundary matrix.
        let mut q_ranks = vec![0usize; n + 2]; // index k = rank of D_k
        let mut p_ranks: BTreeMap<u64, Vec<usize>> =
            primes.iter().map(|&p| (p, vec![0usize; n + 2])).collect();
        let mut divisors: Vec<Vec<BigUint>> = vec![Vec::new(); n + 2];
        for k in 1..=n {
            let d = boundary_matrix(complex, k)?;
            let snf = smith_normal_form(&d);
            q_ranks[k] = snf.rank;
            divisors[k] = snf
                .divisors
                .iter()
                .map(|d| d.to_biguint().expect("divisors are positive"))
                .collect();
            for &p in primes {
                p_ranks.get_mut(&p).expect("prime registered")[k] =
                    PMatrix::from_int(&d, p).rank();
            }
        }

        let mut degrees = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let count = complex.simplex_count(k);
            let betti = count - q_ranks[k] - q_ranks[k + 1];
            let torsion_divisors: Vec<BigUint> = divisors[k + 1]
                .iter()
                .filter(|d| **d > BigUint::one())
                .cloned()
                .collect();
            let torsion_order: BigUint =
                torsion_divisors.iter().fold(BigUint::one(), |acc, d| acc * d);
            let log_torsion = if torsion_order.is_one() {
                Real::zero(digits)
            } else {
                ln_biguint(&torsion_order, digits)?
            };
            let field_ranks: BTreeMap<u64, usize> = primes
                .iter()
                .map(|&p| {
                    let ranks = &p_ranks[&p];
                    (p, count - ranks[k] - ranks[k + 1])
                })
                .collect();
            degrees.push(DegreeHomology {
                degree: k,
                betti,
                field_ranks,
                torsion_divisors,
                torsion_order,
                log_torsion,
            });
        }

        let euler_characteristic = complex.euler_characteristic();
        let alt: i64 = degrees
            .iter()
            .map(|d| {
                let b = d.betti as i64;
                if d.degree % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum();
        assert_eq!(
            alt, euler_characteristic,
            "internal error: Betti numbers contradict the Euler characteristic"
        );

        Ok(HomologyProfile {
            degrees,
            euler_characteristic,
            primes: primes.to_vec(),
            digits,
        })
    }

    /// Betti number in one degree (0 outside the range).
    pub fn betti(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.betti)
    }

    /// Rank over `F_p` in one degree.
    pub fn field_rank(&self, k: usize, p: u64) -> Option<usize> {
        self.degrees.get(k).and_then(|d| d.field_ranks.get(&p).copied())
    }

    /// Torsion order in one degree as `u64` when it fits.
    pub fn torsion_order_u64(&self, k: usize) -> Option<u64> {
        self.degrees.get(k).and_then(|d| d.torsion_order.to_u64())
    }

    /// Short human-readable form like `H_1 = Z^2 + Z/2`.
    pub fn describe(&self, k: usize) -> String {
        let Some(d) = self.degrees.get(k) else {
            return format!("H_{k} = 0");
        };
        let mut parts: Vec<String> = Vec::new();
        match d.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &d.torsion_divisors {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            format!("H_{k} = 0")
        } else {
            format!("H_{k} = {}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builtin;

    const PRIMES: [u64; 3] = [2, 3, 5];

    fn profile(c: &DeltaComplex) -> HomologyProfile {
        HomologyProfile::compute(c, &PRIMES, 50).unwrap()
    }

    #[test]
    fn torus_homology() {
        let p = profile(&builtin::torus());
        assert_eq!((p.betti(0), p.betti(1), p.betti(2)), (1, 2, 1));
        for k in 0..=2 {
            assert!(p.degrees[k].torsion_divisors.is_empty());
            for &q in &PRIMES {
                assert_eq!(p.field_rank(k, q), Some(p.betti(k)), "degree {k} mod {q}");
            }
        }
        assert_eq!(p.describe(1), "H_1 = Z^2");
    }

    #[test]
    fn projective_plane_homology() {
        let p = profile(&builtin::real_projective_plane());
        assert_eq!((p.betti(0), p.betti(1), p.betti(2)), (1, 0, 0));
        assert_eq!(p.degrees[1].torsion_divisors, vec![BigUint::from(2u32)]);
        assert_eq!(p.torsion_order_u64(1), Some(2));
        // Over F_2 the ranks jump: H_0 = H_1 = H_2 = F_2.
        assert_eq!(p.field_rank(0, 2), Some(1));
        assert_eq!(p.field_rank(1, 2), Some(1));
        assert_eq!(p.field_rank(2, 2), Some(1));
        // Over F_3 it looks rational.
        assert_eq!(p.field_rank(1, 3), Some(0));
        assert_eq!(p.field_rank(2, 3), Some(0));
        // log |torsion| = ln 2.
        let ln2 = p.degrees[1].log_torsion.to_f64();
        assert!((ln2 - std::f64::consts::LN_2).abs() < 1e-12);
        assert_eq!(p.describe(1), "H_1 = Z/2");
    }

    #[test]
    fn genus_surface_homology() {
        for g in 1..=3 {
            let p = profile(&builtin::genus_surface(g));
            assert_eq!((p.betti(0), p.betti(1), p.betti(2)), (1, 2 * g, 1));
            assert!(p.degrees.iter().all(|d| d.torsion_divisors.is_empty()));
        }
    }

    #[test]
    fn three_torus_homology() {
        let p = profile(&builtin::three_torus());
        assert_eq!(
            (p.betti(0), p.betti(1), p.betti(2), p.betti(3)),
            (1, 3, 3, 1)
        );
        assert!(p.degrees.iter().all(|d| d.torsion_divisors.is_empty()));
        for &q in &PRIMES {
            assert_eq!(p.field_rank(1, q), Some(3));
            assert_eq!(p.field_rank(2, q), Some(3));
        }
    }

    #[test]
    fn spheres_homology() {
        let s2 = profile(&builtin::tetrahedron_boundary());
        assert_eq!((s2.betti(0), s2.betti(1), s2.betti(2)), (1, 0, 1));
        let s3 = profile(&builtin::three_sphere());
        assert_eq!(
            (s3.betti(0), s3.betti(1), s3.betti(2), s3.betti(3)),
            (1, 0, 0, 1)
        );
    }

    #[test]
    fn subdivision_preserves_homology() {
        let sd = builtin::real_projective_plane().barycentric_subdivision();
        let p = profile(&sd);
        assert_eq!((p.betti(0), p.betti(1), p.betti(2)), (1, 0, 0));
        assert_eq!(p.degrees[1].torsion_divisors, vec![BigUint::from(2u32)]);
    }

    #[test]
    fn non_prime_moduli_are_rejected() {
        let err = HomologyProfile::compute(&builtin::torus(), &[4], 30);
        assert!(matches!(err, Err(Error::BadParameter(_))));
    }

    #[test]
    fn boundary_matrix_shape_checks() {
        let t = builtin::torus();
        let d1 = boundary_matrix(&t, 1).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (1, 3));
        // All loops at the single vertex: D_1 = 0.
        assert_eq!(QDbg::rank(&d1), 0);
        let d2 = boundary_matrix(&t, 2).unwrap();
        assert_eq!((d2.rows(), d2.cols()), (3, 2));
        assert_eq!(QDbg::rank(&d2), 1);
        assert!(boundary_matrix(&t, 0).is_err());
        assert!(boundary_matrix(&t, 3).is_err());
    }

    struct QDbg;
    impl QDbg {
        fn rank(m: &IntMatrix) -> usize {
            crate::matrix::QMatrix::from_int(m).rank()
        }
    }
}
