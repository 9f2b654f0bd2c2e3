//! Stable-volume sequences over towers of covers, and homology-growth
//! reports at their finite stages.
//!
//! For a tower of covers M = M_0 ← M_1 ← … with degrees d_i over the base,
//! each cover's best integral bound U_i gives the exact rational ratio
//! U_i/d_i; every ratio is an upper bound for the stable integral volume,
//! and the (never-printed) parametrized volume of the associated coset-tree
//! action is squeezed between the homology growth ratios below and these
//! ratios above.  U_i is the better of two certificates for the cover:
//! the annealed triangulation size and the lift of the base's best cycle
//! (degree times the base bound), so the transfer inequality
//! U_i ≤ d_i·U_0 holds by construction and is asserted as a theorem check.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};
use serde_json::json;

use super::{BoundEntry, BoundValue, Kind, Provenance};
use crate::error::{Error, Result};
use crate::homology::HomologyProfile;
use crate::pi1::TowerStage;
use crate::real::Real;
use crate::simplify::{simplify, SearchConfig};

/// One level of a stable sequence.
#[derive(Clone, Debug, Serialize)]
pub struct StableLevel {
    /// Covering degree over the tower's base.
    pub index: u64,
    /// Top-simplex count of the cover as constructed.
    pub cover_size: usize,
    /// Top-simplex count after annealing.
    pub simplified_size: usize,
    /// The recorded bound U_i: the better of the annealed size and the
    /// transferred base bound.
    pub upper: u64,
    /// True when the transferred base cycle beat the annealer.
    pub from_transfer: bool,
    /// U_i/d_i, exactly.
    #[serde(serialize_with = "serialize_ratio")]
    pub ratio: BigRational,
}

/// A tower's ratio record: all levels, their minimum, and where it occurs.
#[derive(Clone, Debug, Serialize)]
pub struct StableSequence {
    pub levels: Vec<StableLevel>,
    #[serde(serialize_with = "serialize_ratio")]
    pub best_ratio: BigRational,
    /// Index into `levels` of the earliest minimum.
    pub best_level: usize,
}

impl StableSequence {
    /// Ledger entry posting the best ratio as a stable-volume upper bound.
    pub fn entry(&self) -> BoundEntry {
        let witness: Vec<_> = self
            .levels
            .iter()
            .map(|level| {
                json!({
                    "d": level.index,
                    "U": level.upper,
                    "ratio": ratio_string(&level.ratio),
                    "from_transfer": level.from_transfer,
                })
            })
            .collect();
        BoundEntry {
            kind: Kind::Upper,
            value: BoundValue::Rational(self.best_ratio.clone()),
            provenance: Provenance::StableRatio,
            witnessed: true,
            certificate: json!({
                "levels": witness,
                "best_level": self.best_level,
            }),
        }
    }

    /// Prefix minima B_i = min_{j ≤ i} U_j/d_j: the best bound available
    /// once level i has been computed.
    pub fn prefix_best(&self) -> Vec<BigRational> {
        let mut best: Option<BigRational> = None;
        self.levels
            .iter()
            .map(|level| {
                let candidate = match &best {
                    Some(b) if *b <= level.ratio => b.clone(),
                    _ => level.ratio.clone(),
                };
                best = Some(candidate.clone());
                candidate
            })
            .collect()
    }
}

/// Simplifies every stage of a tower and records the ratio sequence.  The
/// tower must start at its base (degree 1); each level's bound is
/// min(annealed size, d_i·U_0) and the transfer inequality U_i ≤ d_i·U_0
/// is asserted.
pub fn stable_sequence(chain: &[TowerStage], config: &SearchConfig) -> Result<StableSequence> {
    let base = chain
        .first()
        .ok_or_else(|| Error::BadParameter("a tower needs at least its base level".into()))?;
    if base.index_over_base != 1 {
        return Err(Error::BadParameter(format!(
            "a tower starts at its base (degree 1), got degree {}",
            base.index_over_base
        )));
    }
    let mut levels = Vec::with_capacity(chain.len());
    let mut base_upper = 0u64;
    for (i, stage) in chain.iter().enumerate() {
        let top = stage.complex.dimension();
        let cover_size = stage.complex.simplex_count(top);
        let simplified = simplify(&stage.complex, config)?;
        let annealed = simplified.final_count as u64;
        let (upper, from_transfer) = if i == 0 {
            base_upper = annealed;
            (annealed, false)
        } else {
            let transferred = stage.index_over_base * base_upper;
            if transferred < annealed {
                (transferred, true)
            } else {
                (annealed, false)
            }
        };
        assert!(
            upper <= stage.index_over_base * base_upper,
            "transfer inequality violated at tower level {i}"
        );
        let ratio = BigRational::new(BigInt::from(upper), BigInt::from(stage.index_over_base));
        levels.push(StableLevel {
            index: stage.index_over_base,
            cover_size,
            simplified_size: simplified.final_count,
            upper,
            from_transfer,
            ratio,
        });
    }
    let mut best_level = 0;
    for (i, level) in levels.iter().enumerate() {
        if level.ratio < levels[best_level].ratio {
            best_level = i;
        }
    }
    let best_ratio = levels[best_level].ratio.clone();
    Ok(StableSequence { levels, best_ratio, best_level })
}

/// One coefficient system's rank ratio at one level and degree.
#[derive(Clone, Debug, Serialize)]
pub struct RankRatio {
    /// `"Q"` or `"F_p"`.
    pub coefficients: String,
    pub rank: usize,
    /// rank/d_i, exactly.
    #[serde(serialize_with = "serialize_ratio")]
    pub ratio: BigRational,
    /// rank/d_i ≤ B_i (the prefix-best stable ratio), checked exactly.
    pub ok: bool,
}

/// One homology degree's growth data at one level.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthDegree {
    pub degree: usize,
    pub rank_ratios: Vec<RankRatio>,
    pub torsion_order: String,
    /// ln|tors H_k|/d_i (natural logarithm), for display.
    pub torsion_log_ratio: Real,
    /// ln|tors H_k|/d_i ≤ ln(n+1)·2^(n+1)·B_i, checked by exact integer
    /// power comparison.
    pub torsion_ok: bool,
}

/// One tower level's growth data.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthLevel {
    pub index: u64,
    /// The prefix-best stable ratio B_i the level is compared against.
    #[serde(serialize_with = "serialize_ratio")]
    pub bound_ratio: BigRational,
    pub degrees: Vec<GrowthDegree>,
}

/// Growth inequalities verified at every finite stage of a tower.  Any
/// violation indicates an implementation bug — the homology ratios are
/// dominated by the quantity the stable ratios bound from above — so the
/// report counts them for the caller to turn into a hard failure.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub dimension: usize,
    pub primes: Vec<u64>,
    pub levels: Vec<GrowthLevel>,
    pub violations: usize,
}

/// Computes per-level, per-degree homology ratios for a tower and checks
/// them against the prefix-best stable ratios: rank_R H_k(M_i; R)/d_i ≤ B_i
/// for every requested coefficient system, and
/// ln|tors H_k(M_i)|/d_i ≤ ln(n+1)·2^(n+1)·B_i.  Rank comparisons are
/// exact rational arithmetic; torsion comparisons raise both sides to
/// integer powers instead of comparing logarithms.
pub fn homology_growth_report(
    chain: &[TowerStage],
    sequence: &StableSequence,
    primes: &[u64],
    digits: u32,
) -> Result<GrowthReport> {
    if chain.len() != sequence.levels.len() {
        return Err(Error::BadParameter(format!(
            "tower has {} levels but the ratio sequence has {}",
            chain.len(),
            sequence.levels.len()
        )));
    }
    let dimension = chain
        .first()
        .ok_or_else(|| Error::BadParameter("a tower needs at least its base level".into()))?
        .complex
        .dimension();
    let prefix = sequence.prefix_best();
    let mut levels = Vec::with_capacity(chain.len());
    let mut violations = 0usize;
    for (i, stage) in chain.iter().enumerate() {
        let d = stage.index_over_base;
        let bound = prefix[i].clone();
        let profile = HomologyProfile::compute(&stage.complex, primes, digits)?;
        let mut degrees = Vec::with_capacity(profile.degrees.len());
        for (k, summary) in profile.degrees.iter().enumerate() {
            let mut rank_ratios = Vec::with_capacity(1 + primes.len());
            let mut push_rank = |coefficients: String, rank: usize| {
                let ratio = BigRational::new(BigInt::from(rank), BigInt::from(d));
                let ok = ratio <= bound;
                if !ok {
                    violations += 1;
                }
                rank_ratios.push(RankRatio { coefficients, rank, ratio, ok });
            };
            push_rank("Q".into(), summary.betti);
            for (&p, &rank) in &summary.field_ranks {
                push_rank(format!("F_{p}"), rank);
            }
            let torsion_ok = torsion_within(&summary.torsion_order, dimension, d, &bound);
            if !torsion_ok {
                violations += 1;
            }
            degrees.push(GrowthDegree {
                degree: k,
                rank_ratios,
                torsion_order: summary.torsion_order.to_string(),
                torsion_log_ratio: summary.log_torsion.div(&Real::from_u64(d, digits)),
                torsion_ok,
            });
        }
        levels.push(GrowthLevel { index: d, bound_ratio: bound, degrees });
    }
    Ok(GrowthReport { dimension, primes: primes.to_vec(), levels, violations })
}

/// Exact check of |T| ≤ (n+1)^(2^(n+1)·d·B) for rational B = p/q:
/// equivalently |T|^q ≤ (n+1)^(2^(n+1)·d·p).
fn torsion_within(order: &BigUint, dimension: usize, d: u64, bound: &BigRational) -> bool {
    if order.is_one() {
        return true;
    }
    let p = bound.numer();
    let q = bound
        .denom()
        .to_u32()
        .expect("stable-ratio denominators are covering degrees, far below u32 range");
    let exponent = (BigInt::from(1u64) << (dimension + 1)) * BigInt::from(d) * p;
    let exponent = exponent
        .to_u32()
        .expect("growth exponents stay desk-scale for the supported dimensions");
    let lhs = order.pow(q);
    let rhs = BigUint::from((dimension + 1) as u64).pow(exponent);
    lhs <= rhs
}

fn ratio_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn serialize_ratio<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(q))
}
