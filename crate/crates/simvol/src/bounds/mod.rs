//! Provenance-tagged bound ledgers for simplicial-volume invariants.
//!
//! Three invariants of a closed oriented manifold are bracketed: the real
//! simplicial volume (`sv`), the integral simplicial volume (`isv`, a
//! positive integer), and the stable integral simplicial volume (`stisv`),
//! sitting in the comparison chain sv ≤ stisv ≤ isv.  Every bound carries
//! its provenance and a certificate payload.  Inserting a lower bound above
//! an existing upper bound (or vice versa) raises a hard contradiction —
//! the workbench's theorem-violation tripwire — because a crossing would
//! refute one of the inequalities the entries were derived from, never a
//! recoverable input problem.
//!
//! Ratio arithmetic is exact rational throughout; reals appear only where
//! logarithms force them, and the integer ceilings derived from them are
//! computed by exact integer-power comparison so certificates are
//! bit-reproducible.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::complex::DeltaComplex;
use crate::error::{Error, Result};
use crate::homology::HomologyProfile;
use crate::real::{ln_biguint, Real};

mod stable;
pub use stable::{
    homology_growth_report, stable_sequence, GrowthDegree, GrowthLevel, GrowthReport, RankRatio,
    StableLevel, StableSequence,
};

/// Invariant targeted by a ledger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// Real simplicial volume ‖M‖.
    Sv,
    /// Integral simplicial volume ‖M‖_Z, a positive integer.
    Isv,
    /// Stable integral simplicial volume: the infimum of ‖cover‖_Z/degree.
    Stisv,
}

/// How a bound was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Homology rank over a field bounds the integral volume from below.
    Betti,
    /// Torsion-order logarithm bounds the integral volume from below.
    Torsion,
    /// Propagated through the comparison chain sv ≤ stisv ≤ isv.
    SvSandwich,
    /// A coherently oriented triangulation's top-simplex count.
    Triangulation,
    /// A cycle lifted through a finite cover (degree times the norm).
    Transfer,
    /// Best ratio ‖cover‖_Z-bound/degree along a tower of covers.
    StableRatio,
    /// Supplied by the caller, marked so reports can flag it.
    UserInput,
}

/// Which side of the invariant an entry bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Lower,
    Upper,
}

/// A bound value: exact rational where possible, high-precision real where
/// logarithms force it.
#[derive(Clone, Debug)]
pub enum BoundValue {
    Rational(BigRational),
    Real(Real),
}

impl BoundValue {
    pub fn integer(n: u64) -> Self {
        BoundValue::Rational(BigRational::from_integer(n.into()))
    }

    pub fn ratio(numerator: u64, denominator: u64) -> Self {
        assert!(denominator > 0, "ratio denominators are positive");
        BoundValue::Rational(BigRational::new(numerator.into(), denominator.into()))
    }

    fn to_real(&self, digits: u32) -> Real {
        match self {
            BoundValue::Rational(q) => Real::from_rational(q, digits),
            BoundValue::Real(r) => r.clone(),
        }
    }

    /// Total order; rational pairs compare exactly, mixed pairs at the
    /// larger digit budget involved (at least 50).
    pub fn compare(&self, other: &BoundValue) -> Ordering {
        match (self, other) {
            (BoundValue::Rational(a), BoundValue::Rational(b)) => a.cmp(b),
            _ => {
                let digits = [self, other]
                    .iter()
                    .filter_map(|v| match v {
                        BoundValue::Real(r) => Some(r.digits()),
                        BoundValue::Rational(_) => None,
                    })
                    .max()
                    .unwrap_or(50)
                    .max(50);
                self.to_real(digits).cmp(&other.to_real(digits))
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            BoundValue::Rational(q) => q < &BigRational::from_integer(0.into()),
            BoundValue::Real(r) => r.is_negative(),
        }
    }

    /// Report form: integers bare, other rationals as `p/q`, reals as
    /// decimal strings.
    pub fn display_string(&self) -> String {
        match self {
            BoundValue::Rational(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            BoundValue::Real(r) => r.decimal(),
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_string())
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.display_string())
    }
}

/// One ledger entry.  `witnessed` marks entries whose certificate was
/// verified from primary data at insert time (a rank recomputation, a cycle
/// with a checked boundary, a tower with asserted transfer inequalities);
/// user-supplied values are never witnessed, and certification requires a
/// witness on both sides.
#[derive(Clone, Debug, Serialize)]
pub struct BoundEntry {
    pub kind: Kind,
    pub value: BoundValue,
    pub provenance: Provenance,
    pub witnessed: bool,
    pub certificate: serde_json::Value,
}

/// A certified exact value: the best lower and upper bounds agree and both
/// carry witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub value: BoundValue,
    pub lower: BoundEntry,
    pub upper: BoundEntry,
}

/// All bounds gathered for one invariant of one manifold.
#[derive(Clone, Debug, Serialize)]
pub struct BoundLedger {
    pub target: Target,
    pub entries: Vec<BoundEntry>,
}

impl BoundLedger {
    pub fn new(target: Target) -> Self {
        BoundLedger { target, entries: Vec::new() }
    }

    /// Inserts an entry after the consistency tripwire: values must be
    /// non-negative, integral-volume lower bounds at least one, and no
    /// lower bound may exceed any upper bound or vice versa.
    pub fn insert(&mut self, entry: BoundEntry) -> Result<()> {
        if entry.value.is_negative() {
            return Err(Error::BadParameter(format!(
                "bounds are non-negative, got {}",
                entry.value
            )));
        }
        if self.target == Target::Isv
            && entry.kind == Kind::Lower
            && entry.value.compare(&BoundValue::integer(1)) == Ordering::Less
        {
            return Err(Error::BadParameter(
                "the integral simplicial volume of a nonempty manifold is at least 1; \
                 a smaller lower bound carries no information"
                    .into(),
            ));
        }
        for existing in &self.entries {
            let crossing = match (entry.kind, existing.kind) {
                (Kind::Lower, Kind::Upper) => {
                    entry.value.compare(&existing.value) == Ordering::Greater
                }
                (Kind::Upper, Kind::Lower) => {
                    entry.value.compare(&existing.value) == Ordering::Less
                }
                _ => false,
            };
            if crossing {
                return Err(Error::Contradiction(format!(
                    "{:?} ledger: new {:?} bound {} ({:?}) crosses existing {:?} bound {} ({:?})",
                    self.target,
                    entry.kind,
                    entry.value,
                    entry.provenance,
                    existing.kind,
                    existing.value,
                    existing.provenance,
                )));
            }
        }
        self.entries.push(entry);
        Ok(())
    }

    /// The greatest lower bound recorded (first of equals).
    pub fn best_lower(&self) -> Option<&BoundEntry> {
        self.best(Kind::Lower, Ordering::Greater)
    }

    /// The least upper bound recorded (first of equals).
    pub fn best_upper(&self) -> Option<&BoundEntry> {
        self.best(Kind::Upper, Ordering::Less)
    }

    fn best(&self, kind: Kind, improves: Ordering) -> Option<&BoundEntry> {
        let mut best: Option<&BoundEntry> = None;
        for entry in self.entries.iter().filter(|e| e.kind == kind) {
            match best {
                None => best = Some(entry),
                Some(current) => {
                    if entry.value.compare(&current.value) == improves {
                        best = Some(entry);
                    }
                }
            }
        }
        best
    }

    /// The current interval as display strings (`None` side = unbounded).
    pub fn interval(&self) -> (Option<String>, Option<String>) {
        (
            self.best_lower().map(|e| e.value.display_string()),
            self.best_upper().map(|e| e.value.display_string()),
        )
    }

    /// An exact value when the best lower and upper bounds agree and both
    /// sides carry re-checkable witnesses.
    pub fn certify(&self) -> Option<Certificate> {
        let lower = self.best_lower()?;
        let upper = self.best_upper()?;
        if lower.value.compare(&upper.value) != Ordering::Equal {
            return None;
        }
        if !(lower.witnessed && upper.witnessed) {
            return None;
        }
        Some(Certificate {
            value: upper.value.clone(),
            lower: lower.clone(),
            upper: upper.clone(),
        })
    }

    /// Like [`certify`](Self::certify) but an error when the interval is
    /// still open, carrying both endpoints.
    pub fn require_certified(&self) -> Result<Certificate> {
        self.certify().ok_or_else(|| Error::NotTight {
            lower: self
                .best_lower()
                .map(|e| e.value.display_string())
                .unwrap_or_else(|| "none".into()),
            upper: self
                .best_upper()
                .map(|e| e.value.display_string())
                .unwrap_or_else(|| "none".into()),
        })
    }
}

/// The three ledgers for one manifold.
#[derive(Clone, Debug, Serialize)]
pub struct ManifoldBounds {
    pub name: Option<String>,
    pub dimension: usize,
    pub sv: BoundLedger,
    pub isv: BoundLedger,
    pub stisv: BoundLedger,
}

impl ManifoldBounds {
    pub fn new(complex: &DeltaComplex) -> Self {
        ManifoldBounds {
            name: complex.name().map(str::to_owned),
            dimension: complex.dimension(),
            sv: BoundLedger::new(Target::Sv),
            isv: BoundLedger::new(Target::Isv),
            stisv: BoundLedger::new(Target::Stisv),
        }
    }
}

/// Largest homology rank over all degrees and coefficient systems, as an
/// integral-volume lower bound: rank_R H_k(M; R) ≤ ‖M‖_Z holds for the
/// rationals and for every prime field.
pub fn lower_bound_betti(profile: &HomologyProfile) -> BoundEntry {
    let mut rank = 0usize;
    let mut degree = 0usize;
    let mut coefficients = "Q".to_string();
    for (k, summary) in profile.degrees.iter().enumerate() {
        if summary.betti > rank {
            rank = summary.betti;
            degree = k;
            coefficients = "Q".into();
        }
        for (&p, &r) in &summary.field_ranks {
            if r > rank {
                rank = r;
                degree = k;
                coefficients = format!("F_{p}");
            }
        }
    }
    BoundEntry {
        kind: Kind::Lower,
        value: BoundValue::integer(rank as u64),
        provenance: Provenance::Betti,
        witnessed: true,
        certificate: json!({
            "rank": rank,
            "degree": degree,
            "coefficients": coefficients,
        }),
    }
}

/// Torsion lower bound for a closed oriented n-manifold:
/// log|tors H_k| ≤ log(n+1)·C(n+1, k+1)·‖M‖_Z, inverted and combined with
/// integrality.  The ceiling is found by exact integer-power comparison —
/// the smallest m with |tors H_k| ≤ (n+1)^(m·C(n+1,k+1)) — never by
/// rounding a logarithm.  `None` when every degree is torsion-free.
pub fn lower_bound_torsion(profile: &HomologyProfile, dimension: usize) -> Option<BoundEntry> {
    let mut best: Option<(u64, usize, BigUint, u64)> = None;
    for (k, summary) in profile.degrees.iter().enumerate() {
        if summary.torsion_order.is_one() {
            continue;
        }
        let binom = binomial_u64(dimension + 1, k + 1);
        let bound = integral_ceiling(&summary.torsion_order, (dimension + 1) as u64, binom);
        if best.as_ref().is_none_or(|b| bound > b.0) {
            best = Some((bound, k, summary.torsion_order.clone(), binom));
        }
    }
    let (bound, degree, order, binom) = best?;
    let digits = profile.digits;
    let raw = ln_biguint(&order, digits)
        .and_then(|log_t| {
            let denom = Real::from_u64((dimension + 1) as u64, digits)
                .ln()?
                .mul(&Real::from_u64(binom, digits));
            Ok(log_t.div(&denom))
        })
        .expect("torsion order exceeds one, so both logarithms are positive");
    Some(BoundEntry {
        kind: Kind::Lower,
        value: BoundValue::integer(bound),
        provenance: Provenance::Torsion,
        witnessed: true,
        certificate: json!({
            "degree": degree,
            "torsion_order": order.to_string(),
            "binomial": binom,
            "raw_bound": raw.decimal(),
        }),
    })
}

/// Smallest integer m ≥ 0 with `order` ≤ `base`^(m·binom): the exact
/// ceiling of log(order)/(binom·log base).
fn integral_ceiling(order: &BigUint, base: u64, binom: u64) -> u64 {
    let step = BigUint::from(base).pow(u32::try_from(binom).expect("desk-scale binomial"));
    let mut power = BigUint::one();
    let mut m = 0u64;
    while &power < order {
        power *= &step;
        m += 1;
        assert!(m < 10_000, "torsion bound out of any reasonable range");
    }
    m
}

fn binomial_u64(n: usize, k: usize) -> u64 {
    num_integer::binomial(n as u64, k as u64)
}

/// The coherently oriented sum of top simplices is an integral fundamental
/// cycle, so the top-simplex count bounds ‖M‖_Z from above.  The cycle is
/// re-checked (zero boundary) and stored in the certificate.
pub fn upper_bound_triangulation(complex: &DeltaComplex) -> Result<BoundEntry> {
    let cycle = complex.fundamental_cycle()?;
    let boundary = complex.boundary(&cycle)?;
    if !boundary.is_zero() {
        return Err(Error::Contradiction(
            "the coherently oriented top-simplex sum failed its boundary check".into(),
        ));
    }
    let count = complex.simplex_count(complex.dimension()) as u64;
    debug_assert_eq!(cycle.l1(), count, "a fundamental cycle weights every top simplex by ±1");
    Ok(BoundEntry {
        kind: Kind::Upper,
        value: BoundValue::integer(count),
        provenance: Provenance::Triangulation,
        witnessed: true,
        certificate: json!({
            "top_simplices": count,
            "cycle": cycle.entries().collect::<Vec<(usize, i64)>>(),
        }),
    })
}

/// Baseline ledger assembly for a validated closed oriented complex:
/// homology lower bounds and the triangulation upper bound on the integral
/// volume, with the same fundamental cycle bounding the stable and real
/// volumes through the comparison chain (a manifold is a degree-1 cover of
/// itself).  Returns the homology profile alongside for reuse.
pub fn basic_bounds(
    complex: &DeltaComplex,
    primes: &[u64],
    digits: u32,
) -> Result<(ManifoldBounds, HomologyProfile)> {
    let profile = HomologyProfile::compute(complex, primes, digits)?;
    let mut bounds = ManifoldBounds::new(complex);
    bounds.isv.insert(lower_bound_betti(&profile))?;
    if let Some(entry) = lower_bound_torsion(&profile, complex.dimension()) {
        bounds.isv.insert(entry)?;
    }
    let triangulation = upper_bound_triangulation(complex)?;
    let count = triangulation.value.clone();
    bounds.isv.insert(triangulation)?;
    let via_chain = |target: &str| BoundEntry {
        kind: Kind::Upper,
        value: count.clone(),
        provenance: Provenance::SvSandwich,
        witnessed: true,
        certificate: json!({
            "via": "triangulation bound on the integral volume",
            "chain": format!("{target} <= isv"),
        }),
    };
    bounds.stisv.insert(via_chain("stisv"))?;
    bounds.sv.insert(via_chain("sv"))?;
    Ok((bounds, profile))
}

/// Records a known real simplicial volume, supplied by the caller, and
/// propagates it: the value brackets the sv ledger from both sides,
/// ⌈value⌉ bounds the integral volume from below (it is an integer), and
/// the value itself bounds the stable volume from below.  Zero is a no-op —
/// it carries no information beyond non-negativity.  The `derivation`
/// payload is stored verbatim in every certificate so reports can show
/// where the number came from.
pub fn register_sv(
    bounds: &mut ManifoldBounds,
    value: &Real,
    derivation: serde_json::Value,
) -> Result<()> {
    if value.is_negative() {
        return Err(Error::BadParameter(format!(
            "a simplicial volume cannot be negative, got {value}"
        )));
    }
    if value.is_zero() {
        return Ok(());
    }
    for kind in [Kind::Lower, Kind::Upper] {
        bounds.sv.insert(BoundEntry {
            kind,
            value: BoundValue::Real(value.clone()),
            provenance: Provenance::UserInput,
            witnessed: false,
            certificate: derivation.clone(),
        })?;
    }
    let sandwich_certificate = json!({
        "input_sv": value.decimal(),
        "derivation": derivation,
    });
    let ceiled = real_ceiling(value);
    bounds.isv.insert(BoundEntry {
        kind: Kind::Lower,
        value: BoundValue::integer(ceiled.max(1)),
        provenance: Provenance::SvSandwich,
        witnessed: false,
        certificate: sandwich_certificate.clone(),
    })?;
    bounds.stisv.insert(BoundEntry {
        kind: Kind::Lower,
        value: BoundValue::Real(value.clone()),
        provenance: Provenance::SvSandwich,
        witnessed: false,
        certificate: sandwich_certificate,
    })?;
    Ok(())
}

/// Computes vol/v_n for a hyperbolic manifold of the ledger's dimension and
/// registers it as the (user-claimed) simplicial volume, with the full
/// derivation recorded.  Returns the computed value.
pub fn register_hyperbolic_volume(bounds: &mut ManifoldBounds, volume: &Real) -> Result<Real> {
    let n = bounds.dimension;
    let sv = crate::hyp::gromov_thurston_sv(volume, n)?;
    let simplex_volume = crate::hyp::regular_ideal_volume(n, volume.digits())?;
    let derivation = json!({
        "source": "user_input",
        "kind": "hyperbolic_volume",
        "riemannian_volume": volume.decimal(),
        "regular_ideal_simplex_volume": simplex_volume.decimal(),
    });
    register_sv(bounds, &sv, derivation)?;
    Ok(sv)
}

/// Smallest non-negative integer ≥ x, for non-negative desk-scale x; the
/// double-precision estimate is corrected by exact comparisons.
fn real_ceiling(x: &Real) -> u64 {
    let approx = x.to_f64();
    assert!(
        approx.is_finite() && approx.abs() < 9.0e15,
        "ceiling argument out of range"
    );
    let mut m = (approx.floor().max(0.0)) as u64;
    while Real::from_u64(m, x.digits()).cmp(x) == Ordering::Less {
        m += 1;
    }
    while m > 0 && Real::from_u64(m - 1, x.digits()).cmp(x) != Ordering::Less {
        m -= 1;
    }
    m
}
