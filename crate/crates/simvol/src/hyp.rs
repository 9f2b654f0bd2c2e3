//! Constants of regular ideal hyperbolic simplices.
//!
//! A regular ideal simplex in hyperbolic n-space meets each of its
//! codimension-two faces at the dihedral angle α_n = arccos(1/(n−1)).  The
//! number of copies that fit around such a face without overlap is
//! k_n = ⌊2π/α_n⌋; the ratio 2π/α_n is an integer exactly in dimension
//! three, where six copies tile, so the count is reported only for n ≥ 4.
//! Volumes are evaluated for n ≤ 3 only: v_2 = π by Gauss–Bonnet and
//! v_3 = 3Λ(π/3) with Λ the Lobachevsky function.  A closed hyperbolic
//! manifold of dimension 2 or 3 has simplicial volume vol(M)/v_n
//! (Gromov–Thurston).  The gap constant
//! max{1 − ε/12, 1 − η/(3v), 1 − a·η/(2v)} is exposed as a formula over
//! user-supplied positive parameters; no numeric defaults exist for
//! ε, a, δ, η, so callers must choose them.

use std::cell::RefCell;
use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::real::Real;

/// Default decimal precision for constant evaluation.
pub const DEFAULT_DIGITS: u32 = 50;

/// Inputs for a constants report: the dimension, optional strictly positive
/// parameters, and the decimal-digit budget.
///
/// `eps`, `a`, and `eta` feed the gap-constant formula and `a` additionally
/// feeds the angle window; `delta` is carried for provenance only (`eta`
/// plays the role of the volume of a ball of radius `delta`).  None of the
/// four has a default: only their existence is guaranteed, not a value.
#[derive(Clone, Debug, Serialize)]
pub struct HypParams {
    pub n: usize,
    pub eps: Option<Real>,
    pub a: Option<Real>,
    pub delta: Option<Real>,
    pub eta: Option<Real>,
    pub digits: u32,
}

impl HypParams {
    pub fn new(n: usize, digits: u32) -> HypParams {
        HypParams { n, eps: None, a: None, delta: None, eta: None, digits }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::UnsupportedDimension {
                dimension: self.n,
                context: "hyperbolic simplex constants need dimension >= 3".into(),
            });
        }
        let named = [
            ("eps", &self.eps),
            ("a", &self.a),
            ("delta", &self.delta),
            ("eta", &self.eta),
        ];
        for (name, value) in named {
            if let Some(v) = value {
                if !v.is_positive() {
                    return Err(Error::BadParameter(format!(
                        "{name} must be strictly positive, got {v}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The three branch values of max{1 − ε/12, 1 − η/(3v), 1 − a·η/(2v)} and
/// their maximum; strictly below one whenever the inputs are positive.
#[derive(Clone, Debug, Serialize)]
pub struct GapConstant {
    pub eps_branch: Real,
    pub eta_branch: Real,
    pub a_eta_branch: Real,
    pub value: Real,
}

/// The admissible dihedral window (2π/(k_n+1))·(1+a) < α < (2π/k_n)·(1−a),
/// evaluated for a supplied angle and, separately, for the regular ideal
/// angle itself.  Margins are signed: negative means outside.
#[derive(Clone, Debug, Serialize)]
pub struct AngleWindow {
    pub k: u64,
    pub lower: Real,
    pub upper: Real,
    pub alpha: Real,
    pub inside: bool,
    pub lower_margin: Real,
    pub upper_margin: Real,
    pub regular_angle_inside: bool,
}

/// Constants report for one dimension.  `k` is absent in dimension three
/// (the ratio 2π/α is the integer six there, recorded by
/// `ratio_is_integer`); `volume` is present only in dimension three;
/// `gap` needs `eps`, `a`, `eta` and an available volume; `window` needs
/// `a` and an available count.
#[derive(Clone, Debug, Serialize)]
pub struct HypReport {
    pub n: usize,
    pub digits: u32,
    pub alpha: Real,
    pub ratio_is_integer: bool,
    pub k: Option<u64>,
    pub volume: Option<Real>,
    pub gap: Option<GapConstant>,
    pub window: Option<AngleWindow>,
}

/// arccos(1/(n−1)): the dihedral angle of a regular ideal hyperbolic
/// n-simplex at any of its codimension-two faces.
pub fn dihedral_angle_regular_ideal(n: usize, digits: u32) -> Result<Real> {
    if n < 3 {
        return Err(Error::UnsupportedDimension {
            dimension: n,
            context: "the regular ideal dihedral angle needs dimension >= 3".into(),
        });
    }
    let inv = Real::one(digits).div(&Real::from_u64((n - 1) as u64, digits));
    inv.acos()
}

/// ⌊2π/α_n⌋: the number of regular ideal simplices that fit around a
/// codimension-two face without overlap, with the strict bracketing
/// k·α < 2π < (k+1)·α certified at working precision.  In dimension three
/// the ratio is exactly six, so no strict count exists and the integer
/// collision is reported instead.
pub fn k_overlap(n: usize, digits: u32) -> Result<u64> {
    if n < 3 {
        return Err(Error::UnsupportedDimension {
            dimension: n,
            context: "the overlap count needs dimension >= 3".into(),
        });
    }
    if n == 3 {
        return Err(Error::IntegerOverlap { ratio: 6 });
    }
    let alpha = dihedral_angle_regular_ideal(n, digits)?;
    let two_pi = Real::pi(digits).mul(&Real::from_u64(2, digits));
    let mut k: u64 = 1;
    while alpha.mul(&Real::from_u64(k + 1, digits)).cmp(&two_pi) == Ordering::Less {
        k += 1;
        assert!(k < 64, "overlap count out of range for a dihedral angle > pi/3");
    }
    // Certify strictness with an explicit margin so near-integer ratios are
    // rejected rather than silently floored the wrong way.
    let guard = Real::parse_decimal(&format!("1e-{}", digits.saturating_sub(5).max(5)), digits)
        .expect("guard literal");
    let low_margin = two_pi.sub(&alpha.mul(&Real::from_u64(k, digits)));
    let high_margin = alpha.mul(&Real::from_u64(k + 1, digits)).sub(&two_pi);
    if low_margin.cmp(&guard) != Ordering::Greater || high_margin.cmp(&guard) != Ordering::Greater
    {
        return Err(Error::Numeric(format!(
            "2*pi divided by the dihedral angle in dimension {n} is too close to an integer \
             to certify at {digits} digits"
        )));
    }
    Ok(k)
}

/// The Lobachevsky function Λ(θ) = −∫₀^θ ln|2 sin t| dt: odd, π-periodic,
/// vanishing at multiples of π/2, maximal at π/6.
///
/// Evaluation reduces θ modulo π into [−π/2, π/2] and sums
/// Λ(θ) = θ − θ·ln(2θ) + Σ_{m≥1} ζ(2m)·θ^{2m+1}/(m(2m+1)π^{2m}), where each
/// ζ(2m)/π^{2m} is an exact rational obtained from Bernoulli numbers.  After
/// reduction the series ratio is (θ/π)² ≤ 1/4, so truncation once a term
/// drops below the tolerance leaves a geometric tail smaller than the last
/// term.  The result carries the argument's digit budget.
pub fn lobachevsky(theta: &Real) -> Real {
    let digits = theta.digits();
    let pi = Real::pi(digits);
    let quotient = theta.div(&pi).to_f64();
    assert!(
        quotient.abs() < 9.0e15,
        "argument too large to reduce modulo pi faithfully"
    );
    let mut r = theta.sub(&pi.mul(&Real::from_i64(quotient.round() as i64, digits)));
    let half_pi = pi.div(&Real::from_u64(2, digits));
    // A rounding slip in the double-precision quotient can leave the
    // remainder one period off; nudge it back.
    while r.cmp(&half_pi) == Ordering::Greater {
        r = r.sub(&pi);
    }
    while r.neg().cmp(&half_pi) == Ordering::Greater {
        r = r.add(&pi);
    }
    if r.is_zero() || r.abs() == half_pi {
        return Real::zero(digits);
    }
    let negate = r.is_negative();
    let x = r.abs();
    let ln_two_x = x.mul(&Real::from_u64(2, digits)).ln().expect("positive reduced argument");
    let mut sum = x.sub(&x.mul(&ln_two_x));
    let x_squared = x.mul(&x);
    let mut power = x.mul(&x_squared);
    let tolerance = Real::parse_decimal(&format!("1e-{}", digits + 10), digits)
        .expect("tolerance literal");
    let cap = 2 * digits as usize + 40;
    for m in 1..=cap {
        let coefficient = Real::from_rational(&zeta_even_coefficient(m), digits);
        let term = coefficient.mul(&power);
        sum = sum.add(&term);
        if term.abs().cmp(&tolerance) == Ordering::Less {
            break;
        }
        power = power.mul(&x_squared);
    }
    if negate {
        sum.neg()
    } else {
        sum
    }
}

/// Volume of the regular ideal hyperbolic n-simplex, for n ∈ {2, 3}:
/// v_2 = π and v_3 = 3Λ(π/3).  Higher dimensions are deliberately
/// unsupported — no evaluated constant is available, and guessing one would
/// poison every bound derived from it.
pub fn regular_ideal_volume(n: usize, digits: u32) -> Result<Real> {
    match n {
        2 => Ok(Real::pi(digits)),
        3 => {
            let third = Real::pi(digits).div(&Real::from_u64(3, digits));
            Ok(lobachevsky(&third).mul(&Real::from_u64(3, digits)))
        }
        _ => Err(Error::UnsupportedDimension {
            dimension: n,
            context: "regular ideal volumes are evaluated for dimensions 2 and 3 only".into(),
        }),
    }
}

/// Simplicial volume of a closed hyperbolic manifold from its Riemannian
/// volume: vol(M)/v_n, the Gromov–Thurston ratio (dimensions 2 and 3).
pub fn gromov_thurston_sv(vol: &Real, n: usize) -> Result<Real> {
    if !vol.is_positive() {
        return Err(Error::BadParameter(format!(
            "the Riemannian volume must be strictly positive, got {vol}"
        )));
    }
    let v = regular_ideal_volume(n, vol.digits())?;
    Ok(vol.div(&v))
}

/// The gap constant max{1 − ε/12, 1 − η/(3v), 1 − a·η/(2v)} for supplied
/// positive ε, a, η and simplex volume v, with every branch reported so a
/// caller can see which one binds.
pub fn c_const(params: &HypParams, v: &Real) -> Result<GapConstant> {
    params.validate()?;
    let (Some(eps), Some(a), Some(eta)) = (&params.eps, &params.a, &params.eta) else {
        return Err(Error::BadParameter(
            "the gap constant needs eps, a, and eta all supplied".into(),
        ));
    };
    if !v.is_positive() {
        return Err(Error::BadParameter(format!(
            "the simplex volume must be strictly positive, got {v}"
        )));
    }
    let digits = params.digits;
    let one = Real::one(digits);
    let eps_branch = one.sub(&eps.div(&Real::from_u64(12, digits)));
    let eta_branch = one.sub(&eta.div(&v.mul(&Real::from_u64(3, digits))));
    let a_eta_branch = one.sub(&a.mul(eta).div(&v.mul(&Real::from_u64(2, digits))));
    let mut value = eps_branch.clone();
    for branch in [&eta_branch, &a_eta_branch] {
        if branch.cmp(&value) == Ordering::Greater {
            value = (*branch).clone();
        }
    }
    Ok(GapConstant { eps_branch, eta_branch, a_eta_branch, value })
}

/// Checks whether an angle lies strictly inside the admissible window
/// (2π/(k_n+1))·(1+a) < α < (2π/k_n)·(1−a), and whether the regular ideal
/// angle does.  Needs n ≥ 4: dimension three has no strict overlap count.
pub fn angle_window_check(n: usize, a: &Real, alpha: &Real, digits: u32) -> Result<AngleWindow> {
    if n < 4 {
        return Err(Error::UnsupportedDimension {
            dimension: n,
            context: "the angle window needs dimension >= 4".into(),
        });
    }
    if !a.is_positive() {
        return Err(Error::BadParameter(format!(
            "the window parameter must be strictly positive, got {a}"
        )));
    }
    let k = k_overlap(n, digits)?;
    let two_pi = Real::pi(digits).mul(&Real::from_u64(2, digits));
    let one = Real::one(digits);
    let lower = two_pi.div(&Real::from_u64(k + 1, digits)).mul(&one.add(a));
    let upper = two_pi.div(&Real::from_u64(k, digits)).mul(&one.sub(a));
    let strictly_between = |angle: &Real| {
        lower.cmp(angle) == Ordering::Less && angle.cmp(&upper) == Ordering::Less
    };
    let inside = strictly_between(alpha);
    let regular = dihedral_angle_regular_ideal(n, digits)?;
    let regular_angle_inside = strictly_between(&regular);
    Ok(AngleWindow {
        k,
        lower_margin: alpha.sub(&lower),
        upper_margin: upper.sub(alpha),
        lower,
        upper,
        alpha: alpha.clone(),
        inside,
        regular_angle_inside,
    })
}

/// Assembles the full constants report for one dimension; see [`HypReport`]
/// for which fields appear when.
pub fn report(params: &HypParams) -> Result<HypReport> {
    params.validate()?;
    let n = params.n;
    let digits = params.digits;
    let alpha = dihedral_angle_regular_ideal(n, digits)?;
    let k = if n == 3 { None } else { Some(k_overlap(n, digits)?) };
    if let Some(k) = k {
        let two_pi = Real::pi(digits).mul(&Real::from_u64(2, digits));
        let low = alpha.mul(&Real::from_u64(k, digits));
        let high = alpha.mul(&Real::from_u64(k + 1, digits));
        assert!(
            low.cmp(&two_pi) == Ordering::Less && two_pi.cmp(&high) == Ordering::Less,
            "a reported overlap count must bracket the full angle strictly"
        );
    }
    let volume = if n == 3 { Some(regular_ideal_volume(3, digits)?) } else { None };
    let gap = match (&params.eps, &params.a, &params.eta, &volume) {
        (Some(_), Some(_), Some(_), Some(v)) => Some(c_const(params, v)?),
        _ => None,
    };
    let window = match (&params.a, k) {
        (Some(a), Some(_)) => Some(angle_window_check(n, a, &alpha, digits)?),
        _ => None,
    };
    Ok(HypReport { n, digits, alpha, ratio_is_integer: n == 3, k, volume, gap, window })
}

thread_local! {
    static COEFFICIENTS: RefCell<CoefficientCache> = RefCell::new(CoefficientCache::default());
}

/// ζ(2m)/(m(2m+1)π^{2m}) as an exact rational: by Euler's formula
/// ζ(2m) = (−1)^{m+1}·B_{2m}·(2π)^{2m}/(2·(2m)!), the π-powers cancel.
fn zeta_even_coefficient(m: usize) -> BigRational {
    COEFFICIENTS.with(|cache| cache.borrow_mut().coefficient(m))
}

#[derive(Default)]
struct CoefficientCache {
    bernoulli: Vec<BigRational>,
    factorial: Vec<BigInt>,
    coefficients: Vec<BigRational>,
}

impl CoefficientCache {
    fn coefficient(&mut self, m: usize) -> BigRational {
        while self.coefficients.len() < m {
            let next = self.coefficients.len() + 1;
            self.extend_bernoulli(2 * next);
            self.extend_factorial(2 * next);
            let mut c = self.bernoulli[2 * next].clone()
                * BigRational::from_integer(BigInt::one() << (2 * next));
            c /= BigRational::from_integer(BigInt::from(2) * &self.factorial[2 * next]);
            if next % 2 == 0 {
                c = -c;
            }
            c /= BigRational::from_integer(
                BigInt::from(next as u64) * BigInt::from((2 * next + 1) as u64),
            );
            debug_assert!(c.is_positive(), "even-zeta series coefficients are positive");
            self.coefficients.push(c);
        }
        self.coefficients[m - 1].clone()
    }

    /// Defining recurrence B_m = −(Σ_{j<m} C(m+1, j)·B_j)/(m+1), B_0 = 1,
    /// with the binomial row updated incrementally.
    fn extend_bernoulli(&mut self, upto: usize) {
        if self.bernoulli.is_empty() {
            self.bernoulli.push(BigRational::one());
        }
        while self.bernoulli.len() <= upto {
            let m = self.bernoulli.len();
            let mut acc = BigRational::zero();
            let mut binomial = BigInt::one();
            for (j, b) in self.bernoulli.iter().enumerate() {
                if !b.is_zero() {
                    acc += BigRational::from_integer(binomial.clone()) * b;
                }
                binomial = binomial * BigInt::from((m + 1 - j) as u64)
                    / BigInt::from((j + 1) as u64);
            }
            let b_m = -acc / BigRational::from_integer(BigInt::from((m + 1) as u64));
            self.bernoulli.push(b_m);
        }
    }

    fn extend_factorial(&mut self, upto: usize) {
        if self.factorial.is_empty() {
            self.factorial.push(BigInt::one());
        }
        while self.factorial.len() <= upto {
            let k = self.factorial.len();
            let next = &self.factorial[k - 1] * BigInt::from(k as u64);
            self.factorial.push(next);
        }
    }
}
