//! A thin high-precision real-number wrapper.
//!
//! [`Real`] pairs an arbitrary-precision binary float with its decimal-digit
//! budget.  All arithmetic is correctly rounded at a working precision with
//! generous guard bits beyond the requested digits; mixed-precision
//! operations promote to the larger budget.  Values print as decimal
//! scientific notation.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn bits_for(digits: u32) -> usize {
    // log2(10) ≈ 3.3219; 64 guard bits keep sequences of operations honest.
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64
}

/// An arbitrary-precision real carrying its decimal-digit budget.
#[derive(Debug, Clone)]
pub struct Real {
    value: BigFloat,
    digits: u32,
}

impl Real {
    fn wrap(value: BigFloat, digits: u32) -> Self {
        Real { value, digits }
    }

    /// The decimal-digit budget this value was computed for.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Working precision in bits.
    pub fn bits(&self) -> usize {
        bits_for(self.digits)
    }

    pub fn zero(digits: u32) -> Self {
        Real::wrap(BigFloat::from_f64(0.0, bits_for(digits)), digits)
    }

    pub fn one(digits: u32) -> Self {
        Real::wrap(BigFloat::from_f64(1.0, bits_for(digits)), digits)
    }

    pub fn from_u64(x: u64, digits: u32) -> Self {
        Real::wrap(BigFloat::from_u64(x, bits_for(digits)), digits)
    }

    pub fn from_i64(x: i64, digits: u32) -> Self {
        Real::wrap(BigFloat::from_i64(x, bits_for(digits)), digits)
    }

    /// Converts an `f64` exactly (binary value, no decimal reinterpretation).
    pub fn from_f64(x: f64, digits: u32) -> Self {
        Real::wrap(BigFloat::from_f64(x, bits_for(digits)), digits)
    }

    pub fn from_biguint(x: &BigUint, digits: u32) -> Self {
        Self::from_bigint(&BigInt::from(x.clone()), digits)
    }

    pub fn from_bigint(x: &BigInt, digits: u32) -> Self {
        let bits = bits_for(digits);
        let (sign, mag) = (x.sign(), x.magnitude());
        let mut acc = BigFloat::from_u64(0, bits);
        // Horner over 32-bit limbs, exact until the final rounding.
        let limbs = mag.to_u32_digits();
        let base = BigFloat::from_u64(1u64 << 32, bits);
        for &limb in limbs.iter().rev() {
            acc = acc.mul(&base, bits, RM).add(&BigFloat::from_u64(limb as u64, bits), bits, RM);
        }
        if sign == num_bigint::Sign::Minus {
            acc = acc.neg();
        }
        Real::wrap(acc, digits)
    }

    /// Exact rational → rounded real.
    pub fn from_rational(x: &BigRational, digits: u32) -> Self {
        let n = Self::from_bigint(x.numer(), digits);
        let d = Self::from_bigint(x.denom(), digits);
        n.div(&d)
    }

    /// Parses a decimal literal such as `"0.12"` or `"1e-45"`.
    pub fn parse_decimal(text: &str, digits: u32) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::Numeric("empty decimal literal".into()));
        }
        // Pre-validate shape: astro-float's parser is lenient, so reject
        // garbage ourselves before handing the string over.
        let ok = trimmed
            .strip_prefix(['+', '-'])
            .unwrap_or(trimmed)
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'));
        let has_digit = trimmed.chars().any(|c| c.is_ascii_digit());
        if !ok || !has_digit {
            return Err(Error::Numeric(format!("not a decimal literal: {text:?}")));
        }
        let bits = bits_for(digits);
        let value = CONSTS
            .with(|cc| BigFloat::parse(trimmed, Radix::Dec, bits, RM, &mut cc.borrow_mut()));
        if value.is_nan() {
            return Err(Error::Numeric(format!("not a decimal literal: {text:?}")));
        }
        Ok(Real::wrap(value, digits))
    }

    /// π at the given budget.
    pub fn pi(digits: u32) -> Self {
        let bits = bits_for(digits);
        let value = CONSTS.with(|cc| cc.borrow_mut().pi(bits, RM));
        Real::wrap(value, digits)
    }

    fn join(&self, other: &Real) -> (usize, u32) {
        let digits = self.digits.max(other.digits);
        (bits_for(digits), digits)
    }

    pub fn add(&self, other: &Real) -> Real {
        let (bits, digits) = self.join(other);
        Real::wrap(self.value.add(&other.value, bits, RM), digits)
    }

    pub fn sub(&self, other: &Real) -> Real {
        let (bits, digits) = self.join(other);
        Real::wrap(self.value.sub(&other.value, bits, RM), digits)
    }

    pub fn mul(&self, other: &Real) -> Real {
        let (bits, digits) = self.join(other);
        Real::wrap(self.value.mul(&other.value, bits, RM), digits)
    }

    /// Division; signals on a zero divisor.
    pub fn div(&self, other: &Real) -> Real {
        assert!(!other.value.is_zero(), "division by zero");
        let (bits, digits) = self.join(other);
        Real::wrap(self.value.div(&other.value, bits, RM), digits)
    }

    pub fn neg(&self) -> Real {
        Real::wrap(self.value.neg(), self.digits)
    }

    pub fn abs(&self) -> Real {
        Real::wrap(self.value.abs(), self.digits)
    }

    /// Natural logarithm; the argument must be positive.
    pub fn ln(&self) -> Result<Real> {
        if !self.is_positive() {
            return Err(Error::Numeric(format!("ln of a non-positive value: {self}")));
        }
        let bits = self.bits();
        let value = CONSTS.with(|cc| self.value.ln(bits, RM, &mut cc.borrow_mut()));
        Ok(Real::wrap(value, self.digits))
    }

    /// Arc cosine; the argument must lie in [−1, 1].
    pub fn acos(&self) -> Result<Real> {
        let one = Real::one(self.digits);
        if self.abs().cmp(&one) == Ordering::Greater {
            return Err(Error::Numeric(format!("acos of a value outside [-1, 1]: {self}")));
        }
        let bits = self.bits();
        let value = CONSTS.with(|cc| self.value.acos(bits, RM, &mut cc.borrow_mut()));
        Ok(Real::wrap(value, self.digits))
    }

    pub fn sin(&self) -> Real {
        let bits = self.bits();
        let value = CONSTS.with(|cc| self.value.sin(bits, RM, &mut cc.borrow_mut()));
        Real::wrap(value, self.digits)
    }

    pub fn cos(&self) -> Real {
        let bits = self.bits();
        let value = CONSTS.with(|cc| self.value.cos(bits, RM, &mut cc.borrow_mut()));
        Real::wrap(value, self.digits)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.value.is_zero() && self.value.sign() == Some(Sign::Pos)
    }

    pub fn is_negative(&self) -> bool {
        !self.value.is_zero() && self.value.sign() == Some(Sign::Neg)
    }

    /// Total order; our pipelines never produce NaN, which is asserted.
    pub fn cmp(&self, other: &Real) -> Ordering {
        let c = self.value.cmp(&other.value).expect("comparison of non-NaN reals");
        c.cmp(&0)
    }

    /// Nearest `f64` (for reporting and coarse checks only).
    pub fn to_f64(&self) -> f64 {
        let printed = format!("{}", self.value);
        printed.trim().parse::<f64>().unwrap_or_else(|_| {
            // `1.e+0`-style output needs the bare dot patched.
            printed.trim().replace(".e", ".0e").parse::<f64>().expect("parseable float")
        })
    }

    /// Decimal string, full working precision.
    pub fn decimal(&self) -> String {
        format!("{}", self.value)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.decimal())
    }
}

/// Convenience: `ln` of a positive big integer (used for torsion logs).
pub fn ln_biguint(x: &BigUint, digits: u32) -> Result<Real> {
    if x.is_zero() {
        return Err(Error::Numeric("ln of zero".into()));
    }
    Real::from_biguint(x, digits).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acos_half_is_pi_over_three() {
        let digits = 60;
        let a = Real::from_rational(&BigRational::new(1.into(), 2.into()), digits)
            .acos()
            .unwrap();
        let third = Real::pi(digits).div(&Real::from_u64(3, digits));
        let margin = a.sub(&third).abs();
        let tol = Real::parse_decimal("1e-58", digits).unwrap();
        assert_eq!(margin.cmp(&tol), Ordering::Less, "margin {margin}");
    }

    #[test]
    fn bigint_round_trip() {
        let big = BigUint::parse_bytes(b"123456789012345678901234567890", 10).unwrap();
        let r = Real::from_biguint(&big, 50);
        // ln(x) should be close to ln(1.2345678901234568e29).
        let l = r.ln().unwrap().to_f64();
        assert!((l - 66.98).abs() < 0.01, "got {l}");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Real::parse_decimal("0.12", 30).is_ok());
        assert!(Real::parse_decimal("1e-45", 30).is_ok());
        assert!(Real::parse_decimal("", 30).is_err());
        assert!(Real::parse_decimal("twelve", 30).is_err());
    }

    #[test]
    fn comparisons_and_arithmetic() {
        let d = 40;
        let a = Real::from_u64(2, d);
        let b = Real::from_u64(3, d);
        assert_eq!(a.cmp(&b), Ordering::Less);
        assert_eq!(b.sub(&a), Real::one(d));
        assert!(a.sub(&b).is_negative());
        assert_eq!(a.mul(&b).to_f64(), 6.0);
        assert_eq!(Real::from_i64(-7, d).abs().to_f64(), 7.0);
    }

    #[test]
    fn ln_domain_errors() {
        assert!(Real::zero(30).ln().is_err());
        assert!(Real::from_i64(-3, 30).ln().is_err());
        let e = Real::from_f64(std::f64::consts::E, 30).ln().unwrap();
        assert!((e.to_f64() - 1.0).abs() < 1e-14);
    }
}
