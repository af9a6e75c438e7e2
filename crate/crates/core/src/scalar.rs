//! Scalar fields used by the structure-constant algebras.
//!
//! Everything symbolic is done over [`Rational`]. [`Real`] is a fixed-point
//! decimal with an explicit number of fractional digits, used when a group is
//! specified by irrational data (for instance a tuple containing the golden
//! ratio) and exact arithmetic is impossible.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Arithmetic needed by [`crate::NilpotentAlgebra`] and the generic
/// elimination routines.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Treat as zero during pivoting. Exact for rationals; below half the
    /// working precision for reals.
    fn is_negligible(&self) -> bool;
    fn abs(&self) -> Self;
    /// `self * r` for an exact rational factor.
    fn scale(&self, r: &Rational) -> Self;
    /// Exact rational value of the stored representation.
    fn to_rational(&self) -> Rational;
    /// Human-readable serialisation: `p/q` for rationals, a decimal string
    /// for reals.
    fn to_text(&self) -> String;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negligible(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn to_text(&self) -> String {
        format_rational(self)
    }
}

/// `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or a plain decimal such as `-1.25` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    let bad = || Error::Parse(format!("not a rational number: {t:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac}");
        let mant = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let r = Rational::new(mant, den);
        return Ok(if negative { -r } else { r });
    }
    BigInt::from_str(t).map(Rational::from_integer).map_err(|_| bad())
}

/// Base-10 logarithm of a positive rational, robust to values far outside
/// the `f64` exponent range.
pub fn log10_rational(r: &Rational) -> f64 {
    if Zero::is_zero(r) {
        return f64::NEG_INFINITY;
    }
    log10_bigint(&r.numer().abs()) - log10_bigint(r.denom())
}

fn log10_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).log10();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().unwrap().log10() + shift as f64 * std::f64::consts::LOG10_2
}

/// Approximate `f64` value of a rational, saturating instead of overflowing.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * 10f64.powf(log10_rational(&Signed::abs(r)))
}

/// Exact decimal expansion when it terminates within `max_frac` fractional
/// digits (`0.5`, `-12`), scientific notation with 20 digits otherwise.
pub fn format_decimal(r: &Rational, max_frac: u32) -> String {
    let ten = BigInt::from(10u32);
    let mut den = r.denom().clone();
    let mut frac = 0u32;
    for p in [2u32, 5] {
        let p = BigInt::from(p);
        let mut n = 0u32;
        while (&den % &p).is_zero() {
            den /= &p;
            n += 1;
        }
        frac = frac.max(n);
    }
    if !den.is_one() || frac > max_frac {
        return format_scientific(r, 20);
    }
    let scaled = (r * Rational::from_integer(ten.pow(frac))).to_integer();
    let neg = scaled.is_negative();
    let digits = Signed::abs(&scaled).to_string();
    let f = frac as usize;
    let body = if f == 0 {
        digits
    } else if digits.len() > f {
        format!("{}.{}", &digits[..digits.len() - f], &digits[digits.len() - f..])
    } else {
        format!("0.{}{}", "0".repeat(f - digits.len()), digits)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Scientific notation with `sig` significant digits, e.g. `1.2500e-18`.
pub fn format_scientific(r: &Rational, sig: usize) -> String {
    if Zero::is_zero(r) {
        return "0".into();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let a = Signed::abs(r);
    let mut exp = log10_rational(&a).floor() as i64;
    let ten = BigInt::from(10u32);
    // Scale into [10^(sig-1), 10^sig) and round.
    let mut digits;
    loop {
        let shift = sig as i64 - 1 - exp;
        let scaled = if shift >= 0 {
            &a * Rational::from_integer(ten.pow(shift as u32))
        } else {
            &a / Rational::from_integer(ten.pow((-shift) as u32))
        };
        digits = scaled.round().to_integer();
        let lo = ten.pow(sig as u32 - 1);
        if digits < lo {
            exp -= 1;
            continue;
        }
        if digits >= ten.pow(sig as u32) {
            exp += 1;
            continue;
        }
        break;
    }
    let s = digits.to_string();
    let (head, tail) = s.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{exp}")
    } else {
        format!("{sign}{head}.{tail}e{exp}")
    }
}

/// Fixed-point decimal: the value is `mant / 10^scale`.
///
/// Results of arithmetic carry the larger scale of the two operands and are
/// rounded half away from zero. A value with scale zero is an exact integer,
/// so `Real::zero()` and `Real::one()` combine with values of any precision.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Real {
    mant: BigInt,
    scale: u32,
}

fn pow10(n: u32) -> BigInt {
    BigInt::from(10u32).pow(n)
}

/// Integer division rounding half away from zero.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    if (Signed::abs(&r) * 2u32) >= Signed::abs(d) {
        if (n.sign() == Sign::Minus) != (d.sign() == Sign::Minus) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

impl Real {
    /// Nearest fixed-point value with `digits` fractional digits.
    pub fn from_rational(r: &Rational, digits: u32) -> Self {
        let mant = div_round(&(r.numer() * pow10(digits)), r.denom());
        Real { mant, scale: digits }
    }

    pub fn from_integer(n: i64) -> Self {
        Real { mant: BigInt::from(n), scale: 0 }
    }

    /// Square root of a non-negative value to `digits` fractional digits.
    pub fn sqrt(&self, digits: u32) -> Result<Self> {
        if self.mant.is_negative() {
            return Err(Error::InvalidParameter("square root of a negative number".into()));
        }
        // sqrt(m / 10^s) * 10^d = sqrt(m * 10^(2d - s)) when 2d >= s.
        let total = 2 * digits + if self.scale % 2 == 1 { 1 } else { 0 };
        let extra = total.saturating_sub(self.scale);
        let radicand = &self.mant * pow10(extra);
        let root = radicand.sqrt();
        let root_scale = (self.scale + extra) / 2;
        let mut out = Real { mant: root, scale: root_scale };
        out.rescale(digits);
        Ok(out)
    }

    /// The golden ratio `(1 + √5) / 2` to `digits` fractional digits.
    pub fn golden_ratio(digits: u32) -> Self {
        let five = Real::from_integer(5);
        let root = five.sqrt(digits + 2).expect("positive radicand");
        let v = (Real::from_integer(1) + root).div_int(2);
        let mut v = v;
        v.rescale(digits);
        v
    }

    pub fn scale_digits(&self) -> u32 {
        self.scale
    }

    fn rescale(&mut self, digits: u32) {
        match digits.cmp(&self.scale) {
            Ordering::Greater => self.mant = &self.mant * pow10(digits - self.scale),
            Ordering::Less => self.mant = div_round(&self.mant, &pow10(self.scale - digits)),
            Ordering::Equal => {}
        }
        self.scale = digits;
    }

    fn aligned(&self, other: &Real) -> (BigInt, BigInt, u32) {
        let s = self.scale.max(other.scale);
        let a = &self.mant * pow10(s - self.scale);
        let b = &other.mant * pow10(s - other.scale);
        (a, b, s)
    }

    fn div_int(&self, d: i64) -> Self {
        Real { mant: div_round(&self.mant, &BigInt::from(d)), scale: self.scale }
    }

    /// Parses a decimal or rational literal into `digits` fractional digits.
    pub fn parse(text: &str, digits: u32) -> Result<Self> {
        Ok(Real::from_rational(&parse_rational(text)?, digits))
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.to_rational())
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl Add for Real {
    type Output = Real;
    fn add(self, rhs: Real) -> Real {
        let (a, b, scale) = self.aligned(&rhs);
        Real { mant: a + b, scale }
    }
}

impl Sub for Real {
    type Output = Real;
    fn sub(self, rhs: Real) -> Real {
        let (a, b, scale) = self.aligned(&rhs);
        Real { mant: a - b, scale }
    }
}

impl Mul for Real {
    type Output = Real;
    fn mul(self, rhs: Real) -> Real {
        let scale = self.scale.max(rhs.scale);
        let raw = &self.mant * &rhs.mant;
        let drop = self.scale + rhs.scale - scale;
        Real { mant: div_round(&raw, &pow10(drop)), scale }
    }
}

impl Div for Real {
    type Output = Real;
    fn div(self, rhs: Real) -> Real {
        assert!(!rhs.mant.is_zero(), "division by zero");
        let scale = self.scale.max(rhs.scale);
        // (a / 10^sa) / (b / 10^sb) * 10^scale
        let num = &self.mant * pow10(scale + rhs.scale);
        let den = &rhs.mant * pow10(self.scale);
        Real { mant: div_round(&num, &den), scale }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { mant: -self.mant, scale: self.scale }
    }
}

impl Scalar for Real {
    fn zero() -> Self {
        Real { mant: BigInt::zero(), scale: 0 }
    }
    fn one() -> Self {
        Real { mant: BigInt::one(), scale: 0 }
    }
    fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }
    fn is_negligible(&self) -> bool {
        // |x| < 10^(-scale/2)
        let half = self.scale - self.scale / 2;
        Signed::abs(&self.mant) < pow10(half)
    }
    fn abs(&self) -> Self {
        Real { mant: Signed::abs(&self.mant), scale: self.scale }
    }
    fn scale(&self, r: &Rational) -> Self {
        let num = &self.mant * r.numer();
        Real { mant: div_round(&num, r.denom()), scale: self.scale }
    }
    fn to_rational(&self) -> Rational {
        Rational::new(self.mant.clone(), pow10(self.scale))
    }
    fn to_text(&self) -> String {
        let neg = self.mant.is_negative();
        let digits = Signed::abs(&self.mant).to_string();
        let s = self.scale as usize;
        let body = if s == 0 {
            digits
        } else if digits.len() > s {
            format!("{}.{}", &digits[..digits.len() - s], &digits[digits.len() - s..])
        } else {
            format!("0.{}{}", "0".repeat(s - digits.len()), digits)
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn parses_rationals_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_rationals() {
        assert_eq!(format_rational(&q(4, 2)), "2");
        assert_eq!(format_rational(&q(-1, 3)), "-1/3");
    }

    #[test]
    fn golden_ratio_digits() {
        let phi = Real::golden_ratio(50);
        assert_eq!(
            phi.to_text(),
            "1.61803398874989484820458683436563811772030917980576"
        );
        // phi^2 = phi + 1 up to the last digit.
        let err = (phi.clone() * phi.clone() - phi - Real::one()).abs();
        assert!(err.to_rational() < Rational::new(1.into(), pow10(48)));
    }

    #[test]
    fn real_arithmetic_rounds_half_away() {
        let a = Real::parse("0.15", 1).unwrap();
        assert_eq!(a.to_text(), "0.2");
        let b = Real::parse("-0.15", 1).unwrap();
        assert_eq!(b.to_text(), "-0.2");
        let c = Real::parse("1.5", 3).unwrap() * Real::parse("2.25", 3).unwrap();
        assert_eq!(c.to_text(), "3.375");
        let d = Real::parse("1", 4).unwrap() / Real::parse("3", 4).unwrap();
        assert_eq!(d.to_text(), "0.3333");
    }

    #[test]
    fn negligible_threshold_is_half_precision() {
        let tiny = Real::parse("0.00000001", 10).unwrap();
        assert!(tiny.is_negligible());
        let small = Real::parse("0.0001", 10).unwrap();
        assert!(!small.is_negligible());
    }

    #[test]
    fn scientific_formatting() {
        assert_eq!(format_scientific(&q(1, 8), 3), "1.25e-1");
        assert_eq!(format_scientific(&q(-12345, 1), 2), "-1.2e4");
        let tiny = Rational::new(1.into(), BigInt::from(10u32).pow(120));
        assert_eq!(format_scientific(&tiny, 1), "1e-120");
        assert_eq!(format_decimal(&q(1, 2), 30), "0.5");
        assert_eq!(format_decimal(&q(-3, 40), 30), "-0.075");
        assert_eq!(format_decimal(&q(7, 1), 30), "7");
        assert_eq!(format_decimal(&q(1, 3), 30), "3.3333333333333333333e-1");
        assert!((log10_rational(&tiny) + 120.0).abs() < 1e-9);
    }
}
