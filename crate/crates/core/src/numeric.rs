//! Exact rational scalars and one-variable interpolation.
//!
//! Every quantity in the crate lives in [`Scalar`], a canonical
//! arbitrary-precision rational. There is no floating point anywhere in the
//! evaluation paths.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number in canonical form: positive denominator, numerator
/// and denominator coprime.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    /// Builds `numerator / denominator` in lowest terms.
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Scalar(BigRational::new(numerator.into(), den)))
    }

    pub fn from_int(value: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Scalar(self.0.recip()))
    }

    /// Exact quotient; `None` when dividing by zero.
    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        if rhs.is_zero() {
            None
        } else {
            Some(Scalar(&self.0 / &rhs.0))
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc *= self;
        }
        acc
    }

    /// Decimal digits of numerator plus denominator, a size measure for the
    /// underlying bignums.
    pub fn digits(&self) -> usize {
        fn dec(n: &BigInt) -> usize {
            if n.is_zero() {
                1
            } else {
                n.abs().to_str_radix(10).len()
            }
        }
        dec(self.0.numer()) + dec(self.0.denom())
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Draws a rational with numerator in [-9, 9] and denominator in [1, 9].
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=9);
        Scalar(BigRational::new(num.into(), den.into()))
    }

    /// Like [`Scalar::sample`] but never zero.
    pub fn sample_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let s = Scalar::sample(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }
}

impl From<i64> for Scalar {
    fn from(value: i64) -> Self {
        Scalar::from_int(value)
    }
}

impl From<BigRational> for Scalar {
    fn from(value: BigRational) -> Self {
        Scalar(value)
    }
}

impl fmt::Display for Scalar {
    /// Always `p/q`, including `q = 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts integers (`-3`), fractions (`7/2`, `-3/-6`) and terminating
    /// decimals (`1.25`, `-.5`).
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let bad = || Error::Parse(s.to_string());
        if text.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = text.split_once('/') {
            let num = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            return Scalar::new(num, den);
        }
        if let Some((int_part, frac_part)) = text.split_once('.') {
            let (negative, int_digits) = match int_part.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
            };
            let all_digits = |p: &str| p.chars().all(|c| c.is_ascii_digit());
            if !all_digits(int_digits) || !all_digits(frac_part) || (int_digits.is_empty() && frac_part.is_empty()) {
                return Err(bad());
            }
            let joined = format!("{int_digits}{frac_part}");
            let mut num = BigInt::from_str(if joined.is_empty() { "0" } else { &joined }).map_err(|_| bad())?;
            if negative {
                num = -num;
            }
            let den = num_traits::pow(BigInt::from(10), frac_part.len());
            return Scalar::new(num, den);
        }
        let num = BigInt::from_str(text).map_err(|_| bad())?;
        Ok(Scalar(BigRational::from_integer(num)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division panics on a zero divisor, like the integer types. Use
// `checked_div` where the divisor is data-dependent.
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        self.0 *= rhs.0;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a Scalar> for Scalar {
    fn product<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

/// Canonical construction of `numerator / denominator`.
pub fn normalize(numerator: i64, denominator: i64) -> Result<Scalar> {
    Scalar::new(numerator, denominator)
}

/// One evaluation of a univariate function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub node: Scalar,
    pub value: Scalar,
}

impl SamplePoint {
    pub fn new(node: Scalar, value: Scalar) -> Self {
        SamplePoint { node, value }
    }
}

/// Newton-form coefficients `f[x_0], f[x_0,x_1], ...` of the interpolant.
pub fn divided_differences(samples: &[SamplePoint]) -> Result<Vec<Scalar>> {
    if samples.is_empty() {
        return Err(Error::NoSamples);
    }
    for (i, a) in samples.iter().enumerate() {
        if samples[..i].iter().any(|b| b.node == a.node) {
            return Err(Error::DuplicateNode(a.node.to_string()));
        }
    }
    let n = samples.len();
    let mut table: Vec<Scalar> = samples.iter().map(|s| s.value.clone()).collect();
    let mut coeffs = Vec::with_capacity(n);
    coeffs.push(table[0].clone());
    for order in 1..n {
        for i in 0..n - order {
            let num = &table[i + 1] - &table[i];
            let den = &samples[i + order].node - &samples[i].node;
            table[i] = num / den;
        }
        coeffs.push(table[0].clone());
    }
    Ok(coeffs)
}

/// Degree of the minimal interpolating polynomial through `samples`; the
/// zero polynomial has degree 0.
pub fn exact_degree(samples: &[SamplePoint]) -> Result<usize> {
    let coeffs = divided_differences(samples)?;
    Ok(coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0))
}

/// Evaluates the interpolant through `samples` at `at`.
pub fn interpolate_at(samples: &[SamplePoint], at: &Scalar) -> Result<Scalar> {
    let coeffs = divided_differences(samples)?;
    let mut acc = Scalar::zero();
    for k in (0..coeffs.len()).rev() {
        acc = acc * (at - &samples[k].node) + &coeffs[k];
    }
    Ok(acc)
}
