//! Truncated q-series with exact rational coefficients.
//!
//! A [`QExpansion`] of precision `N` stores the coefficients of `q^0 .. q^{N-1}`.
//! Binary operations produce a result whose precision is the minimum of the
//! input precisions; unary operations preserve precision.

mod combinat;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[cfg(test)]
pub(crate) use combinat::is_integral;
pub use combinat::{bernoulli, binomial, divisors, pow_rational, sigma};
pub(crate) use combinat::{binom, gcd};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"p"` or `"p/q"`; the result is reduced to lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad_rational(s))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad_rational(s))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(s.parse().map_err(|_| bad_rational(s))?),
    };
    Ok(parsed)
}

fn bad_rational(s: &str) -> Error {
    Error::Parse(format!("not a rational number: {s:?}"))
}

/// Outcome of testing whether `b = c * a` on the common precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Proportionality {
    Scalar(Rational),
    /// Both series vanish on the overlap.
    ZeroPair,
    NotProportional,
}

impl Proportionality {
    pub fn scalar(&self) -> Option<&Rational> {
        match self {
            Proportionality::Scalar(c) => Some(c),
            _ => None,
        }
    }
}

/// Proportionality of two equally long coefficient slices.
pub(crate) fn slice_proportionality(a: &[Rational], b: &[Rational]) -> Proportionality {
    debug_assert_eq!(a.len(), b.len());
    let Some(pivot) = a.iter().position(|x| !x.is_zero()) else {
        return if b.iter().all(Zero::is_zero) {
            Proportionality::ZeroPair
        } else {
            Proportionality::NotProportional
        };
    };
    let c = &b[pivot] / &a[pivot];
    if a.iter().zip(b).all(|(x, y)| &(x * &c) == y) {
        Proportionality::Scalar(c)
    } else {
        Proportionality::NotProportional
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QExpansion {
    coeffs: Vec<Rational>,
}

impl QExpansion {
    /// Builds a series whose precision is the number of coefficients given.
    ///
    /// Panics on an empty coefficient list; precision is always at least one.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a q-expansion needs precision >= 1");
        QExpansion { coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(int).collect())
    }

    pub fn zero(precision: usize) -> Self {
        Self::new(vec![Rational::zero(); precision])
    }

    pub fn one(precision: usize) -> Self {
        Self::monomial(0, Rational::one(), precision)
    }

    /// `c * q^m` at the given precision (zero if `m` is beyond it).
    pub fn monomial(m: usize, c: Rational, precision: usize) -> Self {
        let mut s = Self::zero(precision);
        if m < precision {
            s.coeffs[m] = c;
        }
        s
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &Rational {
        &self.coeffs[m]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops coefficients at and beyond `precision`.
    pub fn truncate(&self, precision: usize) -> Self {
        assert!(precision >= 1 && precision <= self.precision());
        Self::new(self.coeffs[..precision].to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `D = q d/dq`, i.e. `(1/2πi) d/dz`: the coefficient of `q^m` becomes `m a_m`.
    pub fn d_operator(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(m, a)| a * int(m as i64))
                .collect(),
        )
    }

    /// `D` applied `times` times.
    pub fn d_power(&self, times: u32) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(m, a)| a * Rational::from_integer(BigInt::from(m).pow(times)))
                .collect(),
        )
    }

    /// Tests `other = c * self` on the overlap of the two precisions.
    pub fn proportionality(&self, other: &QExpansion) -> Result<Proportionality> {
        let n = self.precision().min(other.precision());
        if n < 2 {
            return Err(Error::Precision {
                needed: 2,
                available: n,
            });
        }
        Ok(slice_proportionality(&self.coeffs[..n], &other.coeffs[..n]))
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        integer_numerators(&self.coeffs).0
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.precision());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Debug for QExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match m {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})q")?,
                _ => write!(f, "({c})q^{m}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.precision())
    }
}

impl Add for &QExpansion {
    type Output = QExpansion;

    fn add(self, rhs: &QExpansion) -> QExpansion {
        QExpansion::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &QExpansion {
    type Output = QExpansion;

    fn sub(self, rhs: &QExpansion) -> QExpansion {
        QExpansion::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &QExpansion {
    type Output = QExpansion;

    fn neg(self) -> QExpansion {
        QExpansion::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Mul for &QExpansion {
    type Output = QExpansion;

    /// Cauchy product truncated to the smaller precision.
    ///
    /// Both factors are brought to integer numerators over a common
    /// denominator, so each output coefficient is reduced only once.
    fn mul(self, rhs: &QExpansion) -> QExpansion {
        let n = self.precision().min(rhs.precision());
        let (da, a) = integer_numerators(&self.coeffs[..n]);
        let (db, b) = integer_numerators(&rhs.coeffs[..n]);
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[..n - i].iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        QExpansion::new(
            out.into_iter()
                .map(|c| Rational::new(c, den.clone()))
                .collect(),
        )
    }
}

/// `(d, [d·c_i])` with `d` the lcm of the denominators.
fn integer_numerators(coeffs: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let d = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs
        .iter()
        .map(|c| c.numer() * (&d / c.denom()))
        .collect();
    (d, nums)
}

macro_rules! forward_owned {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr for QExpansion {
            type Output = QExpansion;
            fn $method(self, rhs: QExpansion) -> QExpansion {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Serialize for QExpansion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for QExpansion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        if raw.is_empty() {
            return Err(serde::de::Error::custom("empty coefficient list"));
        }
        let coeffs = raw
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(QExpansion::new(coeffs))
    }
}

/// Serde adapter storing a rational as its canonical string.
pub(crate) mod rational_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(serde::de::Error::custom)
    }
}
