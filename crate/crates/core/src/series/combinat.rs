//! Integer combinatorics shared by the form constructors and the bracket
//! coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Binomial coefficient `C(n, r)`, zero when `r < 0` or `r > n`.
pub fn binomial(n: i64, r: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::domain(format!("binomial with negative n = {n}")));
    }
    if r < 0 || r > n {
        return Ok(BigInt::zero());
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Ok(acc)
}

/// Binomial coefficient for arguments that are known to be in range.
pub(crate) fn binom(n: i64, r: i64) -> BigInt {
    binomial(n, r).expect("binomial argument must be nonnegative")
}

/// Bernoulli number `B_k` from `sum_{i=0}^{m} C(m+1, i) B_i = 0`, with `B_0 = 1`.
pub fn bernoulli(k: u32) -> Rational {
    let k = k as usize;
    let mut table: Vec<Rational> = Vec::with_capacity(k + 1);
    table.push(Rational::one());
    for m in 1..=k {
        let mut acc = Rational::zero();
        for (i, b) in table.iter().enumerate() {
            acc += Rational::from(binom(m as i64 + 1, i as i64)) * b;
        }
        table.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    table.pop().unwrap()
}

/// Divisor power sum `sigma_e(n) = sum_{d | n} d^e`.
pub fn sigma(n: u64, e: u32) -> BigInt {
    assert!(n >= 1, "sigma is defined for n >= 1");
    divisors(n)
        .into_iter()
        .map(|d| BigInt::from(d).pow(e))
        .sum()
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `base^exp` as an exact rational; negative exponents give reciprocals.
pub fn pow_rational(base: u64, exp: i64) -> Rational {
    assert!(base != 0 || exp >= 0, "zero to a negative power");
    let p = BigInt::from(base).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// `gcd(a, b)` for positive machine integers.
pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
pub(crate) fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}
