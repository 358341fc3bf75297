//! Independent constructions used as oracles by the integration suites. Nothing
//! here goes through the library's Bernoulli numbers, divisor sums or cusp form
//! constructors.
#![allow(dead_code)]

use nholo::series::{int, ratio};
use nholo::{QExpansion, Rational};
use proptest::prelude::*;

/// Brute-force divisor power sum.
pub fn sigma_brute(n: u64, e: u32) -> i128 {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| (d as i128).pow(e))
        .sum()
}

/// `1 + c · Σ σ_e(m) q^m` with the normalizing constant supplied by hand.
fn eisenstein_by_hand(c: i64, e: u32, n: usize) -> QExpansion {
    QExpansion::new(
        (0..n)
            .map(|m| {
                if m == 0 {
                    int(1)
                } else {
                    Rational::from_integer((sigma_brute(m as u64, e) * c as i128).into())
                }
            })
            .collect(),
    )
}

/// `E_k` for the weights with a tabulated constant `-2k/B_k`.
pub fn eisenstein_oracle(k: u32, n: usize) -> QExpansion {
    let c = match k {
        4 => 240,
        6 => -504,
        8 => 480,
        10 => -264,
        14 => -24,
        _ => panic!("no tabulated constant for weight {k}"),
    };
    eisenstein_by_hand(c, k - 1, n)
}

pub fn e4(n: usize) -> QExpansion {
    eisenstein_by_hand(240, 3, n)
}

pub fn e6(n: usize) -> QExpansion {
    eisenstein_by_hand(-504, 5, n)
}

/// `q Π_{m>=1} (1 - q^m)^24`.
pub fn delta_product(n: usize) -> QExpansion {
    let mut coeffs = vec![0i128; n];
    if n > 1 {
        coeffs[1] = 1;
    }
    for m in 1..n {
        for _ in 0..24 {
            for i in (m..n).rev() {
                coeffs[i] -= coeffs[i - m];
            }
        }
    }
    QExpansion::new(
        coeffs
            .into_iter()
            .map(|c| Rational::from_integer(c.into()))
            .collect(),
    )
}

/// The normalized generator of `S_k` for `dim S_k = 1`, as `Δ · E4^a E6^b`
/// with the largest possible `a`.
pub fn cusp_by_hand(k: u32, n: usize) -> QExpansion {
    let rest = k - 12;
    let (a, b) = match rest % 4 {
        0 => (rest / 4, 0),
        _ => ((rest - 6) / 4, 1),
    };
    let mut f = delta_product(n);
    for _ in 0..a {
        f = &f * &e4(n);
    }
    for _ in 0..b {
        f = &f * &e6(n);
    }
    let lead = f.coeff(1).clone();
    f.scale(&lead.recip())
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

pub fn series(len: usize) -> impl Strategy<Value = QExpansion> {
    proptest::collection::vec(small_rational(), len).prop_map(QExpansion::new)
}
