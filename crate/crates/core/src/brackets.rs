//! Rankin-Cohen brackets and the expansion of a product of Maass-Shimura
//! iterates into iterates of brackets:
//!
//! `δ^{(r)}_k(f) δ^{(s)}_l(g) = Σ_{j=0}^{r+s} α_j δ^{(r+s-j)}_{k+l+2j}([f,g]_j)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::forms::HolomorphicForm;
use crate::hecke::eigen_check;
use crate::nearly::{delta_iter, NearlyHolomorphicForm};
use crate::series::{binom, format_rational, QExpansion, Rational};

/// `[f, g]_j = Σ_{a+b=j} (-1)^a C(j+k-1, b) C(j+l-1, a) D^a f · D^b g`,
/// with `D = q d/dq` absorbing the `(2πi)^{-j}` normalization.
pub fn rankin_cohen(f: &HolomorphicForm, g: &HolomorphicForm, j: u32) -> HolomorphicForm {
    let (k, l) = (f.weight() as i64, g.weight() as i64);
    let n = f.precision().min(g.precision());
    let fs = f.series().truncate(n);
    let gs = g.series().truncate(n);
    let j64 = j as i64;
    let mut acc = QExpansion::zero(n);
    for a in 0..=j {
        let b = j - a;
        let mut c =
            Rational::from_integer(binom(j64 + k - 1, b as i64) * binom(j64 + l - 1, a as i64));
        if a % 2 == 1 {
            c = -c;
        }
        let term = &fs.d_power(a) * &gs.d_power(b);
        acc = &acc + &term.scale(&c);
    }
    HolomorphicForm::new(f.weight() + g.weight() + 2 * j, acc)
}

fn binom_rat(n: i64, r: i64) -> Rational {
    Rational::from_integer(binom(n, r))
}

/// Coefficients of `δ^{(n-j)}([f,g]_j)`, `j = 0..=n`, in `δ^{(n)}_k(f) · g`:
///
/// `(-1)^j C(n,j) C(k+n-1, n-j) / (C(k+l+2j-2, j) C(k+l+n+j-1, n-j))`.
pub fn lanphier_monomial(k: u32, l: u32, n: u32) -> Vec<Rational> {
    let (k, l, n) = (k as i64, l as i64, n as i64);
    (0..=n)
        .map(|j| {
            let num = binom_rat(n, j) * binom_rat(k + n - 1, n - j);
            let den = binom_rat(k + l + 2 * j - 2, j) * binom_rat(k + l + n + j - 1, n - j);
            let c = num / den;
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionTerm {
    pub j: u32,
    #[serde(with = "crate::series::rational_string")]
    pub alpha: Rational,
}

/// The `α_j` of a product expansion; they depend only on the weights and
/// iteration counts, never on the forms themselves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionTermList {
    pub k: u32,
    pub l: u32,
    pub r: u32,
    pub s: u32,
    pub terms: Vec<ExpansionTerm>,
}

impl ExpansionTermList {
    pub fn alphas(&self) -> Vec<Rational> {
        self.terms.iter().map(|t| t.alpha.clone()).collect()
    }
}

/// `α_j = C(k+l+2j-2, j)^{-1} Σ_{m=max(j-r,0)}^{s} (-1)^{j+m} C(s,m) C(r+m,j)
/// C(k+r+m-1, r+m-j) / C(k+l+r+m+j-1, r+m-j)`.
pub fn lanphier_expansion_coeffs(k: u32, l: u32, r: u32, s: u32) -> ExpansionTermList {
    let (k64, l64, r64, s64) = (k as i64, l as i64, r as i64, s as i64);
    let terms = (0..=r + s)
        .map(|j| {
            let j64 = j as i64;
            let mut inner = Rational::zero();
            for m in (j64 - r64).max(0)..=s64 {
                let rm = r64 + m;
                let num =
                    binom_rat(s64, m) * binom_rat(rm, j64) * binom_rat(k64 + rm - 1, rm - j64);
                let den = binom_rat(k64 + l64 + rm + j64 - 1, rm - j64);
                let t = num / den;
                if (j64 + m) % 2 == 0 {
                    inner += t;
                } else {
                    inner -= t;
                }
            }
            ExpansionTerm {
                j,
                alpha: inner / binom_rat(k64 + l64 + 2 * j64 - 2, j64),
            }
        })
        .collect();
    ExpansionTermList { k, l, r, s, terms }
}

/// A product `δ^{(r)}(f) δ^{(s)}(g)` rewritten through brackets.
#[derive(Debug, Clone)]
pub struct ProductExpansion {
    pub coefficients: ExpansionTermList,
    /// `[f, g]_j` for `j = 0..=r+s`.
    pub brackets: Vec<HolomorphicForm>,
    /// `Σ_j α_j δ^{(r+s-j)}([f,g]_j)`.
    pub reconstruction: NearlyHolomorphicForm,
}

impl ProductExpansion {
    /// `j` values whose term `α_j δ^{(r+s-j)}([f,g]_j)` is nonzero.
    pub fn nonzero_terms(&self) -> Vec<u32> {
        self.coefficients
            .terms
            .iter()
            .zip(&self.brackets)
            .filter(|(t, b)| !t.alpha.is_zero() && !b.is_zero())
            .map(|(t, _)| t.j)
            .collect()
    }

    /// Annotates every term with whether its bracket vanishes and whether the
    /// term is a Hecke eigenform (a δ-iterate is an eigenform iff the bracket is).
    pub fn report(&self, n_max: u64, min_overlap: usize) -> Result<ExpansionReport> {
        let c = &self.coefficients;
        let terms = c
            .terms
            .iter()
            .zip(&self.brackets)
            .map(|(t, b)| {
                let bracket_is_zero = b.is_zero();
                let term_is_eigen = if bracket_is_zero || t.alpha.is_zero() {
                    false
                } else {
                    eigen_check(
                        &NearlyHolomorphicForm::from_holomorphic(b),
                        n_max,
                        min_overlap,
                    )?
                    .is_eigen
                };
                Ok(ReportedTerm {
                    j: t.j,
                    alpha: format_rational(&t.alpha),
                    bracket_is_zero,
                    term_is_eigen,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExpansionReport {
            k: c.k,
            l: c.l,
            r: c.r,
            s: c.s,
            terms,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportedTerm {
    pub j: u32,
    pub alpha: String,
    pub bracket_is_zero: bool,
    pub term_is_eigen: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub k: u32,
    pub l: u32,
    pub r: u32,
    pub s: u32,
    pub terms: Vec<ReportedTerm>,
}

pub fn expand_product(
    f: &HolomorphicForm,
    r: u32,
    g: &HolomorphicForm,
    s: u32,
) -> ProductExpansion {
    let coefficients = lanphier_expansion_coeffs(f.weight(), g.weight(), r, s);
    let brackets: Vec<HolomorphicForm> = (0..=r + s).map(|j| rankin_cohen(f, g, j)).collect();
    let weight = f.weight() + g.weight() + 2 * (r + s);
    let precision = f.precision().min(g.precision());
    let mut reconstruction = NearlyHolomorphicForm::zero(weight, precision);
    for (t, b) in coefficients.terms.iter().zip(&brackets) {
        if t.alpha.is_zero() || b.is_zero() {
            continue;
        }
        let term = delta_iter(b, r + s - t.j).nscale(&t.alpha);
        reconstruction = reconstruction
            .nadd(&term)
            .expect("every term has the product's weight");
    }
    ProductExpansion {
        coefficients,
        brackets,
        reconstruction,
    }
}

/// `j` values with a nonzero term in the expansion of `δ^{(r)}(f) δ^{(s)}(g)`,
/// without assembling the reconstruction. Brackets are only computed where
/// `α_j != 0`.
pub fn nonzero_terms(f: &HolomorphicForm, r: u32, g: &HolomorphicForm, s: u32) -> Vec<u32> {
    lanphier_expansion_coeffs(f.weight(), g.weight(), r, s)
        .terms
        .iter()
        .filter(|t| !t.alpha.is_zero() && !rankin_cohen(f, g, t.j).is_zero())
        .map(|t| t.j)
        .collect()
}

/// The `q^1` coefficient of `[f, g]_j` when `f` is cuspidal with `a_1 = 1` and
/// `g` has weight `l` and constant term 1. Only `D^j f · g` reaches `q^1`, so
/// the value is `(-1)^j C(j+l-1, j)`.
pub fn cusp_bracket_leading(l: u32, j: u32) -> Rational {
    let c = binom_rat(j as i64 + l as i64 - 1, j as i64);
    if j % 2 == 1 {
        -c
    } else {
        c
    }
}
