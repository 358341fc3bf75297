//! Classical holomorphic forms of level one: the Eisenstein series `E_k` and the
//! normalized cusp eigenforms `Δ_k` for the weights where `dim S_k = 1`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{bernoulli, int, sigma, QExpansion, Rational};

/// Weights with a one-dimensional space of cusp forms.
pub const CUSP_WEIGHTS: [u32; 6] = [12, 16, 18, 20, 22, 26];

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "HolomorphicRecord", try_from = "HolomorphicRecord")]
pub struct HolomorphicForm {
    weight: u32,
    series: QExpansion,
    is_cusp: bool,
}

impl HolomorphicForm {
    /// Tags a series with a weight. The form is cuspidal iff its constant term is 0.
    pub fn new(weight: u32, series: QExpansion) -> Self {
        let is_cusp = series.coeff(0).is_zero();
        HolomorphicForm {
            weight,
            series,
            is_cusp,
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn series(&self) -> &QExpansion {
        &self.series
    }

    pub fn precision(&self) -> usize {
        self.series.precision()
    }

    pub fn is_cusp(&self) -> bool {
        self.is_cusp
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    pub fn mul(&self, other: &HolomorphicForm) -> HolomorphicForm {
        HolomorphicForm::new(self.weight + other.weight, &self.series * &other.series)
    }
}

/// JSON shape of a holomorphic form.
#[derive(Serialize, Deserialize)]
struct HolomorphicRecord {
    weight: u32,
    is_cusp: bool,
    precision: usize,
    coefficients: QExpansion,
}

impl From<HolomorphicForm> for HolomorphicRecord {
    fn from(f: HolomorphicForm) -> Self {
        HolomorphicRecord {
            weight: f.weight,
            is_cusp: f.is_cusp,
            precision: f.series.precision(),
            coefficients: f.series,
        }
    }
}

impl TryFrom<HolomorphicRecord> for HolomorphicForm {
    type Error = Error;

    fn try_from(r: HolomorphicRecord) -> Result<Self> {
        if r.precision != r.coefficients.precision() {
            return Err(Error::Parse(format!(
                "precision {} does not match {} coefficients",
                r.precision,
                r.coefficients.precision()
            )));
        }
        let form = HolomorphicForm::new(r.weight, r.coefficients);
        if form.is_cusp != r.is_cusp {
            return Err(Error::Parse(
                "is_cusp disagrees with the constant term".into(),
            ));
        }
        Ok(form)
    }
}

fn check_precision(n: usize, needed: usize) -> Result<()> {
    if n < needed {
        Err(Error::Precision {
            needed,
            available: n,
        })
    } else {
        Ok(())
    }
}

/// `E_k = 1 - (2k/B_k) sum_{n>=1} sigma_{k-1}(n) q^n`.
pub fn eisenstein(k: u32, precision: usize) -> Result<HolomorphicForm> {
    if k < 4 || !k.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "Eisenstein series need even weight >= 4, got {k}"
        )));
    }
    check_precision(precision, 1)?;
    let factor = -int(2 * k as i64) / bernoulli(k);
    let coeffs = (0..precision)
        .map(|n| {
            if n == 0 {
                Rational::one()
            } else {
                &factor * Rational::from_integer(sigma(n as u64, k - 1))
            }
        })
        .collect();
    Ok(HolomorphicForm::new(k, QExpansion::new(coeffs)))
}

/// Ramanujan's `Δ = (E_4^3 - E_6^2) / 1728`.
pub fn delta12(precision: usize) -> Result<HolomorphicForm> {
    check_precision(precision, 2)?;
    let e4 = eisenstein(4, precision)?;
    let e6 = eisenstein(6, precision)?;
    let diff = &e4.series.pow(3) - &e6.series.pow(2);
    Ok(HolomorphicForm::new(
        12,
        diff.scale(&crate::series::ratio(1, 1728)),
    ))
}

/// The normalized eigenform spanning `S_k` for `k` in [`CUSP_WEIGHTS`],
/// built as `Δ · E_{k-12}`.
pub fn cusp_eigenform(k: u32, precision: usize) -> Result<HolomorphicForm> {
    if !CUSP_WEIGHTS.contains(&k) {
        return Err(Error::domain(format!(
            "no one-dimensional cusp space in weight {k} (supported: {CUSP_WEIGHTS:?})"
        )));
    }
    let delta = delta12(precision)?;
    if k == 12 {
        return Ok(delta);
    }
    let product = delta.mul(&eisenstein(k - 12, precision)?);
    let lead = product.series.coeff(1).clone();
    Ok(HolomorphicForm::new(k, product.series.scale(&lead.recip())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormKind {
    Eisenstein,
    Cusp,
}

/// Names one of the constructible eigenforms: `E4`, `E6`, ..., `D12`, `D16`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormId {
    pub kind: FormKind,
    pub weight: u32,
}

impl FormId {
    pub fn eisenstein(weight: u32) -> Self {
        FormId {
            kind: FormKind::Eisenstein,
            weight,
        }
    }

    pub fn cusp(weight: u32) -> Self {
        FormId {
            kind: FormKind::Cusp,
            weight,
        }
    }

    pub fn build(&self, precision: usize) -> Result<HolomorphicForm> {
        match self.kind {
            FormKind::Eisenstein => eisenstein(self.weight, precision),
            FormKind::Cusp => cusp_eigenform(self.weight, precision),
        }
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FormKind::Eisenstein => write!(f, "E{}", self.weight),
            FormKind::Cusp => write!(f, "D{}", self.weight),
        }
    }
}

impl FromStr for FormId {
    type Err = Error;

    /// Accepts `E<k>`, `D<k>` and `Delta<k>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, rest) = if let Some(rest) = s.strip_prefix("Delta") {
            (FormKind::Cusp, rest)
        } else if let Some(rest) = s.strip_prefix('D') {
            (FormKind::Cusp, rest)
        } else if let Some(rest) = s.strip_prefix('E') {
            (FormKind::Eisenstein, rest)
        } else {
            return Err(Error::Parse(format!(
                "form id must look like E4 or D12, got {s:?}"
            )));
        };
        let weight = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad weight in form id {s:?}")))?;
        Ok(FormId { kind, weight })
    }
}

impl Serialize for FormId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FormId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}
