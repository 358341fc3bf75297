//! Nearly holomorphic forms, stored as polynomials in `Y = 1/(4π Im z)` whose
//! coefficients are q-expansions.
//!
//! With `D = q d/dq` one has `D(Y) = Y^2`, and the Maass-Shimura operator on
//! weight `w` is `δ_w = D - wY`. All structure constants are rational.

use std::ops::Mul;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::HolomorphicForm;
use crate::series::{int, QExpansion, Rational};

/// `Σ_i components[i] · Y^i` of a fixed total weight.
///
/// Trailing zero components are trimmed, so the zero form has no components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "NearlyRecord", try_from = "NearlyRecord")]
pub struct NearlyHolomorphicForm {
    weight: u32,
    precision: usize,
    components: Vec<QExpansion>,
}

impl NearlyHolomorphicForm {
    /// Every component must have at least `precision` coefficients; longer ones
    /// are truncated.
    pub fn new(weight: u32, precision: usize, components: Vec<QExpansion>) -> Result<Self> {
        if precision == 0 {
            return Err(Error::Precision {
                needed: 1,
                available: 0,
            });
        }
        let mut trimmed = Vec::with_capacity(components.len());
        for c in components {
            if c.precision() < precision {
                return Err(Error::Precision {
                    needed: precision,
                    available: c.precision(),
                });
            }
            trimmed.push(if c.precision() == precision {
                c
            } else {
                c.truncate(precision)
            });
        }
        Ok(Self::from_trimmed(weight, precision, trimmed))
    }

    fn from_trimmed(weight: u32, precision: usize, mut components: Vec<QExpansion>) -> Self {
        while components.last().is_some_and(QExpansion::is_zero) {
            components.pop();
        }
        NearlyHolomorphicForm {
            weight,
            precision,
            components,
        }
    }

    pub fn zero(weight: u32, precision: usize) -> Self {
        NearlyHolomorphicForm {
            weight,
            precision,
            components: Vec::new(),
        }
    }

    pub fn from_holomorphic(f: &HolomorphicForm) -> Self {
        Self::from_trimmed(f.weight(), f.precision(), vec![f.series().clone()])
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn components(&self) -> &[QExpansion] {
        &self.components
    }

    /// Coefficient of `Y^i`, zero beyond the degree.
    pub fn component(&self, i: usize) -> QExpansion {
        self.components
            .get(i)
            .cloned()
            .unwrap_or_else(|| QExpansion::zero(self.precision))
    }

    /// Degree in `Y`; `None` for the zero form.
    pub fn degree(&self) -> Option<usize> {
        self.components.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.components.len() <= 1
    }

    pub fn holomorphic_part(&self) -> QExpansion {
        self.component(0)
    }

    pub fn truncate(&self, precision: usize) -> Self {
        assert!(precision >= 1 && precision <= self.precision);
        Self::from_trimmed(
            self.weight,
            precision,
            self.components
                .iter()
                .map(|c| c.truncate(precision))
                .collect(),
        )
    }

    /// Maass-Shimura operator `δ_w`, raising the weight by 2.
    ///
    /// `δ_w(f_i Y^i) = D(f_i) Y^i + (i - w) f_i Y^{i+1}`.
    pub fn maass_shimura(&self) -> Self {
        let w = self.weight as i64;
        let n = self.precision;
        let mut out = Vec::with_capacity(self.components.len() + 1);
        for i in 0..=self.components.len() {
            let mut c = match self.components.get(i) {
                Some(f) => f.d_operator(),
                None => QExpansion::zero(n),
            };
            if i > 0 {
                let shift = int(i as i64 - 1 - w);
                c = &c + &self.components[i - 1].scale(&shift);
            }
            out.push(c);
        }
        Self::from_trimmed(self.weight + 2, n, out)
    }

    /// `r`-fold Maass-Shimura operator.
    pub fn delta_power(&self, r: u32) -> Self {
        (0..r).fold(self.clone(), |acc, _| acc.maass_shimura())
    }

    pub fn nadd(&self, other: &Self) -> Result<Self> {
        self.check_same_weight(other)?;
        let n = self.precision.min(other.precision);
        let len = self.components.len().max(other.components.len());
        let comps = (0..len)
            .map(|i| &self.component(i).truncate(n) + &other.component(i).truncate(n))
            .collect();
        Ok(Self::from_trimmed(self.weight, n, comps))
    }

    pub fn nsub(&self, other: &Self) -> Result<Self> {
        self.nadd(&other.nscale(&int(-1)))
    }

    pub fn nscale(&self, c: &Rational) -> Self {
        Self::from_trimmed(
            self.weight,
            self.precision,
            self.components.iter().map(|f| f.scale(c)).collect(),
        )
    }

    /// Product of forms: weights add and the `Y`-polynomials multiply.
    pub fn nmul(&self, other: &Self) -> Self {
        let n = self.precision.min(other.precision);
        let weight = self.weight + other.weight;
        if self.is_zero() || other.is_zero() {
            return Self::zero(weight, n);
        }
        let a: Vec<QExpansion> = self.components.iter().map(|c| c.truncate(n)).collect();
        let b: Vec<QExpansion> = other.components.iter().map(|c| c.truncate(n)).collect();
        let mut out = vec![QExpansion::zero(n); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        Self::from_trimmed(weight, n, out)
    }

    /// All coefficients, component-major, padded with zeros up to `degree`
    /// components. Used for joint proportionality tests.
    pub(crate) fn flatten(&self, components: usize) -> Vec<Rational> {
        let mut flat = Vec::with_capacity(components * self.precision);
        for i in 0..components {
            match self.components.get(i) {
                Some(c) => flat.extend(c.coeffs().iter().cloned()),
                None => flat.extend(std::iter::repeat_n(Rational::zero(), self.precision)),
            }
        }
        flat
    }

    fn check_same_weight(&self, other: &Self) -> Result<()> {
        if self.weight != other.weight {
            return Err(Error::domain(format!(
                "weight mismatch: {} vs {}",
                self.weight, other.weight
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("nearly holomorphic forms always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Mul for &NearlyHolomorphicForm {
    type Output = NearlyHolomorphicForm;

    fn mul(self, rhs: &NearlyHolomorphicForm) -> NearlyHolomorphicForm {
        self.nmul(rhs)
    }
}

/// `δ^{(r)}_k(f)` for a holomorphic `f` of weight `k`.
pub fn delta_iter(f: &HolomorphicForm, r: u32) -> NearlyHolomorphicForm {
    NearlyHolomorphicForm::from_holomorphic(f).delta_power(r)
}

#[derive(Serialize, Deserialize)]
struct NearlyRecord {
    weight: u32,
    degree: Option<usize>,
    precision: usize,
    components: Vec<QExpansion>,
}

impl From<NearlyHolomorphicForm> for NearlyRecord {
    fn from(f: NearlyHolomorphicForm) -> Self {
        NearlyRecord {
            weight: f.weight,
            degree: f.degree(),
            precision: f.precision,
            components: f.components,
        }
    }
}

impl TryFrom<NearlyRecord> for NearlyHolomorphicForm {
    type Error = Error;

    fn try_from(r: NearlyRecord) -> Result<Self> {
        if r.components.iter().any(|c| c.precision() != r.precision) {
            return Err(Error::Parse(
                "components must all have the stated precision".into(),
            ));
        }
        let form = NearlyHolomorphicForm::new(r.weight, r.precision, r.components)?;
        if form.degree() != r.degree {
            return Err(Error::Parse(format!(
                "stated degree {:?} but components give {:?}",
                r.degree,
                form.degree()
            )));
        }
        Ok(form)
    }
}
