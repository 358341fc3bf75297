//! Hecke operators on q-expansions and on nearly holomorphic forms, and
//! detection of Hecke eigenforms with eigenvalue recovery.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nearly::NearlyHolomorphicForm;
use crate::series::{
    divisors, format_rational, gcd, parse_rational, pow_rational, QExpansion, Rational,
};

pub const DEFAULT_N_MAX: u64 = 8;
pub const DEFAULT_MIN_OVERLAP: usize = 5;

/// Smallest input precision for which every `T_n`, `n <= n_max`, leaves at
/// least `min_overlap` coefficients.
pub fn required_precision(n_max: u64, min_overlap: usize) -> usize {
    n_max as usize * (min_overlap - 1) + 1
}

/// Precision left after applying `T_n` to a series of precision `precision`.
pub fn hecke_precision(n: u64, precision: usize) -> usize {
    (precision - 1) / n as usize + 1
}

/// `T_n` on a weight-`k` q-expansion:
/// `b_m = Σ_{d | gcd(m, n)} d^{k-1} a_{mn/d^2}` and `b_0 = σ_{k-1}(n) a_0`.
///
/// The weight may be any integer, so that the operator also applies to the
/// lower-weight components of a nearly holomorphic form.
pub fn hecke_holomorphic(n: u64, k: i64, f: &QExpansion) -> Result<QExpansion> {
    if n == 0 {
        return Err(Error::domain("Hecke operator T_0 is undefined"));
    }
    let out_prec = hecke_precision(n, f.precision());
    if out_prec < 2 {
        return Err(Error::Precision {
            needed: n as usize + 1,
            available: f.precision(),
        });
    }
    let divs = divisors(n);
    let powers: BTreeMap<u64, Rational> =
        divs.iter().map(|&d| (d, pow_rational(d, k - 1))).collect();

    let mut out = Vec::with_capacity(out_prec);
    let sigma: Rational = powers.values().sum();
    out.push(sigma * f.coeff(0));
    for m in 1..out_prec as u64 {
        let g = gcd(m, n);
        let mut acc = Rational::zero();
        for d in divs.iter().take_while(|&&d| d <= g) {
            if g.is_multiple_of(*d) {
                let idx = (m * n / (d * d)) as usize;
                let a = f.coeff(idx);
                if !a.is_zero() {
                    acc += &powers[d] * a;
                }
            }
        }
        out.push(acc);
    }
    Ok(QExpansion::new(out))
}

/// `T_n` on a nearly holomorphic form of weight `k`: the `Y^i` component is
/// acted on in weight `k - 2i` and scaled by `n^i`, since
/// `Y((nz + bd)/d^2) = (d^2/n) Y(z)`.
pub fn hecke_nearly(n: u64, form: &NearlyHolomorphicForm) -> Result<NearlyHolomorphicForm> {
    if n == 0 {
        return Err(Error::domain("Hecke operator T_0 is undefined"));
    }
    let k = form.weight() as i64;
    let out_prec = hecke_precision(n, form.precision());
    if out_prec < 2 {
        return Err(Error::Precision {
            needed: n as usize + 1,
            available: form.precision(),
        });
    }
    let comps = form
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let t = hecke_holomorphic(n, k - 2 * i as i64, c)?;
            Ok(t.scale(&pow_rational(n, i as i64)))
        })
        .collect::<Result<Vec<_>>>()?;
    NearlyHolomorphicForm::new(form.weight(), out_prec, comps)
}

/// Location of a coefficient inside a nearly holomorphic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffPosition {
    /// Power of `Y`.
    pub component: usize,
    /// Power of `q`.
    pub index: usize,
}

/// Certificate that `T_n F` is not a multiple of `F`: with `a = F` and
/// `b = T_n F`, the cross product `a[pivot] b[conflict] - a[conflict] b[pivot]`
/// is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeMismatch {
    pub n: u64,
    pub pivot: CoeffPosition,
    pub conflict: CoeffPosition,
}

impl HeckeMismatch {
    /// Recomputes `T_n F` and checks the cross product again.
    pub fn verify(&self, form: &NearlyHolomorphicForm) -> Result<bool> {
        let image = hecke_nearly(self.n, form)?;
        let base = form.truncate(image.precision());
        let at = |f: &NearlyHolomorphicForm, p: CoeffPosition| -> Option<Rational> {
            (p.index < f.precision()).then(|| f.component(p.component).coeff(p.index).clone())
        };
        let (Some(a_p), Some(a_c), Some(b_p), Some(b_c)) = (
            at(&base, self.pivot),
            at(&base, self.conflict),
            at(&image, self.pivot),
            at(&image, self.conflict),
        ) else {
            return Ok(false);
        };
        Ok(a_p * b_c != a_c * b_p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "EigenRecord", try_from = "EigenRecord")]
pub struct EigenReport {
    pub is_eigen: bool,
    /// Recovered `λ_n` for every `n` that passed.
    pub eigenvalues: BTreeMap<u64, Rational>,
    pub tested_n: Vec<u64>,
    /// Smallest precision of any `T_n F` that was compared with `F`.
    pub limiting_precision: usize,
    /// First failing operator, when `is_eigen` is false.
    pub mismatch: Option<HeckeMismatch>,
}

#[derive(Serialize, Deserialize)]
struct EigenRecord {
    is_eigen: bool,
    eigenvalues: BTreeMap<u64, String>,
    tested_n: Vec<u64>,
    limiting_precision: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mismatch: Option<HeckeMismatch>,
}

impl From<EigenReport> for EigenRecord {
    fn from(r: EigenReport) -> Self {
        EigenRecord {
            is_eigen: r.is_eigen,
            eigenvalues: r
                .eigenvalues
                .iter()
                .map(|(n, l)| (*n, format_rational(l)))
                .collect(),
            tested_n: r.tested_n,
            limiting_precision: r.limiting_precision,
            mismatch: r.mismatch,
        }
    }
}

impl TryFrom<EigenRecord> for EigenReport {
    type Error = Error;

    fn try_from(r: EigenRecord) -> Result<Self> {
        let eigenvalues = r
            .eigenvalues
            .iter()
            .map(|(n, l)| Ok((*n, parse_rational(l)?)))
            .collect::<Result<_>>()?;
        Ok(EigenReport {
            is_eigen: r.is_eigen,
            eigenvalues,
            tested_n: r.tested_n,
            limiting_precision: r.limiting_precision,
            mismatch: r.mismatch,
        })
    }
}

fn position(flat_index: usize, precision: usize) -> CoeffPosition {
    CoeffPosition {
        component: flat_index / precision,
        index: flat_index % precision,
    }
}

/// Tests whether `form` is an eigenvector of every `T_n`, `2 <= n <= n_max`,
/// comparing `T_n F` with `F` jointly across all `Y`-components.
///
/// Stops at the first operator that fails.
pub fn eigen_check(
    form: &NearlyHolomorphicForm,
    n_max: u64,
    min_overlap: usize,
) -> Result<EigenReport> {
    if form.is_zero() {
        return Err(Error::domain("the zero form is not an eigenform"));
    }
    if n_max < 2 || min_overlap < 2 {
        return Err(Error::domain(format!(
            "eigen check needs n_max >= 2 and min_overlap >= 2, got {n_max} and {min_overlap}"
        )));
    }
    let needed = required_precision(n_max, min_overlap);
    if form.precision() < needed {
        return Err(Error::Precision {
            needed,
            available: form.precision(),
        });
    }

    let width = form.components().len();
    let mut report = EigenReport {
        is_eigen: true,
        eigenvalues: BTreeMap::new(),
        tested_n: Vec::new(),
        limiting_precision: form.precision(),
        mismatch: None,
    };
    for n in 2..=n_max {
        let image = hecke_nearly(n, form)?;
        let prec = image.precision();
        let a = form.truncate(prec).flatten(width);
        let b = image.flatten(width);
        report.tested_n.push(n);
        report.limiting_precision = report.limiting_precision.min(prec);

        let Some(p) = a.iter().position(|x| !x.is_zero()) else {
            let valuation = form
                .components()
                .iter()
                .filter_map(QExpansion::valuation)
                .min()
                .unwrap_or(0);
            return Err(Error::Precision {
                needed: n as usize * valuation + 1,
                available: form.precision(),
            });
        };
        let conflict = (0..a.len()).find(|&q| &a[p] * &b[q] != &a[q] * &b[p]);
        match conflict {
            None => {
                report.eigenvalues.insert(n, &b[p] / &a[p]);
            }
            Some(q) => {
                report.is_eigen = false;
                report.mismatch = Some(HeckeMismatch {
                    n,
                    pivot: position(p, prec),
                    conflict: position(q, prec),
                });
                break;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{delta12, eisenstein};
    use crate::nearly::delta_iter;
    use crate::series::{int, sigma};

    fn lift(f: &crate::forms::HolomorphicForm) -> NearlyHolomorphicForm {
        NearlyHolomorphicForm::from_holomorphic(f)
    }

    #[test]
    fn delta_is_eigen_for_t2() {
        let d = delta12(41).unwrap();
        let t2 = hecke_holomorphic(2, 12, d.series()).unwrap();
        assert_eq!(t2.precision(), 21);
        assert_eq!(t2, d.series().truncate(21).scale(&int(-24)));
    }

    #[test]
    fn eisenstein_eigenvalues_are_divisor_sums() {
        for k in [4u32, 6, 8, 12] {
            let e = eisenstein(k, 81).unwrap();
            for n in 1..=8u64 {
                let t = hecke_holomorphic(n, k as i64, e.series()).unwrap();
                let lambda = Rational::from_integer(sigma(n, k - 1));
                assert_eq!(
                    t,
                    e.series().truncate(t.precision()).scale(&lambda),
                    "E{k}, T{n}"
                );
            }
        }
    }

    #[test]
    fn t1_is_identity() {
        let e = eisenstein(10, 9).unwrap();
        assert_eq!(hecke_holomorphic(1, 10, e.series()).unwrap(), *e.series());
        let d = delta_iter(&e, 2);
        assert_eq!(hecke_nearly(1, &d).unwrap(), d);
    }

    #[test]
    fn hecke_precision_errors() {
        let e = eisenstein(4, 3).unwrap();
        assert!(matches!(
            hecke_holomorphic(3, 4, e.series()),
            Err(Error::Precision { .. })
        ));
        assert!(hecke_holomorphic(2, 4, e.series()).is_ok());
        assert!(matches!(
            hecke_holomorphic(0, 4, e.series()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn nearly_hecke_on_delta_e4() {
        let e4 = eisenstein(4, 33).unwrap();
        let d = delta_iter(&e4, 1);
        let t = hecke_nearly(2, &d).unwrap();
        assert_eq!(t, d.truncate(t.precision()).nscale(&int(18)));
        let single = hecke_nearly(3, &lift(&e4)).unwrap();
        assert_eq!(
            single,
            lift(&crate::forms::HolomorphicForm::new(
                4,
                hecke_holomorphic(3, 4, e4.series()).unwrap()
            ))
        );
    }

    #[test]
    fn eigen_check_on_e4() {
        let e4 = lift(&eisenstein(4, 21).unwrap());
        let r = eigen_check(&e4, 5, 5).unwrap();
        assert!(r.is_eigen);
        assert_eq!(r.eigenvalues[&2], int(9));
        assert_eq!(r.eigenvalues[&3], int(28));
        assert_eq!(r.eigenvalues[&5], int(126));
        assert_eq!(r.tested_n, vec![2, 3, 4, 5]);
        assert_eq!(r.limiting_precision, 5);
        assert!(r.mismatch.is_none());
    }

    #[test]
    fn eigen_check_on_e4_cubed_fails_with_witness() {
        let e4 = lift(&eisenstein(4, 10).unwrap());
        let cube = e4.nmul(&e4).nmul(&e4);
        let r = eigen_check(&cube, 3, 4).unwrap();
        assert!(!r.is_eigen);
        let m = r.mismatch.clone().unwrap();
        assert_eq!(m.n, 2);
        assert!(m.verify(&cube).unwrap());
        // the same witness does not certify anything about E12
        let e12 = lift(&eisenstein(12, 10).unwrap());
        assert!(!m.verify(&e12).unwrap());
    }

    #[test]
    fn eigen_check_errors() {
        let z = NearlyHolomorphicForm::zero(4, 40);
        assert!(matches!(eigen_check(&z, 8, 5), Err(Error::Domain(_))));
        let e4 = lift(&eisenstein(4, 20).unwrap());
        assert!(matches!(
            eigen_check(&e4, 8, 5),
            Err(Error::Precision {
                needed: 33,
                available: 20
            })
        ));
        assert!(matches!(eigen_check(&e4, 1, 5), Err(Error::Domain(_))));
    }

    #[test]
    fn report_json_shape() {
        let e4 = lift(&eisenstein(4, 9).unwrap());
        let r = eigen_check(&e4, 2, 5).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"is_eigen":true,"eigenvalues":{"2":"9"},"tested_n":[2],"limiting_precision":5}"#
        );
        assert_eq!(serde_json::from_str::<EigenReport>(&json).unwrap(), r);
    }
}
