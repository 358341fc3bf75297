//! Census of products `δ^{(r)}_k(f) · δ^{(s)}_l(g)` of eigenforms, deciding
//! which of them are again Hecke eigenforms.
//!
//! A product is classified by a direct Hecke check. Each product is also
//! rewritten through Rankin-Cohen brackets: two nonzero terms of distinct
//! bracket index are δ-iterates of eigenforms of distinct holomorphic weight,
//! and such a sum can never be an eigenform. That obstruction is recorded as
//! the witness whenever it is available.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brackets::{expand_product, nonzero_terms};
use crate::error::{Error, Result};
use crate::forms::{FormId, FormKind, HolomorphicForm, CUSP_WEIGHTS};
use crate::hecke::{
    eigen_check, required_precision, HeckeMismatch, DEFAULT_MIN_OVERLAP, DEFAULT_N_MAX,
};
use crate::nearly::{delta_iter, NearlyHolomorphicForm};
use crate::series::{int, slice_proportionality, Proportionality, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub max_factor_weight: u32,
    pub max_total_weight: u32,
    /// Bound on `r + s`.
    pub max_delta_iters: u32,
    pub n_max: u64,
    pub min_overlap: usize,
    /// Explicit working precision; defaults to the least one the Hecke
    /// checks accept.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_factor_weight: 26,
            max_total_weight: 30,
            max_delta_iters: 3,
            n_max: DEFAULT_N_MAX,
            min_overlap: DEFAULT_MIN_OVERLAP,
            precision: None,
        }
    }
}

impl SearchConfig {
    pub fn precision(&self) -> usize {
        self.precision
            .unwrap_or_else(|| required_precision(self.n_max, self.min_overlap))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max < 2 || self.min_overlap < 2 {
            return Err(Error::domain(
                "n_max and min_overlap must both be at least 2",
            ));
        }
        let needed = required_precision(self.n_max, self.min_overlap);
        if self.precision() < needed {
            return Err(Error::Precision {
                needed,
                available: self.precision(),
            });
        }
        if self.max_factor_weight < 4 {
            return Err(Error::domain("max_factor_weight must be at least 4"));
        }
        Ok(())
    }
}

/// A member of the factor pool together with its q-expansion.
#[derive(Debug, Clone)]
pub struct PoolForm {
    pub id: FormId,
    pub form: HolomorphicForm,
}

impl PoolForm {
    /// `(c, c·form)` with `c` the least positive integer making every
    /// coefficient integral. Eigen status and bracket vanishing are invariant
    /// under this scaling, and integer coefficients keep the census fast.
    fn integral(&self) -> (Rational, HolomorphicForm) {
        let c = Rational::from_integer(self.form.series().denominator_lcm());
        let scaled = HolomorphicForm::new(self.form.weight(), self.form.series().scale(&c));
        (c, scaled)
    }
}

/// `E_k` for even `4 <= k <= max_factor_weight`, then the `Δ_k` in range.
///
/// Weight 24 cusp forms are left out: their eigenvalues are not rational.
pub fn eigenform_pool(config: &SearchConfig) -> Result<Vec<PoolForm>> {
    config.validate()?;
    let n = config.precision();
    let eis = (4..=config.max_factor_weight)
        .step_by(2)
        .map(FormId::eisenstein);
    let cusp = CUSP_WEIGHTS
        .into_iter()
        .filter(|&k| k <= config.max_factor_weight)
        .map(FormId::cusp);
    eis.chain(cusp)
        .map(|id| {
            Ok(PoolForm {
                id,
                form: id.build(n)?,
            })
        })
        .collect()
}

/// Identifies a product up to swapping the two factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseKey {
    pub f: FormId,
    pub r: u32,
    pub g: FormId,
    pub s: u32,
}

impl CaseKey {
    /// Orders the factors so that `f <= g`, and `r >= s` when `f == g`.
    pub fn new(f: FormId, r: u32, g: FormId, s: u32) -> Self {
        if f > g || (f == g && s > r) {
            CaseKey {
                f: g,
                r: s,
                g: f,
                s: r,
            }
        } else {
            CaseKey { f, r, g, s }
        }
    }

    pub fn total_weight(&self) -> u32 {
        self.f.weight + self.g.weight + 2 * (self.r + self.s)
    }
}

impl fmt::Display for CaseKey {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |id: FormId, r: u32| match r {
            0 => id.to_string(),
            1 => format!("δ({id})"),
            _ => format!("δ^{r}({id})"),
        };
        write!(out, "{}·{}", factor(self.f, self.r), factor(self.g, self.s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Eigen,
    NotEigen,
}

/// The product equals `scalar · δ^{(delta_iters)}(target)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenMatch {
    pub target: FormId,
    pub delta_iters: u32,
    #[serde(with = "crate::series::rational_string")]
    pub scalar: Rational,
}

impl fmt::Display for EigenMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scalar != int(1) {
            write!(f, "{}*", self.scalar)?;
        }
        match self.delta_iters {
            0 => write!(f, "{}", self.target),
            1 => write!(f, "δ({})", self.target),
            t => write!(f, "δ^{t}({})", self.target),
        }
    }
}

/// Evidence that a product is not an eigenform.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `T_n` does not map the product to a multiple of itself.
    HeckeMismatch(HeckeMismatch),
    /// Two nonzero bracket terms `α_j δ^{(r+s-j)}([f,g]_j)` at distinct `j`.
    DistinctTerms { j1: u32, j2: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductCase {
    pub f_id: FormId,
    pub r: u32,
    pub g_id: FormId,
    pub s: u32,
    pub total_weight: u32,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigen_match: Option<EigenMatch>,
    /// Bracket indices with a nonzero term in the product expansion.
    pub nonzero_terms: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl ProductCase {
    pub fn key(&self) -> CaseKey {
        CaseKey::new(self.f_id, self.r, self.g_id, self.s)
    }

    pub fn is_eigen(&self) -> bool {
        self.verdict == Verdict::Eigen
    }

    /// Recomputes the product at `precision` and re-checks the witness.
    pub fn verify_witness(&self, precision: usize) -> Result<bool> {
        let Some(w) = &self.witness else {
            return Ok(false);
        };
        let f = self.f_id.build(precision)?;
        let g = self.g_id.build(precision)?;
        match w {
            Witness::HeckeMismatch(m) => {
                let product = delta_iter(&f, self.r).nmul(&delta_iter(&g, self.s));
                m.verify(&product)
            }
            Witness::DistinctTerms { j1, j2 } => {
                if j1 == j2 || j1.max(j2) > &(self.r + self.s) {
                    return Ok(false);
                }
                let x = expand_product(&f, self.r, &g, self.s);
                let alive = |j: u32| {
                    !x.coefficients.terms[j as usize].alpha.is_zero()
                        && !x.brackets[j as usize].is_zero()
                };
                Ok(alive(*j1) && alive(*j2))
            }
        }
    }
}

/// Holds the factor pool so that many products can be classified against it.
pub struct Classifier {
    config: SearchConfig,
    pool: Vec<PoolForm>,
    integral: Vec<(Rational, HolomorphicForm)>,
}

impl Classifier {
    pub fn new(config: SearchConfig) -> Result<Self> {
        let pool = eigenform_pool(&config)?;
        let integral = pool.iter().map(PoolForm::integral).collect();
        Ok(Classifier {
            config,
            pool,
            integral,
        })
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    pub fn pool(&self) -> &[PoolForm] {
        &self.pool
    }

    fn lookup(&self, id: FormId) -> Result<&(Rational, HolomorphicForm)> {
        self.pool
            .iter()
            .position(|p| p.id == id)
            .map(|i| &self.integral[i])
            .ok_or_else(|| Error::domain(format!("{id} is not in the eigenform pool")))
    }

    pub fn classify(&self, f_id: FormId, r: u32, g_id: FormId, s: u32) -> Result<ProductCase> {
        let (cf, f) = self.lookup(f_id)?;
        let (cg, g) = self.lookup(g_id)?;
        // product = cf·cg·δ^r(f)·δ^s(g) for the normalized f, g
        let product = delta_iter(f, r).nmul(&delta_iter(g, s));
        let report = eigen_check(&product, self.config.n_max, self.config.min_overlap)?;
        let nonzero_terms = nonzero_terms(f, r, g, s);

        let mut case = ProductCase {
            f_id,
            r,
            g_id,
            s,
            total_weight: product.weight(),
            verdict: Verdict::NotEigen,
            eigen_match: None,
            nonzero_terms,
            witness: None,
        };
        if report.is_eigen {
            case.verdict = Verdict::Eigen;
            case.eigen_match = self.identify(&product).map(|mut m| {
                m.scalar /= cf * cg;
                m
            });
        } else if let [j1, j2, ..] = case.nonzero_terms[..] {
            case.witness = Some(Witness::DistinctTerms { j1, j2 });
        } else {
            case.witness = report.mismatch.map(Witness::HeckeMismatch);
        }
        Ok(case)
    }

    /// Finds a pool member `h` and `c` with `product = c · δ^{(t)}(h)`.
    pub fn identify(&self, product: &NearlyHolomorphicForm) -> Option<EigenMatch> {
        let w = product.weight();
        let width = product.components().len();
        let target = product.flatten(width);
        self.pool.iter().find_map(|p| {
            let k = p.form.weight();
            if k > w || !(w - k).is_multiple_of(2) {
                return None;
            }
            let t = (w - k) / 2;
            if product.degree() != Some(t as usize) {
                return None;
            }
            let lifted = delta_iter(&p.form, t).truncate(product.precision());
            match slice_proportionality(&lifted.flatten(width), &target) {
                Proportionality::Scalar(c) if !c.is_zero() => Some(EigenMatch {
                    target: p.id,
                    delta_iters: t,
                    scalar: c,
                }),
                _ => None,
            }
        })
    }

    /// Every product within the configured bounds, one per unordered pair.
    pub fn cases(&self) -> Vec<CaseKey> {
        let cfg = &self.config;
        let mut keys = Vec::new();
        for (i, a) in self.pool.iter().enumerate() {
            for b in &self.pool[i..] {
                for r in 0..=cfg.max_delta_iters {
                    for s in 0..=cfg.max_delta_iters - r {
                        if a.id == b.id && s > r {
                            continue;
                        }
                        let key = CaseKey {
                            f: a.id,
                            r,
                            g: b.id,
                            s,
                        };
                        if key.total_weight() <= cfg.max_total_weight {
                            keys.push(key);
                        }
                    }
                }
            }
        }
        keys
    }

    pub fn run_search(&self) -> Result<Census> {
        let mut cases = self
            .cases()
            .into_par_iter()
            .map(|k| self.classify(k.f, k.r, k.g, k.s))
            .collect::<Result<Vec<_>>>()?;
        cases.sort_by_key(|c| (c.total_weight, c.f_id, c.g_id, c.r, c.s));
        Ok(Census {
            config: self.config.clone(),
            cases,
        })
    }
}

pub fn classify_product(
    f: FormId,
    r: u32,
    g: FormId,
    s: u32,
    config: &SearchConfig,
) -> Result<ProductCase> {
    Classifier::new(config.clone())?.classify(f, r, g, s)
}

pub fn run_search(config: &SearchConfig) -> Result<Census> {
    Classifier::new(config.clone())?.run_search()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub config: SearchConfig,
    pub precision: usize,
    pub total_cases: usize,
    pub eigen_cases: usize,
    pub not_eigen_cases: usize,
    pub eigen_families: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub config: SearchConfig,
    /// All classified products in deterministic order.
    pub cases: Vec<ProductCase>,
}

impl Census {
    pub fn eigen_cases(&self) -> Vec<&ProductCase> {
        self.cases.iter().filter(|c| c.is_eigen()).collect()
    }

    pub fn eigen_keys(&self) -> BTreeSet<CaseKey> {
        self.eigen_cases().iter().map(|c| c.key()).collect()
    }

    pub fn summary(&self) -> CensusSummary {
        let eigen = self.eigen_cases();
        CensusSummary {
            config: self.config.clone(),
            precision: self.config.precision(),
            total_cases: self.cases.len(),
            eigen_cases: eigen.len(),
            not_eigen_cases: self.cases.len() - eigen.len(),
            eigen_families: eigen
                .iter()
                .map(|c| match &c.eigen_match {
                    Some(m) => format!("{} = {m}", c.key()),
                    None => c.key().to_string(),
                })
                .collect(),
        }
    }

    /// One JSON object per case, followed by a `{"summary": ...}` line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out.push_str(&serde_json::to_string(c).expect("cases serialize"));
            out.push('\n');
        }
        let summary = serde_json::to_string(&self.summary()).expect("summary serializes");
        out.push_str(&format!("{{\"summary\":{summary}}}"));
        out.push('\n');
        out
    }
}

/// Eigen products proven to exist: the holomorphic identities
/// `E4^2 = E8, ..., E14·Δ12 = Δ26` and `δ(E4)·E4 = δ(E8)/2`.
pub fn expected_eigen_families() -> Vec<CaseKey> {
    let e = FormId::eisenstein;
    let d = FormId::cusp;
    let holomorphic = [
        (e(4), e(4)),
        (e(4), e(6)),
        (e(6), e(8)),
        (e(4), e(10)),
        (e(4), d(12)),
        (e(6), d(12)),
        (e(4), d(16)),
        (e(8), d(12)),
        (e(4), d(18)),
        (e(6), d(16)),
        (e(10), d(12)),
        (e(4), d(22)),
        (e(6), d(20)),
        (e(8), d(18)),
        (e(10), d(16)),
        (e(14), d(12)),
    ];
    let mut keys: Vec<CaseKey> = holomorphic
        .into_iter()
        .map(|(f, g)| CaseKey::new(f, 0, g, 0))
        .collect();
    keys.push(CaseKey::new(e(4), 1, e(4), 0));
    keys
}

/// Outcome of comparing a census with [`expected_eigen_families`], restricted
/// to the families that fit inside the configured bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub summary: CensusSummary,
    pub expected: Vec<CaseKey>,
    pub missing: Vec<CaseKey>,
    pub unexpected: Vec<CaseKey>,
    pub ok: bool,
}

pub fn expected_within(config: &SearchConfig) -> BTreeSet<CaseKey> {
    let in_pool = |id: FormId| {
        id.weight <= config.max_factor_weight
            && (id.kind == FormKind::Eisenstein || CUSP_WEIGHTS.contains(&id.weight))
    };
    expected_eigen_families()
        .into_iter()
        .filter(|k| {
            in_pool(k.f)
                && in_pool(k.g)
                && k.r + k.s <= config.max_delta_iters
                && k.total_weight() <= config.max_total_weight
        })
        .collect()
}

pub fn verify_theorem(config: &SearchConfig) -> Result<(Census, TheoremReport)> {
    let census = run_search(config)?;
    let found = census.eigen_keys();
    let expected = expected_within(config);
    let missing: Vec<CaseKey> = expected.difference(&found).copied().collect();
    let unexpected: Vec<CaseKey> = found.difference(&expected).copied().collect();
    let report = TheoremReport {
        summary: census.summary(),
        ok: missing.is_empty() && unexpected.is_empty(),
        expected: expected.into_iter().collect(),
        missing,
        unexpected,
    };
    Ok((census, report))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemarkEntry {
    pub k: u32,
    /// `2 δ(E_k) E_k = δ(E_k^2)` exactly.
    pub identity_holds: bool,
    pub is_eigen: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemarkReport {
    pub entries: Vec<RemarkEntry>,
    /// Identity everywhere, and an eigenform exactly when `k = 4`.
    pub ok: bool,
}

/// Checks `2 δ_k(E_k) · E_k = δ_{2k}(E_k^2)` and the eigen status of the
/// left-hand side for every `k` in `ks`.
pub fn verify_remark(ks: &[u32], config: &SearchConfig) -> Result<RemarkReport> {
    config.validate()?;
    let n = config.precision();
    let entries = ks
        .iter()
        .map(|&k| {
            let e = crate::forms::eisenstein(k, n)?;
            let lifted = NearlyHolomorphicForm::from_holomorphic(&e);
            let lhs = delta_iter(&e, 1).nmul(&lifted);
            let rhs = lifted.nmul(&lifted).maass_shimura();
            let identity_holds = lhs.nscale(&int(2)) == rhs;
            let is_eigen = eigen_check(&lhs, config.n_max, config.min_overlap)?.is_eigen;
            Ok(RemarkEntry {
                k,
                identity_holds,
                is_eigen,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = entries
        .iter()
        .all(|e| e.identity_holds && e.is_eigen == (e.k == 4));
    Ok(RemarkReport { entries, ok })
}
