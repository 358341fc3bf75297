mod common;

use common::{series, small_rational};
use nholo::brackets::{expand_product, rankin_cohen};
use nholo::forms::{delta12, eisenstein, CUSP_WEIGHTS};
use nholo::nearly::delta_iter;
use nholo::series::{binomial, int, Proportionality};
use nholo::{HolomorphicForm, NearlyHolomorphicForm, QExpansion, Rational};
use proptest::prelude::*;

const LEN: usize = 10;

fn nearly(weight: u32) -> impl Strategy<Value = NearlyHolomorphicForm> {
    proptest::collection::vec(series(LEN), 1..=3)
        .prop_map(move |comps| NearlyHolomorphicForm::new(weight, LEN, comps).unwrap())
}

fn even_weight() -> impl Strategy<Value = u32> {
    (2u32..=12).prop_map(|h| 2 * h)
}

proptest! {
    #[test]
    fn ring_laws(a in series(LEN), b in series(LEN), c in series(LEN)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn precision_is_min_of_inputs(a in series(7), b in series(LEN), c in small_rational()) {
        prop_assert_eq!((&a + &b).precision(), 7);
        prop_assert_eq!((&a * &b).precision(), 7);
        prop_assert_eq!(b.d_operator().precision(), LEN);
        prop_assert_eq!(b.scale(&c).precision(), LEN);
    }

    #[test]
    fn leibniz_rule(a in series(LEN), b in series(LEN)) {
        let lhs = (&a * &b).d_operator();
        let rhs = &(&a.d_operator() * &b) + &(&a * &b.d_operator());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn proportionality_recovers_scalar(a in series(LEN), c in small_rational()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a.proportionality(&a.scale(&c)).unwrap(), Proportionality::Scalar(c));
    }

    #[test]
    fn maass_shimura_is_a_derivation(
        wf in even_weight(),
        wg in even_weight(),
        seed in (nearly(0), nearly(0)),
    ) {
        let f = NearlyHolomorphicForm::new(wf, LEN, seed.0.components().to_vec()).unwrap();
        let g = NearlyHolomorphicForm::new(wg, LEN, seed.1.components().to_vec()).unwrap();
        let lhs = f.nmul(&g).maass_shimura();
        let rhs = f.maass_shimura().nmul(&g).nadd(&f.nmul(&g.maass_shimura())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nmul_commutative_associative(a in nearly(4), b in nearly(6), c in nearly(8)) {
        prop_assert_eq!(a.nmul(&b), b.nmul(&a));
        prop_assert_eq!(a.nmul(&b).nmul(&c), a.nmul(&b.nmul(&c)));
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!(
                a.nmul(&b).degree().unwrap(),
                a.degree().unwrap() + b.degree().unwrap()
            );
        }
    }

    #[test]
    fn delta_iter_degree_is_exact(f in series(LEN), k in even_weight(), r in 0u32..4) {
        prop_assume!(!f.is_zero());
        let h = HolomorphicForm::new(k, f);
        prop_assert_eq!(delta_iter(&h, r).degree(), Some(r as usize));
    }
}

fn sample_forms(n: usize) -> Vec<HolomorphicForm> {
    vec![
        eisenstein(4, n).unwrap(),
        eisenstein(6, n).unwrap(),
        delta12(n).unwrap(),
    ]
}

/// `δ^r(f) δ^s(g) = Σ_j (-1)^j C(s,j) δ^{s-j}(δ^{r+j}(f) g)`.
#[test]
fn product_rule_for_iterates() {
    let n = 14;
    let forms = sample_forms(n);
    for f in &forms {
        for g in &forms {
            let g0 = NearlyHolomorphicForm::from_holomorphic(g);
            for r in 0..=3u32 {
                for s in 0..=3u32 {
                    let lhs = delta_iter(f, r).nmul(&delta_iter(g, s));
                    let mut rhs = NearlyHolomorphicForm::zero(lhs.weight(), n);
                    for j in 0..=s {
                        let c = Rational::from_integer(binomial(s as i64, j as i64).unwrap());
                        let c = if j % 2 == 1 { -c } else { c };
                        let term = delta_iter(f, r + j).nmul(&g0).delta_power(s - j).nscale(&c);
                        rhs = rhs.nadd(&term).unwrap();
                    }
                    assert_eq!(lhs, rhs, "k={} l={} r={r} s={s}", f.weight(), g.weight());
                }
            }
        }
    }
}

#[test]
fn expansion_reconstructs_every_small_product() {
    let n = 12;
    let mut forms = sample_forms(n);
    forms.push(eisenstein(8, n).unwrap());
    for f in &forms {
        for g in &forms {
            for r in 0..=2 {
                for s in 0..=2 {
                    let direct = delta_iter(f, r).nmul(&delta_iter(g, s));
                    let x = expand_product(f, r, g, s);
                    assert_eq!(x.coefficients.terms.len(), (r + s + 1) as usize);
                    assert_eq!(
                        x.reconstruction,
                        direct,
                        "k={} l={} r={r} s={s}",
                        f.weight(),
                        g.weight()
                    );
                }
            }
        }
    }
}

#[test]
fn bracket_antisymmetry_and_cuspidality() {
    let n = 10;
    let mut forms: Vec<HolomorphicForm> = (4..=26)
        .step_by(2)
        .map(|k| eisenstein(k, n).unwrap())
        .collect();
    forms.extend(
        CUSP_WEIGHTS
            .iter()
            .map(|&k| nholo::forms::cusp_eigenform(k, n).unwrap()),
    );
    for f in &forms {
        for g in &forms {
            for j in 0..=4u32 {
                let fg = rankin_cohen(f, g, j);
                let gf = rankin_cohen(g, f, j);
                let sign = if j % 2 == 1 { int(-1) } else { int(1) };
                assert_eq!(*fg.series(), gf.series().scale(&sign));
                if j >= 1 {
                    assert!(fg.series().coeff(0) == &int(0));
                    assert!(fg.is_cusp());
                }
            }
        }
    }
}

/// Nonvanishing of brackets of Eisenstein series and cusp forms. The only
/// vanishing instances are the two whose target space `S_14` is zero.
#[test]
fn bracket_nonvanishing_cases() {
    let n = 6;
    let eis: Vec<HolomorphicForm> = (4..=26)
        .step_by(2)
        .map(|k| eisenstein(k, n).unwrap())
        .collect();
    let cusp: Vec<HolomorphicForm> = CUSP_WEIGHTS
        .iter()
        .map(|&k| nholo::forms::cusp_eigenform(k, n).unwrap())
        .collect();
    let mut vanishing = Vec::new();
    for j in 0..=6 {
        for f in &cusp {
            for g in &eis {
                assert!(
                    !rankin_cohen(f, g, j).is_zero(),
                    "cusp {} E{} j={j}",
                    f.weight(),
                    g.weight()
                );
            }
        }
        for f in &eis {
            if j % 2 == 0 {
                assert!(
                    !rankin_cohen(f, f, j).is_zero(),
                    "E{} twice j={j}",
                    f.weight()
                );
            }
            for g in &eis {
                if f.weight() > g.weight() && rankin_cohen(f, g, j).is_zero() {
                    vanishing.push((f.weight(), g.weight(), j));
                }
            }
        }
    }
    assert_eq!(vanishing, vec![(8, 4, 1), (6, 4, 2)]);
}

#[test]
fn holomorphic_expansion_of_identity_case() {
    // (E6, 1, E8, 0): -1/14 [E6,E8]_1 + 3/7 δ(E6 E8)
    let n = 12;
    let e6 = eisenstein(6, n).unwrap();
    let e8 = eisenstein(8, n).unwrap();
    let x = expand_product(&e6, 1, &e8, 0);
    let b1 = &e6.series().scale(&int(6)) * &e8.series().d_operator()
        - &e8.series().scale(&int(8)) * &e6.series().d_operator();
    assert_eq!(*x.brackets[1].series(), b1);
    let mut expected = NearlyHolomorphicForm::from_holomorphic(&HolomorphicForm::new(16, b1))
        .nscale(&nholo::series::ratio(-1, 14));
    let prod = NearlyHolomorphicForm::from_holomorphic(&e6.mul(&e8)).maass_shimura();
    expected = expected
        .nadd(&prod.nscale(&nholo::series::ratio(3, 7)))
        .unwrap();
    assert_eq!(x.reconstruction, expected);
    assert_eq!(
        x.reconstruction,
        delta_iter(&e6, 1).nmul(&NearlyHolomorphicForm::from_holomorphic(&e8))
    );
    let _: QExpansion = x.reconstruction.holomorphic_part();
}
