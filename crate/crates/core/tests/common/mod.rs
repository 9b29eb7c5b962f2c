//! Strategies and property checks shared by the property suite and the
//! acceptance run.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use stable_euler::lpoly::LPoly;
use stable_euler::partition::Partition;
use stable_euler::plethys::{
    exp_laplacian_counted, laplacian, pleth_exp, pleth_exp_via_h, pleth_log, plethysm_outer, GradedSeries, Monomial,
};
use stable_euler::symfunc::{character, p_to_schur, schur_in_p, SymPolynomial};

pub const PLETH_TRUNC: usize = 8;

pub fn partition(max_weight: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=max_weight, 1..=max_weight)
        .prop_map(Partition::from_unsorted)
        .prop_filter("weight bound", move |p| p.weight() <= max_weight)
}

pub fn lpoly(with_l: bool) -> impl Strategy<Value = LPoly> {
    let len = if with_l { 3 } else { 1 };
    prop::collection::vec(-3i64..=3, 1..=len).prop_map(|c| LPoly::from_ints(&c))
}

pub fn sym(max_weight: usize, with_l: bool) -> impl Strategy<Value = SymPolynomial> {
    prop::collection::vec((partition(max_weight), lpoly(with_l)), 1..=3).prop_map(|terms| {
        let mut f = SymPolynomial::zero();
        for (mu, c) in terms {
            f.add_term(mu, &c);
        }
        f
    })
}

/// Positive-degree series with `hbar >= -1`, truncated at a random bound.
pub fn series() -> impl Strategy<Value = GradedSeries> {
    (
        prop::sample::select(vec![2usize, 4, 6]),
        prop::collection::vec((-1i32..=2, partition(6), lpoly(true)), 1..=4),
    )
        .prop_map(|(trunc, terms)| {
            let mut s = GradedSeries::zero(trunc);
            for (hbar, mu, c) in terms {
                let m = Monomial::new(hbar, mu);
                if m.degree() > 0 {
                    s.try_add_term(m, &c).unwrap();
                }
            }
            s
        })
}

fn as_series(trunc: usize, f: &SymPolynomial) -> GradedSeries {
    GradedSeries::from_sym(trunc, 0, f).unwrap()
}

fn as_sym(s: &GradedSeries) -> SymPolynomial {
    (1..=s.truncation()).fold(SymPolynomial::zero(), |acc, n| &acc + &s.extract(0, n))
}

fn ok<T: PartialEq + std::fmt::Debug>(a: T, b: T, what: &str) -> Result<(), TestCaseError> {
    if a == b {
        Ok(())
    } else {
        Err(TestCaseError::fail(format!("{what}: {a:?} != {b:?}")))
    }
}

pub fn check_log_exp(f: &GradedSeries) -> Result<(), TestCaseError> {
    ok(pleth_log(&pleth_exp(f).unwrap()).unwrap(), f.clone(), "Log(Exp f)")?;
    let one_plus = GradedSeries::one(f.truncation()).add(f);
    ok(pleth_exp(&pleth_log(&one_plus).unwrap()).unwrap(), one_plus, "Exp(Log(1+f))")
}

pub fn check_exp_routes(f: &GradedSeries) -> Result<(), TestCaseError> {
    ok(pleth_exp(f).unwrap(), pleth_exp_via_h(f).unwrap(), "Exp via power sums and via h_n")
}

/// `g` must be free of `L` since it also appears as an outer operand.
pub fn check_associative(f: &SymPolynomial, g: &SymPolynomial, h: &SymPolynomial) -> Result<(), TestCaseError> {
    let hs = as_series(PLETH_TRUNC, h);
    let fg = as_sym(&plethysm_outer(f, &as_series(PLETH_TRUNC, g)).unwrap());
    let left = plethysm_outer(&fg, &hs).unwrap();
    let right = plethysm_outer(f, &plethysm_outer(g, &hs).unwrap()).unwrap();
    ok(left, right, "(f o g) o h vs f o (g o h)")
}

pub fn check_distributive(f1: &SymPolynomial, f2: &SymPolynomial, g: &SymPolynomial) -> Result<(), TestCaseError> {
    let gs = as_series(PLETH_TRUNC, g);
    let a = plethysm_outer(f1, &gs).unwrap();
    let b = plethysm_outer(f2, &gs).unwrap();
    ok(plethysm_outer(&(f1 + f2), &gs).unwrap(), a.add(&b), "(f1+f2) o g")?;
    let prod = as_sym(&as_series(PLETH_TRUNC, &(f1 * f2)));
    ok(plethysm_outer(&prod, &gs).unwrap(), a.mul(&b), "(f1 f2) o g")
}

pub fn check_laplacian_degree(hbar: i32, mu: &Partition, c: &LPoly) -> Result<(), TestCaseError> {
    let m = Monomial::new(hbar, mu.clone());
    if m.degree() < 0 {
        return Ok(());
    }
    let mut s = GradedSeries::zero(PLETH_TRUNC);
    s.try_add_term(m.clone(), c).unwrap();
    for out in laplacian(&s).terms().keys() {
        ok(out.degree(), m.degree(), "degree of a Laplacian term")?;
    }
    Ok(())
}

/// The iteration count is bounded by half the largest weight; without
/// `hbar^-1` terms the weight is at most the truncation degree.
pub fn check_exp_laplacian_bound(f: &GradedSeries) -> Result<(), TestCaseError> {
    let e = pleth_exp(f).unwrap();
    let (_, iterations) = exp_laplacian_counted(&e);
    prop_assert!(iterations <= e.max_weight() / 2 + 1);
    if f.terms().keys().all(|m| m.hbar >= 0) {
        prop_assert!(iterations <= (f.truncation() + 2) / 2 + 1);
    }
    Ok(())
}

pub fn characters_orthonormal(max_n: usize) -> Result<(), String> {
    for n in 1..=max_n {
        let parts = Partition::all(n);
        for a in &parts {
            for b in &parts {
                let mut acc = BigRational::zero();
                for mu in &parts {
                    let chi = character(a, mu).unwrap() * character(b, mu).unwrap();
                    acc += BigRational::new(chi.into(), mu.zee().into());
                }
                let expected = if a == b { BigRational::one() } else { BigRational::zero() };
                if acc != expected {
                    return Err(format!("<chi_{a}, chi_{b}> = {acc}"));
                }
            }
        }
    }
    Ok(())
}

pub fn schur_round_trip(max_n: usize) -> Result<(), String> {
    for n in 1..=max_n {
        for lambda in Partition::all(n) {
            for (mu, c) in p_to_schur(&schur_in_p(&lambda), n).unwrap() {
                let expected = if mu == lambda { LPoly::one() } else { LPoly::zero() };
                if c != expected {
                    return Err(format!("s_{lambda} round trip gives {c} at {mu}"));
                }
            }
        }
    }
    Ok(())
}

pub fn dimensions_are_hook_counts(max_n: usize) -> Result<(), String> {
    for n in 1..=max_n {
        let id = Partition::from_unsorted(vec![1; n]);
        for lambda in Partition::all(n) {
            let chi = character(&lambda, &id).unwrap();
            if chi as u128 != lambda.hook_length_dimension() {
                return Err(format!("chi_{lambda}(id) = {chi}"));
            }
        }
    }
    Ok(())
}
