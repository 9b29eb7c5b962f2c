//! Symmetric functions stored in the power-sum basis with coefficients in
//! `Q[L]`, together with the irreducible characters of the symmetric groups.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{input, Result};
use crate::lpoly::LPoly;
use crate::partition::Partition;

/// `sum_mu c_mu p_mu`; the empty partition is the unit monomial.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymPolynomial {
    terms: BTreeMap<Partition, LPoly>,
}

impl SymPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Partition::empty(), LPoly::one())
    }

    pub fn monomial(mu: Partition, c: LPoly) -> Self {
        let mut s = Self::zero();
        s.add_term(mu, &c);
        s
    }

    /// The power sum `p_n`.
    pub fn p(n: usize) -> Self {
        Self::monomial(Partition::row(n), LPoly::one())
    }

    pub fn add_term(&mut self, mu: Partition, c: &LPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mu) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&mu);
                }
            }
            None => {
                self.terms.insert(mu, c.clone());
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, LPoly> {
        &self.terms
    }

    pub fn coeff(&self, mu: &Partition) -> LPoly {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common weight of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut weights = self.terms.keys().map(Partition::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    /// True when no coefficient involves `L`.
    pub fn is_l_free(&self) -> bool {
        self.terms.values().all(|c| c.degree().unwrap_or(0) == 0)
    }

    pub fn scale(&self, c: &LPoly) -> Self {
        let mut out = Self::zero();
        for (mu, a) in &self.terms {
            out.add_term(mu.clone(), &(a * c));
        }
        out
    }
}

impl Add for &SymPolynomial {
    type Output = SymPolynomial;
    fn add(self, rhs: &SymPolynomial) -> SymPolynomial {
        let mut out = self.clone();
        for (mu, c) in &rhs.terms {
            out.add_term(mu.clone(), c);
        }
        out
    }
}

impl Mul for &SymPolynomial {
    type Output = SymPolynomial;
    fn mul(self, rhs: &SymPolynomial) -> SymPolynomial {
        let mut out = SymPolynomial::zero();
        for (mu, a) in &self.terms {
            for (nu, b) in &rhs.terms {
                out.add_term(mu.union(nu), &(a * b));
            }
        }
        out
    }
}

impl fmt::Debug for SymPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(mu, c)| format!("({c})*p{mu}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type CharKey = (Partition, Partition);

fn char_cache() -> &'static RwLock<HashMap<CharKey, i64>> {
    static CACHE: OnceLock<RwLock<HashMap<CharKey, i64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `chi_lambda(mu)`, the irreducible character of `S_|lambda|` indexed by
/// `lambda` at the class of cycle type `mu` (Murnaghan-Nakayama).
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.weight() != mu.weight() {
        return input(format!(
            "character weight mismatch: {lambda} has weight {}, {mu} has weight {}",
            lambda.weight(),
            mu.weight()
        ));
    }
    Ok(mn_character(lambda, mu))
}

fn mn_character(lambda: &Partition, mu: &Partition) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(&v) = char_cache().read().expect("character cache poisoned").get(&key) {
        return v;
    }
    let r = mu.largest();
    let rest = mu.remove_part(r).expect("largest part present");
    let len = lambda.len();
    let beta: Vec<usize> =
        lambda.parts().iter().enumerate().map(|(i, &p)| p + (len - 1 - i)).collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> =
            nb.iter().enumerate().map(|(i, &x)| x - (len - 1 - i)).filter(|&p| p > 0).collect();
        let smaller = Partition::new(parts).expect("rim hook removal yields a partition");
        total += sign * mn_character(&smaller, &rest);
    }
    char_cache().write().expect("character cache poisoned").insert(key, total);
    total
}

/// `s_lambda = sum_mu z_mu^{-1} chi_lambda(mu) p_mu`.
pub fn schur_in_p(lambda: &Partition) -> SymPolynomial {
    let mut out = SymPolynomial::zero();
    for mu in Partition::all(lambda.weight()) {
        let chi = mn_character(lambda, &mu);
        if chi != 0 {
            let c = BigRational::new(BigInt::from(chi), BigInt::from(mu.zee()));
            out.add_term(mu, &LPoly::constant(c));
        }
    }
    out
}

/// `h_n = sum_{mu |- n} z_mu^{-1} p_mu`; `h_0 = 1`.
pub fn h_in_p(n: usize) -> SymPolynomial {
    schur_in_p(&Partition::row(n))
}

/// Schur coefficients of a homogeneous degree-`n` function. Uses
/// `p_mu = sum_lambda chi_lambda(mu) s_lambda`; every `lambda |- n` is
/// present in the output, zero coefficients included.
pub fn p_to_schur(f: &SymPolynomial, n: usize) -> Result<BTreeMap<Partition, LPoly>> {
    if let Some(mu) = f.terms().keys().find(|mu| mu.weight() != n) {
        return input(format!("p_to_schur expects degree {n}, found term p{mu}"));
    }
    let mut out = BTreeMap::new();
    for lambda in Partition::all(n) {
        let mut c = LPoly::zero();
        for (mu, a) in f.terms() {
            let chi = mn_character(&lambda, mu);
            if chi != 0 {
                c += &a.scale(&BigRational::from_integer(BigInt::from(chi)));
            }
        }
        out.insert(lambda, c);
    }
    Ok(out)
}

/// Inverse of [`p_to_schur`]: `sum_lambda c_lambda s_lambda` in the p-basis.
pub fn schur_to_p(coeffs: &BTreeMap<Partition, LPoly>) -> SymPolynomial {
    let mut out = SymPolynomial::zero();
    for (lambda, c) in coeffs {
        if c.is_zero() {
            continue;
        }
        for (mu, a) in schur_in_p(lambda).terms() {
            out.add_term(mu.clone(), &(a * c));
        }
    }
    out
}

/// Scalar `sum_mu z_mu^{-1} chi_lambda(mu) chi_lambda'(mu)` used by the
/// orthogonality checks.
pub fn character_inner_product(lambda: &Partition, other: &Partition) -> BigRational {
    let mut acc = BigRational::zero();
    for mu in Partition::all(lambda.weight()) {
        let v = mn_character(lambda, &mu) * mn_character(other, &mu);
        acc += BigRational::new(BigInt::from(v), BigInt::from(mu.zee()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lpoly::ratio;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn c(n: i64, d: i64) -> LPoly {
        LPoly::constant(ratio(n, d))
    }

    #[test]
    fn trivial_and_sign_characters() {
        for n in 1..=6 {
            for mu in Partition::all(n) {
                assert_eq!(character(&Partition::row(n), &mu).unwrap(), 1);
                let sign = if (n - mu.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(character(&Partition::column(n), &mu).unwrap(), sign);
            }
        }
        assert_eq!(character(&p(&[1, 1]), &p(&[2])).unwrap(), -1);
    }

    #[test]
    fn standard_rep_of_s3_by_matrices() {
        // Standard representation of S_3 on {x in Q^3 : sum x = 0}, basis
        // e1-e2, e2-e3; trace summed over the identity class only.
        let ident = [[1i64, 0], [0, 1]];
        assert_eq!(ident[0][0] + ident[1][1], 2);
        assert_eq!(character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        // Transposition (12): e1-e2 -> -(e1-e2), e2-e3 -> e1-e3 = (e1-e2)+(e2-e3).
        let swap = [[-1i64, 1], [0, 1]];
        assert_eq!(swap[0][0] + swap[1][1], character(&p(&[2, 1]), &p(&[2, 1])).unwrap());
        // 3-cycle: e1-e2 -> e2-e3, e2-e3 -> e3-e1 = -(e1-e2)-(e2-e3).
        let cyc = [[0i64, -1], [1, -1]];
        assert_eq!(cyc[0][0] + cyc[1][1], character(&p(&[2, 1]), &p(&[3])).unwrap());
    }

    #[test]
    fn weight_mismatch_is_error() {
        assert!(character(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn schur_expansions() {
        assert_eq!(schur_in_p(&p(&[1])), SymPolynomial::p(1));
        let mut s2 = SymPolynomial::zero();
        s2.add_term(p(&[1, 1]), &c(1, 2));
        s2.add_term(p(&[2]), &c(1, 2));
        assert_eq!(schur_in_p(&p(&[2])), s2);
        let mut s11 = SymPolynomial::zero();
        s11.add_term(p(&[1, 1]), &c(1, 2));
        s11.add_term(p(&[2]), &c(-1, 2));
        assert_eq!(schur_in_p(&p(&[1, 1])), s11);
    }

    #[test]
    fn h_expansions() {
        assert_eq!(h_in_p(0), SymPolynomial::one());
        assert_eq!(h_in_p(1), SymPolynomial::p(1));
        let mut h3 = SymPolynomial::zero();
        h3.add_term(p(&[1, 1, 1]), &c(1, 6));
        h3.add_term(p(&[2, 1]), &c(1, 2));
        h3.add_term(p(&[3]), &c(1, 3));
        assert_eq!(h_in_p(3), h3);
    }

    #[test]
    fn p_to_schur_examples() {
        let p11 = SymPolynomial::monomial(p(&[1, 1]), LPoly::one());
        let out = p_to_schur(&p11, 2).unwrap();
        assert_eq!(out[&p(&[2])], LPoly::one());
        assert_eq!(out[&p(&[1, 1])], LPoly::one());

        let out = p_to_schur(&schur_in_p(&p(&[2, 1])), 3).unwrap();
        for (lambda, coeff) in out {
            let expect = if lambda == p(&[2, 1]) { LPoly::one() } else { LPoly::zero() };
            assert_eq!(coeff, expect);
        }

        let out = p_to_schur(&h_in_p(4), 4).unwrap();
        for (lambda, coeff) in out {
            let expect = if lambda == p(&[4]) { LPoly::one() } else { LPoly::zero() };
            assert_eq!(coeff, expect);
        }
    }

    #[test]
    fn p_to_schur_rejects_inhomogeneous() {
        let f = &SymPolynomial::p(1) + &SymPolynomial::p(2);
        assert!(p_to_schur(&f, 1).is_err());
    }

    #[test]
    fn orthogonality_roundtrip_and_dimensions() {
        for n in 0..=8 {
            let parts = Partition::all(n);
            for a in &parts {
                for b in &parts {
                    let ip = character_inner_product(a, b);
                    let expect = if a == b { 1 } else { 0 };
                    assert_eq!(ip, ratio(expect, 1), "<{a},{b}>");
                }
                let back = p_to_schur(&schur_in_p(a), n).unwrap();
                for (lambda, coeff) in back {
                    let expect = if &lambda == a { LPoly::one() } else { LPoly::zero() };
                    assert_eq!(coeff, expect);
                }
                if n <= 6 {
                    let dim = character(a, &Partition::column(n)).unwrap();
                    assert_eq!(dim as u128, a.hook_length_dimension());
                }
            }
        }
    }

    #[test]
    fn denominators_divide_factorial() {
        for n in 1..=8 {
            let fact = BigInt::from(crate::partition::factorial(n));
            for lambda in Partition::all(n) {
                for coeff in schur_in_p(&lambda).terms().values() {
                    let d = coeff.coeff(0).denom().clone();
                    assert!((&fact % d).is_zero());
                }
            }
        }
    }
}
