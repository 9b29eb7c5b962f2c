//! The truncated ring `K0 (x) Lambda((hbar))` of graded series and the
//! plethystic calculus on it: Adams operations, outer plethysm, plethystic
//! exponential and logarithm, the gluing Laplacian, and the resulting
//! transform from open to stable characteristics.
//!
//! Grading: `deg hbar = 2`, `deg p_n = n`, `deg L = 0`, so the term
//! `hbar^(g-1) p_mu` with `|mu| = n` has degree `2g - 2 + n`. The grading is
//! multiplicative and `p_k o (.)` multiplies degrees by `k`, so discarding
//! every term of degree above the truncation bound is a ring map.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{input, Result};
use crate::lpoly::{ratio, LPoly};
use crate::partition::{factorial, Partition};
use crate::symfunc::{h_in_p, SymPolynomial};

pub const DEFAULT_TRUNCATION: usize = 6;

/// `hbar^hbar * p_mu`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub hbar: i32,
    pub mu: Partition,
}

impl Monomial {
    pub fn new(hbar: i32, mu: Partition) -> Self {
        Monomial { hbar, mu }
    }

    pub fn degree(&self) -> i64 {
        2 * self.hbar as i64 + self.mu.weight() as i64
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial { hbar: self.hbar + other.hbar, mu: self.mu.union(&other.mu) }
    }

    fn adams(&self, n: usize) -> Monomial {
        Monomial { hbar: self.hbar * n as i32, mu: self.mu.scale(n) }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h^{}p{}", self.hbar, self.mu)
    }
}

/// A truncated series; every stored term has degree in `[0, D]`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries {
    trunc: usize,
    terms: BTreeMap<Monomial, LPoly>,
}

impl GradedSeries {
    pub fn zero(trunc: usize) -> Self {
        GradedSeries { trunc, terms: BTreeMap::new() }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.add_term(Monomial::new(0, Partition::empty()), &LPoly::one());
        s
    }

    /// `hbar^hbar * f`, truncated.
    pub fn from_sym(trunc: usize, hbar: i32, f: &SymPolynomial) -> Result<Self> {
        let mut s = Self::zero(trunc);
        for (mu, c) in f.terms() {
            s.try_add_term(Monomial::new(hbar, mu.clone()), c)?;
        }
        Ok(s)
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, LPoly> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> LPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Adds a term, rejecting negative degree; terms above the truncation
    /// bound are dropped.
    pub fn try_add_term(&mut self, m: Monomial, c: &LPoly) -> Result<()> {
        if m.degree() < 0 {
            return input(format!("term {m:?} has negative degree"));
        }
        self.add_term(m, c);
        Ok(())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &LPoly) {
        let d = m.degree();
        assert!(d >= 0, "negative-degree term {m:?}");
        if d as usize > self.trunc || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &GradedSeries) -> GradedSeries {
        let mut out = self.clone();
        out.trunc = self.trunc.min(other.trunc);
        out.terms.retain(|m, _| m.degree() as usize <= out.trunc);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &GradedSeries) -> GradedSeries {
        self.add(&other.scale(&BigRational::from_integer(BigInt::from(-1))))
    }

    pub fn scale(&self, c: &BigRational) -> GradedSeries {
        let mut out = GradedSeries::zero(self.trunc);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a.scale(c));
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, other: &GradedSeries) -> GradedSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut out = GradedSeries::zero(trunc);
        let mut rhs: Vec<(i64, &Monomial, &LPoly)> =
            other.terms.iter().map(|(m, c)| (m.degree(), m, c)).collect();
        rhs.sort_by_key(|t| t.0);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            for (db, mb, cb) in &rhs {
                if da + db > trunc as i64 {
                    break;
                }
                out.add_term(ma.times(mb), &(ca * *cb));
            }
        }
        out
    }

    /// `p_n o self`: `hbar -> hbar^n`, `p_k -> p_{nk}`, `L -> L^n`.
    pub fn adams(&self, n: usize) -> GradedSeries {
        let mut out = GradedSeries::zero(self.trunc);
        for (m, c) in &self.terms {
            out.add_term(m.adams(n), &c.adams(n));
        }
        out
    }

    /// Smallest degree among the terms.
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn constant_term(&self) -> LPoly {
        self.coeff(&Monomial::new(0, Partition::empty()))
    }

    /// The symmetric function multiplying `hbar^hbar` in weight `n`.
    pub fn extract(&self, hbar: i32, n: usize) -> SymPolynomial {
        let mut out = SymPolynomial::zero();
        for (m, c) in &self.terms {
            if m.hbar == hbar && m.mu.weight() == n {
                out.add_term(m.mu.clone(), c);
            }
        }
        out
    }

    /// Largest symmetric-function weight among the terms.
    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(|m| m.mu.weight()).max().unwrap_or(0)
    }

    fn check_positive(&self, what: &str) -> Result<()> {
        if let Some(m) = self.terms.keys().find(|m| m.degree() < 1) {
            return input(format!("{what} requires all terms of degree >= 1, found {m:?}"));
        }
        Ok(())
    }
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c}){m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `f o g` for an `L`-free symmetric function `f`, extended ring-wise from
/// `p_n o g` = [`GradedSeries::adams`].
pub fn plethysm_outer(f: &SymPolynomial, g: &GradedSeries) -> Result<GradedSeries> {
    if !f.is_l_free() {
        return input("outer plethysm operand must not involve L");
    }
    g.check_positive("plethysm inner operand")?;
    let trunc = g.truncation();
    let mut adams_cache: BTreeMap<usize, GradedSeries> = BTreeMap::new();
    let mut out = GradedSeries::zero(trunc);
    for (nu, c) in f.terms() {
        let scalar = c.coeff(0);
        let mut prod = GradedSeries::one(trunc);
        for &k in nu.parts() {
            let gk = adams_cache.entry(k).or_insert_with(|| g.adams(k));
            prod = prod.mul(gk);
            if prod.is_empty() {
                break;
            }
        }
        out = out.add(&prod.scale(&scalar));
    }
    Ok(out)
}

/// `Exp(f) = sum_n h_n o f`, evaluated as `exp(sum_k (p_k o f)/k)`.
pub fn pleth_exp(f: &GradedSeries) -> Result<GradedSeries> {
    f.check_positive("plethystic exponential")?;
    let trunc = f.truncation();
    let mut x = GradedSeries::zero(trunc);
    for k in 1..=trunc {
        x = x.add(&f.adams(k).scale(&ratio(1, k as i64)));
    }
    Ok(exp_series(&x))
}

/// `Exp(f)` computed literally as `sum_n h_n o f`; slower, kept as a
/// second route for checking [`pleth_exp`].
pub fn pleth_exp_via_h(f: &GradedSeries) -> Result<GradedSeries> {
    f.check_positive("plethystic exponential")?;
    let trunc = f.truncation();
    let mut out = GradedSeries::one(trunc);
    for n in 1..=trunc {
        out = out.add(&plethysm_outer(&h_in_p(n), f)?);
    }
    Ok(out)
}

/// `exp(x)` for `x` with all terms of positive degree (nilpotent).
fn exp_series(x: &GradedSeries) -> GradedSeries {
    let trunc = x.truncation();
    let mut out = GradedSeries::one(trunc);
    let mut power = GradedSeries::one(trunc);
    for j in 1..=trunc {
        power = power.mul(x);
        if power.is_empty() {
            break;
        }
        let inv_fact = BigRational::new(BigInt::one(), BigInt::from(factorial(j)));
        out = out.add(&power.scale(&inv_fact));
    }
    out
}

/// `log(1 + u) = sum_k (-1)^{k+1} u^k / k` for nilpotent `u`.
fn log_series(u: &GradedSeries) -> GradedSeries {
    let trunc = u.truncation();
    let mut out = GradedSeries::zero(trunc);
    let mut power = GradedSeries::one(trunc);
    for k in 1..=trunc {
        power = power.mul(u);
        if power.is_empty() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out = out.add(&power.scale(&ratio(sign, k as i64)));
    }
    out
}

pub fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `Log(f) = sum_n (mu(n)/n) p_n o log(f)`, inverse of [`pleth_exp`].
pub fn pleth_log(f: &GradedSeries) -> Result<GradedSeries> {
    if f.constant_term() != LPoly::one() {
        return input(format!("plethystic log needs constant term 1, found {}", f.constant_term()));
    }
    let trunc = f.truncation();
    let u = f.sub(&GradedSeries::one(trunc));
    u.check_positive("plethystic log")?;
    let log_f = log_series(&u);
    let mut out = GradedSeries::zero(trunc);
    for n in 1..=trunc {
        let m = mobius(n);
        if m != 0 {
            out = out.add(&log_f.adams(n).scale(&ratio(m, n as i64)));
        }
    }
    Ok(out)
}

/// `Delta = sum_n hbar^n ((n/2) d^2/dp_n^2 + d/dp_{2n})`.
pub fn laplacian(f: &GradedSeries) -> GradedSeries {
    let mut out = GradedSeries::zero(f.truncation());
    for (m, c) in &f.terms {
        for (n, r) in m.mu.multiplicities() {
            if r >= 2 {
                // (n/2) * r(r-1)
                let factor = ratio((n * r * (r - 1)) as i64, 2);
                let mu = m.mu.remove_part(n).and_then(|x| x.remove_part(n)).expect("two parts n");
                out.add_term(Monomial::new(m.hbar + n as i32, mu), &c.scale(&factor));
            }
            if n % 2 == 0 {
                let half = n / 2;
                let mu = m.mu.remove_part(n).expect("part present");
                out.add_term(Monomial::new(m.hbar + half as i32, mu), &c.scale(&ratio(r as i64, 1)));
            }
        }
    }
    out
}

/// `exp(Delta) f = sum_k Delta^k f / k!`, with the number of nonzero
/// `Delta^k f` terms used. Each application lowers the maximal weight by at
/// least two, so at most `max_weight/2 + 1` iterations occur.
pub fn exp_laplacian_counted(f: &GradedSeries) -> (GradedSeries, usize) {
    let bound = f.max_weight() / 2 + 1;
    let mut out = f.clone();
    let mut term = f.clone();
    let mut iterations = usize::from(!f.is_empty());
    let mut k = 1i64;
    loop {
        term = laplacian(&term).scale(&ratio(1, k));
        if term.is_empty() {
            break;
        }
        out = out.add(&term);
        iterations += 1;
        k += 1;
    }
    assert!(iterations <= bound, "exp(Delta) used {iterations} iterations, bound {bound}");
    (out, iterations)
}

pub fn exp_laplacian(f: &GradedSeries) -> GradedSeries {
    exp_laplacian_counted(f).0
}

/// `Char(MV) = Log(exp(Delta) Exp(Char V))`.
pub fn gk_transform(char_v: &GradedSeries) -> Result<GradedSeries> {
    let e = pleth_exp(char_v)?;
    let d = exp_laplacian(&e);
    pleth_log(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lpoly::rat;
    use crate::symfunc::schur_in_p;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn series(trunc: usize, terms: &[(i32, &[usize], LPoly)]) -> GradedSeries {
        let mut s = GradedSeries::zero(trunc);
        for (h, mu, c) in terms {
            s.try_add_term(Monomial::new(*h, p(mu)), c).unwrap();
        }
        s
    }

    fn one() -> LPoly {
        LPoly::one()
    }

    #[test]
    fn adams_examples() {
        let p3 = series(6, &[(0, &[3], one())]);
        let out = plethysm_outer(&SymPolynomial::p(2), &p3).unwrap();
        assert_eq!(out, series(6, &[(0, &[6], one())]));

        let lp1h = series(9, &[(1, &[1], LPoly::l())]);
        let out = plethysm_outer(&SymPolynomial::p(3), &lp1h).unwrap();
        assert_eq!(out, series(9, &[(3, &[3], LPoly::from_ints(&[0, 0, 0, 1]))]));
    }

    #[test]
    fn symmetric_square_of_tate_line() {
        let lp1 = series(6, &[(0, &[1], LPoly::l())]);
        let out = plethysm_outer(&h_in_p(2), &lp1).unwrap();
        let l2 = LPoly::from_ints(&[0, 0, 1]);
        let expect = GradedSeries::from_sym(6, 0, &h_in_p(2).scale(&l2)).unwrap();
        assert_eq!(out, expect);
    }

    #[test]
    fn outer_plethysm_rejects_bad_operands() {
        let g = series(6, &[(0, &[1], one())]);
        let with_l = SymPolynomial::monomial(p(&[1]), LPoly::l());
        assert!(plethysm_outer(&with_l, &g).is_err());
        let deg0 = series(6, &[(-1, &[2], one())]);
        assert!(plethysm_outer(&SymPolynomial::p(1), &deg0).is_err());
    }

    #[test]
    fn exp_examples() {
        assert_eq!(pleth_exp(&GradedSeries::zero(6)).unwrap(), GradedSeries::one(6));
        let f = series(6, &[(1, &[1], one())]);
        let e = pleth_exp(&f).unwrap();
        let mut expect = GradedSeries::one(6);
        for k in 1..=2 {
            expect = expect.add(&GradedSeries::from_sym(6, k as i32, &h_in_p(k)).unwrap());
        }
        assert_eq!(e, expect);
        assert_eq!(pleth_exp_via_h(&f).unwrap(), expect);
    }

    #[test]
    fn log_examples() {
        assert_eq!(pleth_log(&GradedSeries::one(6)).unwrap(), GradedSeries::zero(6));
        let f = series(6, &[(1, &[1], one()), (2, &[2], one())]);
        assert_eq!(pleth_log(&pleth_exp(&f).unwrap()).unwrap(), f);
        let one_plus = series(6, &[(0, &[], one()), (1, &[1], one())]);
        let lg = pleth_log(&one_plus).unwrap();
        assert_eq!(pleth_exp(&lg).unwrap(), one_plus);
        assert!(pleth_log(&series(6, &[(0, &[], LPoly::from_ints(&[2]))])).is_err());
    }

    #[test]
    fn laplacian_examples() {
        let d = laplacian(&series(6, &[(0, &[1, 1], one())]));
        assert_eq!(d, series(6, &[(1, &[], one())]));
        let d = laplacian(&series(6, &[(0, &[2], one())]));
        assert_eq!(d, series(6, &[(1, &[], one())]));
        let d = laplacian(&series(6, &[(-1, &[2, 2], one())]));
        let two = LPoly::from_ints(&[2]);
        assert_eq!(d, series(6, &[(0, &[2], two.clone()), (1, &[], two)]));
    }

    #[test]
    fn exp_laplacian_examples() {
        assert_eq!(exp_laplacian(&GradedSeries::one(6)), GradedSeries::one(6));
        let out = exp_laplacian(&series(6, &[(0, &[1, 1], one())]));
        assert_eq!(out, series(6, &[(0, &[1, 1], one()), (1, &[], one())]));
        let (out, iters) = exp_laplacian_counted(&series(8, &[(0, &[1, 1, 1, 1], one())]));
        let expect = series(
            8,
            &[
                (0, &[1, 1, 1, 1], one()),
                (1, &[1, 1], LPoly::from_ints(&[6])),
                (2, &[], LPoly::from_ints(&[3])),
            ],
        );
        assert_eq!(out, expect);
        assert_eq!(iters, 3);
    }

    #[test]
    fn transform_of_a_point() {
        let s3 = GradedSeries::from_sym(1, -1, &schur_in_p(&p(&[3]))).unwrap();
        let out = gk_transform(&s3).unwrap();
        assert_eq!(out.extract(-1, 3), schur_in_p(&p(&[3])));
        // the irreducible nodal cubic: one boundary point of the (1,1) space
        assert_eq!(out.extract(0, 1), SymPolynomial::p(1));
        assert_eq!(out.len(), 4);
    }

    #[test]
    fn mobius_values() {
        let v: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(v, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
        assert_eq!(rat(mobius(30)), rat(-1));
    }
}
