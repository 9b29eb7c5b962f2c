//! Exact polynomials in the Tate class `L` with rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense coefficient vector, lowest power first, never with a trailing zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LPoly {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl LPoly {
    pub fn zero() -> Self {
        LPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The class `L` itself.
    pub fn l() -> Self {
        Self::monomial(1, BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: usize, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); exp + 1];
        coeffs[exp] = c;
        LPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = LPoly { coeffs };
        p.trim();
        p
    }

    /// Integer coefficients, lowest power first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, exp: usize) -> BigRational {
        self.coeffs.get(exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Nonzero `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Coefficients as machine integers when all are integral and fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    /// `b_i == b_{d-i}` for all `i`, treating the polynomial as having
    /// formal degree `d`.
    pub fn is_palindromic(&self, d: usize) -> bool {
        if self.degree().is_some_and(|deg| deg > d) {
            return false;
        }
        (0..=d).all(|i| self.coeff(i) == self.coeff(d - i))
    }

    pub fn scale(&self, c: &BigRational) -> LPoly {
        if c.is_zero() {
            return LPoly::zero();
        }
        LPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Substitutes `L -> L^n`; this is `p_n o f` for a Tate-type class.
    pub fn adams(&self, n: usize) -> LPoly {
        if n == 1 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); (self.coeffs.len() - 1) * n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * n] = c.clone();
        }
        LPoly { coeffs }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&rat(x))
    }

    pub fn pow(&self, k: u32) -> LPoly {
        let mut out = LPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact division; `None` if the remainder is nonzero or `divisor` is zero.
    pub fn div_exact(&self, divisor: &LPoly) -> Option<LPoly> {
        let dd = divisor.degree()?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() { Some(LPoly::zero()) } else { None };
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(LPoly::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Space-separated coefficients, lowest power first; `0` for zero.
    pub fn ascending_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
    }

    /// Formats the polynomial with a chosen variable name, highest power first.
    pub fn display_in(&self, var: &str) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = abs.is_one();
            match i {
                0 => out.push_str(&abs.to_string()),
                _ => {
                    if !unit {
                        out.push_str(&abs.to_string());
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("L"))
    }
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LPoly[{}]", self.display_in("L"))
    }
}

impl AddAssign<&LPoly> for LPoly {
    fn add_assign(&mut self, rhs: &LPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.trim();
    }
}

impl SubAssign<&LPoly> for LPoly {
    fn sub_assign(&mut self, rhs: &LPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.trim();
    }
}

impl Add<&LPoly> for &LPoly {
    type Output = LPoly;
    fn add(self, rhs: &LPoly) -> LPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LPoly> for &LPoly {
    type Output = LPoly;
    fn sub(self, rhs: &LPoly) -> LPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for LPoly {
    type Output = LPoly;
    fn add(mut self, rhs: LPoly) -> LPoly {
        self += &rhs;
        self
    }
}

impl Sub for LPoly {
    type Output = LPoly;
    fn sub(mut self, rhs: LPoly) -> LPoly {
        self -= &rhs;
        self
    }
}

impl Mul<&LPoly> for &LPoly {
    type Output = LPoly;
    fn mul(self, rhs: &LPoly) -> LPoly {
        if self.is_zero() || rhs.is_zero() {
            return LPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LPoly::from_coeffs(coeffs)
    }
}

impl Mul for LPoly {
    type Output = LPoly;
    fn mul(self, rhs: LPoly) -> LPoly {
        &self * &rhs
    }
}

impl Neg for LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        LPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = LPoly::from_ints(&[1, 1]);
        let b = LPoly::from_ints(&[-1, 1]);
        assert_eq!(&a * &b, LPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(&a - &a, LPoly::zero());
        assert_eq!((&a + &b).degree(), Some(1));
        assert_eq!(LPoly::zero().degree(), None);
    }

    #[test]
    fn adams_and_eval() {
        let a = LPoly::from_ints(&[2, 0, 1]);
        assert_eq!(a.adams(3), LPoly::from_ints(&[2, 0, 0, 0, 0, 0, 1]));
        assert_eq!(a.eval_int(3), rat(11));
    }

    #[test]
    fn exact_division() {
        let q3q = LPoly::from_ints(&[0, -1, 0, 1]);
        let prod = &q3q * &LPoly::from_ints(&[-2, 1]);
        assert_eq!(prod.div_exact(&q3q), Some(LPoly::from_ints(&[-2, 1])));
        assert_eq!(LPoly::from_ints(&[1, 0, 1]).div_exact(&q3q), None);
    }

    #[test]
    fn palindromy() {
        assert!(LPoly::from_ints(&[1, 4, 13, 32, 50, 50, 32, 13, 4, 1]).is_palindromic(9));
        assert!(LPoly::from_ints(&[0, 1]).is_palindromic(2));
        assert!(!LPoly::from_ints(&[1, 2]).is_palindromic(2));
    }

    #[test]
    fn display() {
        assert_eq!(LPoly::from_ints(&[1, -1, 0, 2]).to_string(), "2L^3 - L + 1");
        assert_eq!(LPoly::zero().to_string(), "0");
        assert_eq!(LPoly::from_ints(&[0, 0, -1]).display_in("q"), "-q^2");
    }
}
