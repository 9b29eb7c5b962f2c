//! Small finite fields `F_{p^k}` in discrete-log form with Zech tables,
//! extension towers with explicit embeddings, and univariate polynomials.
//!
//! Elements are stored as their discrete logarithm to a fixed primitive
//! element, so multiplication is an addition of exponents and addition is a
//! Zech-table lookup. The field modulus is the least primitive polynomial in
//! the order that compares the non-leading coefficients as base-`p` digits,
//! constant term least significant.

use crate::error::{input, Error, Result};

const ZERO: u32 = u32::MAX;
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GfElem(u32);

impl GfElem {
    pub const ZERO: GfElem = GfElem(ZERO);

    pub fn is_zero(self) -> bool {
        self.0 == ZERO
    }

    /// Discrete log; `None` for zero.
    pub fn log(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0)
    }
}

#[derive(Clone)]
pub struct Gf {
    p: u32,
    k: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg_one: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p as u32, k))
}

impl Gf {
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return input(format!("{p} is not prime"));
        }
        if k == 0 {
            return input("extension degree must be at least 1");
        }
        let order = (p as u64).checked_pow(k).filter(|&o| o <= MAX_FIELD_ORDER).ok_or_else(|| {
            Error::Unsupported(format!("field of order {p}^{k} exceeds {MAX_FIELD_ORDER}"))
        })? as u32;
        let digits = Digits { p, k };
        let n = order - 1;
        // candidates enumerated by integer value of the low coefficients
        for cand in 0..order {
            let low = digits.split(cand);
            if low[0] == 0 {
                continue;
            }
            if let Some(exp) = digits.powers_of_x(&low, n) {
                let mut modulus = low;
                modulus.push(1);
                let mut log = vec![ZERO; order as usize];
                for (i, &v) in exp.iter().enumerate() {
                    log[v as usize] = i as u32;
                }
                let zech = (0..n)
                    .map(|m| {
                        let s = digits.add(1, exp[m as usize]);
                        log[s as usize]
                    })
                    .collect();
                let neg_one = if p == 2 { 0 } else { n / 2 };
                return Ok(Gf { p, k, order, modulus, exp, log, zech, neg_one });
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    pub fn with_order(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::Input(format!("{q} is not a prime power")))?;
        Gf::new(p, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients of the defining polynomial over `F_p`, lowest first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> GfElem {
        GfElem::ZERO
    }

    pub fn one(&self) -> GfElem {
        GfElem(0)
    }

    /// The fixed primitive element.
    pub fn generator(&self) -> GfElem {
        GfElem(if self.order == 2 { 0 } else { 1 })
    }

    /// Element from its polynomial-basis integer (base-`p` digits).
    pub fn from_int(&self, v: u32) -> GfElem {
        GfElem(self.log[v as usize])
    }

    pub fn to_int(&self, a: GfElem) -> u32 {
        if a.is_zero() {
            0
        } else {
            self.exp[a.0 as usize]
        }
    }

    /// Image of an integer in the prime field.
    pub fn from_i64(&self, v: i64) -> GfElem {
        self.from_int(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_log(&self, l: u64) -> GfElem {
        GfElem((l % (self.order as u64 - 1)) as u32)
    }

    /// All elements, zero first, then by increasing log.
    pub fn elements(&self) -> impl Iterator<Item = GfElem> + '_ {
        std::iter::once(GfElem::ZERO).chain((0..self.order - 1).map(GfElem))
    }

    /// Elements ordered by polynomial-basis integer.
    pub fn elements_by_int(&self) -> impl Iterator<Item = GfElem> + '_ {
        (0..self.order).map(move |v| self.from_int(v))
    }

    #[inline]
    pub fn add(&self, a: GfElem, b: GfElem) -> GfElem {
        if a.0 == ZERO {
            return b;
        }
        if b.0 == ZERO {
            return a;
        }
        let n = self.order - 1;
        let d = if b.0 >= a.0 { b.0 - a.0 } else { b.0 + n - a.0 };
        let z = self.zech[d as usize];
        if z == ZERO {
            return GfElem::ZERO;
        }
        let s = a.0 + z;
        GfElem(if s >= n { s - n } else { s })
    }

    #[inline]
    pub fn neg(&self, a: GfElem) -> GfElem {
        if a.0 == ZERO {
            return a;
        }
        let n = self.order - 1;
        let s = a.0 + self.neg_one;
        GfElem(if s >= n { s - n } else { s })
    }

    #[inline]
    pub fn sub(&self, a: GfElem, b: GfElem) -> GfElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: GfElem, b: GfElem) -> GfElem {
        if a.0 == ZERO || b.0 == ZERO {
            return GfElem::ZERO;
        }
        let n = self.order - 1;
        let s = a.0 + b.0;
        GfElem(if s >= n { s - n } else { s })
    }

    pub fn inv(&self, a: GfElem) -> Result<GfElem> {
        if a.is_zero() {
            return input("inverse of zero");
        }
        let n = self.order - 1;
        Ok(GfElem(if a.0 == 0 { 0 } else { n - a.0 }))
    }

    pub fn div(&self, a: GfElem, b: GfElem) -> Result<GfElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: GfElem, e: u64) -> GfElem {
        if e == 0 {
            return self.one();
        }
        if a.is_zero() {
            return a;
        }
        let n = (self.order - 1) as u64;
        GfElem(((a.0 as u64 * (e % n)) % n) as u32)
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: GfElem) -> GfElem {
        self.pow(a, self.p as u64)
    }

    /// Quadratic character: `0 -> 0`, nonzero squares `-> 1`, others `-> -1`.
    pub fn quadratic_character(&self, a: GfElem) -> Result<i8> {
        if self.p == 2 {
            return Err(Error::Unsupported("quadratic character in characteristic 2".into()));
        }
        Ok(self.chi(a))
    }

    /// Unchecked quadratic character for odd characteristic.
    #[inline]
    pub fn chi(&self, a: GfElem) -> i8 {
        if a.0 == ZERO {
            0
        } else if a.0 & 1 == 0 {
            1
        } else {
            -1
        }
    }

    /// True if `a` lies in the subfield of order `p^e` (`e | k`).
    pub fn in_subfield(&self, a: GfElem, e: u32) -> bool {
        if a.is_zero() {
            return true;
        }
        let sub = (self.p as u64).pow(e) - 1;
        let step = (self.order as u64 - 1) / sub;
        (a.0 as u64).is_multiple_of(step)
    }

    /// Evaluates a polynomial with `F_p` coefficients (as integers).
    fn eval_prime_poly(&self, coeffs: &[u32], x: GfElem) -> GfElem {
        let mut acc = GfElem::ZERO;
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), self.from_int(c));
        }
        acc
    }
}

impl std::fmt::Debug for Gf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}^{} modulus {:?}", self.p, self.k, self.modulus)
    }
}

struct Digits {
    p: u32,
    k: u32,
}

impl Digits {
    fn split(&self, mut v: u32) -> Vec<u32> {
        (0..self.k)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    fn join(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.split(a), self.split(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.join(&s)
    }

    /// Powers `x^0 .. x^{n-1}` modulo `x^k + low`, if `x` has order exactly `n`.
    fn powers_of_x(&self, low: &[u32], n: u32) -> Option<Vec<u32>> {
        let p = self.p;
        let k = self.k as usize;
        let mut exp = Vec::with_capacity(n as usize);
        let mut cur = vec![0u32; k];
        cur[0] = 1;
        for i in 0..n {
            let v = self.join(&cur);
            if i > 0 && v == 1 {
                return None;
            }
            exp.push(v);
            // multiply by x and reduce with x^k = -low
            let top = cur[k - 1];
            for j in (1..k).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            for j in 0..k {
                cur[j] = (cur[j] + (p - (top * low[j]) % p)) % p;
            }
        }
        (self.join(&cur) == 1).then_some(exp)
    }
}

/// Addition and multiplication tables on the polynomial-basis integers of a
/// small field, for inner loops that index arrays by field element.
#[derive(Clone)]
pub struct IntField {
    q: usize,
    p: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

impl IntField {
    pub fn new(field: &Gf) -> Self {
        let q = field.order() as usize;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let ea = field.from_int(a as u32);
            for b in 0..q {
                let eb = field.from_int(b as u32);
                add[a * q + b] = field.to_int(field.add(ea, eb));
                mul[a * q + b] = field.to_int(field.mul(ea, eb));
            }
        }
        let neg = (0..q).map(|a| field.to_int(field.neg(field.from_int(a as u32)))).collect();
        IntField { q, p: field.characteristic(), add, mul, neg }
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Image of an integer constant.
    pub fn constant(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }
}

/// Embedding `F_q -> F_{q^d}` sending the small field's primitive element to
/// a root of its defining polynomial.
#[derive(Clone, Copy, Debug)]
pub struct Embedding {
    factor: u64,
    big_n: u64,
}

impl Embedding {
    pub fn new(small: &Gf, big: &Gf) -> Result<Self> {
        if small.p != big.p || !big.k.is_multiple_of(small.k) {
            return input(format!("no embedding of {small:?} into {big:?}"));
        }
        let big_n = big.order as u64 - 1;
        let small_n = small.order as u64 - 1;
        let step = big_n / small_n;
        for j in 1..=small_n.max(1) {
            if num_integer::gcd(j, small_n.max(1)) != 1 {
                continue;
            }
            let r = big.from_log(j * step);
            if big.eval_prime_poly(&small.modulus, r).is_zero() {
                return Ok(Embedding { factor: (j * step) % big_n.max(1), big_n });
            }
        }
        unreachable!("defining polynomial splits in every extension of its field")
    }

    #[inline]
    pub fn map(&self, a: GfElem) -> GfElem {
        if a.is_zero() || self.big_n == 0 {
            return a;
        }
        GfElem(((a.0 as u64 * self.factor) % self.big_n) as u32)
    }
}

/// `F_q` together with `F_{q^d}` for `d = 1..=max_degree`.
pub struct FieldTower {
    q: u64,
    levels: Vec<(Gf, Embedding)>,
}

impl FieldTower {
    pub fn new(q: u64, max_degree: u32) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::Input(format!("{q} is not a prime power")))?;
        let base = Gf::new(p, k)?;
        let mut levels = Vec::new();
        for d in 1..=max_degree.max(1) {
            let big = if d == 1 { base.clone() } else { Gf::new(p, k * d)? };
            let emb = Embedding::new(&base, &big)?;
            levels.push((big, emb));
        }
        Ok(FieldTower { q, levels })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn base(&self) -> &Gf {
        &self.levels[0].0
    }

    pub fn max_degree(&self) -> u32 {
        self.levels.len() as u32
    }

    /// `F_{q^d}`.
    pub fn field(&self, d: u32) -> &Gf {
        &self.levels[d as usize - 1].0
    }

    pub fn embedding(&self, d: u32) -> &Embedding {
        &self.levels[d as usize - 1].1
    }

    /// Relative Frobenius `x -> x^q` on `F_{q^d}`.
    pub fn frobenius(&self, d: u32, a: GfElem) -> GfElem {
        self.field(d).pow(a, self.q)
    }

    /// One representative (smallest log) of every Frobenius orbit of
    /// elements of `F_{q^e}` of exact degree `e` over `F_q`.
    pub fn closed_point_reps(&self, e: u32) -> Vec<GfElem> {
        let f = self.field(e);
        let n = f.order() as u64 - 1;
        let mut seen = vec![false; n as usize];
        let mut out = Vec::new();
        if e == 1 {
            out.push(GfElem::ZERO);
        }
        for l in 0..n {
            if seen[l as usize] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut cur = l;
            loop {
                seen[cur as usize] = true;
                orbit.push(cur);
                cur = (cur * (self.q % n.max(1))) % n.max(1);
                if n == 1 || cur == l {
                    break;
                }
            }
            if orbit.len() as u32 == e {
                out.push(GfElem(l as u32));
            }
        }
        out
    }
}

/// A point of the projective line over some `F_{q^m}`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum P1Point {
    Finite(GfElem),
    Infinity,
}

/// Univariate polynomial, coefficients lowest first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<GfElem>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GfElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// From polynomial-basis integers, lowest degree first.
    pub fn from_ints(field: &Gf, coeffs: &[u32]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[GfElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> GfElem {
        self.coeffs.get(i).copied().unwrap_or(GfElem::ZERO)
    }

    pub fn eval(&self, field: &Gf, x: GfElem) -> GfElem {
        let mut acc = GfElem::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = field.add(field.mul(acc, x), c);
        }
        acc
    }

    /// Coefficients pushed through an embedding into a larger field.
    pub fn embed(&self, emb: &Embedding) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|&c| emb.map(c)).collect() }
    }

    pub fn derivative(&self, field: &Gf) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| field.mul(c, field.from_i64(i as i64)))
            .collect();
        UniPoly::new(coeffs)
    }

    pub fn mul(&self, field: &Gf, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::default();
        }
        let mut out = vec![GfElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        UniPoly::new(out)
    }

    pub fn rem(&self, field: &Gf, divisor: &UniPoly) -> Result<UniPoly> {
        let dd = divisor.degree().ok_or_else(|| Error::Input("division by zero polynomial".into()))?;
        let inv_lead = field.inv(divisor.coeffs[dd])?;
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = *r.last().expect("nonempty");
            if top.is_zero() {
                r.pop();
                continue;
            }
            let c = field.mul(top, inv_lead);
            let shift = r.len() - 1 - dd;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                r[shift + j] = field.sub(r[shift + j], field.mul(c, dc));
            }
            r.pop();
        }
        Ok(UniPoly::new(r))
    }

    pub fn gcd(field: &Gf, a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.rem(field, &y)?;
            x = y;
            y = r;
        }
        Ok(x)
    }
}

/// `gcd(f, f') = 1`. Over a perfect field this is exactly square-freeness;
/// in characteristic `p` a zero derivative means `f` is a `p`-th power.
pub fn is_squarefree(field: &Gf, f: &UniPoly) -> Result<bool> {
    if f.is_zero() {
        return input("square-freeness of the zero polynomial");
    }
    let g = UniPoly::gcd(field, f, &f.derivative(field))?;
    Ok(g.degree() == Some(0))
}

/// Value of `f` (degree at most `2g+2`) at a point of the projective line:
/// `f(alpha)` for finite points, the `x^{2g+2}` coefficient at infinity.
pub fn eval_at_p1_point(field: &Gf, f: &UniPoly, alpha: P1Point, genus: usize) -> Result<GfElem> {
    if f.degree().is_some_and(|d| d > 2 * genus + 2) {
        return input(format!("degree {:?} exceeds 2g+2 = {}", f.degree(), 2 * genus + 2));
    }
    Ok(match alpha {
        P1Point::Finite(x) => f.eval(field, x),
        P1Point::Infinity => f.coeff(2 * genus + 2),
    })
}
