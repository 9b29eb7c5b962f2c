//! Counting ordered tuples of distinct points permuted by Frobenius with a
//! prescribed cycle type, from the point counts of a curve.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{input, Error, Result};
use crate::lpoly::{ratio, LPoly};
use crate::partition::Partition;
use crate::plethys::mobius;

fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

/// Closed points of degree `d` on the projective line, as a polynomial in `q`.
pub fn closed_points_p1(d: usize) -> Result<LPoly> {
    if d == 0 {
        return input("closed-point degree must be positive");
    }
    let mut acc = LPoly::zero();
    for e in divisors(d) {
        let term = &LPoly::monomial(e, ratio(1, 1)) + &LPoly::one();
        acc += &term.scale(&ratio(mobius(d / e), 1));
    }
    Ok(acc.scale(&ratio(1, d as i64)))
}

pub fn closed_points_p1_at(d: usize, q: u64) -> Result<i128> {
    if d == 0 {
        return input("closed-point degree must be positive");
    }
    let total: i128 = divisors(d).map(|e| mobius(d / e) as i128 * ((q as i128).pow(e as u32) + 1)).sum();
    Ok(total / d as i128)
}

/// Number of closed points of each degree `1..=N.len()` (`B_m`), from
/// point counts over `F_{q^d}`.
pub fn closed_point_counts(point_counts: &[i128]) -> Result<Vec<i128>> {
    (1..=point_counts.len())
        .map(|m| {
            let s: i128 = divisors(m).map(|d| mobius(m / d) as i128 * point_counts[d - 1]).sum();
            if s < 0 || s % m as i128 != 0 {
                return Err(Error::Data(format!(
                    "point counts {point_counts:?} give {s}/{m} closed points of degree {m}"
                )));
            }
            Ok(s / m as i128)
        })
        .collect()
}

/// `T_lambda` from closed-point counts: each part of size `m` takes a
/// distinct degree-`m` orbit and one of its `m` starting points.
pub fn lambda_tuples_from_orbits(lambda: &Partition, orbits: &[i128]) -> Result<i128> {
    let mut total: i128 = 1;
    for (m, r) in lambda.multiplicities() {
        let b = *orbits
            .get(m - 1)
            .ok_or_else(|| Error::Input(format!("closed-point count of degree {m} missing")))?;
        for j in 0..r as i128 {
            total *= m as i128 * (b - j).max(0);
        }
    }
    Ok(total)
}

/// Number of `lambda`-tuples of distinct points on a curve with
/// `N_d = point_counts[d-1]` points over `F_{q^d}`.
pub fn lambda_tuples_from_point_counts(lambda: &Partition, point_counts: &[i128]) -> Result<i128> {
    if point_counts.len() < lambda.largest() {
        return input(format!(
            "{} point counts supplied, {} needed for {lambda}",
            point_counts.len(),
            lambda.largest()
        ));
    }
    let orbits = closed_point_counts(&point_counts[..lambda.largest()])?;
    lambda_tuples_from_orbits(lambda, &orbits)
}

/// Same count on the projective line, exactly as a polynomial in `q`.
pub fn lambda_tuples_on_p1(lambda: &Partition) -> LPoly {
    let mut total = LPoly::one();
    for (m, r) in lambda.multiplicities() {
        let scaled = closed_points_p1(m).expect("m >= 1").scale(&ratio(m as i64, 1));
        for j in 0..r {
            let factor = &scaled - &LPoly::constant(ratio((m * j) as i64, 1));
            total = &total * &factor;
        }
    }
    total
}

const TRACE_VARS: usize = 9;

/// Integer polynomial in `q` (variable 0) and traces `a_1..a_8`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TracePoly {
    terms: BTreeMap<[u8; TRACE_VARS], i128>,
}

impl TracePoly {
    fn constant(c: i128) -> Self {
        let mut p = TracePoly::default();
        p.add_term([0; TRACE_VARS], c);
        p
    }

    fn var(i: usize) -> Self {
        let mut e = [0; TRACE_VARS];
        e[i] = 1;
        let mut p = TracePoly::default();
        p.add_term(e, 1);
        p
    }

    fn add_term(&mut self, e: [u8; TRACE_VARS], c: i128) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    fn add(&self, other: &TracePoly, sign: i128) -> TracePoly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(*e, sign * c);
        }
        out
    }

    fn mul(&self, other: &TracePoly) -> TracePoly {
        let mut out = TracePoly::default();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let mut e = *ea;
                for i in 0..TRACE_VARS {
                    e[i] += eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Weighted degree with `q` in degree 0 and `a_i` in degree `i`.
    pub fn weighted_degree(e: &[u8; TRACE_VARS]) -> usize {
        (1..TRACE_VARS).map(|i| i * e[i] as usize).sum()
    }

    /// Terms of maximal weighted degree.
    pub fn leading_terms(&self) -> Vec<([u8; TRACE_VARS], i128)> {
        let top = self.terms.keys().map(Self::weighted_degree).max().unwrap_or(0);
        self.terms
            .iter()
            .filter(|(e, _)| Self::weighted_degree(e) == top)
            .map(|(e, &c)| (*e, c))
            .collect()
    }

    pub fn terms(&self) -> &BTreeMap<[u8; TRACE_VARS], i128> {
        &self.terms
    }

    /// Evaluates at `q` with the given traces `a_1..`.
    pub fn eval(&self, q: i128, traces: &[i128]) -> i128 {
        self.terms
            .iter()
            .map(|(e, &c)| {
                let mut v = c * q.pow(e[0] as u32);
                for i in 1..TRACE_VARS {
                    if e[i] > 0 {
                        v *= traces[i - 1].pow(e[i] as u32);
                    }
                }
                v
            })
            .sum()
    }
}

impl fmt::Debug for TracePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let name = if i == 0 { "q".to_string() } else { format!("a{i}") };
                    write!(f, "*{name}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// `T_lambda` after substituting `N_d = q^d + 1 - a_d`. The top part under
/// the grading `deg a_i = i` is checked to be `(-1)^len * a_{l1}...a_{lk}`.
pub fn symbolic_tlambda_in_traces(lambda: &Partition) -> Result<TracePoly> {
    if lambda.weight() > 8 {
        return input(format!("{lambda} has weight above 8"));
    }
    let q = TracePoly::var(0);
    let point_count = |d: usize| {
        let mut qd = TracePoly::constant(1);
        for _ in 0..d {
            qd = qd.mul(&q);
        }
        qd.add(&TracePoly::constant(1), 1).add(&TracePoly::var(d), -1)
    };
    let mut total = TracePoly::constant(1);
    for (m, r) in lambda.multiplicities() {
        // m * B_m = sum_{d | m} mu(m/d) N_d
        let mut mb = TracePoly::default();
        for d in divisors(m) {
            mb = mb.add(&point_count(d), mobius(m / d) as i128);
        }
        for j in 0..r {
            let factor = mb.add(&TracePoly::constant((m * j) as i128), -1);
            total = total.mul(&factor);
        }
    }
    let lead = total.leading_terms();
    let mut expected = [0u8; TRACE_VARS];
    for &part in lambda.parts() {
        expected[part] += 1;
    }
    let sign = if lambda.len().is_multiple_of(2) { 1 } else { -1 };
    assert_eq!(lead, vec![(expected, sign)], "leading monomial of T_{lambda}");
    Ok(total)
}
