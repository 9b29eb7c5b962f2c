//! Hyperelliptic census: curves `y^2 = f(x)` with `f` square-free of degree
//! `2g+1` or `2g+2`, weighted by `1/|GL_2(F_q)|`.
//!
//! Frobenius traces come from quadratic-character sums over closed points of
//! the projective line. Only monic `f` are enumerated: scaling `f` by `c`
//! multiplies `a_d` by `chi(c)^d`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::cache::CountCache;
use super::tuples::lambda_tuples_from_point_counts;
use super::{CountRecord, SpaceId, SpaceKind};
use crate::error::{input, Error, Result};
use crate::ffield::{FieldTower, GfElem, IntField};
use crate::partition::Partition;

pub const MAX_TRACE_DEGREE: usize = 4;

/// Square-freeness of every monic polynomial of `degree`, indexed by
/// `sum c_i q^i` over the non-leading coefficients.
pub fn squarefree_monic_table(f: &IntField, degree: usize) -> Vec<bool> {
    let q = f.order();
    let size = q.pow(degree as u32);
    let mut table = vec![true; size];
    let monic = |idx: usize, deg: usize| {
        let mut c = Vec::with_capacity(deg + 1);
        let mut v = idx;
        for _ in 0..deg {
            c.push((v % q) as u32);
            v /= q;
        }
        c.push(1);
        c
    };
    let mul = |a: &[u32], b: &[u32]| {
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        out
    };
    for k in 1..=degree / 2 {
        for li in 0..q.pow(k as u32) {
            let l = monic(li, k);
            let l2 = mul(&l, &l);
            for hi in 0..q.pow((degree - 2 * k) as u32) {
                let prod = mul(&l2, &monic(hi, degree - 2 * k));
                let idx = prod[..degree].iter().rev().fold(0usize, |acc, &c| acc * q + c as usize);
                table[idx] = false;
            }
        }
    }
    table
}

/// Closed points of the affine line of degree `1..=max_degree`, with the
/// powers `alpha^0..alpha^max_power` of each representative.
struct PointTable {
    /// `(degree, powers)` per representative.
    points: Vec<(usize, Vec<GfElem>)>,
}

impl PointTable {
    fn new(tower: &FieldTower, max_degree: usize, max_power: usize) -> Self {
        let mut points = Vec::new();
        for e in 1..=max_degree {
            let field = tower.field(e as u32);
            for alpha in tower.closed_point_reps(e as u32) {
                let mut powers = Vec::with_capacity(max_power + 1);
                let mut cur = field.one();
                for _ in 0..=max_power {
                    powers.push(cur);
                    cur = field.mul(cur, alpha);
                }
                points.push((e, powers));
            }
        }
        PointTable { points }
    }
}

/// Multiset of trace vectors `(a_1, ..., a_m)` over all of `P_g`.
#[derive(Clone, Debug)]
pub struct HyperellipticCensus {
    pub g: usize,
    pub q: u64,
    pub max_degree: usize,
    pub by_traces: BTreeMap<Vec<i64>, u64>,
}

impl HyperellipticCensus {
    pub fn run(g: usize, q: u64, max_degree: usize) -> Result<Self> {
        if q.is_multiple_of(2) {
            return Err(Error::Unsupported(format!("hyperelliptic census needs odd q, got {q}")));
        }
        if max_degree == 0 || max_degree > MAX_TRACE_DEGREE {
            return input(format!("trace degree {max_degree} outside 1..={MAX_TRACE_DEGREE}"));
        }
        let tower = FieldTower::new(q, max_degree as u32)?;
        let base = tower.base();
        let ints = IntField::new(base);
        let qq = q as usize;
        let mut by_traces: HashMap<Vec<i64>, u64> = HashMap::new();
        for degree in [2 * g + 1, 2 * g + 2] {
            let squarefree = squarefree_monic_table(&ints, degree);
            let points = PointTable::new(&tower, max_degree, degree);
            // embedded[e-1][c] = image of the base element with integer c in F_{q^e}
            let embedded: Vec<Vec<GfElem>> = (1..=max_degree)
                .map(|e| (0..qq as u32).map(|c| tower.embedding(e as u32).map(base.from_int(c))).collect())
                .collect();
            let at_infinity = i64::from(degree == 2 * g + 2);
            let middle_count = qq.pow(degree as u32 - 1);
            let chunks: Vec<HashMap<Vec<i64>, u64>> = (0..qq)
                .into_par_iter()
                .map(|top| {
                    let mut local: HashMap<Vec<i64>, u64> = HashMap::new();
                    let mut values = vec![GfElem::ZERO; points.points.len()];
                    let per_top = middle_count / qq;
                    let mut coeffs = vec![0u32; degree];
                    for mid in 0..per_top {
                        // coefficients 1..degree-1, coefficient degree-1 fixed to `top`
                        let mut v = mid;
                        for c in coeffs.iter_mut().take(degree - 1).skip(1) {
                            *c = (v % qq) as u32;
                            v /= qq;
                        }
                        coeffs[degree - 1] = top as u32;
                        for (slot, (e, powers)) in values.iter_mut().zip(&points.points) {
                            let field = tower.field(*e as u32);
                            let emb = &embedded[e - 1];
                            let mut acc = powers[degree];
                            for i in 1..degree {
                                acc = field.add(acc, field.mul(emb[coeffs[i] as usize], powers[i]));
                            }
                            *slot = acc;
                        }
                        let high = qq * (mid + per_top * top);
                        for c0 in 0..qq {
                            let idx = c0 + high;
                            if !squarefree[idx] {
                                continue;
                            }
                            let mut sums = [0i64; MAX_TRACE_DEGREE];
                            let mut nonzero = [0i64; MAX_TRACE_DEGREE];
                            for (value, (e, _)) in values.iter().zip(&points.points) {
                                let field = tower.field(*e as u32);
                                let x = field.add(*value, embedded[e - 1][c0]);
                                let chi = field.chi(x) as i64;
                                sums[e - 1] += chi;
                                nonzero[e - 1] += chi * chi;
                            }
                            let traces: Vec<i64> = (1..=max_degree)
                                .map(|d| {
                                    let mut s = at_infinity;
                                    for e in (1..=d).filter(|e| d % e == 0) {
                                        let part = if (d / e) % 2 == 1 { sums[e - 1] } else { nonzero[e - 1] };
                                        s += e as i64 * part;
                                    }
                                    -s
                                })
                                .collect();
                            let twisted: Vec<i64> =
                                traces.iter().enumerate().map(|(i, &a)| if i % 2 == 0 { -a } else { a }).collect();
                            let half = (qq as u64 - 1) / 2;
                            *local.entry(traces).or_insert(0) += half;
                            *local.entry(twisted).or_insert(0) += half;
                        }
                    }
                    local
                })
                .collect();
            for chunk in chunks {
                for (k, v) in chunk {
                    *by_traces.entry(k).or_insert(0) += v;
                }
            }
        }
        Ok(HyperellipticCensus { g, q, max_degree, by_traces: by_traces.into_iter().collect() })
    }

    pub fn gl2_order(&self) -> u64 {
        let q = self.q;
        (q * q - 1) * (q * q - q)
    }

    pub fn model_count(&self) -> u64 {
        self.by_traces.values().sum()
    }

    pub fn count(&self, lambda: &Partition) -> Result<BigRational> {
        if lambda.largest() > self.max_degree {
            return input(format!("{lambda} needs traces beyond degree {}", self.max_degree));
        }
        let q = self.q as i128;
        let mut acc = BigRational::zero();
        for (traces, &models) in &self.by_traces {
            let counts: Vec<i128> =
                traces.iter().enumerate().map(|(i, &a)| q.pow(i as u32 + 1) + 1 - a as i128).collect();
            let tuples = lambda_tuples_from_point_counts(lambda, &counts[..lambda.largest().max(1)])?;
            acc += BigRational::from_integer(BigInt::from(tuples) * BigInt::from(models));
        }
        Ok(acc / BigRational::from_integer(BigInt::from(self.gl2_order())))
    }

    pub fn counts_by_cycle_type(&self, n: usize) -> Result<BTreeMap<Partition, BigRational>> {
        Partition::all(n).into_iter().map(|mu| Ok((mu.clone(), self.count(&mu)?))).collect()
    }
}

fn check_range(g: usize, n: usize) -> Result<()> {
    if !(g == 2 || g == 3) {
        return input(format!("hyperelliptic counts cover genus 2 and 3, got {g}"));
    }
    if n + 2 * g > 8 {
        return input(format!("hyperelliptic genus {g} supports at most {} markings, got {n}", 8 - 2 * g));
    }
    Ok(())
}

pub fn hyperelliptic_count(g: usize, q: u64, lambda: &Partition) -> Result<CountRecord> {
    check_range(g, lambda.weight())?;
    let census = HyperellipticCensus::run(g, q, lambda.largest().max(1))?;
    let value = census.count(lambda)?;
    Ok(CountRecord { space: SpaceId::new(SpaceKind::H, g, lambda.weight())?, q, lambda: lambda.clone(), value })
}

/// Cycle-type counts of `H_{g,n}` at `q`, through the cache.
pub fn hyperelliptic_cycle_counts(
    g: usize,
    n: usize,
    q: u64,
    cache: &CountCache,
) -> Result<BTreeMap<Partition, BigRational>> {
    check_range(g, n)?;
    let space = SpaceId::new(SpaceKind::H, g, n)?;
    cache.get_or_compute(space, q, &Partition::all(n), || {
        HyperellipticCensus::run(g, q, n.max(1))?.counts_by_cycle_type(n)
    })
}
