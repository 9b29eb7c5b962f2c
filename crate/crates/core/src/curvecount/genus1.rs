//! Genus one via long Weierstrass models.
//!
//! Every genus-one curve over a finite field has a rational point, and the
//! pointed curves are exactly the smooth Weierstrass cubics modulo the
//! coordinate changes `(u, r, s, t)`, a group of order `(q-1) q^3`. The
//! translations of the unpointed curve contribute a further `1/N_1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::cache::CountCache;
use super::equivariant::{equivariant_coeff, interpolate, InterpolationOptions};
use super::tuples::lambda_tuples_from_point_counts;
use super::{CountRecord, SpaceId, SpaceKind, TracePolynomial};
use crate::error::{input, Result};
use crate::ffield::{Gf, IntField};
use crate::partition::Partition;

pub const GENUS1_SAMPLES: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];
pub const GENUS1_HOLDOUT: u64 = 11;

/// Coefficients `(a1, a2, a3, a4, a6)` as field integers.
pub type Weierstrass = [u32; 5];

pub fn discriminant(f: &IntField, a: &Weierstrass) -> u32 {
    let [a1, a2, a3, a4, a6] = *a;
    let c = |v: i64| f.constant(v);
    let m = |x: u32, y: u32| f.mul(x, y);
    let b2 = f.add(m(a1, a1), m(c(4), a2));
    let b4 = f.add(m(c(2), a4), m(a1, a3));
    let b6 = f.add(m(a3, a3), m(c(4), a6));
    let b8 = f.sub(
        f.add(f.add(m(m(a1, a1), a6), m(m(c(4), a2), a6)), m(a2, m(a3, a3))),
        f.add(m(m(a1, a3), a4), m(a4, a4)),
    );
    let t1 = m(m(b2, b2), b8);
    let t2 = m(c(8), m(b4, m(b4, b4)));
    let t3 = m(c(27), m(b6, b6));
    let t4 = m(c(9), m(b2, m(b4, b6)));
    f.sub(t4, f.add(f.add(t1, t2), t3))
}

/// Number of smooth Weierstrass tuples over `F_q` for each Frobenius trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCensus {
    pub q: u64,
    pub by_trace: BTreeMap<i64, u64>,
}

impl WeierstrassCensus {
    pub fn run(q: u64) -> Result<Self> {
        let gf = Gf::with_order(q)?;
        let f = IntField::new(&gf);
        let qq = q as usize;
        // solutions[b * q + c] = #{ y : y^2 + b y = c }
        let mut solutions = vec![0u32; qq * qq];
        for b in 0..qq as u32 {
            for y in 0..qq as u32 {
                let c = f.add(f.mul(y, y), f.mul(b, y));
                solutions[b as usize * qq + c as usize] += 1;
            }
        }
        let x2: Vec<u32> = (0..qq as u32).map(|x| f.mul(x, x)).collect();
        let x3: Vec<u32> = (0..qq as u32).map(|x| f.mul(x2[x as usize], x)).collect();
        let partials: Vec<BTreeMap<i64, u64>> = (0..qq as u32)
            .into_par_iter()
            .map(|a1| {
                let mut local = BTreeMap::new();
                let mut bx = vec![0u32; qq];
                for a3 in 0..qq as u32 {
                    for x in 0..qq as u32 {
                        bx[x as usize] = f.add(f.mul(a1, x), a3);
                    }
                    for a2 in 0..qq as u32 {
                        for a4 in 0..qq as u32 {
                            for a6 in 0..qq as u32 {
                                if discriminant(&f, &[a1, a2, a3, a4, a6]) == 0 {
                                    continue;
                                }
                                let mut n1 = 1u64;
                                for x in 0..qq {
                                    let rhs = f.add(
                                        f.add(x3[x], f.mul(a2, x2[x])),
                                        f.add(f.mul(a4, x as u32), a6),
                                    );
                                    n1 += solutions[bx[x] as usize * qq + rhs as usize] as u64;
                                }
                                *local.entry(q as i64 + 1 - n1 as i64).or_insert(0) += 1;
                            }
                        }
                    }
                }
                local
            })
            .collect();
        let mut by_trace = BTreeMap::new();
        for part in partials {
            for (t, c) in part {
                *by_trace.entry(t).or_insert(0) += c;
            }
        }
        Ok(WeierstrassCensus { q, by_trace })
    }

    pub fn group_order(&self) -> u64 {
        (self.q - 1) * self.q.pow(3)
    }

    /// Groupoid-weighted count of genus-one curves with a `lambda`-tuple.
    pub fn count(&self, lambda: &Partition) -> Result<BigRational> {
        if lambda.is_empty() {
            return input("M_{1,0} is not stable");
        }
        let mut acc = BigRational::zero();
        for (&trace, &models) in &self.by_trace {
            let counts = point_counts(self.q, trace, lambda.largest());
            let tuples = lambda_tuples_from_point_counts(lambda, &counts)?;
            acc += BigRational::new(BigInt::from(tuples) * BigInt::from(models), BigInt::from(counts[0]));
        }
        Ok(acc / BigRational::from_integer(BigInt::from(self.group_order())))
    }

    pub fn counts_by_cycle_type(&self, n: usize) -> Result<BTreeMap<Partition, BigRational>> {
        Partition::all(n).into_iter().map(|mu| Ok((mu.clone(), self.count(&mu)?))).collect()
    }
}

/// `N_d = q^d + 1 - a_d` with `a_d = a_1 a_{d-1} - q a_{d-2}`, `a_0 = 2`.
pub fn point_counts(q: u64, trace: i64, max_degree: usize) -> Vec<i128> {
    let q = q as i128;
    let mut a = vec![2i128, trace as i128];
    while a.len() <= max_degree {
        let d = a.len();
        a.push(a[1] * a[d - 1] - q * a[d - 2]);
    }
    (1..=max_degree).map(|d| q.pow(d as u32) + 1 - a[d]).collect()
}

pub fn genus1_count(q: u64, lambda: &Partition) -> Result<CountRecord> {
    if lambda.is_empty() {
        return input("M_{1,0} is not stable");
    }
    if lambda.weight() > 6 {
        return input(format!("genus-1 counts need |lambda| <= 6, got {lambda}"));
    }
    let value = WeierstrassCensus::run(q)?.count(lambda)?;
    Ok(CountRecord { space: SpaceId::new(SpaceKind::M, 1, lambda.weight())?, q, lambda: lambda.clone(), value })
}

/// Cycle-type counts of `M_{1,n}` at `q` for every cycle type of `S_n`.
pub fn genus1_cycle_counts(q: u64, n: usize, cache: &CountCache) -> Result<BTreeMap<Partition, BigRational>> {
    let space = SpaceId::new(SpaceKind::M, 1, n)?;
    cache.get_or_compute(space, q, &Partition::all(n), || WeierstrassCensus::run(q)?.counts_by_cycle_type(n))
}

/// Schur coefficients of `M_{1,n}` interpolated from the sample fields and
/// checked at the held-out field.
pub fn genus1_isotypic(
    n: usize,
    cache: &CountCache,
    opts: &InterpolationOptions,
) -> Result<BTreeMap<Partition, TracePolynomial>> {
    let space = SpaceId::new(SpaceKind::M, 1, n)?;
    let per_q = GENUS1_SAMPLES
        .iter()
        .chain(std::iter::once(&GENUS1_HOLDOUT))
        .map(|&q| Ok((q, genus1_cycle_counts(q, n, cache)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = BTreeMap::new();
    for lambda in Partition::all(n) {
        let mut samples = per_q
            .iter()
            .map(|(q, counts)| Ok((*q, equivariant_coeff(&lambda, counts)?)))
            .collect::<Result<Vec<_>>>()?;
        let holdout = samples.pop().expect("holdout sample");
        out.insert(lambda.clone(), interpolate(space, &lambda, &samples, &holdout, opts)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::ffield::FieldTower;
    use crate::lpoly::{rat, ratio};

    /// Coordinate change `x = u^2 x' + r`, `y = u^3 y' + u^2 s x' + t`.
    fn transform(f: &IntField, gf: &Gf, a: &Weierstrass, [u, r, s, t]: [u32; 4]) -> Weierstrass {
        let [a1, a2, a3, a4, a6] = *a;
        let c = |v: i64| f.constant(v);
        let m = |x: u32, y: u32| f.mul(x, y);
        let inv = |x: u32| gf.to_int(gf.inv(gf.from_int(x)).unwrap());
        let ui = inv(u);
        let pow = |x: u32, k: u32| (0..k).fold(1, |acc, _| m(acc, x));
        let n1 = f.add(a1, m(c(2), s));
        let n2 = f.sub(f.add(f.sub(a2, m(s, a1)), m(c(3), r)), m(s, s));
        let n3 = f.add(f.add(a3, m(r, a1)), m(c(2), t));
        let n4 = f.sub(
            f.add(f.add(f.sub(a4, m(s, a3)), m(c(2), m(r, a2))), m(c(3), m(r, r))),
            f.add(m(f.add(t, m(r, s)), a1), m(c(2), m(s, t))),
        );
        let n6 = f.sub(
            f.add(f.add(f.add(a6, m(r, a4)), m(m(r, r), a2)), pow(r, 3)),
            f.add(f.add(m(t, a3), m(t, t)), m(m(r, t), a1)),
        );
        [m(n1, ui), m(n2, pow(ui, 2)), m(n3, pow(ui, 3)), m(n4, pow(ui, 4)), m(n6, pow(ui, 6))]
    }

    fn affine_points(gf: &Gf, a: &Weierstrass, degree: u32, tower: &FieldTower) -> i128 {
        let big = tower.field(degree);
        let emb = tower.embedding(degree);
        let c: Vec<_> = a.iter().map(|&v| emb.map(gf.from_int(v))).collect();
        let mut n = 0;
        for x in big.elements() {
            for y in big.elements() {
                let lhs = big.add(big.add(big.mul(y, y), big.mul(c[0], big.mul(x, y))), big.mul(c[2], y));
                let x2 = big.mul(x, x);
                let rhs = big.add(
                    big.add(big.mul(x2, x), big.mul(c[1], x2)),
                    big.add(big.mul(c[3], x), c[4]),
                );
                if lhs == rhs {
                    n += 1;
                }
            }
        }
        n + 1
    }

    /// Isomorphism classes by explicit orbits, weighted by `1/(N_1 |Aut|)`.
    fn orbit_oracle(q: u64, lambdas: &[Partition]) -> Vec<BigRational> {
        let gf = Gf::with_order(q).unwrap();
        let f = IntField::new(&gf);
        let tower = FieldTower::new(q, 2).unwrap();
        let qq = q as u32;
        let mut group = Vec::new();
        for u in 1..qq {
            for r in 0..qq {
                for s in 0..qq {
                    for t in 0..qq {
                        group.push([u, r, s, t]);
                    }
                }
            }
        }
        let mut seen = BTreeSet::new();
        let mut totals = vec![BigRational::zero(); lambdas.len()];
        for idx in 0..q.pow(5) {
            let mut v = idx;
            let mut a = [0u32; 5];
            for slot in a.iter_mut() {
                *slot = (v % q) as u32;
                v /= q;
            }
            if discriminant(&f, &a) == 0 || seen.contains(&a) {
                continue;
            }
            let images: Vec<Weierstrass> = group.iter().map(|&g| transform(&f, &gf, &a, g)).collect();
            let stab = images.iter().filter(|&&b| b == a).count() as i64;
            seen.extend(images);
            let n1 = affine_points(&gf, &a, 1, &tower);
            let n2 = affine_points(&gf, &a, 2, &tower);
            for (slot, lambda) in totals.iter_mut().zip(lambdas) {
                let t = lambda_tuples_from_point_counts(lambda, &[n1, n2]).unwrap();
                *slot += ratio(t as i64, n1 as i64 * stab);
            }
        }
        totals
    }

    #[test]
    fn one_pointed_counts() {
        for q in [2u64, 3, 4, 5, 7] {
            assert_eq!(genus1_count(q, &Partition::row(1)).unwrap().value, rat(q as i64), "q={q}");
        }
    }

    #[test]
    fn census_matches_orbit_oracle() {
        let lambdas: Vec<Partition> = ["1", "1,1", "2"].iter().map(|s| s.parse().unwrap()).collect();
        for q in [2u64, 3] {
            let oracle = orbit_oracle(q, &lambdas);
            let census = WeierstrassCensus::run(q).unwrap();
            for (lambda, expect) in lambdas.iter().zip(&oracle) {
                assert_eq!(&census.count(lambda).unwrap(), expect, "q={q} {lambda}");
            }
        }
        assert_eq!(orbit_oracle(2, &lambdas[..1])[0], rat(2));
    }

    #[test]
    fn smooth_model_count() {
        // q^4 (q - 1) smooth Weierstrass tuples
        for q in [2u64, 3, 4, 5] {
            let census = WeierstrassCensus::run(q).unwrap();
            assert_eq!(census.by_trace.values().sum::<u64>(), q.pow(4) * (q - 1));
        }
    }

    #[test]
    fn weil_recursion_matches_direct_count_over_quadratic_extension() {
        for q in [2u64, 3, 4] {
            let gf = Gf::with_order(q).unwrap();
            let f = IntField::new(&gf);
            let tower = FieldTower::new(q, 2).unwrap();
            for idx in 0..q.pow(5) {
                let mut v = idx;
                let mut a = [0u32; 5];
                for slot in a.iter_mut() {
                    *slot = (v % q) as u32;
                    v /= q;
                }
                if discriminant(&f, &a) == 0 {
                    continue;
                }
                let n1 = affine_points(&gf, &a, 1, &tower);
                let n2 = affine_points(&gf, &a, 2, &tower);
                let trace = q as i64 + 1 - n1 as i64;
                assert_eq!(point_counts(q, trace, 2), vec![n1, n2], "q={q} {a:?}");
            }
        }
    }

    #[test]
    fn empty_lambda_rejected() {
        assert!(genus1_count(2, &Partition::empty()).is_err());
        assert!(genus1_count(2, &Partition::row(7)).is_err());
    }
}
