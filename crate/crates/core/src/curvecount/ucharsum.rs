//! Character sums over square-free polynomials at tuples of points of the
//! projective line, by direct summation and by the square-part recursion.
//!
//! For points `alpha_i` of exact degree `lambda_i`,
//! `u_g = sum_f prod_i chi_{lambda_i}(f(alpha_i))` over the square-free `f`
//! of degree `2g+1` or `2g+2`, with `f(infinity)` the coefficient of
//! `x^{2g+2}`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::hyperelliptic::squarefree_monic_table;
use crate::error::{input, Error, Result};
use crate::ffield::{FieldTower, GfElem, IntField, P1Point};
use crate::partition::Partition;

/// Distinct closed points of the projective line, each given by one
/// representative `(degree, point)` with the point in `F_{q^degree}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PointTuple {
    points: Vec<(u32, P1Point)>,
}

fn orbit(tower: &FieldTower, m: u32, x: GfElem) -> Vec<GfElem> {
    let mut out = vec![x];
    let mut cur = tower.frobenius(m, x);
    while cur != x {
        out.push(cur);
        cur = tower.frobenius(m, cur);
    }
    out
}

/// Smallest integer code in the Frobenius orbit; infinity is coded `q^m`.
fn point_code(tower: &FieldTower, m: u32, p: P1Point) -> u64 {
    match p {
        P1Point::Infinity => tower.q().pow(m),
        P1Point::Finite(x) => {
            let f = tower.field(m);
            orbit(tower, m, x).into_iter().map(|y| f.to_int(y) as u64).min().expect("orbit")
        }
    }
}

impl PointTuple {
    pub fn new(tower: &FieldTower, points: Vec<(u32, P1Point)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(m, p) in &points {
            if m == 0 || m > tower.max_degree() {
                return input(format!("point degree {m} outside the field tower"));
            }
            match p {
                P1Point::Infinity if m != 1 => return input("infinity is a point of degree one"),
                P1Point::Finite(x) if orbit(tower, m, x).len() != m as usize => {
                    return input(format!("point is not of exact degree {m}"));
                }
                _ => {}
            }
            if !seen.insert((m, point_code(tower, m, p))) {
                return input("tuple repeats a closed point");
            }
        }
        Ok(PointTuple { points })
    }

    pub fn points(&self) -> &[(u32, P1Point)] {
        &self.points
    }

    pub fn lambda(&self) -> Partition {
        Partition::from_unsorted(self.points.iter().map(|&(m, _)| m as usize).collect())
    }

    pub fn weight(&self) -> usize {
        self.points.iter().map(|&(m, _)| m as usize).sum()
    }

    fn has_infinity(&self) -> bool {
        self.points.iter().any(|&(_, p)| p == P1Point::Infinity)
    }

    fn finite_degrees(&self) -> Vec<usize> {
        self.points.iter().filter(|&&(_, p)| p != P1Point::Infinity).map(|&(m, _)| m as usize).collect()
    }

    fn key(&self, tower: &FieldTower) -> Vec<(u32, u64)> {
        let mut k: Vec<_> = self.points.iter().map(|&(m, p)| (m, point_code(tower, m, p))).collect();
        k.sort_unstable();
        k
    }
}

fn check_odd(tower: &FieldTower) -> Result<()> {
    if tower.q().is_multiple_of(2) {
        return Err(Error::Unsupported("character sums need odd q".into()));
    }
    Ok(())
}

/// `sum_{c in F_q^*} chi(c)^n`.
pub fn epsilon(q: u64, n: usize) -> i128 {
    if n.is_multiple_of(2) {
        q as i128 - 1
    } else {
        0
    }
}

/// Sum over monic square-free `f` of one degree of the character product.
fn monic_sum(tower: &FieldTower, ints: &IntField, degree: usize, tuple: &PointTuple) -> i128 {
    let q = tower.q() as usize;
    let table = squarefree_monic_table(ints, degree);
    // vals[i][k * q + c] = c * alpha_i^k in F_{q^m}
    let finite: Vec<(u32, Vec<GfElem>)> = tuple
        .points
        .iter()
        .filter_map(|&(m, p)| match p {
            P1Point::Infinity => None,
            P1Point::Finite(x) => {
                let f = tower.field(m);
                let emb = tower.embedding(m);
                let mut vals = Vec::with_capacity((degree + 1) * q);
                for k in 0..=degree {
                    let xk = f.pow(x, k as u64);
                    for c in 0..q {
                        vals.push(f.mul(emb.map(tower.base().from_int(c as u32)), xk));
                    }
                }
                Some((m, vals))
            }
        })
        .collect();
    (0..table.len())
        .into_par_iter()
        .filter(|&idx| table[idx])
        .map(|idx| {
            let mut sign = 1i128;
            for (m, vals) in &finite {
                let f = tower.field(*m);
                let mut acc = vals[degree * q + 1];
                let mut v = idx;
                for k in 0..degree {
                    acc = f.add(acc, vals[k * q + v % q]);
                    v /= q;
                }
                sign *= f.chi(acc) as i128;
                if sign == 0 {
                    break;
                }
            }
            sign
        })
        .sum()
}

/// `u_g` by summing over every square-free polynomial.
pub fn u_direct(tower: &FieldTower, g: usize, tuple: &PointTuple) -> Result<i128> {
    check_odd(tower)?;
    let ints = IntField::new(tower.base());
    let eps = epsilon(tower.q(), tuple.weight());
    if eps == 0 {
        return Ok(0);
    }
    // a scalar c multiplies the product by chi(c)^n, and f(infinity) = 0 in odd degree
    let odd = if tuple.has_infinity() { 0 } else { monic_sum(tower, &ints, 2 * g + 1, tuple) };
    let even = monic_sum(tower, &ints, 2 * g + 2, tuple);
    Ok(eps * (odd + even))
}

/// `b_j` for `j = 0..=max_j`: monic polynomials of degree `j` nonzero at
/// every finite point of the tuple.
pub fn b_coefficients(q: u64, tuple: &PointTuple, max_j: usize) -> Vec<i128> {
    let degrees = tuple.finite_degrees();
    let q = q as i128;
    (0..=max_j)
        .map(|j| {
            (0u32..1 << degrees.len())
                .map(|mask| {
                    let d: usize = (0..degrees.len()).filter(|i| mask >> i & 1 == 1).map(|i| degrees[i]).sum();
                    let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                    if d <= j {
                        sign * q.pow((j - d) as u32)
                    } else {
                        0
                    }
                })
                .sum()
        })
        .collect()
}

/// `U_g`: the character sum over all polynomials of degree `2g+1` or
/// `2g+2`, known in closed form once `2g+1 >= n`.
fn big_u(q: u64, g: usize, tuple: &PointTuple) -> i128 {
    if tuple.points.is_empty() {
        let q = q as i128;
        return (q - 1) * q.pow(2 * g as u32 + 1) * (q + 1);
    }
    // the first n coefficients map onto the values at the points, so the
    // product averages to zero
    0
}

/// `u_g` from the values for `2g'+1 < n` and the relation
/// `U_g = eps * b_{g+1} + sum_i b_i u_{g-i}`.
pub fn u_recursive(tower: &FieldTower, g: usize, tuple: &PointTuple) -> Result<i128> {
    check_odd(tower)?;
    let q = tower.q();
    let n = tuple.weight();
    let eps = epsilon(q, n);
    let b = b_coefficients(q, tuple, g + 1);
    let mut u: Vec<i128> = Vec::with_capacity(g + 1);
    for h in 0..=g {
        let value = if 2 * h + 1 < n {
            u_direct(tower, h, tuple)?
        } else {
            let tail: i128 = (1..=h).map(|i| b[i] * u[h - i]).sum();
            big_u(q, h, tuple) - eps * b[h + 1] - tail
        };
        u.push(value);
    }
    Ok(u[g])
}

fn mobius(tower: &FieldTower, m: u32, abcd: [GfElem; 4], p: P1Point) -> P1Point {
    let f = tower.field(m);
    let e = tower.embedding(m);
    let [a, b, c, d] = abcd.map(|x| e.map(x));
    match p {
        P1Point::Infinity if c.is_zero() => P1Point::Infinity,
        P1Point::Infinity => P1Point::Finite(f.div(a, c).expect("nonzero")),
        P1Point::Finite(x) => {
            let den = f.add(f.mul(c, x), d);
            if den.is_zero() {
                P1Point::Infinity
            } else {
                P1Point::Finite(f.div(f.add(f.mul(a, x), b), den).expect("nonzero"))
            }
        }
    }
}

/// One tuple for every orbit of `PGL_2(F_q)` on the unordered
/// `lambda`-tuples of distinct closed points.
pub fn tuple_orbit_reps(tower: &FieldTower, lambda: &Partition) -> Result<Vec<PointTuple>> {
    let base = tower.base();
    let mut candidates: Vec<Vec<P1Point>> = Vec::new();
    for m in 1..=lambda.largest().max(1) as u32 {
        let mut pts: Vec<P1Point> = tower.closed_point_reps(m).into_iter().map(P1Point::Finite).collect();
        if m == 1 {
            pts.push(P1Point::Infinity);
        }
        candidates.push(pts);
    }
    let group: Vec<[GfElem; 4]> = {
        let els: Vec<GfElem> = base.elements().collect();
        let mut out = Vec::new();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    for &d in &els {
                        if !base.sub(base.mul(a, d), base.mul(b, c)).is_zero() {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    };
    let parts = lambda.parts().to_vec();
    let mut reps = Vec::new();
    let mut seen = BTreeSet::new();
    // choose indices, non-decreasing-free within equal parts to skip permutations
    let mut choice = vec![0usize; parts.len()];
    fn rec(
        i: usize,
        parts: &[usize],
        candidates: &[Vec<P1Point>],
        choice: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if i == parts.len() {
            visit(choice);
            return;
        }
        let start = if i > 0 && parts[i] == parts[i - 1] { choice[i - 1] + 1 } else { 0 };
        for k in start..candidates[parts[i] - 1].len() {
            choice[i] = k;
            rec(i + 1, parts, candidates, choice, visit);
        }
    }
    let mut error = None;
    rec(0, &parts, &candidates, &mut choice, &mut |ch: &[usize]| {
        let points: Vec<(u32, P1Point)> =
            parts.iter().zip(ch).map(|(&m, &k)| (m as u32, candidates[m - 1][k])).collect();
        let tuple = match PointTuple::new(tower, points) {
            Ok(t) => t,
            Err(e) => {
                error.get_or_insert(e);
                return;
            }
        };
        let canonical = group
            .iter()
            .map(|&g| {
                let moved = PointTuple {
                    points: tuple.points.iter().map(|&(m, p)| (m, mobius(tower, m, g, p))).collect(),
                };
                moved.key(tower)
            })
            .min()
            .unwrap_or_else(|| tuple.key(tower));
        if seen.insert(canonical) {
            reps.push(tuple);
        }
    });
    match error {
        Some(e) => Err(e),
        None => Ok(reps),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{eval_at_p1_point, is_squarefree, UniPoly};

    fn tower(q: u64) -> FieldTower {
        FieldTower::new(q, 4).unwrap()
    }

    fn zero_inf(t: &FieldTower) -> PointTuple {
        PointTuple::new(t, vec![(1, P1Point::Finite(GfElem::ZERO)), (1, P1Point::Infinity)]).unwrap()
    }

    /// Every polynomial of degree 2g+1 or 2g+2, points in the outer loop.
    fn naive(t: &FieldTower, g: usize, tuple: &PointTuple) -> i128 {
        let base = t.base();
        let q = t.q() as usize;
        let mut total = 0i128;
        for deg in [2 * g + 1, 2 * g + 2] {
            for idx in 0..q.pow(deg as u32 + 1) {
                let coeffs: Vec<u32> = (0..=deg).map(|k| (idx / q.pow(k as u32) % q) as u32).collect();
                if coeffs[deg] == 0 {
                    continue;
                }
                let f = UniPoly::from_ints(base, &coeffs);
                if !is_squarefree(base, &f).unwrap() {
                    continue;
                }
                let mut prod = 1i128;
                for &(m, p) in tuple.points() {
                    let big = t.field(m);
                    let fm = f.embed(t.embedding(m));
                    prod *= big.chi(eval_at_p1_point(big, &fm, p, g).unwrap()) as i128;
                }
                total += prod;
            }
        }
        total
    }

    #[test]
    fn zero_infinity_closed_form() {
        for q in [3u64, 5, 7] {
            let t = tower(q);
            let tuple = zero_inf(&t);
            let expected = -((q as i128 - 1).pow(2));
            for g in 0..=4 {
                assert_eq!(u_recursive(&t, g, &tuple).unwrap(), expected, "q={q} g={g}");
            }
            for g in 0..=if q == 3 { 3 } else { 1 } {
                assert_eq!(u_direct(&t, g, &tuple).unwrap(), expected, "q={q} g={g}");
            }
        }
    }

    #[test]
    fn direct_matches_naive() {
        let t = tower(3);
        for lambda in Partition::all_up_to(3) {
            for tuple in tuple_orbit_reps(&t, &lambda).unwrap() {
                for g in 0..=1 {
                    assert_eq!(u_direct(&t, g, &tuple).unwrap(), naive(&t, g, &tuple), "{lambda} {tuple:?} g={g}");
                }
            }
        }
        let zero_one = PointTuple::new(&t, vec![(1, P1Point::Finite(GfElem::ZERO)), (1, P1Point::Finite(t.base().one()))]).unwrap();
        assert_eq!(u_direct(&t, 0, &zero_one).unwrap(), naive(&t, 0, &zero_one));
    }

    #[test]
    fn odd_weight_vanishes() {
        let t = tower(5);
        for lambda in [Partition::row(1), Partition::row(3), Partition::new(vec![2, 1]).unwrap()] {
            for tuple in tuple_orbit_reps(&t, &lambda).unwrap() {
                assert_eq!(u_direct(&t, 1, &tuple).unwrap(), 0);
            }
        }
    }

    #[test]
    fn b_zero_is_one() {
        let t = tower(5);
        for lambda in Partition::all_up_to(4) {
            for tuple in tuple_orbit_reps(&t, &lambda).unwrap() {
                assert_eq!(b_coefficients(5, &tuple, 3)[0], 1);
            }
        }
    }

    #[test]
    fn b_counts_match_enumeration() {
        let t = tower(3);
        let base = t.base();
        let tuple = tuple_orbit_reps(&t, &Partition::new(vec![2, 1]).unwrap()).unwrap().remove(0);
        let b = b_coefficients(3, &tuple, 3);
        for j in 0..=3usize {
            let mut count = 0;
            for idx in 0..3usize.pow(j as u32) {
                let mut coeffs: Vec<u32> = (0..j).map(|k| (idx / 3usize.pow(k as u32) % 3) as u32).collect();
                coeffs.push(1);
                let l = UniPoly::from_ints(base, &coeffs);
                let ok = tuple.points().iter().all(|&(m, p)| match p {
                    P1Point::Infinity => true,
                    P1Point::Finite(x) => !l.embed(t.embedding(m)).eval(t.field(m), x).is_zero(),
                });
                count += ok as i128;
            }
            assert_eq!(b[j], count, "j={j}");
        }
    }

    #[test]
    fn orbit_reps_collapse_rational_triples() {
        let t = tower(5);
        assert_eq!(tuple_orbit_reps(&t, &Partition::new(vec![1, 1, 1]).unwrap()).unwrap().len(), 1);
        assert_eq!(tuple_orbit_reps(&t, &Partition::row(2)).unwrap().len(), 1);
    }

    #[test]
    fn rejects_bad_tuples() {
        let t = tower(3);
        let one = t.base().one();
        assert!(PointTuple::new(&t, vec![(2, P1Point::Finite(one))]).is_err());
        assert!(PointTuple::new(&t, vec![(1, P1Point::Finite(one)), (1, P1Point::Finite(one))]).is_err());
        assert!(u_direct(&FieldTower::new(4, 2).unwrap(), 0, &PointTuple::new(&FieldTower::new(4, 2).unwrap(), vec![]).unwrap()).is_err());
    }
}
