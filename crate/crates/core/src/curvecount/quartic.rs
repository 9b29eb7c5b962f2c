//! Plane quartic census over `F_2` and `F_3`.
//!
//! A quartic form is singular exactly when it vanishes together with its
//! three partial derivatives at some point of the plane over the algebraic
//! closure. Every singular quartic has such a point of degree at most six:
//! a reduced quartic has at most six singular points, and a non-reduced one
//! is singular along a line or conic with points of degree one or two.
//!
//! Two routes are provided. The sieve route marks, for each closed point of
//! degree at most six, every form singular there (the kernel of a linear
//! system), then counts tuples through the transitivity of `PGL_3` on each
//! tuple type. The scan route tests each form against every closed point
//! with early exit and counts its points directly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::tuples::lambda_tuples_from_point_counts;
use super::{CountRecord, SpaceId, SpaceKind};
use crate::error::{input, Error, Result};
use crate::ffield::{is_prime, FieldTower, Gf, GfElem};
use crate::partition::Partition;

pub const MONOMIALS: usize = 15;
pub const SINGULAR_SCAN_DEGREE: usize = 6;

/// Exponents `(i, j, k)` of `x^i y^j z^k`, `i + j + k = 4`, in the order
/// used to index forms.
pub fn monomials() -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(MONOMIALS);
    for i in (0..=4).rev() {
        for j in (0..=4 - i).rev() {
            out.push([i, j, 4 - i - j]);
        }
    }
    out
}

/// `|P^k(F_q)|`.
pub fn projective_space_points(k: usize, q: u64) -> u64 {
    (0..=k as u32).map(|i| q.pow(i)).sum()
}

pub fn pgl3_order(q: u64) -> u64 {
    q.pow(3) * (q.pow(3) - 1) * (q * q - 1)
}

fn check_field(q: u64) -> Result<()> {
    if !(q == 2 || q == 3) || !is_prime(q) {
        return Err(Error::Unsupported(format!("quartic census runs over F_2 and F_3 only, got q={q}")));
    }
    Ok(())
}

/// A closed point of the plane: one representative over `F_{q^e}`, with the
/// values of every monomial and of its three partial derivatives there.
#[derive(Clone, Debug)]
pub struct ClosedPoint {
    pub degree: usize,
    pub coords: [GfElem; 3],
    /// `rows[0]` evaluates `F`, `rows[1..4]` evaluate `dF/dx, dF/dy, dF/dz`.
    pub rows: [[GfElem; MONOMIALS]; 4],
}

/// Normalized points of `P^2(F)`: first nonzero coordinate one.
fn plane_points(field: &Gf) -> Vec<[GfElem; 3]> {
    let els: Vec<GfElem> = field.elements_by_int().collect();
    let mut out = Vec::with_capacity(els.len() * els.len() + els.len() + 1);
    for &a in &els {
        for &b in &els {
            out.push([field.one(), a, b]);
        }
    }
    for &b in &els {
        out.push([field.zero(), field.one(), b]);
    }
    out.push([field.zero(), field.zero(), field.one()]);
    out
}

fn point_index(field: &Gf, p: &[GfElem; 3]) -> usize {
    let q = field.order() as usize;
    let i = |x: GfElem| field.to_int(x) as usize;
    if !p[0].is_zero() {
        i(p[1]) * q + i(p[2])
    } else if !p[1].is_zero() {
        q * q + i(p[2])
    } else {
        q * q + q
    }
}

/// Representatives of the closed points of exact degree `e`.
pub fn closed_points(tower: &FieldTower, e: usize) -> Vec<ClosedPoint> {
    let field = tower.field(e as u32);
    let points = plane_points(field);
    let mut seen = vec![false; points.len()];
    let mons = monomials();
    let mut out = Vec::new();
    for p in &points {
        if seen[point_index(field, p)] {
            continue;
        }
        let mut orbit = 0;
        let mut cur = *p;
        loop {
            seen[point_index(field, &cur)] = true;
            orbit += 1;
            cur = cur.map(|c| tower.frobenius(e as u32, c));
            if cur == *p {
                break;
            }
        }
        if orbit != e {
            continue;
        }
        let pw = |c: GfElem, k: usize| field.pow(c, k as u64);
        let mut rows = [[GfElem::ZERO; MONOMIALS]; 4];
        for (m, exps) in mons.iter().enumerate() {
            rows[0][m] = exps.iter().zip(p).fold(field.one(), |acc, (&k, &c)| field.mul(acc, pw(c, k)));
            for var in 0..3 {
                if exps[var] == 0 {
                    continue;
                }
                let mut v = field.from_i64(exps[var] as i64);
                for (w, (&k, &c)) in exps.iter().zip(p).enumerate() {
                    let k = if w == var { k - 1 } else { k };
                    v = field.mul(v, pw(c, k));
                }
                rows[1 + var][m] = v;
            }
        }
        out.push(ClosedPoint { degree: e, coords: *p, rows });
    }
    out
}

/// Closed points of degree `1..=max_degree`, lowest degree first.
pub fn closed_points_up_to(tower: &FieldTower, max_degree: usize) -> Vec<ClosedPoint> {
    (1..=max_degree).flat_map(|e| closed_points(tower, e)).collect()
}

fn digits(mut idx: usize, q: usize) -> [u32; MONOMIALS] {
    let mut c = [0u32; MONOMIALS];
    for slot in c.iter_mut() {
        *slot = (idx % q) as u32;
        idx /= q;
    }
    c
}

fn index_of(c: &[u32; MONOMIALS], q: usize) -> usize {
    c.iter().rev().fold(0, |acc, &d| acc * q + d as usize)
}

fn dot(field: &Gf, coeffs: &[u32; MONOMIALS], row: &[GfElem; MONOMIALS]) -> GfElem {
    let mut acc = GfElem::ZERO;
    for (&c, &v) in coeffs.iter().zip(row) {
        if c != 0 {
            acc = field.add(acc, field.mul(field.from_int(c), v));
        }
    }
    acc
}

/// Whether the form vanishes with all partials at `point`.
pub fn singular_at(tower: &FieldTower, coeffs: &[u32; MONOMIALS], point: &ClosedPoint) -> bool {
    let field = tower.field(point.degree as u32);
    point.rows.iter().all(|row| dot(field, coeffs, row).is_zero())
}

/// Null space over `F_p` of a matrix with `MONOMIALS` columns.
fn kernel(rows: &mut [[u32; MONOMIALS]], p: u32) -> Vec<[u32; MONOMIALS]> {
    let inv = |a: u32| (1..p).find(|b| a * b % p == 1).expect("nonzero");
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..MONOMIALS {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let s = inv(rows[r][col]);
        for v in rows[r].iter_mut() {
            *v = *v * s % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in 0..MONOMIALS {
                    rows[i][j] = (rows[i][j] + p * p - f * rows[r][j]) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..MONOMIALS).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = [0u32; MONOMIALS];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[i][fc]) % p;
            }
            v
        })
        .collect()
}

/// Calls `visit` with the index of every vector in the span of `basis`.
fn for_each_in_span(basis: &[[u32; MONOMIALS]], p: u32, mut visit: impl FnMut(usize)) {
    let q = p as usize;
    let mut coeff = vec![0u32; basis.len()];
    let mut v = [0u32; MONOMIALS];
    loop {
        visit(index_of(&v, q));
        let mut j = 0;
        loop {
            if j == basis.len() {
                return;
            }
            for (x, b) in v.iter_mut().zip(&basis[j]) {
                *x = (*x + b) % p;
            }
            coeff[j] = (coeff[j] + 1) % p;
            if coeff[j] != 0 {
                break;
            }
            j += 1;
        }
    }
}

/// Linear conditions over `F_p` expressing that a row over `F_{p^e}` pairs to
/// zero with the coefficient vector.
fn expand_rows(field: &Gf, rows: &[[GfElem; MONOMIALS]]) -> Vec<[u32; MONOMIALS]> {
    let p = field.characteristic();
    let e = field.degree() as usize;
    let mut out = Vec::with_capacity(rows.len() * e);
    for row in rows {
        let ints: Vec<u32> = row.iter().map(|&v| field.to_int(v)).collect();
        for t in 0..e {
            let mut r = [0u32; MONOMIALS];
            for (m, &v) in ints.iter().enumerate() {
                r[m] = (v / p.pow(t as u32)) % p;
            }
            out.push(r);
        }
    }
    out
}

/// `singular[idx]` for every coefficient vector, by marking the forms
/// singular at each closed point of degree at most `max_degree`.
pub fn singular_bitmap(q: u64, max_degree: usize) -> Result<Vec<bool>> {
    check_field(q)?;
    let tower = FieldTower::new(q, max_degree as u32)?;
    let p = q as u32;
    let mut singular = vec![false; (q as usize).pow(MONOMIALS as u32)];
    for e in 1..=max_degree {
        let field = tower.field(e as u32);
        for point in closed_points(&tower, e) {
            let mut rows = expand_rows(field, &point.rows);
            let basis = kernel(&mut rows, p);
            for_each_in_span(&basis, p, |idx| singular[idx] = true);
        }
    }
    Ok(singular)
}

/// Sums over smooth quartic curves (one form per scalar class) of the
/// number of `lambda`-tuples, for `|lambda| <= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticCensus {
    pub q: u64,
    pub tuple_sums: BTreeMap<Partition, u64>,
}

fn small_partitions() -> Vec<Partition> {
    Partition::all_up_to(2)
}

impl QuarticCensus {
    /// Sieve route, using transitivity of `PGL_3` on points, on ordered
    /// pairs of rational points and on points of degree two.
    pub fn run_sieve(q: u64) -> Result<Self> {
        let singular = singular_bitmap(q, SINGULAR_SCAN_DEGREE)?;
        let tower = FieldTower::new(q, 2)?;
        let mons = monomials();
        let position = |e: [usize; 3]| mons.iter().position(|m| *m == e).expect("monomial");
        // forms through prescribed points are coordinate subspaces or kernels
        let count_smooth = |basis: &[[u32; MONOMIALS]]| {
            let mut n = 0u64;
            for_each_in_span(basis, q as u32, |idx| {
                if idx != 0 && !singular[idx] {
                    n += 1;
                }
            });
            n
        };
        let unit = |m: usize| {
            let mut v = [0u32; MONOMIALS];
            v[m] = 1;
            v
        };
        let all: Vec<_> = (0..MONOMIALS).map(unit).collect();
        let x4 = position([4, 0, 0]);
        let y4 = position([0, 4, 0]);
        let through_x: Vec<_> = (0..MONOMIALS).filter(|&m| m != x4).map(unit).collect();
        let through_xy: Vec<_> = (0..MONOMIALS).filter(|&m| m != x4 && m != y4).map(unit).collect();
        let beta = closed_points(&tower, 2).into_iter().next().expect("degree-two point");
        let mut rows = expand_rows(tower.field(2), &beta.rows[..1]);
        let through_beta = kernel(&mut rows, q as u32);

        let scalars = q - 1;
        let plane = projective_space_points(2, q);
        let quadratic = q.pow(4) - q;
        let mut tuple_sums = BTreeMap::new();
        tuple_sums.insert(Partition::empty(), count_smooth(&all) / scalars);
        tuple_sums.insert(Partition::row(1), plane * count_smooth(&through_x) / scalars);
        tuple_sums.insert(Partition::column(2), plane * (plane - 1) * count_smooth(&through_xy) / scalars);
        tuple_sums.insert(Partition::row(2), quadratic * count_smooth(&through_beta) / scalars);
        debug_assert_eq!(tuple_sums.len(), small_partitions().len());
        Ok(QuarticCensus { q, tuple_sums })
    }

    /// Scan route: every form normalized to leading coefficient one, tested
    /// point by point with early exit, points counted directly.
    pub fn run_scan(q: u64, max_degree: usize) -> Result<Self> {
        check_field(q)?;
        let tower = FieldTower::new(q, max_degree.max(2) as u32)?;
        let points = closed_points_up_to(&tower, max_degree);
        let qq = q as usize;
        let rational: Vec<ClosedPoint> = closed_points(&tower, 1);
        let f2 = tower.field(2);
        let quad_points: Vec<[GfElem; MONOMIALS]> = plane_points(f2)
            .iter()
            .map(|p| {
                let mut row = [GfElem::ZERO; MONOMIALS];
                for (m, exps) in monomials().iter().enumerate() {
                    row[m] = exps.iter().zip(p).fold(f2.one(), |acc, (&k, &c)| f2.mul(acc, f2.pow(c, k as u64)));
                }
                row
            })
            .collect();
        let lambdas = small_partitions();
        let mut tuple_sums: BTreeMap<Partition, u64> = lambdas.iter().map(|l| (l.clone(), 0)).collect();
        for idx in 1..qq.pow(MONOMIALS as u32) {
            let coeffs = digits(idx, qq);
            // one representative per scalar class: highest nonzero coefficient is one
            if coeffs.iter().rev().find(|&&c| c != 0) != Some(&1) {
                continue;
            }
            if points.iter().any(|pt| singular_at(&tower, &coeffs, pt)) {
                continue;
            }
            let n1 = rational.iter().filter(|pt| dot(tower.base(), &coeffs, &pt.rows[0]).is_zero()).count();
            let n2 = quad_points.iter().filter(|row| dot(f2, &coeffs, row).is_zero()).count();
            for lambda in &lambdas {
                let t = lambda_tuples_from_point_counts(lambda, &[n1 as i128, n2 as i128])?;
                *tuple_sums.get_mut(lambda).expect("listed") += t as u64;
            }
        }
        Ok(QuarticCensus { q, tuple_sums })
    }

    pub fn count(&self, lambda: &Partition) -> Result<BigRational> {
        let sum = self
            .tuple_sums
            .get(lambda)
            .ok_or_else(|| Error::Input(format!("quartic counts cover |lambda| <= 2, got {lambda}")))?;
        Ok(BigRational::new(BigInt::from(*sum), BigInt::from(pgl3_order(self.q))))
    }

    pub fn counts_by_cycle_type(&self, n: usize) -> Result<BTreeMap<Partition, BigRational>> {
        Partition::all(n).into_iter().map(|mu| Ok((mu.clone(), self.count(&mu)?))).collect()
    }
}

pub fn quartic_count(q: u64, lambda: &Partition) -> Result<CountRecord> {
    check_field(q)?;
    if lambda.weight() > 2 {
        return input(format!("quartic counts cover |lambda| <= 2, got {lambda}"));
    }
    let census = QuarticCensus::run_sieve(q)?;
    Ok(CountRecord {
        space: SpaceId::new(SpaceKind::Q, 3, lambda.weight())?,
        q,
        lambda: lambda.clone(),
        value: census.count(lambda)?,
    })
}

/// Cycle-type counts of `Q_n` at `q`, through the cache.
pub fn quartic_cycle_counts(
    n: usize,
    q: u64,
    cache: &super::cache::CountCache,
) -> Result<BTreeMap<Partition, BigRational>> {
    check_field(q)?;
    if n > 2 {
        return input(format!("quartic counts cover n <= 2, got {n}"));
    }
    let space = SpaceId::new(SpaceKind::Q, 3, n)?;
    cache.get_or_compute(space, q, &Partition::all(n), || QuarticCensus::run_sieve(q)?.counts_by_cycle_type(n))
}

/// Truncated two-singularity sieve for the curves through one rational
/// point, in closed form.
pub fn sieve_s2p_point(q: u64) -> i128 {
    let pk = |k: usize| projective_space_points(k, q) as i128;
    let q = q as i128;
    let a = q * q + q;
    pk(13) - pk(11) - a * pk(10) - (q.pow(4) - q) / 2 * pk(7) + a * pk(8) + a * (a - 1) / 2 * pk(7)
}
