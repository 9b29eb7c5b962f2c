//! Genus zero: `PGL_2` acts freely on tuples of at least three distinct
//! points of the projective line, so every count is a polynomial quotient.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::equivariant::isotypic_decomposition;
use super::tuples::lambda_tuples_on_p1;
use super::{SpaceId, SpaceKind, TraceKind, TracePolynomial};
use crate::error::{input, Error, Result};
use crate::lpoly::LPoly;
use crate::partition::Partition;

/// `|PGL_2(F_q)| = q^3 - q`.
pub fn pgl2_order() -> LPoly {
    LPoly::from_ints(&[0, -1, 0, 1])
}

/// Fixed-point count of `sigma * Frobenius` on `M_{0,n}` for `sigma` of
/// cycle type `lambda`, as a polynomial in `q`.
pub fn genus0_cycle_count(lambda: &Partition) -> Result<LPoly> {
    let n = lambda.weight();
    if !(3..=8).contains(&n) {
        return input(format!("genus-0 counts need 3 <= n <= 8, got {n}"));
    }
    let tuples = lambda_tuples_on_p1(lambda);
    let poly = tuples
        .div_exact(&pgl2_order())
        .ok_or_else(|| Error::Data(format!("tuple count {tuples} not divisible by q^3-q")))?;
    assert!(poly.is_integral(), "genus-0 count {poly} for {lambda} is not integral");
    Ok(poly)
}

/// Raw trace polynomials, one per cycle type of `S_n`.
pub fn genus0_trace(n: usize) -> Result<Vec<TracePolynomial>> {
    let space = SpaceId::new(SpaceKind::M, 0, n)?;
    Partition::all(n)
        .into_iter()
        .map(|lambda| {
            let poly = genus0_cycle_count(&lambda)?;
            Ok(TracePolynomial { space, lambda, kind: TraceKind::CycleType, poly, validated: true })
        })
        .collect()
}

/// Schur coefficients of `M_{0,n}` as polynomials in `q`.
pub fn genus0_isotypic(n: usize) -> Result<BTreeMap<Partition, LPoly>> {
    let counts: BTreeMap<Partition, LPoly> =
        genus0_trace(n)?.into_iter().map(|tp| (tp.lambda, tp.poly)).collect();
    isotypic_decomposition(n, &counts)
}

pub fn genus0_count_at(lambda: &Partition, q: u64) -> Result<BigRational> {
    Ok(genus0_cycle_count(lambda)?.eval_int(q as i64))
}
