//! Projection of cycle-type counts onto isotypic components, polynomial
//! interpolation in `q`, and the substitution `q -> L`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{SpaceId, TraceKind, TracePolynomial};
use crate::error::{input, Error, Result};
use crate::lpoly::LPoly;
use crate::partition::{factorial, Partition};
use crate::symfunc::character;

fn class_weight(lambda: &Partition, mu: &Partition) -> Result<BigRational> {
    let chi = character(lambda, mu)?;
    Ok(BigRational::new(
        BigInt::from(mu.class_size()) * BigInt::from(chi),
        BigInt::from(factorial(mu.weight())),
    ))
}

/// Schur coefficient `(1/n!) sum_mu |class mu| chi_lambda(mu) count(mu)`.
pub fn equivariant_coeff(lambda: &Partition, counts: &BTreeMap<Partition, BigRational>) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for mu in Partition::all(lambda.weight()) {
        let c = counts
            .get(&mu)
            .ok_or_else(|| Error::Input(format!("no count for cycle type {mu}")))?;
        acc += class_weight(lambda, &mu)? * c;
    }
    Ok(acc)
}

/// As [`equivariant_coeff`] for counts that are polynomials.
pub fn equivariant_coeff_poly(lambda: &Partition, counts: &BTreeMap<Partition, LPoly>) -> Result<LPoly> {
    let mut acc = LPoly::zero();
    for mu in Partition::all(lambda.weight()) {
        let c = counts
            .get(&mu)
            .ok_or_else(|| Error::Input(format!("no count for cycle type {mu}")))?;
        acc += &c.scale(&class_weight(lambda, &mu)?);
    }
    Ok(acc)
}

/// All Schur coefficients of a full table of cycle-type counts.
pub fn isotypic_decomposition(n: usize, counts: &BTreeMap<Partition, LPoly>) -> Result<BTreeMap<Partition, LPoly>> {
    Partition::all(n)
        .into_iter()
        .map(|lambda| Ok((lambda.clone(), equivariant_coeff_poly(&lambda, counts)?)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct InterpolationOptions {
    pub require_nonnegative: bool,
    /// Overrides the dimension bound on the degree.
    pub max_degree: Option<usize>,
}

impl Default for InterpolationOptions {
    fn default() -> Self {
        InterpolationOptions { require_nonnegative: true, max_degree: None }
    }
}

/// Exact Lagrange interpolation through `samples`.
pub fn lagrange(samples: &[(u64, BigRational)]) -> Result<LPoly> {
    let mut acc = LPoly::zero();
    for (i, (xi, yi)) in samples.iter().enumerate() {
        let mut basis = LPoly::one();
        let mut denom = BigRational::from_integer(BigInt::from(1));
        for (j, (xj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            if xi == xj {
                return input(format!("repeated sample point q={xi}"));
            }
            let xj = BigRational::from_integer(BigInt::from(*xj));
            basis = &basis * &LPoly::from_coeffs(vec![-xj.clone(), BigRational::from_integer(BigInt::from(1))]);
            denom *= BigRational::from_integer(BigInt::from(*xi)) - xj;
        }
        acc += &basis.scale(&(yi / denom));
    }
    Ok(acc)
}

/// Interpolates a trace polynomial and validates it: degree at most the
/// dimension, integer coefficients, optionally nonnegative coefficients,
/// and agreement with the held-out sample.
pub fn interpolate(
    space: SpaceId,
    lambda: &Partition,
    samples: &[(u64, BigRational)],
    holdout: &(u64, BigRational),
    opts: &InterpolationOptions,
) -> Result<TracePolynomial> {
    let bound = opts.max_degree.unwrap_or(space.dimension());
    if samples.len() < bound + 1 {
        return input(format!("{} samples cannot determine a polynomial of degree {bound}", samples.len()));
    }
    let poly = lagrange(samples)?;
    let fail = |what: String| Err(Error::Polynomiality(format!("{space} {lambda}: {what}")));
    if poly.degree().is_some_and(|d| d > bound) {
        return fail(format!("degree {:?} exceeds {bound} ({poly})", poly.degree()));
    }
    if !poly.is_integral() {
        return fail(format!("non-integral coefficients ({poly})"));
    }
    if opts.require_nonnegative && !poly.is_nonnegative() {
        return fail(format!("negative coefficients ({poly})"));
    }
    let predicted = poly.eval_int(holdout.0 as i64);
    if predicted != holdout.1 {
        return fail(format!("holdout q={} predicts {predicted}, census gives {}", holdout.0, holdout.1));
    }
    Ok(TracePolynomial { space, lambda: lambda.clone(), kind: TraceKind::Isotypic, poly, validated: true })
}

/// Formal substitution `q -> L`.
pub fn to_hodge(tp: &TracePolynomial) -> Result<LPoly> {
    if !tp.validated {
        return input(format!("trace polynomial for {} {} has not been validated", tp.space, tp.lambda));
    }
    Ok(tp.poly.clone())
}
