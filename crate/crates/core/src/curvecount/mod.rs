//! Equivariant point counts of moduli spaces of pointed curves over finite
//! fields and their assembly into trace polynomials.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{input, Error, Result};
use crate::lpoly::LPoly;
use crate::partition::Partition;

pub mod cache;
pub mod equivariant;
pub mod genus0;
pub mod genus1;
pub mod hyperelliptic;
pub mod quartic;
pub mod tuples;
pub mod ucharsum;

pub use equivariant::{equivariant_coeff, equivariant_coeff_poly, interpolate, to_hodge, InterpolationOptions};
pub use genus0::genus0_trace;
pub use genus1::genus1_count;
pub use hyperelliptic::hyperelliptic_count;
pub use quartic::{quartic_count, sieve_s2p_point};
pub use ucharsum::{u_direct, u_recursive, PointTuple};
pub use tuples::{closed_points_p1, closed_points_p1_at, lambda_tuples_from_point_counts, symbolic_tlambda_in_traces};

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum SpaceKind {
    /// Smooth pointed curves `M_{g,n}`.
    M,
    /// Hyperelliptic locus `H_{g,n}`.
    H,
    /// Pointed plane quartics, the non-hyperelliptic part of genus 3.
    Q,
    /// Stable compactification.
    Mbar,
}

impl SpaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpaceKind::M => "M",
            SpaceKind::H => "H",
            SpaceKind::Q => "Q",
            SpaceKind::Mbar => "Mbar",
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SpaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(SpaceKind::M),
            "H" | "h" => Ok(SpaceKind::H),
            "Q" | "q" => Ok(SpaceKind::Q),
            "Mbar" | "mbar" => Ok(SpaceKind::Mbar),
            _ => input(format!("unknown space kind {s:?} (expected M, H, Q or Mbar)")),
        }
    }
}

/// Largest `n` for which `M_{g,n}` enters the genus-4 computation.
pub fn window_max_n(g: usize) -> Option<usize> {
    match g {
        0 => Some(8),
        1 => Some(6),
        2 => Some(4),
        3 => Some(2),
        4 => Some(0),
        _ => None,
    }
}

/// `(g, n)` is stable and belongs to the genus-4 input window.
pub fn in_window(g: usize, n: usize) -> bool {
    window_max_n(g).is_some_and(|max| n <= max && 2 * g + n >= 3)
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SpaceId {
    pub kind: SpaceKind,
    pub g: usize,
    pub n: usize,
}

impl SpaceId {
    pub fn new(kind: SpaceKind, g: usize, n: usize) -> Result<Self> {
        if 2 * g + n < 3 {
            return input(format!("({g},{n}) is not stable"));
        }
        let ok = match kind {
            SpaceKind::M => in_window(g, n),
            SpaceKind::H => (g == 2 || g == 3) && in_window(g, n),
            SpaceKind::Q => g == 3 && in_window(g, n),
            SpaceKind::Mbar => 2 * g + n <= 2 + crate::plethys::DEFAULT_TRUNCATION,
        };
        if !ok {
            return input(format!("{kind} with (g,n)=({g},{n}) is outside the supported range"));
        }
        Ok(SpaceId { kind, g, n })
    }

    pub fn dimension(&self) -> usize {
        (3 * self.g + self.n).saturating_sub(3)
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.kind, self.g, self.n)
    }
}

/// One groupoid-weighted fixed-point count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountRecord {
    pub space: SpaceId,
    pub q: u64,
    /// Cycle type of the permutation twisting Frobenius.
    pub lambda: Partition,
    pub value: BigRational,
}

/// Whether a trace polynomial is indexed by cycle type (raw fixed-point
/// counts) or by irreducible representation (Schur coefficient).
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum TraceKind {
    CycleType,
    Isotypic,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TracePolynomial {
    pub space: SpaceId,
    pub lambda: Partition,
    pub kind: TraceKind,
    /// Polynomial in `q`, stored with the same dense representation as `L`.
    pub poly: LPoly,
    pub validated: bool,
}
