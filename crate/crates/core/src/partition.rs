//! Integer partitions.
//!
//! A [`Partition`] indexes cycle types of symmetric groups, irreducible
//! characters, Schur functions and power-sum monomials alike. Ordering is
//! lexicographic on the part list, which gives canonical map keys.

use std::fmt;
use std::str::FromStr;

use crate::error::{input, Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validating constructor: parts must be positive and weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return input(format!("partition parts must be positive: {parts:?}"));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return input(format!("partition parts must be weakly decreasing: {parts:?}"));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-part partition `(n)`; empty when `n == 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `r_m`, the number of parts equal to `m`.
    pub fn multiplicity(&self, m: usize) -> usize {
        self.parts.iter().filter(|&&p| p == m).count()
    }

    /// Pairs `(m, r_m)` for every part size present, ascending in `m`.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((m, r)) if *m == p => *r += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Centralizer order `z_mu = prod m^{r_m} r_m!`; the class of cycle type
    /// `mu` in `S_n` has `n!/z_mu` elements.
    pub fn zee(&self) -> u128 {
        self.multiplicities()
            .into_iter()
            .map(|(m, r)| (m as u128).pow(r as u32) * factorial(r))
            .product()
    }

    /// Size of the conjugacy class of cycle type `self` in `S_n`.
    pub fn class_size(&self) -> u128 {
        factorial(self.weight()) / self.zee()
    }

    /// Multiset union of parts, i.e. the index of `p_self * p_other`.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            if self.parts[i] >= other.parts[j] {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        parts.extend_from_slice(&self.parts[i..]);
        parts.extend_from_slice(&other.parts[j..]);
        Partition { parts }
    }

    /// Every part multiplied by `n`, i.e. the index of `p_n o p_self`.
    pub fn scale(&self, n: usize) -> Partition {
        Partition {
            parts: self.parts.iter().map(|&p| p * n).collect(),
        }
    }

    /// Removes one copy of part `m`; `None` when `m` is absent.
    pub fn remove_part(&self, m: usize) -> Option<Partition> {
        let idx = self.parts.iter().position(|&p| p == m)?;
        let mut parts = self.parts.clone();
        parts.remove(idx);
        Some(Partition { parts })
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let cols = self.largest();
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    /// Number of standard Young tableaux via the hook length formula.
    pub fn hook_length_dimension(&self) -> u128 {
        let conj = self.conjugate();
        let mut hooks: u128 = 1;
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks *= (row - j + conj.parts[j] - i - 1) as u128;
            }
        }
        factorial(self.weight()) / hooks
    }

    /// Comma-joined parts, `-` for the empty partition.
    pub fn to_key(&self) -> String {
        if self.parts.is_empty() {
            "-".to_string()
        } else {
            self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    /// All partitions of `n`, in reverse lexicographic order (`(n)` first).
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        gen_partitions(n, n, &mut cur, &mut out);
        out
    }

    /// All partitions of every weight `0..=n`.
    pub fn all_up_to(n: usize) -> Vec<Partition> {
        (0..=n).flat_map(Partition::all).collect()
    }
}

fn gen_partitions(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        gen_partitions(rest - p, p, cur, out);
        cur.pop();
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Accepts `2,1,1`, `(2,1,1)`, `-`, `()` and the empty string.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() || s == "-" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Input(format!("bad partition part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl From<&[usize]> for Partition {
    fn from(parts: &[usize]) -> Self {
        Partition::from_unsorted(parts.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_ok());
    }

    #[test]
    fn zee_values() {
        assert_eq!(p(&[1, 1, 1]).zee(), 6);
        assert_eq!(p(&[3]).zee(), 3);
        assert_eq!(p(&[2, 2, 1]).zee(), 8);
        assert_eq!(Partition::empty().zee(), 1);
    }

    #[test]
    fn zee_matches_enumerated_class_size_in_s5() {
        // count permutations of 5 points with cycle type (2,2,1)
        let mut count = 0u128;
        let mut perm: Vec<usize> = (0..5).collect();
        permutations(&mut perm, 0, &mut |s| {
            if cycle_type(s) == p(&[2, 2, 1]) {
                count += 1;
            }
        });
        assert_eq!(count, 15);
        assert_eq!(120 / count, p(&[2, 2, 1]).zee());
    }

    fn permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permutations(v, k + 1, f);
            v.swap(k, i);
        }
    }

    fn cycle_type(s: &[usize]) -> Partition {
        let mut seen = vec![false; s.len()];
        let mut parts = Vec::new();
        for i in 0..s.len() {
            if !seen[i] {
                let mut len = 0;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = s[j];
                    len += 1;
                }
                parts.push(len);
            }
        }
        Partition::from_unsorted(parts)
    }

    #[test]
    fn counts_of_partitions() {
        let counts: Vec<usize> = (0..=8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(Partition::all(3)[0], p(&[3]));
    }

    #[test]
    fn union_scale_conjugate() {
        assert_eq!(p(&[3, 1]).union(&p(&[2, 1])), p(&[3, 2, 1, 1]));
        assert_eq!(p(&[2, 1]).scale(3), p(&[6, 3]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[3, 1]).remove_part(1), Some(p(&[3])));
        assert_eq!(p(&[3, 1]).remove_part(2), None);
    }

    #[test]
    fn parse_and_key() {
        assert_eq!("2,1,1".parse::<Partition>().unwrap(), p(&[2, 1, 1]));
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(p(&[2, 1, 1]).to_key(), "2,1,1");
        assert_eq!(Partition::empty().to_key(), "-");
        assert!("1,2".parse::<Partition>().is_err());
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(p(&[2, 1]).hook_length_dimension(), 2);
        assert_eq!(p(&[3, 2]).hook_length_dimension(), 5);
        assert_eq!(p(&[2, 2, 1, 1]).hook_length_dimension(), 9);
    }
}
