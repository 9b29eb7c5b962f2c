//! Comparison of census counts with the embedded reference tables.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use crate::curvecount::cache::CountCache;
use crate::curvecount::equivariant::equivariant_coeff;
use crate::curvecount::hyperelliptic::hyperelliptic_cycle_counts;
use crate::curvecount::quartic::quartic_cycle_counts;
use crate::error::{Error, Result};
use crate::fixtures::Fixtures;
use crate::partition::Partition;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Budget {
    Fast,
    Full,
}

impl FromStr for Budget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Budget::Fast),
            "full" => Ok(Budget::Full),
            _ => Err(Error::Input(format!("unknown budget {s:?}, expected fast or full"))),
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Which {
    Table1,
    Table2,
    All,
}

impl FromStr for Which {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table1" => Ok(Which::Table1),
            "table2" => Ok(Which::Table2),
            "all" => Ok(Which::All),
            _ => Err(Error::Input(format!("unknown table {s:?}, expected table1, table2 or all"))),
        }
    }
}

/// Sample fields for each table under a budget.
pub fn sample_fields(which: Which, budget: Budget) -> (Vec<u64>, Vec<u64>) {
    let mut t1 = vec![3, 5];
    let mut t2 = vec![2];
    if budget == Budget::Full {
        t1.push(7);
        t2.push(3);
    }
    match which {
        Which::Table1 => (t1, vec![]),
        Which::Table2 => (vec![], t2),
        Which::All => (t1, t2),
    }
}

/// One Schur coefficient of one table entry at one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub table: &'static str,
    pub g: usize,
    pub n: usize,
    pub lambda: Partition,
    pub q: u64,
    pub expected: BigRational,
    pub actual: BigRational,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{status} {} g={} n={} lambda={} q={} expected={} actual={}",
            self.table, self.g, self.n, self.lambda, self.q, self.expected, self.actual
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// One line per `(table, g, n, q)` with the verdict for each `lambda`.
    pub fn matrix(&self) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < self.checks.len() {
            let c = &self.checks[i];
            let mut j = i;
            let mut cells = Vec::new();
            while j < self.checks.len() {
                let d = &self.checks[j];
                if (d.table, d.g, d.n, d.q) != (c.table, c.g, c.n, c.q) {
                    break;
                }
                cells.push(format!("{}:{}", d.lambda, if d.passed() { "ok" } else { "FAIL" }));
                j += 1;
            }
            out.push_str(&format!("{} g={} n={} q={}  {}\n", c.table, c.g, c.n, c.q, cells.join(" ")));
            i = j;
        }
        out
    }
}

fn compare(
    table: &'static str,
    g: usize,
    n: usize,
    q: u64,
    expected: &std::collections::BTreeMap<Partition, crate::lpoly::LPoly>,
    counts: &std::collections::BTreeMap<Partition, BigRational>,
) -> Result<Vec<Check>> {
    Partition::all(n)
        .into_iter()
        .map(|lambda| {
            let expected = expected.get(&lambda).map(|p| p.eval_int(q as i64)).unwrap_or_else(BigRational::zero);
            let actual = equivariant_coeff(&lambda, counts)?;
            Ok(Check { table, g, n, lambda, q, expected, actual })
        })
        .collect()
}

/// Hyperelliptic census against every genus-2 and genus-3 entry at `q`.
pub fn verify_table1(q: u64, fixtures: &Fixtures, cache: &CountCache) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (g, max_n) in [(2usize, 4usize), (3, 2)] {
        for n in 0..=max_n {
            let counts = hyperelliptic_cycle_counts(g, n, q, cache)?;
            out.extend(compare("table1", g, n, q, &fixtures.table1(g, n)?, &counts)?);
        }
    }
    Ok(out)
}

/// Quartic census against the three entries at `q`.
pub fn verify_table2(q: u64, fixtures: &Fixtures, cache: &CountCache) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 0..=2 {
        let counts = quartic_cycle_counts(n, q, cache)?;
        out.extend(compare("table2", 3, n, q, &fixtures.table2(n)?, &counts)?);
    }
    Ok(out)
}

pub fn verify_tables(which: Which, budget: Budget, fixtures: &Fixtures, cache: &CountCache) -> Result<VerifyReport> {
    let (t1, t2) = sample_fields(which, budget);
    let mut report = VerifyReport::default();
    for q in t1 {
        report.checks.extend(verify_table1(q, fixtures, cache)?);
    }
    for q in t2 {
        report.checks.extend(verify_table2(q, fixtures, cache)?);
    }
    Ok(report)
}

/// Fails with the first mismatch if any fixture used as pipeline input
/// disagrees with the census at the fast sample fields.
pub fn verify_fixture_inputs(cache: &CountCache) -> Result<()> {
    let report = verify_tables(Which::All, Budget::Fast, crate::fixtures::fixtures()?, cache)?;
    let first = report.failures().next().cloned();
    match first {
        Some(c) => Err(Error::Data(format!("census disagrees with fixture: {c}"))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fixtures, sha256_hex, FIXTURE_TEXT};

    #[test]
    fn fast_budget_passes() {
        let cache = CountCache::in_memory();
        let report = verify_tables(Which::All, Budget::Fast, fixtures().unwrap(), &cache).unwrap();
        assert!(report.all_passed(), "{}", report.matrix());
        assert_eq!(report.checks.len(), 2 * (1 + 1 + 2 + 3 + 5 + 1 + 1 + 2) + (1 + 1 + 2));
    }

    #[test]
    fn perturbed_fixture_is_located() {
        let text = FIXTURE_TEXT.replacen("table2 3 0 - 1,0,0,0,0,0,1", "table2 3 0 - 2,0,0,0,0,0,1", 1);
        assert_ne!(text, FIXTURE_TEXT);
        let fx = Fixtures::parse(&text, &sha256_hex(&text)).unwrap();
        let cache = CountCache::in_memory();
        let report = verify_tables(Which::Table2, Budget::Fast, &fx, &cache).unwrap();
        let failures: Vec<_> = report.failures().collect();
        assert_eq!(failures.len(), 1);
        assert_eq!((failures[0].table, failures[0].n, failures[0].q), ("table2", 0, 2));
    }
}
