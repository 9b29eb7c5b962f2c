//! From Euler characteristics of the open moduli spaces to those of their
//! stable compactifications, through the generating-function transform
//! `Log(exp(Delta) Exp(.))`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::curvecount::cache::CountCache;
use crate::curvecount::equivariant::{to_hodge, InterpolationOptions};
use crate::curvecount::genus0::genus0_isotypic;
use crate::curvecount::genus1::genus1_isotypic;
use crate::error::{input, Error, Result};
use crate::fixtures::fixtures;
use crate::lpoly::LPoly;
use crate::partition::Partition;
use crate::plethys::{gk_transform, GradedSeries};
use crate::symfunc::{p_to_schur, schur_to_p};

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum SourceTag {
    SymbolicGenus0,
    CensusGenus1,
    Table1Fixture,
    Table1Table2Fixture,
    M4Fixture,
}

impl SourceTag {
    pub fn as_str(self) -> &'static str {
        match self {
            SourceTag::SymbolicGenus0 => "symbolic-genus0",
            SourceTag::CensusGenus1 => "census-genus1",
            SourceTag::Table1Fixture => "table1-fixture",
            SourceTag::Table1Table2Fixture => "table1+table2-fixture",
            SourceTag::M4Fixture => "m4-fixture",
        }
    }
}

/// Where the genus 2, 3 and 4 inputs come from.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Default)]
pub enum LedgerSource {
    /// Published tables, used as recorded.
    #[default]
    Fixtures,
    /// Published tables, each row first checked against a census at the
    /// smallest feasible field.
    CensusWherePossible,
}

impl FromStr for LedgerSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixtures" => Ok(LedgerSource::Fixtures),
            "census-where-possible" => Ok(LedgerSource::CensusWherePossible),
            _ => input(format!("unknown ledger source {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub source: SourceTag,
    /// Schur coefficients in `L`.
    pub coeffs: BTreeMap<Partition, LPoly>,
}

/// Every `(g, n)` an input is needed for, in a window of degree `d`.
pub fn input_window(d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for g in 0..=d / 2 + 1 {
        for n in 0..=d + 2 {
            if 2 * g + n >= 3 && 2 * g + n <= d + 2 {
                out.push((g, n));
            }
        }
    }
    out
}

/// Euler characteristics of the open moduli spaces, by `(g, n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InputLedger {
    entries: BTreeMap<(usize, usize), LedgerEntry>,
}

impl InputLedger {
    pub fn new() -> Self {
        InputLedger::default()
    }

    pub fn insert(&mut self, g: usize, n: usize, entry: LedgerEntry) -> Result<()> {
        for (lambda, c) in &entry.coeffs {
            if lambda.weight() != n {
                return input(format!("({g},{n}) entry indexed by {lambda}"));
            }
            if !c.is_integral() {
                return input(format!("({g},{n}) {lambda} coefficient {c} is not integral"));
            }
        }
        self.entries.insert((g, n), entry);
        Ok(())
    }

    pub fn get(&self, g: usize, n: usize) -> Option<&LedgerEntry> {
        self.entries.get(&(g, n))
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), LedgerEntry> {
        &self.entries
    }

    pub fn missing(&self, d: usize) -> Vec<(usize, usize)> {
        input_window(d).into_iter().filter(|k| !self.entries.contains_key(k)).collect()
    }

    /// Assembles the inputs for every `(g, n)` with `2g - 2 + n <= d`.
    pub fn build(source: LedgerSource, d: usize, cache: &CountCache) -> Result<Self> {
        if source == LedgerSource::CensusWherePossible {
            crate::verify::verify_fixture_inputs(cache)?;
        }
        let fx = fixtures()?;
        let mut ledger = InputLedger::new();
        let genus1_opts = InterpolationOptions { require_nonnegative: false, max_degree: None };
        for (g, n) in input_window(d) {
            let entry = match g {
                0 => LedgerEntry { source: SourceTag::SymbolicGenus0, coeffs: genus0_isotypic(n)? },
                1 => {
                    let coeffs = genus1_isotypic(n, cache, &genus1_opts)?
                        .into_iter()
                        .map(|(l, tp)| Ok((l, to_hodge(&tp)?)))
                        .collect::<Result<_>>()?;
                    LedgerEntry { source: SourceTag::CensusGenus1, coeffs }
                }
                2 => LedgerEntry { source: SourceTag::Table1Fixture, coeffs: fx.table1(2, n)? },
                3 => LedgerEntry { source: SourceTag::Table1Table2Fixture, coeffs: fx.genus3(n)? },
                4 => LedgerEntry {
                    source: SourceTag::M4Fixture,
                    coeffs: BTreeMap::from([(Partition::empty(), fx.euler_m4()?)]),
                },
                _ => unreachable!("window has genus at most 4"),
            };
            ledger.insert(g, n, entry)?;
        }
        Ok(ledger)
    }
}

/// `sum hbar^{g-1} ch_n(M_{g,n})` over the window, in the power-sum basis.
pub fn assemble_char_v(ledger: &InputLedger, d: usize) -> Result<GradedSeries> {
    let missing = ledger.missing(d);
    if !missing.is_empty() {
        let list: Vec<String> = missing.iter().map(|(g, n)| format!("({g},{n})")).collect();
        return input(format!("ledger incomplete for D={d}: missing {}", list.join(" ")));
    }
    let mut series = GradedSeries::zero(d);
    for (g, n) in input_window(d) {
        let entry = ledger.get(g, n).expect("checked complete");
        let f = schur_to_p(&entry.coeffs);
        series = series.add(&GradedSeries::from_sym(d, g as i32 - 1, &f)?);
    }
    Ok(series)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Issue {
    NonIntegral,
    Negative,
    DegreeExceeds { degree: usize, bound: usize },
    NotPalindromic { center: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub g: usize,
    pub n: usize,
    pub lambda: Partition,
    pub issue: Issue,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}) {}: ", self.g, self.n, self.lambda)?;
        match &self.issue {
            Issue::NonIntegral => write!(f, "non-integral coefficient"),
            Issue::Negative => write!(f, "negative coefficient"),
            Issue::DegreeExceeds { degree, bound } => write!(f, "degree {degree} exceeds {bound}"),
            Issue::NotPalindromic { center } => write!(f, "not palindromic about degree {center}"),
        }
    }
}

/// Schur expansions of the compactified spaces, by `(g, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputReport {
    pub d: usize,
    pub rows: BTreeMap<(usize, usize), BTreeMap<Partition, LPoly>>,
    pub findings: Vec<Finding>,
}

impl OutputReport {
    pub fn row(&self, g: usize, n: usize) -> Option<&BTreeMap<Partition, LPoly>> {
        self.rows.get(&(g, n))
    }

    pub fn coefficient(&self, g: usize, n: usize, lambda: &Partition) -> LPoly {
        self.row(g, n).and_then(|r| r.get(lambda)).cloned().unwrap_or_default()
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &Partition, &LPoly)> {
        self.rows
            .iter()
            .flat_map(|(&(g, n), row)| row.iter().filter(|(_, c)| !c.is_zero()).map(move |(l, c)| (g, n, l, c)))
    }

    /// `g n lambda c0,c1,...` per nonzero coefficient, tab-separated.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("g\tn\tlambda\tcoefficients\n");
        for (g, n, lambda, c) in self.nonzero() {
            let coeffs: Vec<String> = c.coeffs().iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{g}\t{n}\t{}\t{}\n", lambda.to_key(), coeffs.join(",")));
        }
        out
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        for (g, n, lambda, c) in self.nonzero() {
            out.push_str(&format!("{g} {n} {lambda}: {}\n", c.ascending_string()));
        }
        out
    }
}

/// Applies the transform and reads off every `(g, n)` with
/// `0 < 2g - 2 + n <= d`.
pub fn run_and_extract(ledger: &InputLedger, d: usize) -> Result<OutputReport> {
    let char_v = assemble_char_v(ledger, d)?;
    let char_mv = gk_transform(&char_v)?;
    let mut rows = BTreeMap::new();
    for (g, n) in input_window(d) {
        let f = char_mv.extract(g as i32 - 1, n);
        rows.insert((g, n), p_to_schur(&f, n)?);
    }
    let mut report = OutputReport { d, rows, findings: Vec::new() };
    report.findings = validate_output(&report);
    Ok(report)
}

/// Integrality, nonnegativity, degree and palindromy of every coefficient.
pub fn validate_output(report: &OutputReport) -> Vec<Finding> {
    let mut findings = Vec::new();
    for (&(g, n), row) in &report.rows {
        let dim = (3 * g + n).saturating_sub(3);
        for (lambda, c) in row {
            let mut push = |issue| findings.push(Finding { g, n, lambda: lambda.clone(), issue });
            if !c.is_integral() {
                push(Issue::NonIntegral);
            }
            if !c.is_nonnegative() {
                push(Issue::Negative);
            }
            if let Some(degree) = c.degree() {
                if degree > dim {
                    push(Issue::DegreeExceeds { degree, bound: dim });
                }
            }
            if !c.is_palindromic(dim) {
                push(Issue::NotPalindromic { center: dim });
            }
        }
    }
    findings
}

/// Whether the `(4, 0)` row equals the published target.
pub fn matches_mbar4_target(report: &OutputReport) -> Result<bool> {
    if report.d < 6 {
        return input("the genus-4 row needs D >= 6");
    }
    Ok(report.coefficient(4, 0, &Partition::empty()) == fixtures()?.mbar4()?)
}
