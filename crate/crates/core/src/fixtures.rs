//! Published reference values: equivariant point counts of the hyperelliptic
//! loci and of plane quartics, the Euler characteristic of `M_4`, the
//! target Euler characteristic of the compactification, and the two
//! Schur expansions for `M_{2,4}` and `M_{3,2}`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lpoly::LPoly;
use crate::partition::Partition;

pub const FIXTURE_TEXT: &str = include_str!("../data/fixtures.txt");
pub const FIXTURE_SHA256: &str = "e3d39b69ae55e0c1c836319b63e05da62f608e033da2e5d6be9762950dd95371";

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FixtureSource {
    /// Hyperelliptic counts, genus 2 and 3.
    Table1,
    /// Plane quartic counts.
    Table2,
    M4,
    Mbar4,
    SchurM24,
    SchurM32,
}

impl FixtureSource {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "table1" => FixtureSource::Table1,
            "table2" => FixtureSource::Table2,
            "m4" => FixtureSource::M4,
            "mbar4" => FixtureSource::Mbar4,
            "m24" => FixtureSource::SchurM24,
            "m32" => FixtureSource::SchurM32,
            _ => return None,
        })
    }
}

type Key = (FixtureSource, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixtures {
    rows: BTreeMap<Key, BTreeMap<Partition, LPoly>>,
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

impl Fixtures {
    /// Parses fixture text after checking its digest.
    pub fn parse(text: &str, expected_sha256: &str) -> Result<Self> {
        let actual = sha256_hex(text);
        if actual != expected_sha256 {
            return Err(Error::Fixture(format!("checksum {actual} does not match {expected_sha256}")));
        }
        let mut rows: BTreeMap<Key, BTreeMap<Partition, LPoly>> = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| Error::Fixture(format!("line {}: {what}: {line:?}", lineno + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [source, g, n, lambda, coeffs] = fields[..] else {
                return Err(bad("expected five fields"));
            };
            let source = FixtureSource::parse(source).ok_or_else(|| bad("unknown source"))?;
            let g: usize = g.parse().map_err(|_| bad("genus"))?;
            let n: usize = n.parse().map_err(|_| bad("marking count"))?;
            let lambda: Partition = lambda.parse().map_err(|_| bad("partition"))?;
            if lambda.weight() != n {
                return Err(bad("partition weight differs from n"));
            }
            let coeffs = coeffs
                .split(',')
                .map(|c| c.parse::<i64>().map_err(|_| bad("coefficient")))
                .collect::<Result<Vec<_>>>()?;
            let row = rows.entry((source, g, n)).or_default();
            if row.insert(lambda, LPoly::from_ints(&coeffs)).is_some() {
                return Err(bad("duplicate entry"));
            }
        }
        Ok(Fixtures { rows })
    }

    /// Schur coefficients for one `(g, n)`, zero for every absent `lambda`.
    pub fn get(&self, source: FixtureSource, g: usize, n: usize) -> Result<BTreeMap<Partition, LPoly>> {
        let row = self
            .rows
            .get(&(source, g, n))
            .ok_or_else(|| Error::Fixture(format!("no {source:?} entry for ({g},{n})")))?;
        Ok(Partition::all(n)
            .into_iter()
            .map(|l| {
                let c = row.get(&l).cloned().unwrap_or_default();
                (l, c)
            })
            .collect())
    }

    pub fn table1(&self, g: usize, n: usize) -> Result<BTreeMap<Partition, LPoly>> {
        self.get(FixtureSource::Table1, g, n)
    }

    pub fn table2(&self, n: usize) -> Result<BTreeMap<Partition, LPoly>> {
        self.get(FixtureSource::Table2, 3, n)
    }

    pub fn euler_m4(&self) -> Result<LPoly> {
        Ok(self.get(FixtureSource::M4, 4, 0)?.remove(&Partition::empty()).unwrap_or_default())
    }

    pub fn mbar4(&self) -> Result<LPoly> {
        Ok(self.get(FixtureSource::Mbar4, 4, 0)?.remove(&Partition::empty()).unwrap_or_default())
    }

    pub fn m24(&self) -> Result<BTreeMap<Partition, LPoly>> {
        self.get(FixtureSource::SchurM24, 2, 4)
    }

    pub fn m32(&self) -> Result<BTreeMap<Partition, LPoly>> {
        self.get(FixtureSource::SchurM32, 3, 2)
    }

    /// Genus-3 counts: hyperelliptic plus quartic.
    pub fn genus3(&self, n: usize) -> Result<BTreeMap<Partition, LPoly>> {
        let mut out = self.table1(3, n)?;
        for (l, c) in self.table2(n)? {
            *out.entry(l).or_default() += &c;
        }
        Ok(out)
    }
}

/// The embedded fixtures, verified once.
pub fn fixtures() -> Result<&'static Fixtures> {
    static CELL: OnceLock<std::result::Result<Fixtures, String>> = OnceLock::new();
    CELL.get_or_init(|| Fixtures::parse(FIXTURE_TEXT, FIXTURE_SHA256).map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| Error::Fixture(e.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn embedded_fixtures_verify() {
        let f = fixtures().unwrap();
        assert_eq!(f.table1(2, 0).unwrap()[&Partition::empty()], LPoly::from_ints(&[0, 0, 0, 1]));
        assert_eq!(f.table1(2, 4).unwrap()[&p("1,1,1,1")], LPoly::zero());
        assert_eq!(f.table2(0).unwrap()[&Partition::empty()].eval_int(2), crate::lpoly::rat(65));
        assert_eq!(f.mbar4().unwrap().to_i64s().unwrap(), vec![1, 4, 13, 32, 50, 50, 32, 13, 4, 1]);
        assert!(f.table1(2, 5).is_err());
    }

    #[test]
    fn tampered_text_rejected() {
        let tampered = FIXTURE_TEXT.replace("table1 2 0 - 0,0,0,1", "table1 2 0 - 0,0,0,2");
        assert!(matches!(Fixtures::parse(&tampered, FIXTURE_SHA256), Err(Error::Fixture(_))));
        let sum = sha256_hex(&tampered);
        let parsed = Fixtures::parse(&tampered, &sum).unwrap();
        assert_ne!(&parsed, fixtures().unwrap());
    }

    #[test]
    fn malformed_lines_rejected() {
        for text in ["table1 2 0 -", "nope 2 0 - 1", "table1 2 1 2 1", "table1 2 0 - x"] {
            assert!(Fixtures::parse(text, &sha256_hex(text)).is_err(), "{text}");
        }
    }

    #[test]
    fn m24_is_table1_genus_two_four_points() {
        let f = fixtures().unwrap();
        assert_eq!(f.m24().unwrap(), f.table1(2, 4).unwrap());
    }

    #[test]
    fn m32_is_sum_of_hyperelliptic_and_quartic_parts() {
        let f = fixtures().unwrap();
        assert_eq!(f.m32().unwrap(), f.genus3(2).unwrap());
    }
}
