//! On-disk cache of census results.
//!
//! One UTF-8 file per code version, one record per line,
//! `kind g n lambda q numerator/denominator`, lines sorted. Writes go to a
//! temporary file that is then renamed over the cache.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{CountRecord, SpaceId, SpaceKind};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Bumped whenever a census changes what it computes.
pub const CACHE_VERSION: u32 = 1;

pub fn cache_file_name() -> String {
    format!("counts-v{CACHE_VERSION}.txt")
}

type Key = (SpaceKind, usize, usize, Partition, u64);

#[derive(Default)]
pub struct CountCache {
    path: Option<PathBuf>,
    records: Mutex<BTreeMap<Key, BigRational>>,
    dirty: Mutex<bool>,
}

pub fn format_record(rec: &CountRecord) -> String {
    format!(
        "{} {} {} {} {} {}/{}",
        rec.space.kind,
        rec.space.g,
        rec.space.n,
        rec.lambda.to_key(),
        rec.q,
        rec.value.numer(),
        rec.value.denom()
    )
}

pub fn parse_record(line: &str) -> Result<CountRecord> {
    let bad = || Error::Cache(format!("malformed record {line:?}"));
    let fields: Vec<&str> = line.split(' ').collect();
    let [kind, g, n, lambda, q, value] = fields[..] else {
        return Err(bad());
    };
    let kind: SpaceKind = kind.parse().map_err(|_| bad())?;
    let g: usize = g.parse().map_err(|_| bad())?;
    let n: usize = n.parse().map_err(|_| bad())?;
    let lambda: Partition = lambda.parse().map_err(|_| bad())?;
    let q: u64 = q.parse().map_err(|_| bad())?;
    let (num, den) = value.split_once('/').ok_or_else(bad)?;
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    let space = SpaceId::new(kind, g, n).map_err(|_| bad())?;
    Ok(CountRecord { space, q, lambda, value: BigRational::new(num, den) })
}

impl CountCache {
    /// A cache that never touches the disk.
    pub fn in_memory() -> Self {
        CountCache::default()
    }

    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        let path = dir.join(cache_file_name());
        let mut records = BTreeMap::new();
        if path.exists() {
            for line in fs::read_to_string(&path)?.lines().filter(|l| !l.trim().is_empty()) {
                let rec = parse_record(line)?;
                records.insert(key(&rec.space, &rec.lambda, rec.q), rec.value);
            }
        }
        Ok(CountCache { path: Some(path), records: Mutex::new(records), dirty: Mutex::new(false) })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.records.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, space: &SpaceId, lambda: &Partition, q: u64) -> Option<BigRational> {
        self.records.lock().expect("cache lock").get(&key(space, lambda, q)).cloned()
    }

    pub fn insert(&self, rec: &CountRecord) {
        self.records
            .lock()
            .expect("cache lock")
            .insert(key(&rec.space, &rec.lambda, rec.q), rec.value.clone());
        *self.dirty.lock().expect("cache lock") = true;
    }

    /// Cached counts for every cycle type in `lambdas`, running `compute`
    /// once if any is missing.
    pub fn get_or_compute(
        &self,
        space: SpaceId,
        q: u64,
        lambdas: &[Partition],
        compute: impl FnOnce() -> Result<BTreeMap<Partition, BigRational>>,
    ) -> Result<BTreeMap<Partition, BigRational>> {
        let cached: Option<BTreeMap<_, _>> =
            lambdas.iter().map(|l| self.get(&space, l, q).map(|v| (l.clone(), v))).collect();
        if let Some(hit) = cached {
            return Ok(hit);
        }
        let fresh = compute()?;
        for (lambda, value) in &fresh {
            self.insert(&CountRecord { space, q, lambda: lambda.clone(), value: value.clone() });
        }
        Ok(fresh)
    }

    pub fn render(&self) -> String {
        let records = self.records.lock().expect("cache lock");
        let mut lines: Vec<String> = records
            .iter()
            .map(|((kind, g, n, lambda, q), value)| {
                format_record(&CountRecord {
                    space: SpaceId { kind: *kind, g: *g, n: *n },
                    q: *q,
                    lambda: lambda.clone(),
                    value: value.clone(),
                })
            })
            .collect();
        lines.sort();
        lines.iter().map(|l| format!("{l}\n")).collect()
    }

    /// Writes the cache if anything changed since it was opened.
    pub fn flush(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let mut dirty = self.dirty.lock().expect("cache lock");
        if !*dirty {
            return Ok(());
        }
        let dir = path.parent().unwrap_or(Path::new("."));
        let tmp = dir.join(format!(".{}.{}.tmp", cache_file_name(), std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(self.render().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        *dirty = false;
        Ok(())
    }
}

fn key(space: &SpaceId, lambda: &Partition, q: u64) -> Key {
    (space.kind, space.g, space.n, lambda.clone(), q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lpoly::ratio;

    fn record(lambda: &str, q: u64, v: (i64, i64)) -> CountRecord {
        CountRecord {
            space: SpaceId::new(SpaceKind::H, 2, lambda.parse::<Partition>().unwrap().weight()).unwrap(),
            q,
            lambda: lambda.parse().unwrap(),
            value: ratio(v.0, v.1),
        }
    }

    #[test]
    fn record_line_format() {
        let rec = record("2,1", 5, (7, 2));
        assert_eq!(format_record(&rec), "H 2 3 2,1 5 7/2");
        assert_eq!(parse_record("H 2 3 2,1 5 7/2").unwrap(), rec);
        let empty = record("-", 3, (27, 1));
        assert_eq!(format_record(&empty), "H 2 0 - 3 27/1");
        for bad in ["H 2 3 2,1 5", "X 2 3 2,1 5 1/1", "H 2 3 2,1 5 1/0", "H 9 3 2,1 5 1/1"] {
            assert!(parse_record(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn persists_sorted_and_reloads() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CountCache::open(dir.path()).unwrap();
        cache.insert(&record("2", 5, (1, 1)));
        cache.insert(&record("1,1", 3, (-4, 3)));
        cache.insert(&record("-", 3, (27, 1)));
        cache.flush().unwrap();
        let text = fs::read_to_string(dir.path().join(cache_file_name())).unwrap();
        assert_eq!(text, "H 2 0 - 3 27/1\nH 2 2 1,1 3 -4/3\nH 2 2 2 5 1/1\n");
        let reopened = CountCache::open(dir.path()).unwrap();
        assert_eq!(reopened.len(), 3);
        assert_eq!(reopened.render(), text);
        let space = SpaceId::new(SpaceKind::H, 2, 2).unwrap();
        assert_eq!(reopened.get(&space, &"1,1".parse().unwrap(), 3), Some(ratio(-4, 3)));
        let leftovers: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(leftovers.len(), 1);
    }

    #[test]
    fn get_or_compute_runs_once() {
        let cache = CountCache::in_memory();
        let space = SpaceId::new(SpaceKind::H, 2, 1).unwrap();
        let lambdas = vec![Partition::row(1)];
        let mut calls = 0;
        for _ in 0..2 {
            let got = cache
                .get_or_compute(space, 3, &lambdas, || {
                    calls += 1;
                    Ok(BTreeMap::from([(Partition::row(1), ratio(108, 1))]))
                })
                .unwrap();
            assert_eq!(got[&Partition::row(1)], ratio(108, 1));
        }
        assert_eq!(calls, 1);
        cache.flush().unwrap();
    }

    #[test]
    fn corrupt_file_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join(cache_file_name()), "garbage\n").unwrap();
        assert!(matches!(CountCache::open(dir.path()), Err(Error::Cache(_))));
    }
}
