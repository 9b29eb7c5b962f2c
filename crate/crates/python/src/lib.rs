use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use stable_euler::curvecount::cache::CountCache;
use stable_euler::curvecount::genus0::genus0_count_at;
use stable_euler::curvecount::genus1::genus1_cycle_counts;
use stable_euler::curvecount::hyperelliptic::hyperelliptic_cycle_counts;
use stable_euler::curvecount::quartic::quartic_cycle_counts;
use stable_euler::curvecount::{SpaceId, SpaceKind};
use stable_euler::fixtures::fixtures;
use stable_euler::gkpipeline::{matches_mbar4_target, run_and_extract, InputLedger, LedgerSource};
use stable_euler::partition::Partition;
use stable_euler::verify::{verify_tables as run_verify, Budget, Which};
use stable_euler::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Input(_) | Error::Unsupported(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Equivariant point counts of `space` (`"M"`, `"H"` or `"Q"`) over `F_q`,
/// keyed by cycle type (`"2,1"`, `"-"` for the empty partition), values as
/// `"a/b"` strings.
#[pyfunction]
#[pyo3(signature = (space, g, n, q, cache_dir=None))]
fn count(space: &str, g: usize, n: usize, q: u64, cache_dir: Option<&str>) -> PyResult<BTreeMap<String, String>> {
    let kind: SpaceKind = space.parse().map_err(py_err)?;
    let id = SpaceId::new(kind, g, n).map_err(py_err)?;
    let cache = match cache_dir {
        Some(dir) => CountCache::open(dir.as_ref()).map_err(py_err)?,
        None => CountCache::in_memory(),
    };
    let counts = match (kind, g) {
        (SpaceKind::M, 0) => Partition::all(n)
            .into_iter()
            .map(|l| Ok((l.clone(), genus0_count_at(&l, q)?)))
            .collect::<stable_euler::Result<BTreeMap<_, _>>>(),
        (SpaceKind::M, 1) => genus1_cycle_counts(q, n, &cache),
        (SpaceKind::H, _) => hyperelliptic_cycle_counts(g, n, q, &cache),
        (SpaceKind::Q, _) => quartic_cycle_counts(n, q, &cache),
        _ => Err(Error::Unsupported(format!("no census for {id}"))),
    }
    .map_err(py_err)?;
    cache.flush().map_err(py_err)?;
    Ok(counts.into_iter().map(|(l, v)| (l.to_key(), v.to_string())).collect())
}

/// Schur expansions of the compactified spaces up to degree `d`, as
/// `{(g, n, lambda): [c0, c1, ...]}` with ascending powers of `L`.
#[pyfunction]
#[pyo3(signature = (d=6, ledger_source="fixtures"))]
fn pipeline(d: usize, ledger_source: &str) -> PyResult<BTreeMap<(usize, usize, String), Vec<String>>> {
    let source: LedgerSource = ledger_source.parse().map_err(py_err)?;
    let ledger = InputLedger::build(source, d, &CountCache::in_memory()).map_err(py_err)?;
    let report = run_and_extract(&ledger, d).map_err(py_err)?;
    if let Some(f) = report.findings.first() {
        return Err(PyRuntimeError::new_err(format!("invalid output: {f}")));
    }
    Ok(report
        .rows
        .iter()
        .flat_map(|(&(g, n), row)| {
            row.iter()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(l, c)| ((g, n, l.to_key()), c.coeffs().iter().map(|x| x.to_string()).collect()))
        })
        .collect())
}

/// Whether the degree-6 run reproduces the reference genus-4 row.
#[pyfunction]
fn genus4_matches_reference() -> PyResult<bool> {
    let ledger = InputLedger::build(LedgerSource::Fixtures, 6, &CountCache::in_memory()).map_err(py_err)?;
    let report = run_and_extract(&ledger, 6).map_err(py_err)?;
    matches_mbar4_target(&report).map_err(py_err)
}

/// Runs the table checks; returns `(all_passed, matrix_text)`.
#[pyfunction]
#[pyo3(signature = (which="all", budget="fast"))]
fn verify_tables(which: &str, budget: &str) -> PyResult<(bool, String)> {
    let which: Which = which.parse().map_err(py_err)?;
    let budget: Budget = budget.parse().map_err(py_err)?;
    let report = run_verify(which, budget, fixtures().map_err(py_err)?, &CountCache::in_memory()).map_err(py_err)?;
    Ok((report.all_passed(), report.matrix()))
}

#[pymodule]
fn stable_euler_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(pipeline, m)?)?;
    m.add_function(wrap_pyfunction!(genus4_matches_reference, m)?)?;
    m.add_function(wrap_pyfunction!(verify_tables, m)?)?;
    Ok(())
}
