//! Nonvanishing scans over odd orders, root sums and the prime search.

use std::collections::BTreeSet;
use std::time::Instant;

use cyclomock_core::catalog::{evaluate_in, FunctionId};
use cyclomock_core::field::{make_context, Rational};
use cyclomock_core::poly::is_prime;
use cyclomock_core::sums::{root_sum, SumError};
use cyclomock_core::verify::{margin_report, MARGIN_FUNCTIONS};
use num_traits::Zero;
use rayon::prelude::*;

use crate::records::{rational_string, value_string, ScanRecord, SumRecord, SCHEMA};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ScanError {
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("{0} is not a main catalog function")]
    NotMain(FunctionId),
    #[error("p_max must be at least 3, got {0}")]
    PMaxTooSmall(usize),
    #[error(transparent)]
    Sum(#[from] SumError),
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    /// Term cap is `cap_multiplier · n`.
    pub cap_multiplier: usize,
    /// Attach margins for the functions that have one (`n ≥ 7`).
    pub margins: bool,
    pub digits: u32,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { cap_multiplier: 4, margins: false, digits: 12 }
    }
}

/// Odd `n` in `[n_min, n_max]`, after checking both bounds are odd and ordered.
pub fn odd_range(n_min: usize, n_max: usize) -> Result<Vec<usize>, ScanError> {
    if n_min == 0 || n_min % 2 == 0 || n_max % 2 == 0 || n_min > n_max {
        return Err(ScanError::InvalidRange(format!("{n_min}..={n_max} must be odd, positive and ordered")));
    }
    Ok((n_min..=n_max).step_by(2).collect())
}

fn check_main(ids: &[FunctionId]) -> Result<(), ScanError> {
    match ids.iter().find(|id| !id.is_main()) {
        Some(&id) => Err(ScanError::NotMain(id)),
        None => Ok(()),
    }
}

/// Evaluates each id at `ζ_n` for every odd `n` in range, skipping the
/// `(function, n)` pairs in `skip`. Records come back sorted by `(n, id)`.
pub fn scan_nonvanishing(
    ids: &[FunctionId],
    n_min: usize,
    n_max: usize,
    opts: ScanOptions,
    skip: &BTreeSet<(String, usize)>,
) -> Result<Vec<ScanRecord>, ScanError> {
    check_main(ids)?;
    let mut ids = ids.to_vec();
    ids.sort();
    ids.dedup();
    let ns = odd_range(n_min, n_max)?;
    let records = ns
        .par_iter()
        .flat_map_iter(|&n| {
            let todo: Vec<FunctionId> =
                ids.iter().copied().filter(|id| !skip.contains(&(id.name().to_string(), n))).collect();
            let ctx = if todo.is_empty() { None } else { make_context(n).ok() };
            todo.into_iter().map(move |id| scan_one(ctx.as_ref().expect("n > 0"), id, opts))
        })
        .collect();
    Ok(records)
}

fn scan_one(ctx: &std::sync::Arc<cyclomock_core::CycloContext>, id: FunctionId, opts: ScanOptions) -> ScanRecord {
    let n = ctx.order();
    let start = Instant::now();
    let result = evaluate_in(ctx, id, 1, opts.cap_multiplier.max(1) * n);
    let mut rec = ScanRecord {
        schema: SCHEMA,
        function: id.name().to_string(),
        n,
        j: (1 % n) as i64,
        is_zero: false,
        terminated_at: -1,
        value: String::new(),
        elapsed_ms: 0,
        margin: None,
        error: None,
    };
    match result {
        Ok(r) => {
            rec.is_zero = r.value.is_zero();
            rec.terminated_at = r.terminated_at as i64;
            rec.value = value_string(&r.value);
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    if opts.margins && n >= 7 && MARGIN_FUNCTIONS.contains(&id) {
        rec.margin = margin_report(id, n, opts.digits).ok().map(|m| m.margin);
    }
    rec.elapsed_ms = start.elapsed().as_millis() as u64;
    rec
}

pub fn root_sum_record(id: FunctionId, n: usize) -> Result<SumRecord, ScanError> {
    let s = root_sum(id, n)?;
    Ok(SumRecord { schema: SCHEMA, function: id.name().to_string(), n, sum: rational_string(&s) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    /// Every `(p, id)` root sum, sorted by `(p, id)`.
    pub table: Vec<SumRecord>,
    pub vanishing: Vec<SumRecord>,
}

/// Root sums at every odd prime `p ≤ p_max`.
pub fn prime_sum_search(ids: &[FunctionId], p_max: usize) -> Result<SearchReport, ScanError> {
    if p_max < 3 {
        return Err(ScanError::PMaxTooSmall(p_max));
    }
    check_main(ids)?;
    let mut ids = ids.to_vec();
    ids.sort();
    ids.dedup();
    let jobs: Vec<(usize, FunctionId)> =
        (3..=p_max).filter(|&p| is_prime(p)).flat_map(|p| ids.iter().map(move |&id| (p, id))).collect();
    let sums: Vec<(SumRecord, Rational)> = jobs
        .par_iter()
        .map(|&(p, id)| {
            let s = root_sum(id, p)?;
            Ok((SumRecord { schema: SCHEMA, function: id.name().to_string(), n: p, sum: rational_string(&s) }, s))
        })
        .collect::<Result<_, ScanError>>()?;
    let vanishing = sums.iter().filter(|(_, s)| s.is_zero()).map(|(r, _)| r.clone()).collect();
    Ok(SearchReport { table: sums.into_iter().map(|(r, _)| r).collect(), vanishing })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(odd_range(1, 7).unwrap(), vec![1, 3, 5, 7]);
        assert!(odd_range(2, 7).is_err());
        assert!(odd_range(9, 7).is_err());
        assert!(odd_range(0, 7).is_err());
    }

    #[test]
    fn scan_phi_small() {
        let recs = scan_nonvanishing(&[FunctionId::Phi], 1, 11, ScanOptions::default(), &BTreeSet::new()).unwrap();
        assert_eq!(recs.iter().map(|r| r.n).collect::<Vec<_>>(), vec![1, 3, 5, 7, 9, 11]);
        assert!(recs.iter().all(|r| !r.is_zero && r.error.is_none()));
        assert_eq!(recs[1].value, "0/1,-2/1");
        assert_eq!(recs[0].j, 0);
    }

    #[test]
    fn scan_is_sorted_by_n_then_id() {
        let ids = [FunctionId::U, FunctionId::Phi, FunctionId::Psi];
        let recs = scan_nonvanishing(&ids, 3, 7, ScanOptions::default(), &BTreeSet::new()).unwrap();
        let keys: Vec<(usize, String)> = recs.iter().map(|r| (r.n, r.function.clone())).collect();
        assert_eq!(keys[..3], [(3, "phi".into()), (3, "psi".into()), (3, "u".into())]);
        assert!(scan_nonvanishing(&[FunctionId::T0], 3, 3, ScanOptions::default(), &BTreeSet::new()).is_err());
    }

    #[test]
    fn search() {
        let r = prime_sum_search(&[FunctionId::Phi, FunctionId::SigmaNeg], 11).unwrap();
        let ps: Vec<usize> = r.vanishing.iter().map(|s| s.n).collect();
        assert_eq!(ps, vec![5, 5, 11, 11]);
        let sums: Vec<&str> = r.table.iter().filter(|s| s.n == 7).map(|s| s.sum.as_str()).collect();
        assert_eq!(sums, ["14/1", "-7/1"]);
        let r = prime_sum_search(&[FunctionId::Phi], 3).unwrap();
        assert!(r.vanishing.is_empty());
        assert_eq!(r.table, vec![SumRecord { schema: 1, function: "phi".into(), n: 3, sum: "3/1".into() }]);
        assert_eq!(prime_sum_search(&[FunctionId::Phi], 2), Err(ScanError::PMaxTooSmall(2)));
    }
}
