//! Verification suites over ranges of odd orders.

use std::fmt;

use cyclomock_core::catalog::{catalog_lookup, FunctionId};
use cyclomock_core::verify::{
    check_even_half_product, check_galois, check_inversion, check_linear_identity, check_n_product,
    check_terminal_term, check_unit_product, disk_residual, margin_report, CheckOutcome, DiskRelation,
    LinearIdentity, VerifyError, MARGIN_FUNCTIONS,
};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::scan::{odd_range, ScanError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Suite {
    Products,
    Identities,
    Galois,
    Inversion,
    Margins,
    Disk,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Products, Suite::Identities, Suite::Galois, Suite::Inversion, Suite::Margins, Suite::Disk];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Products => "products",
            Suite::Identities => "identities",
            Suite::Galois => "galois",
            Suite::Inversion => "inversion",
            Suite::Margins => "margins",
            Suite::Disk => "disk",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteRow {
    pub check_id: String,
    pub n: Option<usize>,
    pub passed: bool,
    pub detail: String,
}

impl SuiteRow {
    fn from_outcome(o: CheckOutcome) -> Self {
        let detail = match &o.witness {
            Some(w) => format!("residual {w}"),
            None => String::new(),
        };
        SuiteRow { check_id: o.check_id, n: Some(o.n), passed: o.passed, detail }
    }
}

impl fmt::Display for SuiteRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "ok  " } else { "FAIL" };
        match self.n {
            Some(n) => write!(f, "{status} {:<24} n={n:<5}", self.check_id)?,
            None => write!(f, "{status} {:<24}        ", self.check_id)?,
        }
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error(transparent)]
    Range(#[from] ScanError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// Points and truncation used by the disk suite.
pub const DISK_POINTS: [(f64, f64); 5] = [(0.1, 0.0), (0.3, 0.0), (0.5, 0.0), (0.3, 0.3), (-0.4, 0.0)];
pub const DISK_TERMS: usize = 80;
pub const DISK_TOLERANCE: f64 = 1e-10;

fn rows_for(suite: Suite, n: usize, digits: u32) -> Result<Vec<SuiteRow>, VerifyError> {
    let mut rows = Vec::new();
    match suite {
        Suite::Products => {
            rows.push(SuiteRow::from_outcome(check_unit_product(n)?));
            rows.push(SuiteRow::from_outcome(check_n_product(n)?));
            rows.push(SuiteRow::from_outcome(check_terminal_term(n)?));
            let e = check_even_half_product(n)?;
            let mut row = SuiteRow::from_outcome(e.outcome);
            if let Some(eps) = e.epsilon {
                row.detail = format!("epsilon={eps:+}");
            }
            rows.push(row);
        }
        Suite::Identities => {
            for w in LinearIdentity::ALL {
                rows.push(SuiteRow::from_outcome(check_linear_identity(w, n)?));
            }
        }
        Suite::Galois => {
            for id in FunctionId::MAIN {
                rows.push(SuiteRow::from_outcome(check_galois(id, n)?));
            }
        }
        Suite::Inversion => {
            for id in FunctionId::MAIN.into_iter().filter(|&id| catalog_lookup(id).inversion_partner.is_some()) {
                rows.push(SuiteRow::from_outcome(check_inversion(id, n)?));
            }
        }
        Suite::Margins => {
            if n >= 7 {
                for id in MARGIN_FUNCTIONS {
                    let m = margin_report(id, n, digits)?;
                    rows.push(SuiteRow {
                        check_id: format!("margin:{}", id.name()),
                        n: Some(n),
                        passed: true,
                        detail: format!(
                            "terminal={:.9} partial={:.9} margin={:+.9}",
                            m.terminal_modulus, m.partial_sum_modulus, m.margin
                        ),
                    });
                }
            }
        }
        Suite::Disk => {}
    }
    Ok(rows)
}

fn disk_rows() -> Vec<SuiteRow> {
    let mut rows = Vec::new();
    for w in DiskRelation::ALL {
        for (re, im) in DISK_POINTS {
            let r = disk_residual(w, Complex64::new(re, im), DISK_TERMS);
            rows.push(SuiteRow {
                check_id: format!("disk:{}", w.name()),
                n: None,
                passed: r < DISK_TOLERANCE,
                detail: format!("q={re}{im:+}i K={DISK_TERMS} residual={r:.3e}"),
            });
        }
    }
    rows
}

/// Runs `suite` for every odd `n` in range, in parallel per `n`, and returns
/// rows in ascending `n`.
pub fn run_suite(suite: Suite, n_min: usize, n_max: usize, digits: u32) -> Result<Vec<SuiteRow>, SuiteError> {
    if suite == Suite::Disk {
        return Ok(disk_rows());
    }
    let ns = odd_range(n_min, n_max)?;
    let per_n: Vec<Vec<SuiteRow>> =
        ns.par_iter().map(|&n| rows_for(suite, n, digits)).collect::<Result<_, VerifyError>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for suite in Suite::ALL {
            let rows = run_suite(suite, 1, 9, 12).unwrap();
            assert!(rows.iter().all(|r| r.passed), "{}", suite.name());
        }
        let rows = run_suite(Suite::Products, 1, 5, 12).unwrap();
        assert_eq!(rows.iter().map(|r| r.n.unwrap()).collect::<Vec<_>>(), vec![1, 1, 1, 1, 3, 3, 3, 3, 5, 5, 5, 5]);
        assert_eq!(rows[7].detail, "epsilon=-1");
    }
}
