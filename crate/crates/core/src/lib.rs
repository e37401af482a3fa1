//! Exact evaluation of mock theta functions at odd roots of unity.
//!
//! Values of the sixth-, eighth-, fifth- and second-order mock theta functions
//! at a primitive odd root of unity `ζ` are finite sums with rational
//! coefficients. This crate computes them exactly in `Q(ζ_n)`, checks the
//! closed identities relating them, and computes sums over all `n`-th roots.
//!
//! The crate is `no_std` and needs only `alloc`.
//!
//! ```
//! use cyclomock_core::catalog::{evaluate_at_root, FunctionId};
//!
//! let v = evaluate_at_root(FunctionId::Phi, 3, 1).unwrap();
//! assert_eq!(v.value.to_string(), "-2*z");
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
mod cyclic;
pub mod embed;
pub mod field;
pub mod poly;
pub mod qseries;
pub mod sums;
pub mod verify;

pub use catalog::{catalog_lookup, evaluate_at_root, CatalogEntry, EvalError, FunctionId, Substitution};
pub use field::{arith, make_context, ArithOp, CycloContext, CycloElement, Rational};
pub use poly::{cyclotomic_poly, IntPoly};
pub use qseries::{eval_series, pochhammer, EvaluationResult, SeriesError, SeriesSpec};

/// Errors from field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("operands belong to different fields (orders {0} and {1})")]
    ContextMismatch(usize, usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{k} is not coprime to the order {n}")]
    NotCoprime { k: i64, n: usize },
    #[error("element is not rational")]
    NotRational,
    #[error("Q(zeta_{small}) is not a subfield of Q(zeta_{big})")]
    NotSubfield { small: usize, big: usize },
}
