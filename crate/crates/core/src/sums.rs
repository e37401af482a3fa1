//! Sums of a catalog function over all `n`-th roots of unity.

use crate::catalog::{evaluate_at_root, evaluate_in, EvalError, FunctionId};
use crate::field::{make_context, Rational};
use crate::poly::divisors;
use crate::qseries::default_cap;
use crate::FieldError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SumError {
    #[error("root sum of {id} at n = {n} is not rational")]
    CoercionFailure { id: FunctionId, n: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// `Σ_{j<n} f(ζ_n^j)` as `Σ_{d | n} Tr_{Q(ζ_d)/Q} f(ζ_d)`.
pub fn root_sum(id: FunctionId, n: usize) -> Result<Rational, SumError> {
    if n % 2 == 0 {
        return Err(EvalError::EvenOrder(n).into());
    }
    let mut total = Rational::from_integer(0.into());
    for d in divisors(n) {
        let ctx = make_context(d).map_err(EvalError::from)?;
        let v = evaluate_in(&ctx, id, 1, default_cap(d))?.value;
        total += v.trace().map_err(|e| match e {
            FieldError::NotRational => SumError::CoercionFailure { id, n },
            e => SumError::Eval(e.into()),
        })?;
    }
    Ok(total)
}

/// One evaluation per root, lifted into `Q(ζ_n)` and added.
pub fn root_sum_naive(id: FunctionId, n: usize) -> Result<Rational, SumError> {
    let ctx = make_context(n).map_err(EvalError::from)?;
    let mut acc = ctx.zero();
    for j in 0..n as i64 {
        let v = evaluate_at_root(id, n, j)?.value.lift_to(&ctx).map_err(EvalError::from)?;
        acc = &acc + &v;
    }
    acc.to_rational().ok_or(SumError::CoercionFailure { id, n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sums() {
        assert_eq!(root_sum(FunctionId::Phi, 5).unwrap(), Rational::from_integer(0.into()));
        assert_eq!(root_sum(FunctionId::SigmaNeg, 5).unwrap(), Rational::from_integer(0.into()));
        assert_eq!(root_sum(FunctionId::Phi, 3).unwrap(), Rational::from_integer(3.into()));
    }

    #[test]
    fn trace_matches_naive() {
        for n in [1usize, 3, 9, 15] {
            for id in [FunctionId::Phi, FunctionId::U, FunctionId::MuP, FunctionId::S1PNeg] {
                assert_eq!(root_sum(id, n), root_sum_naive(id, n), "{id} n={n}");
            }
        }
    }
}
