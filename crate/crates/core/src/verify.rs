//! Exact checks of the product facts and linear identities at odd roots of
//! unity, margin records for the terminal-term bounds, and truncated
//! residuals of q-series relations inside the unit disk.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::catalog::{catalog_lookup, evaluate_in, truncated_sum, EvalError, FunctionId};
use crate::embed::embed_complex;
use crate::field::{make_context, CycloContext, CycloElement, Rational};
use crate::qseries::{default_cap, pochhammer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check_id: String,
    pub n: usize,
    pub passed: bool,
    /// The nonzero residual of a failed check.
    pub witness: Option<CycloElement>,
}

impl CheckOutcome {
    fn from_residual(check_id: impl Into<String>, n: usize, residual: CycloElement) -> Self {
        let passed = residual.is_zero();
        CheckOutcome { check_id: check_id.into(), n, passed, witness: (!passed).then_some(residual) }
    }

    fn vacuous(check_id: impl Into<String>, n: usize) -> Self {
        CheckOutcome { check_id: check_id.into(), n, passed: true, witness: None }
    }

    /// First failing residual among `parts`, or a pass.
    fn all_of(check_id: impl Into<String>, n: usize, parts: impl IntoIterator<Item = CycloElement>) -> Self {
        let check_id = check_id.into();
        for r in parts {
            if !r.is_zero() {
                return CheckOutcome::from_residual(check_id, n, r);
            }
        }
        CheckOutcome::vacuous(check_id, n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("order must be odd, got {0}")]
    EvenOrder(usize),
    #[error("{0} has no inversion partner")]
    NotPrimed(FunctionId),
    #[error("{0} is not a main catalog function")]
    NotMain(FunctionId),
    #[error("no margin report for {0}")]
    NoMargin(FunctionId),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl From<crate::FieldError> for VerifyError {
    fn from(e: crate::FieldError) -> Self {
        VerifyError::Eval(e.into())
    }
}

fn odd_context(n: usize) -> Result<Arc<CycloContext>, VerifyError> {
    if n % 2 == 0 {
        return Err(VerifyError::EvenOrder(n));
    }
    Ok(make_context(n)?)
}

fn int(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

fn eval(ctx: &Arc<CycloContext>, id: FunctionId, e: i64) -> Result<CycloElement, VerifyError> {
    Ok(evaluate_in(ctx, id, e, default_cap(ctx.order()))?.value)
}

/// `(-ζ;ζ)_{n-1} = 1`.
pub fn check_unit_product(n: usize) -> Result<CheckOutcome, VerifyError> {
    let ctx = odd_context(n)?;
    let z = ctx.zeta();
    let p = pochhammer(&-&z, &z, n - 1)?;
    Ok(CheckOutcome::from_residual("unit_product", n, &p - &ctx.one()))
}

/// `(ζ;ζ)_{n-1} = n`.
pub fn check_n_product(n: usize) -> Result<CheckOutcome, VerifyError> {
    let ctx = odd_context(n)?;
    let z = ctx.zeta();
    let p = pochhammer(&z, &z, n - 1)?;
    Ok(CheckOutcome::from_residual("n_product", n, &p - &ctx.from_int(n as i64)))
}

/// With `m = (n-1)/2`, `P = (ζ;ζ²)_m` and `T = (-1)^m ζ^{m²} P`: checks
/// `|T|² = n` and `P² = (-1)^m ζ^{m²} n`.
pub fn check_terminal_term(n: usize) -> Result<CheckOutcome, VerifyError> {
    let ctx = odd_context(n)?;
    if n < 3 {
        return Ok(CheckOutcome::vacuous("terminal_term", n));
    }
    let m = (n - 1) / 2;
    let z = ctx.zeta();
    let p = pochhammer(&z, &z.pow(2)?, m)?;
    let sign = if m % 2 == 1 { -1 } else { 1 };
    let unit = ctx.monomial(sign, (m * m) as i64);
    let t = &unit * &p;
    let modulus = &t.abs_square() - &ctx.from_int(n as i64);
    let square = &(&p * &p) - &unit.scale(&int(n as i64));
    Ok(CheckOutcome::all_of("terminal_term", n, [modulus, square]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenHalfOutcome {
    pub outcome: CheckOutcome,
    /// `ε` with `(-ζ²;ζ²)_{(n-1)/2} = ε · ζ^{(n²-1)/8}`, when that holds.
    pub epsilon: Option<i8>,
}

/// `((-ζ²;ζ²)_{(n-1)/2})² = ζ^{(n²-1)/4}`, plus the sign of the unsquared form.
pub fn check_even_half_product(n: usize) -> Result<EvenHalfOutcome, VerifyError> {
    let ctx = odd_context(n)?;
    let m = (n - 1) / 2;
    let z2 = ctx.zeta().pow(2)?;
    let e = pochhammer(&-&z2, &z2, m)?;
    let half = ((n * n - 1) / 8) as i64;
    let residual = &(&e * &e) - &ctx.monomial(1, 2 * half);
    let epsilon = [1i8, -1].into_iter().find(|&s| e == ctx.monomial(s, half));
    Ok(EvenHalfOutcome { outcome: CheckOutcome::from_residual("even_half_product", n, residual), epsilon })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LinearIdentity {
    /// `φ(ζ²) + 2σ(-ζ) = 0`
    PhiSigma,
    /// `φ(ζ²) - μ(ζ) = 0`
    PhiMu,
    /// `-2ζ^{-1}ψ(ζ²) + λ(ζ) = 0`
    PsiLambda,
    /// `-ζ^{-1}ψ(ζ²) + ρ(-ζ) = 0`
    PsiRho,
    /// `U₀(-ζ) + 2U₁(-ζ) = 0`
    U0U1,
}

impl LinearIdentity {
    pub const ALL: [LinearIdentity; 5] = [
        LinearIdentity::PhiSigma,
        LinearIdentity::PhiMu,
        LinearIdentity::PsiLambda,
        LinearIdentity::PsiRho,
        LinearIdentity::U0U1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LinearIdentity::PhiSigma => "phi_sigma",
            LinearIdentity::PhiMu => "phi_mu",
            LinearIdentity::PsiLambda => "psi_lambda",
            LinearIdentity::PsiRho => "psi_rho",
            LinearIdentity::U0U1 => "U0_U1",
        }
    }
}

impl fmt::Display for LinearIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LinearIdentity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|w| w.name() == s).ok_or_else(|| s.to_string())
    }
}

pub fn check_linear_identity(which: LinearIdentity, n: usize) -> Result<CheckOutcome, VerifyError> {
    use FunctionId::*;
    let ctx = odd_context(n)?;
    let zinv = ctx.monomial(1, -1);
    let residual = match which {
        LinearIdentity::PhiSigma => &eval(&ctx, Phi, 2)? + &eval(&ctx, SigmaNeg, 1)?.scale(&int(2)),
        LinearIdentity::PhiMu => &eval(&ctx, Phi, 2)? - &eval(&ctx, Mu, 1)?,
        LinearIdentity::PsiLambda => {
            &eval(&ctx, Lambda, 1)? - &(&zinv * &eval(&ctx, Psi, 2)?).scale(&int(2))
        }
        LinearIdentity::PsiRho => &eval(&ctx, RhoNeg, 1)? - &(&zinv * &eval(&ctx, Psi, 2)?),
        LinearIdentity::U0U1 => &eval(&ctx, U0Neg, 1)? + &eval(&ctx, U1Neg, 1)?.scale(&int(2)),
    };
    Ok(CheckOutcome::from_residual(which.name(), n, residual))
}

fn galois_id(id: FunctionId) -> String {
    let mut s = String::from("galois:");
    s.push_str(id.name());
    s
}

/// `f(ζ^k) = σ_k(f(ζ))` for every `k` coprime to `n`.
pub fn check_galois(id: FunctionId, n: usize) -> Result<CheckOutcome, VerifyError> {
    if !id.is_main() {
        return Err(VerifyError::NotMain(id));
    }
    let ctx = odd_context(n)?;
    let base = eval(&ctx, id, 1)?;
    for k in ctx.units() {
        let r = &eval(&ctx, id, k as i64)? - &base.conjugate(k as i64)?;
        if !r.is_zero() {
            return Ok(CheckOutcome::from_residual(galois_id(id), n, r));
        }
    }
    Ok(CheckOutcome::vacuous(galois_id(id), n))
}

/// The single conjugate `k` of [`check_galois`].
pub fn check_galois_at(id: FunctionId, n: usize, k: i64) -> Result<CheckOutcome, VerifyError> {
    if !id.is_main() {
        return Err(VerifyError::NotMain(id));
    }
    let ctx = odd_context(n)?;
    let base = eval(&ctx, id, 1)?;
    let r = &eval(&ctx, id, k)? - &base.conjugate(k)?;
    Ok(CheckOutcome::from_residual(galois_id(id), n, r))
}

/// `f'(ζ) = f(ζ^{n-1})` for a primed `f'` and its partner `f`.
pub fn check_inversion(primed: FunctionId, n: usize) -> Result<CheckOutcome, VerifyError> {
    let partner = catalog_lookup(primed).inversion_partner.ok_or(VerifyError::NotPrimed(primed))?;
    let ctx = odd_context(n)?;
    let r = &eval(&ctx, primed, 1)? - &eval(&ctx, partner, n as i64 - 1)?;
    let mut id = String::from("inversion:");
    id.push_str(primed.name());
    Ok(CheckOutcome::from_residual(id, n, r))
}

/// Functions whose nonvanishing argument isolates a terminal term.
pub const MARGIN_FUNCTIONS: [FunctionId; 8] = [
    FunctionId::Phi,
    FunctionId::Psi,
    FunctionId::S0Neg,
    FunctionId::S1Neg,
    FunctionId::U0Neg,
    FunctionId::Phi0Neg,
    FunctionId::Phi1Neg,
    FunctionId::U,
];

#[derive(Clone, Debug, PartialEq)]
pub struct MarginRecord {
    pub function: FunctionId,
    pub n: usize,
    /// `|T|` of the terminal term, from its exact squared modulus.
    pub terminal_modulus: f64,
    /// `|f(ζ) - T|`.
    pub partial_sum_modulus: f64,
    pub margin: f64,
}

/// Compares the terminal term with the rest of the sum at `ζ_n`.
pub fn margin_report(id: FunctionId, n: usize, digits: u32) -> Result<MarginRecord, VerifyError> {
    if !MARGIN_FUNCTIONS.contains(&id) {
        return Err(VerifyError::NoMargin(id));
    }
    let ctx = odd_context(n)?;
    let r = evaluate_in(&ctx, id, 1, default_cap(n))?;
    let t2 = embed_complex(&r.terminal_term.abs_square(), digits);
    let terminal_modulus = libm::sqrt(t2.re.max(0.0));
    let rest = &r.value - &r.terminal_term;
    let partial_sum_modulus = embed_complex(&rest, digits).norm();
    Ok(MarginRecord {
        function: id,
        n,
        terminal_modulus,
        partial_sum_modulus,
        margin: terminal_modulus - partial_sum_modulus,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiskRelation {
    /// `u = U₀ - 2U₁`
    URel,
    /// `U₀(q) = S₀(q²) + q S₁(q²)`
    U0Rel,
    /// `U₁(q) = T₀(q²) + q T₁(q²)`
    U1Rel,
}

impl DiskRelation {
    pub const ALL: [DiskRelation; 3] = [DiskRelation::URel, DiskRelation::U0Rel, DiskRelation::U1Rel];

    pub fn name(self) -> &'static str {
        match self {
            DiskRelation::URel => "u_rel",
            DiskRelation::U0Rel => "U0_rel",
            DiskRelation::U1Rel => "U1_rel",
        }
    }
}

impl FromStr for DiskRelation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|w| w.name() == s).ok_or_else(|| s.to_string())
    }
}

/// `|LHS - RHS|` with both sides truncated at `K`.
pub fn disk_residual(which: DiskRelation, q: Complex64, k_max: usize) -> f64 {
    // The spec of a `_neg` entry is the un-negated series in `q`.
    let f = |id: FunctionId, x: Complex64| truncated_sum(&catalog_lookup(id).spec, x, k_max);
    let q2 = q * q;
    let d = match which {
        DiskRelation::URel => f(FunctionId::U, q) - f(FunctionId::U0Neg, q) + 2.0 * f(FunctionId::U1Neg, q),
        DiskRelation::U0Rel => f(FunctionId::U0Neg, q) - f(FunctionId::S0Neg, q2) - q * f(FunctionId::S1Neg, q2),
        DiskRelation::U1Rel => f(FunctionId::U1Neg, q) - f(FunctionId::T0, q2) - q * f(FunctionId::T1, q2),
    };
    d.norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products() {
        for n in [1usize, 3, 5, 45, 99] {
            assert!(check_unit_product(n).unwrap().passed, "n={n}");
            assert!(check_n_product(n).unwrap().passed, "n={n}");
            assert!(check_terminal_term(n).unwrap().passed, "n={n}");
            assert!(check_even_half_product(n).unwrap().outcome.passed, "n={n}");
        }
        assert_eq!(check_even_half_product(3).unwrap().epsilon, Some(-1));
        assert_eq!(check_unit_product(4), Err(VerifyError::EvenOrder(4)));
    }

    #[test]
    fn linear_identities_small() {
        for n in [1usize, 3, 5, 7, 9, 15] {
            for w in LinearIdentity::ALL {
                let o = check_linear_identity(w, n).unwrap();
                assert!(o.passed, "{w} n={n}: {:?}", o.witness);
            }
        }
    }

    #[test]
    fn galois_and_inversion_small() {
        for n in [1usize, 3, 5, 9] {
            for id in FunctionId::MAIN {
                assert!(check_galois(id, n).unwrap().passed, "{id} n={n}");
                if catalog_lookup(id).inversion_partner.is_some() {
                    assert!(check_inversion(id, n).unwrap().passed, "{id} n={n}");
                }
            }
        }
        assert_eq!(check_inversion(FunctionId::Phi, 3), Err(VerifyError::NotPrimed(FunctionId::Phi)));
    }

    #[test]
    fn margins() {
        let m = margin_report(FunctionId::Phi, 7, 12).unwrap();
        assert!((m.terminal_modulus - libm::sqrt(7.0)).abs() < 1e-9);
        let p = margin_report(FunctionId::Psi, 7, 12).unwrap();
        assert!((p.terminal_modulus - libm::sqrt(7.0) / 2.0).abs() < 1e-9);
        assert!(margin_report(FunctionId::Mu, 7, 12).is_err());
    }

    #[test]
    fn disk() {
        for w in DiskRelation::ALL {
            assert!(disk_residual(w, Complex64::new(0.0, 0.0), 40) < 1e-15);
            assert!(disk_residual(w, Complex64::new(0.3, 0.2), 60) < 1e-10, "{}", w.name());
        }
    }
}
