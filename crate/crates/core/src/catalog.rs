//! The mock theta catalog: each function as a [`SeriesSpec`] plus a
//! substitution applied to the evaluation point.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::field::{make_context, CycloContext};
use crate::poly::gcd;
use crate::qseries::{
    default_cap, eval_at_signed_root, EvaluationResult, ExponentPoly, PochhammerFactor, SeriesError, SeriesSpec,
    SignRule,
};
use crate::FieldError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionId {
    Phi,
    Psi,
    Lambda,
    Mu,
    RhoNeg,
    SigmaNeg,
    S0Neg,
    S1Neg,
    U0Neg,
    U1Neg,
    Phi0Neg,
    Phi1Neg,
    U,
    PhiP,
    MuP,
    SigmaPNeg,
    PsiP,
    LambdaP,
    RhoPNeg,
    S0PNeg,
    S1PNeg,
    U0PNeg,
    U1PNeg,
    RhoPlain,
    SigmaPlain,
    T0,
    T1,
    FThirdOrder,
}

impl FunctionId {
    /// The 23 functions that terminate at every odd root of unity.
    pub const MAIN: [FunctionId; 23] = [
        FunctionId::Phi,
        FunctionId::Psi,
        FunctionId::Lambda,
        FunctionId::Mu,
        FunctionId::RhoNeg,
        FunctionId::SigmaNeg,
        FunctionId::S0Neg,
        FunctionId::S1Neg,
        FunctionId::U0Neg,
        FunctionId::U1Neg,
        FunctionId::Phi0Neg,
        FunctionId::Phi1Neg,
        FunctionId::U,
        FunctionId::PhiP,
        FunctionId::MuP,
        FunctionId::SigmaPNeg,
        FunctionId::PsiP,
        FunctionId::LambdaP,
        FunctionId::RhoPNeg,
        FunctionId::S0PNeg,
        FunctionId::S1PNeg,
        FunctionId::U0PNeg,
        FunctionId::U1PNeg,
    ];

    pub const DIAGNOSTIC: [FunctionId; 5] =
        [FunctionId::RhoPlain, FunctionId::SigmaPlain, FunctionId::T0, FunctionId::T1, FunctionId::FThirdOrder];

    pub fn all() -> impl Iterator<Item = FunctionId> {
        Self::MAIN.into_iter().chain(Self::DIAGNOSTIC)
    }

    pub fn is_main(self) -> bool {
        !Self::DIAGNOSTIC.contains(&self)
    }

    pub fn name(self) -> &'static str {
        use FunctionId::*;
        match self {
            Phi => "phi",
            Psi => "psi",
            Lambda => "lambda",
            Mu => "mu",
            RhoNeg => "rho_neg",
            SigmaNeg => "sigma_neg",
            S0Neg => "S0_neg",
            S1Neg => "S1_neg",
            U0Neg => "U0_neg",
            U1Neg => "U1_neg",
            Phi0Neg => "phi0_neg",
            Phi1Neg => "phi1_neg",
            U => "u",
            PhiP => "phi_p",
            MuP => "mu_p",
            SigmaPNeg => "sigma_p_neg",
            PsiP => "psi_p",
            LambdaP => "lambda_p",
            RhoPNeg => "rho_p_neg",
            S0PNeg => "S0_p_neg",
            S1PNeg => "S1_p_neg",
            U0PNeg => "U0_p_neg",
            U1PNeg => "U1_p_neg",
            RhoPlain => "rho_plain",
            SigmaPlain => "sigma_plain",
            T0 => "T0",
            T1 => "T1",
            FThirdOrder => "f_third_order",
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionId {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FunctionId::all().find(|id| id.name() == s).ok_or_else(|| EvalError::UnknownFunction(s.to_string()))
    }
}

/// Map applied to the evaluation point before summing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Substitution {
    Identity,
    /// `q → -q`
    Negate,
    /// `q → q^{-1}`
    Invert,
    /// `q → q²`
    Square,
}

impl Substitution {
    /// Image of `sign · ζ^e` as another `(sign, e)` pair.
    pub fn apply(self, sign: i8, e: i64) -> (i8, i64) {
        match self {
            Substitution::Identity => (sign, e),
            Substitution::Negate => (-sign, e),
            Substitution::Invert => (sign, -e),
            Substitution::Square => (1, 2 * e),
        }
    }

    pub fn apply_complex(self, q: Complex64) -> Complex64 {
        match self {
            Substitution::Identity => q,
            Substitution::Negate => -q,
            Substitution::Invert => q.inv(),
            Substitution::Square => q * q,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: FunctionId,
    pub spec: SeriesSpec,
    pub substitution: Substitution,
    /// For a primed function `f'`, the `f` with `f'(ζ) = f(ζ^{-1})`.
    pub inversion_partner: Option<FunctionId>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("root order must be odd, got {0}")]
    EvenOrder(usize),
    #[error("root index {j} out of range for order {n}")]
    IndexOutOfRange { j: i64, n: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

const fn poch(sign: i8, offset: u32, step: u32, mult: u32, add: u32) -> PochhammerFactor {
    PochhammerFactor::new(sign, offset, step, mult, add)
}

const fn ex(a: i64, b: i64, c: i64, den: i64) -> ExponentPoly {
    ExponentPoly::new_unchecked(a, b, c, den)
}

// (q;q²)_k
const Q_Q2_K: PochhammerFactor = poch(1, 1, 2, 1, 0);
// (q;q²)_{k+1}
const Q_Q2_K1: PochhammerFactor = poch(1, 1, 2, 1, 1);
// (-q;q)_k
const MQ_Q_K: PochhammerFactor = poch(-1, 1, 1, 1, 0);
// (-q;q)_{2k}
const MQ_Q_2K: PochhammerFactor = poch(-1, 1, 1, 2, 0);
// (-q;q)_{2k+1}
const MQ_Q_2K1: PochhammerFactor = poch(-1, 1, 1, 2, 1);
// (-q;q²)_k
const MQ_Q2_K: PochhammerFactor = poch(-1, 1, 2, 1, 0);
// (-q;q²)_{k+1}
const MQ_Q2_K1: PochhammerFactor = poch(-1, 1, 2, 1, 1);
// (-q²;q²)_k
const MQ2_Q2_K: PochhammerFactor = poch(-1, 2, 2, 1, 0);
// (-q⁴;q⁴)_k
const MQ4_Q4_K: PochhammerFactor = poch(-1, 4, 4, 1, 0);
// (-q²;q⁴)_{k+1}
const MQ2_Q4_K1: PochhammerFactor = poch(-1, 2, 4, 1, 1);

const K_SQ: ExponentPoly = ex(1, 0, 0, 1);
const K1_SQ: ExponentPoly = ex(1, 2, 1, 1);

fn series(
    sign: SignRule,
    exponent: ExponentPoly,
    numerator: Vec<PochhammerFactor>,
    denominator: Vec<PochhammerFactor>,
) -> SeriesSpec {
    SeriesSpec { sign, exponent, numerator, denominator, denominator_power: 1 }
}

/// The catalog entry for `id`.
pub fn catalog_lookup(id: FunctionId) -> CatalogEntry {
    use FunctionId::*;
    use SignRule::*;
    use Substitution::{Identity, Negate};

    let (spec, substitution, inversion_partner) = match id {
        Phi => (series(Alternating, K_SQ, vec![Q_Q2_K], vec![MQ_Q_2K]), Identity, None),
        Psi => (series(Alternating, K1_SQ, vec![Q_Q2_K], vec![MQ_Q_2K1]), Identity, None),
        Lambda => (series(Alternating, ex(0, 1, 0, 1), vec![Q_Q2_K], vec![MQ_Q_K]), Identity, None),
        Mu => (series(Alternating, ex(0, 0, 0, 1), vec![Q_Q2_K], vec![MQ_Q_K]), Identity, None),
        RhoNeg => (series(Plus, ex(1, 1, 0, 2), vec![MQ_Q_K], vec![Q_Q2_K1]), Negate, None),
        SigmaNeg => (series(Plus, ex(1, 3, 2, 2), vec![MQ_Q_K], vec![Q_Q2_K1]), Negate, None),
        S0Neg => (series(Plus, K_SQ, vec![MQ_Q2_K], vec![MQ2_Q2_K]), Negate, None),
        S1Neg => (series(Plus, ex(1, 2, 0, 1), vec![MQ_Q2_K], vec![MQ2_Q2_K]), Negate, None),
        U0Neg => (series(Plus, K_SQ, vec![MQ_Q2_K], vec![MQ4_Q4_K]), Negate, None),
        U1Neg => (series(Plus, K1_SQ, vec![MQ_Q2_K], vec![MQ2_Q4_K1]), Negate, None),
        Phi0Neg => (series(Plus, K_SQ, vec![MQ_Q2_K], vec![]), Negate, None),
        Phi1Neg => (series(Plus, K1_SQ, vec![MQ_Q2_K], vec![]), Negate, None),
        U => {
            let mut s = series(Alternating, K_SQ, vec![Q_Q2_K], vec![MQ2_Q2_K]);
            s.denominator_power = 2;
            (s, Identity, None)
        }
        PhiP => (series(Plus, ex(0, 1, 0, 1), vec![Q_Q2_K], vec![MQ_Q_2K]), Identity, Some(Phi)),
        MuP => (series(Plus, ex(-1, 1, 0, 2), vec![Q_Q2_K], vec![MQ_Q_K]), Identity, Some(Mu)),
        SigmaPNeg => (series(AlternatingShifted, ex(0, 0, 0, 1), vec![MQ_Q_K], vec![Q_Q2_K1]), Negate, Some(SigmaNeg)),
        PsiP => (series(Plus, ex(0, 1, 0, 1), vec![Q_Q2_K], vec![MQ_Q_2K1]), Identity, Some(Psi)),
        LambdaP => (series(Plus, ex(-1, -1, 0, 2), vec![Q_Q2_K], vec![MQ_Q_K]), Identity, Some(Lambda)),
        RhoPNeg => (series(AlternatingShifted, ex(0, 1, 1, 1), vec![MQ_Q_K], vec![Q_Q2_K1]), Negate, Some(RhoNeg)),
        S0PNeg => (series(Plus, ex(-1, 1, 0, 1), vec![MQ_Q2_K], vec![MQ2_Q2_K]), Negate, Some(S0Neg)),
        S1PNeg => (series(Plus, ex(-1, -1, 0, 1), vec![MQ_Q2_K], vec![MQ2_Q2_K]), Negate, Some(S1Neg)),
        U0PNeg => (series(Plus, ex(0, 2, 0, 1), vec![MQ_Q2_K], vec![MQ4_Q4_K]), Negate, Some(U0Neg)),
        U1PNeg => (series(Plus, ex(0, 2, 1, 1), vec![MQ_Q2_K], vec![MQ2_Q4_K1]), Negate, Some(U1Neg)),
        RhoPlain => (series(Plus, ex(1, 1, 0, 2), vec![MQ_Q_K], vec![Q_Q2_K1]), Identity, None),
        SigmaPlain => (series(Plus, ex(1, 3, 2, 2), vec![MQ_Q_K], vec![Q_Q2_K1]), Identity, None),
        T0 => (series(Plus, ex(1, 3, 2, 1), vec![MQ2_Q2_K], vec![MQ_Q2_K1]), Identity, None),
        T1 => (series(Plus, ex(1, 1, 0, 1), vec![MQ2_Q2_K], vec![MQ_Q2_K1]), Identity, None),
        FThirdOrder => {
            let mut s = series(Plus, K_SQ, vec![], vec![MQ_Q_K]);
            s.denominator_power = 2;
            (s, Identity, None)
        }
    };
    CatalogEntry { id, spec, substitution, inversion_partner }
}

/// `id` at `ζ_n^j`, computed in `Q(ζ_{n/g})` with `g = gcd(j, n)`.
pub fn evaluate_at_root(id: FunctionId, n: usize, j: i64) -> Result<EvaluationResult, EvalError> {
    if n % 2 == 0 {
        return Err(EvalError::EvenOrder(n));
    }
    if j < 0 || j as usize >= n {
        return Err(EvalError::IndexOutOfRange { j, n });
    }
    let g = gcd(j as usize, n);
    let ctx = make_context(n / g)?;
    evaluate_in(&ctx, id, j / g as i64, default_cap(n / g))
}

/// `id` at `ζ^e` for the generator `ζ` of `ctx`, with `e` coprime to the
/// order (so the point is primitive).
pub fn evaluate_in(
    ctx: &Arc<CycloContext>,
    id: FunctionId,
    e: i64,
    cap: usize,
) -> Result<EvaluationResult, EvalError> {
    let n = ctx.order();
    if n % 2 == 0 {
        return Err(EvalError::EvenOrder(n));
    }
    let entry = catalog_lookup(id);
    let (sign, exp) = entry.substitution.apply(1, e);
    Ok(eval_at_signed_root(&entry.spec, ctx, sign, exp, cap)?)
}

/// `Σ_{k=0}^{K} term_k` in floating point, after the substitution.
pub fn evaluate_truncated(id: FunctionId, q: Complex64, k_max: usize) -> Complex64 {
    let entry = catalog_lookup(id);
    truncated_sum(&entry.spec, entry.substitution.apply_complex(q), k_max)
}

/// Floating-point partial sum of `spec` at `q` through index `k_max`.
pub fn truncated_sum(spec: &SeriesSpec, q: Complex64, k_max: usize) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let qpow = |t: i64| if t >= 0 { q.powu(t as u32) } else { q.inv().powu((-t) as u32) };
    let mut ratio = one;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut num_len = vec![0usize; spec.numerator.len()];
    let mut den_len = vec![0usize; spec.denominator.len()];
    for k in 0..=k_max {
        for (f, len) in spec.numerator.iter().zip(num_len.iter_mut()) {
            let target = f.length.at(k);
            for j in *len..target {
                ratio *= one - f.base_sign as f64 * qpow(f.base_offset as i64 + f.step as i64 * j as i64);
            }
            *len = target.max(*len);
        }
        for (f, len) in spec.denominator.iter().zip(den_len.iter_mut()) {
            let target = f.length.at(k);
            for j in *len..target {
                let d = one - f.base_sign as f64 * qpow(f.base_offset as i64 + f.step as i64 * j as i64);
                ratio /= d.powu(spec.denominator_power as u32);
            }
            *len = target.max(*len);
        }
        acc += spec.sign.at(k) as f64 * qpow(spec.exponent.at(k)) * ratio;
    }
    acc
}
