//! q-Pochhammer products and terminating series over cyclotomic elements.
//!
//! A series term is `sign(k) · q^{e(k)} · Π num / (Π den)^p`, where each
//! product is a q-Pochhammer symbol `(±q^s; q^d)_{L(k)}` with `L` affine and
//! nondecreasing. At a root of unity a numerator factor `1 - ζ^{mn}` is exactly
//! zero; because `L` never shrinks the zero persists and the series
//! terminates there.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::cyclic::CyclicVec;
use crate::field::{CycloContext, CycloElement};
use crate::FieldError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignRule {
    /// `+1`
    Plus,
    /// `(-1)^k`
    Alternating,
    /// `(-1)^{k+1}`
    AlternatingShifted,
}

impl SignRule {
    pub fn at(self, k: usize) -> i8 {
        let odd = k % 2 == 1;
        match self {
            SignRule::Plus => 1,
            SignRule::Alternating => {
                if odd {
                    -1
                } else {
                    1
                }
            }
            SignRule::AlternatingShifted => {
                if odd {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

/// `e(k) = (a·k² + b·k + c) / den`, integer-valued on the integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExponentPoly {
    a: i64,
    b: i64,
    c: i64,
    den: i64,
}

impl ExponentPoly {
    pub const fn new_unchecked(a: i64, b: i64, c: i64, den: i64) -> Self {
        ExponentPoly { a, b, c, den }
    }

    pub fn new(a: i64, b: i64, c: i64, den: i64) -> Result<Self, SeriesError> {
        // A quadratic is integer-valued on Z iff it is at 0, 1 and 2.
        let p = ExponentPoly { a, b, c, den };
        if den <= 0 || (0..3).any(|k| (a * k * k + b * k + c) % den != 0) {
            return Err(SeriesError::InvalidSpec("exponent polynomial is not integer-valued"));
        }
        Ok(p)
    }

    pub fn at(&self, k: usize) -> i64 {
        let k = k as i64;
        (self.a * k * k + self.b * k + self.c) / self.den
    }

    pub fn coefficients(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.c, self.den)
    }
}

/// Affine length `L(k) = mult·k + add`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LengthRule {
    pub mult: u32,
    pub add: u32,
}

impl LengthRule {
    pub const fn at(&self, k: usize) -> usize {
        self.mult as usize * k + self.add as usize
    }
}

/// The family `(base_sign · q^{base_offset}; q^{step})_{L(k)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PochhammerFactor {
    pub base_sign: i8,
    pub base_offset: u32,
    pub step: u32,
    pub length: LengthRule,
}

impl PochhammerFactor {
    pub const fn new(base_sign: i8, base_offset: u32, step: u32, mult: u32, add: u32) -> Self {
        PochhammerFactor { base_sign, base_offset, step, length: LengthRule { mult, add } }
    }

    fn validate(&self) -> Result<(), SeriesError> {
        if self.step == 0 || !(self.base_sign == 1 || self.base_sign == -1) {
            return Err(SeriesError::InvalidSpec("pochhammer factor needs step >= 1 and sign +-1"));
        }
        Ok(())
    }

    /// Exponent of `q` in the `j`-th factor `1 - base_sign · q^{offset + step·j}`.
    fn q_exponent(&self, j: usize) -> i64 {
        self.base_offset as i64 + self.step as i64 * j as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesSpec {
    pub sign: SignRule,
    pub exponent: ExponentPoly,
    pub numerator: Vec<PochhammerFactor>,
    pub denominator: Vec<PochhammerFactor>,
    pub denominator_power: u8,
}

impl SeriesSpec {
    pub fn validate(&self) -> Result<(), SeriesError> {
        ExponentPoly::new(self.exponent.a, self.exponent.b, self.exponent.c, self.exponent.den)?;
        if !(1..=2).contains(&self.denominator_power) {
            return Err(SeriesError::InvalidSpec("denominator power must be 1 or 2"));
        }
        self.numerator.iter().chain(&self.denominator).try_for_each(PochhammerFactor::validate)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationResult {
    pub value: CycloElement,
    /// Index of the last nonzero term.
    pub terminated_at: usize,
    /// Number of nonzero terms summed.
    pub terms_emitted: usize,
    /// The term at `terminated_at`.
    pub terminal_term: CycloElement,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("denominator vanishes at term {0} while the numerator does not")]
    DenominatorZero(usize),
    #[error("series did not terminate within {cap} terms")]
    NonTerminating { cap: usize },
    #[error("evaluation point is zero")]
    ZeroPoint,
    #[error("invalid series: {0}")]
    InvalidSpec(&'static str),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Default term cap: `4n` for a point of order `n`.
pub fn default_cap(order: usize) -> usize {
    4 * order.max(1)
}

/// `(x; q)_k = Π_{j<k} (1 - x·q^j)`.
pub fn pochhammer(x: &CycloElement, q: &CycloElement, k: usize) -> Result<CycloElement, FieldError> {
    x.same_field(q)?;
    let ctx = x.context();
    if let (Some((sx, ex)), Some((sq, eq))) = (x.as_signed_monomial(), q.as_signed_monomial()) {
        let n = ctx.order();
        let mut v = CyclicVec::one(n);
        for j in 0..k {
            let c = if sq < 0 && j % 2 == 1 { -sx } else { sx };
            v.mul_one_minus(c, (ex + eq * (j % n)) % n);
        }
        return Ok(v.to_field(ctx));
    }
    let one = ctx.one();
    let mut acc = one.clone();
    let mut xq = x.clone();
    for _ in 0..k {
        acc = &acc * &(&one - &xq);
        xq = &xq * q;
    }
    Ok(acc)
}

/// Evaluates `spec` at `q0`. Points of the form `±ζ^m` take a fast path in
/// the lifted ring; anything else goes through [`eval_series_generic`].
pub fn eval_series(spec: &SeriesSpec, q0: &CycloElement, cap: usize) -> Result<EvaluationResult, SeriesError> {
    spec.validate()?;
    if q0.is_zero() {
        return Err(SeriesError::ZeroPoint);
    }
    match q0.as_signed_monomial() {
        Some((sign, m)) => eval_at_signed_root(spec, q0.context(), sign, m as i64, cap),
        None => eval_series_generic(spec, q0, cap),
    }
}

/// Evaluates `spec` at `sign · ζ^exp`.
pub fn eval_at_signed_root(
    spec: &SeriesSpec,
    ctx: &Arc<CycloContext>,
    sign: i8,
    exp: i64,
    cap: usize,
) -> Result<EvaluationResult, SeriesError> {
    let n = ctx.order();
    // q0^t = sign^t · ζ^{exp·t}
    let power = |t: i64| -> (i8, usize) {
        let s = if sign < 0 && t.rem_euclid(2) == 1 { -1 } else { 1 };
        let m = (exp as i128 * t as i128).rem_euclid(n as i128) as usize;
        (s, m)
    };
    // j-th factor of f is 1 - c·ζ^m
    let factor = |f: &PochhammerFactor, j: usize| -> (i8, usize) {
        let (s, m) = power(f.q_exponent(j));
        (s * f.base_sign, m)
    };
    let is_zero = |(c, m): (i8, usize)| c == 1 && m == 0;

    let mut ratio = CyclicVec::one(n);
    let mut acc = CyclicVec::zero(n);
    let mut last_term = None;
    let mut num_len = alloc::vec![0usize; spec.numerator.len()];
    let mut den_len = alloc::vec![0usize; spec.denominator.len()];

    for k in 0..cap {
        for (f, len) in spec.numerator.iter().zip(num_len.iter_mut()) {
            let target = f.length.at(k);
            for j in *len..target {
                let fac = factor(f, j);
                if is_zero(fac) {
                    return finish(ctx, acc, last_term, k);
                }
                ratio.mul_one_minus(fac.0, fac.1);
            }
            *len = target.max(*len);
        }
        for (f, len) in spec.denominator.iter().zip(den_len.iter_mut()) {
            let target = f.length.at(k);
            for j in *len..target {
                let (c, m) = factor(f, j);
                if is_zero((c, m)) {
                    return Err(SeriesError::DenominatorZero(k));
                }
                for _ in 0..spec.denominator_power {
                    if c < 0 {
                        ratio.div_one_plus(m);
                    } else {
                        ratio.div_one_minus_nontrivial(m);
                    }
                }
            }
            *len = target.max(*len);
        }
        ratio.clean(ctx);
        ratio.normalize();

        let (s, m) = power(spec.exponent.at(k));
        let mut term = ratio.clone();
        term.mul_monomial(s * spec.sign.at(k), m);
        acc.add_assign(&term);
        acc.normalize();
        last_term = Some(term);
    }
    Err(SeriesError::NonTerminating { cap })
}

fn finish(
    ctx: &Arc<CycloContext>,
    acc: CyclicVec,
    last_term: Option<CyclicVec>,
    stop: usize,
) -> Result<EvaluationResult, SeriesError> {
    let terminal_term = match last_term {
        Some(t) => t.to_field(ctx),
        None => ctx.zero(),
    };
    Ok(EvaluationResult {
        value: acc.to_field(ctx),
        terminated_at: stop.saturating_sub(1),
        terms_emitted: stop,
        terminal_term,
    })
}

/// Reference evaluator using only field operations (`pow`, `inverse`, ...).
/// Works for any nonzero `q0`.
pub fn eval_series_generic(
    spec: &SeriesSpec,
    q0: &CycloElement,
    cap: usize,
) -> Result<EvaluationResult, SeriesError> {
    spec.validate()?;
    if q0.is_zero() {
        return Err(SeriesError::ZeroPoint);
    }
    let ctx = q0.context().clone();
    let one = ctx.one();
    let factor = |f: &PochhammerFactor, j: usize| -> Result<CycloElement, FieldError> {
        let base = q0.pow(f.q_exponent(j))?;
        Ok(if f.base_sign > 0 { &one - &base } else { &one + &base })
    };

    let mut ratio = one.clone();
    let mut acc = ctx.zero();
    let mut last_term = None;
    let mut num_len = alloc::vec![0usize; spec.numerator.len()];
    let mut den_len = alloc::vec![0usize; spec.denominator.len()];

    for k in 0..cap {
        for (f, len) in spec.numerator.iter().zip(num_len.iter_mut()) {
            let target = f.length.at(k);
            for j in *len..target {
                let fac = factor(f, j)?;
                if fac.is_zero() {
                    return Ok(EvaluationResult {
                        value: acc,
                        terminated_at: k.saturating_sub(1),
                        terms_emitted: k,
                        terminal_term: last_term.unwrap_or_else(|| ctx.zero()),
                    });
                }
                ratio = &ratio * &fac;
            }
            *len = target.max(*len);
        }
        for (f, len) in spec.denominator.iter().zip(den_len.iter_mut()) {
            let target = f.length.at(k);
            for j in *len..target {
                let fac = factor(f, j)?;
                if fac.is_zero() {
                    return Err(SeriesError::DenominatorZero(k));
                }
                let inv = fac.inverse()?;
                for _ in 0..spec.denominator_power {
                    ratio = &ratio * &inv;
                }
            }
            *len = target.max(*len);
        }
        let mono = q0.pow(spec.exponent.at(k))?;
        let mut term = &mono * &ratio;
        if spec.sign.at(k) < 0 {
            term = -term;
        }
        acc = &acc + &term;
        last_term = Some(term);
    }
    Err(SeriesError::NonTerminating { cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_context;
    use alloc::vec;

    fn phi_spec() -> SeriesSpec {
        SeriesSpec {
            sign: SignRule::Alternating,
            exponent: ExponentPoly::new(1, 0, 0, 1).unwrap(),
            numerator: vec![PochhammerFactor::new(1, 1, 2, 1, 0)],
            denominator: vec![PochhammerFactor::new(-1, 1, 1, 2, 0)],
            denominator_power: 1,
        }
    }

    #[test]
    fn sign_rules() {
        assert_eq!([0, 1, 2].map(|k| SignRule::Alternating.at(k)), [1, -1, 1]);
        assert_eq!([0, 1, 2].map(|k| SignRule::AlternatingShifted.at(k)), [-1, 1, -1]);
    }

    #[test]
    fn exponent_integrality() {
        assert!(ExponentPoly::new(1, 1, 0, 2).is_ok());
        assert!(ExponentPoly::new(-1, 3, -2, 2).is_ok());
        assert!(ExponentPoly::new(1, 0, 0, 2).is_err());
        assert_eq!(ExponentPoly::new(-1, 3, -2, 2).unwrap().at(0), -1);
        assert_eq!(ExponentPoly::new(1, 3, 2, 2).unwrap().at(3), 10);
    }

    #[test]
    fn pochhammer_examples() {
        let c3 = make_context(3).unwrap();
        let z = c3.zeta();
        assert!(pochhammer(&z, &z, 0).unwrap().is_one());
        assert_eq!(pochhammer(&z, &z, 2).unwrap(), c3.from_int(3));
        let c5 = make_context(5).unwrap();
        let z5 = c5.zeta();
        assert!(pochhammer(&-&z5, &z5, 4).unwrap().is_one());
        assert!(pochhammer(&z, &z5, 1).is_err());
        let x = &c5.from_int(2) + &z5;
        let slow = (0..3).fold(c5.one(), |acc, j| &acc * &(&c5.one() - &(&x * &z5.pow(j).unwrap())));
        assert_eq!(pochhammer(&x, &z5, 3).unwrap(), slow);
    }

    #[test]
    fn phi_at_cube_root() {
        let c3 = make_context(3).unwrap();
        let r = eval_series(&phi_spec(), &c3.zeta(), 12).unwrap();
        assert_eq!(r.value, c3.monomial(-2, 1));
        assert_eq!(r.terminated_at, 1);
        assert_eq!(r.terms_emitted, 2);
        let g = eval_series_generic(&phi_spec(), &c3.zeta(), 12).unwrap();
        assert_eq!(g, r);
    }

    #[test]
    fn fast_and_generic_paths_agree() {
        let spec = SeriesSpec {
            sign: SignRule::Plus,
            exponent: ExponentPoly::new(1, 1, 0, 2).unwrap(),
            numerator: vec![PochhammerFactor::new(-1, 1, 1, 1, 0)],
            denominator: vec![PochhammerFactor::new(1, 1, 2, 1, 1)],
            denominator_power: 1,
        };
        for n in [3usize, 5, 7, 9, 15] {
            let ctx = make_context(n).unwrap();
            for (s, e) in [(1i8, 1i64), (-1, 1), (-1, 2), (1, -1)] {
                let q0 = ctx.monomial(s, e);
                let fast = eval_series(&spec, &q0, 4 * n);
                let slow = eval_series_generic(&spec, &q0, 4 * n);
                assert_eq!(fast, slow, "n={n} s={s} e={e}");
            }
            for spec in [phi_spec()] {
                let q0 = ctx.monomial(-1, 2);
                assert_eq!(eval_series(&spec, &q0, 4 * n), eval_series_generic(&spec, &q0, 4 * n));
            }
        }
    }

    #[test]
    fn generic_point_terminates_only_on_exact_zero() {
        // q0 = 1 + ζ is not a root of unity; φ's numerator never vanishes.
        let c3 = make_context(3).unwrap();
        let q0 = &c3.one() + &c3.monomial(1, 2);
        assert!(q0.as_signed_monomial().is_some());
        let q1 = &c3.from_int(2) + &c3.zeta();
        assert!(q1.as_signed_monomial().is_none());
        assert_eq!(eval_series(&phi_spec(), &q1, 5), Err(SeriesError::NonTerminating { cap: 5 }));
        assert_eq!(eval_series(&phi_spec(), &c3.zero(), 5), Err(SeriesError::ZeroPoint));
    }
}
