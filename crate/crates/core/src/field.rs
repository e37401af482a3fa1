//! Exact arithmetic in the cyclotomic field `Q(ζ_n)`.
//!
//! Elements are kept reduced modulo the minimal polynomial `Φ_n`, so equality
//! and zero tests compare canonical coefficient vectors. Internally a vector of
//! integer numerators shares one positive denominator; the pair is kept in
//! lowest terms after every operation.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{cyclotomic_poly, euler_phi, gcd, IntPoly};
use crate::FieldError;

pub type Rational = BigRational;

/// The field `Q(ζ_n)`: its order, minimal polynomial and degree.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloContext {
    order: usize,
    minimal_poly: IntPoly,
    degree: usize,
}

/// Builds the context for `Q(ζ_n)`.
pub fn make_context(n: usize) -> Result<Arc<CycloContext>, FieldError> {
    CycloContext::new(n)
}

impl CycloContext {
    pub fn new(n: usize) -> Result<Arc<Self>, FieldError> {
        let minimal_poly = cyclotomic_poly(n)?;
        let degree = euler_phi(n);
        debug_assert_eq!(minimal_poly.degree(), Some(degree));
        Ok(Arc::new(CycloContext { order: n, minimal_poly, degree }))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minimal_poly(&self) -> &IntPoly {
        &self.minimal_poly
    }

    /// Residues `k mod n` with `gcd(k, n) = 1`; these index the Galois group.
    pub fn units(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order.max(1)).filter(move |&k| gcd(k, self.order) == 1)
    }

    pub(crate) fn exp_mod(&self, e: i64) -> usize {
        e.rem_euclid(self.order as i64) as usize
    }

    /// Reduces an integer polynomial of any length to `φ(n)` coefficients,
    /// folding by `x^n = 1` first and then dividing by `Φ_n`.
    pub(crate) fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.order;
        if v.len() > n {
            let tail = v.split_off(n);
            for (i, c) in tail.into_iter().enumerate() {
                if !c.is_zero() {
                    v[i % n] += c;
                }
            }
        }
        let phi = self.minimal_poly.coeffs();
        let d = self.degree;
        for top in (d..v.len()).rev() {
            let c = core::mem::take(&mut v[top]);
            if c.is_zero() {
                continue;
            }
            let shift = top - d;
            for (t, p) in phi[..d].iter().enumerate() {
                if !p.is_zero() {
                    v[shift + t] -= &c * p;
                }
            }
        }
        v.resize(d, BigInt::zero());
        v
    }

    pub fn zero(self: &Arc<Self>) -> CycloElement {
        CycloElement::from_parts_unchecked(self.clone(), vec![BigInt::zero(); self.degree], BigInt::one())
    }

    pub fn one(self: &Arc<Self>) -> CycloElement {
        self.from_rational(&Rational::one())
    }

    pub fn from_int(self: &Arc<Self>, c: i64) -> CycloElement {
        self.from_rational(&Rational::from_integer(BigInt::from(c)))
    }

    pub fn from_rational(self: &Arc<Self>, r: &Rational) -> CycloElement {
        let mut num = vec![BigInt::zero(); self.degree];
        num[0] = r.numer().clone();
        CycloElement::from_parts_unchecked(self.clone(), num, r.denom().clone())
    }

    /// The generator `ζ = exp(2πi/n)`.
    pub fn zeta(self: &Arc<Self>) -> CycloElement {
        self.monomial(1, 1)
    }

    /// `sign · ζ^e` for any integer exponent.
    pub fn monomial(self: &Arc<Self>, sign: i8, e: i64) -> CycloElement {
        let m = self.exp_mod(e);
        let mut v = vec![BigInt::zero(); m + 1];
        v[m] = BigInt::from(sign);
        CycloElement::from_poly_int(self, v, BigInt::one())
    }

    /// Element from rational coefficients of `Σ c_i ζ^i`, any length.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[Rational]) -> CycloElement {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        CycloElement::from_poly_int(self, num, den)
    }
}

/// An exact element of `Q(ζ_n)`.
#[derive(Clone)]
pub struct CycloElement {
    ctx: Arc<CycloContext>,
    num: Vec<BigInt>,
    den: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Pow(i64),
}

/// Checked binary dispatch; rejects operands from different fields.
pub fn arith(a: &CycloElement, b: &CycloElement, op: ArithOp) -> Result<CycloElement, FieldError> {
    a.same_field(b)?;
    Ok(match op {
        ArithOp::Add => a.add_ref(b),
        ArithOp::Sub => a.sub_ref(b),
        ArithOp::Mul => a.mul_ref(b),
        ArithOp::Neg => a.neg_ref(),
        ArithOp::Pow(k) => a.pow(k)?,
    })
}

impl CycloElement {
    fn from_parts_unchecked(ctx: Arc<CycloContext>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut e = CycloElement { ctx, num, den };
        e.normalize();
        e
    }

    /// Reduces `Σ num_i x^i / den` into canonical form.
    pub(crate) fn from_poly_int(ctx: &Arc<CycloContext>, num: Vec<BigInt>, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let num = ctx.reduce(num);
        Self::from_parts_unchecked(ctx.clone(), num, den)
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -core::mem::take(&mut self.den);
            for c in self.num.iter_mut() {
                *c = -core::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        } else if !g.is_one() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn context(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.ctx.order
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coeff(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    /// The canonical coefficient vector, `φ(n)` rationals.
    pub fn coeffs(&self) -> Vec<Rational> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn same_field(&self, other: &CycloElement) -> Result<(), FieldError> {
        if self.ctx.order == other.ctx.order {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch(self.ctx.order, other.ctx.order))
        }
    }

    fn assert_same_field(&self, other: &CycloElement) {
        if let Err(e) = self.same_field(other) {
            panic!("{e}");
        }
    }

    fn add_ref(&self, other: &CycloElement) -> CycloElement {
        self.combine(other, true)
    }

    fn sub_ref(&self, other: &CycloElement) -> CycloElement {
        self.combine(other, false)
    }

    fn combine(&self, other: &CycloElement, add: bool) -> CycloElement {
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if add { a + b } else { a - b })
                .collect();
            (num, self.den.clone())
        } else {
            let l = self.den.lcm(&other.den);
            let fa = &l / &self.den;
            let fb = &l / &other.den;
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if add { a * &fa + b * &fb } else { a * &fa - b * &fb })
                .collect();
            (num, l)
        };
        CycloElement::from_parts_unchecked(self.ctx.clone(), num, den)
    }

    fn mul_ref(&self, other: &CycloElement) -> CycloElement {
        if self.is_zero() || other.is_zero() {
            return self.ctx.zero();
        }
        let d = self.num.len();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycloElement::from_poly_int(&self.ctx, prod, &self.den * &other.den)
    }

    fn neg_ref(&self) -> CycloElement {
        CycloElement {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, r: &Rational) -> CycloElement {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        CycloElement::from_parts_unchecked(self.ctx.clone(), num, &self.den * r.denom())
    }

    /// Multiplication by `ζ`: a shift followed by one reduction step.
    pub fn mul_zeta(&self) -> CycloElement {
        let mut v = Vec::with_capacity(self.num.len() + 1);
        v.push(BigInt::zero());
        v.extend(self.num.iter().cloned());
        CycloElement::from_poly_int(&self.ctx, v, self.den.clone())
    }

    /// If the element is `±ζ^m`, returns `(sign, m)` with `0 ≤ m < n`.
    pub fn as_signed_monomial(&self) -> Option<(i8, usize)> {
        if !self.den.is_one() {
            return None;
        }
        let mut power = self.ctx.one();
        let neg = self.neg_ref();
        for m in 0..self.ctx.order {
            if power.num == self.num {
                return Some((1, m));
            }
            if power.num == neg.num {
                return Some((-1, m));
            }
            power = power.mul_zeta();
        }
        None
    }

    /// `self^k`; negative `k` goes through the inverse.
    pub fn pow(&self, k: i64) -> Result<CycloElement, FieldError> {
        if let Some((s, m)) = self.as_signed_monomial_cheap() {
            let sign = if s < 0 && k.rem_euclid(2) == 1 { -1 } else { 1 };
            let e = (m as i128 * k as i128).rem_euclid(self.ctx.order as i128) as i64;
            return Ok(self.ctx.monomial(sign, e));
        }
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.ctx.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        Ok(acc)
    }

    /// Monomial detection restricted to `±ζ^m` with `m < φ(n)`, where the
    /// reduced form is a single coefficient.
    fn as_signed_monomial_cheap(&self) -> Option<(i8, usize)> {
        if !self.den.is_one() {
            return None;
        }
        let mut found = None;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if found.is_some() || !c.abs().is_one() {
                return None;
            }
            found = Some((if c.is_negative() { -1 } else { 1 }, i));
        }
        found
    }

    /// Multiplicative inverse by the extended Euclidean algorithm on the
    /// representative polynomial and `Φ_n` over `Q`.
    pub fn inverse(&self) -> Result<CycloElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some((s, m)) = self.as_signed_monomial_cheap() {
            return Ok(self.ctx.monomial(s, -(m as i64)));
        }
        if let Some(r) = self.to_rational() {
            return Ok(self.ctx.from_rational(&r.recip()));
        }
        let modulus: Vec<Rational> = self
            .ctx
            .minimal_poly
            .coeffs()
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let a: Vec<Rational> = self.num.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let (g, s) = ext_gcd(modulus, a);
        // g is a nonzero constant because Φ_n is irreducible and a ≠ 0 mod Φ_n.
        assert!(g.len() == 1, "Φ_n and a nonzero element share a factor");
        let scale = Rational::from_integer(self.den.clone()) / &g[0];
        let coeffs: Vec<Rational> = s.iter().map(|c| c * &scale).collect();
        Ok(self.ctx.from_coeffs(&coeffs))
    }

    /// The automorphism `ζ ↦ ζ^k`.
    pub fn conjugate(&self, k: i64) -> Result<CycloElement, FieldError> {
        let n = self.ctx.order;
        let km = self.ctx.exp_mod(k);
        if gcd(km, n) != 1 {
            return Err(FieldError::NotCoprime { k, n });
        }
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                v[(i * km) % n] += c;
            }
        }
        Ok(CycloElement::from_poly_int(&self.ctx, v, self.den.clone()))
    }

    /// `a · conj(a, -1)`: the squared modulus, realised inside the field.
    pub fn abs_square(&self) -> CycloElement {
        let bar = self.conjugate(-1).expect("-1 is a unit mod n");
        self.mul_ref(&bar)
    }

    /// Trace down to `Q`: the sum of all Galois conjugates.
    pub fn trace(&self) -> Result<Rational, FieldError> {
        let mut acc = self.ctx.zero();
        for k in self.ctx.units() {
            acc = acc.add_ref(&self.conjugate(k as i64)?);
        }
        acc.to_rational().ok_or(FieldError::NotRational)
    }

    /// Image under `Q(ζ_d) → Q(ζ_N)`, `ζ_d ↦ ζ_N^{N/d}`, for `d | N`.
    pub fn lift_to(&self, big: &Arc<CycloContext>) -> Result<CycloElement, FieldError> {
        let d = self.ctx.order;
        let big_n = big.order;
        if big_n % d != 0 {
            return Err(FieldError::NotSubfield { small: d, big: big_n });
        }
        let step = big_n / d;
        let mut v = vec![BigInt::zero(); big_n];
        for (i, c) in self.num.iter().enumerate() {
            v[(i * step) % big_n] += c;
        }
        Ok(CycloElement::from_poly_int(big, v, self.den.clone()))
    }

    /// Largest bit length among numerators and the denominator.
    pub fn bit_size(&self) -> u64 {
        self.num.iter().map(|c| c.bits()).max().unwrap_or(0).max(self.den.bits())
    }
}

/// Extended Euclid over `Q[x]`: returns `(g, t)` with `t·b ≡ g (mod a)`.
/// Coefficient vectors are lowest degree first.
fn ext_gcd(a: Vec<Rational>, b: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (trim(a), trim(b));
    let (mut t0, mut t1) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_div_rem(&r0, &r1);
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = core::mem::replace(&mut r1, r);
        t0 = core::mem::replace(&mut t1, t2);
        // Keep r1 monic to damp coefficient growth; rescale t1 alongside.
        if let Some(lead) = r1.last().cloned() {
            let inv = lead.recip();
            r1.iter_mut().for_each(|c| *c *= &inv);
            t1.iter_mut().for_each(|c| *c *= &inv);
        }
    }
    (r0, t0)
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let lead_inv = b[db].recip();
    let mut rem = a.to_vec();
    let mut quot = vec![Rational::zero(); a.len() - db];
    for top in (db..rem.len()).rev() {
        let c = core::mem::take(&mut rem[top]) * &lead_inv;
        if c.is_zero() {
            continue;
        }
        let shift = top - db;
        for (t, y) in b[..db].iter().enumerate() {
            rem[shift + t] -= &c * y;
        }
        quot[shift] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order == other.ctx.order && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloElement {}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElement[n={}]({})", self.ctx.order, self)
    }
}

/// Prints `Σ c_i z^i` with `z = ζ_n`, lowest degree first, e.g. `2 - z` or
/// `-1/2*z^3`.
impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = Rational::new(c.clone(), self.den.clone());
            let mag = r.abs();
            if first {
                if r.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if r.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&CycloElement> for &CycloElement {
            type Output = CycloElement;
            fn $method(self, rhs: &CycloElement) -> CycloElement {
                self.assert_same_field(rhs);
                self.$inner(rhs)
            }
        }
        impl $tr<CycloElement> for CycloElement {
            type Output = CycloElement;
            fn $method(self, rhs: CycloElement) -> CycloElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycloElement> for CycloElement {
            type Output = CycloElement;
            fn $method(self, rhs: &CycloElement) -> CycloElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        self.neg_ref()
    }
}

impl Neg for CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn context_rejects_zero() {
        assert_eq!(make_context(0).unwrap_err(), FieldError::ZeroOrder);
        let c = make_context(1).unwrap();
        assert_eq!(c.minimal_poly(), &IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(c.degree(), 1);
    }

    #[test]
    fn order_three_arithmetic() {
        let c = make_context(3).unwrap();
        let z = c.zeta();
        assert!(z.pow(3).unwrap().is_one());
        assert_eq!(&z * &z, c.from_coeffs(&[q(-1, 1), q(-1, 1)]));
        assert_eq!(&z + &z.pow(2).unwrap(), c.from_int(-1));
        assert_eq!(z.inverse().unwrap(), z.pow(2).unwrap());
        let one_plus = &c.one() + &z;
        assert_eq!(one_plus.inverse().unwrap(), -&z);
        assert_eq!(c.zero().inverse().unwrap_err(), FieldError::DivisionByZero);
        assert!(one_plus.abs_square().is_one());
        let t = -&(&z * &(&c.one() - &z));
        assert_eq!(t.abs_square(), c.from_int(3));
    }

    #[test]
    fn arith_rejects_mismatch() {
        let a = make_context(3).unwrap().zeta();
        let b = make_context(5).unwrap().zeta();
        assert_eq!(arith(&a, &b, ArithOp::Add).unwrap_err(), FieldError::ContextMismatch(3, 5));
        assert_eq!(arith(&a, &a, ArithOp::Pow(-1)).unwrap(), a.pow(2).unwrap());
        assert_eq!(arith(&a, &a, ArithOp::Neg).unwrap(), -&a);
    }

    #[test]
    fn conjugation() {
        let c5 = make_context(5).unwrap();
        assert_eq!(c5.zeta().conjugate(-1).unwrap(), c5.monomial(1, 4));
        let c3 = make_context(3).unwrap();
        let x = c3.zeta().scale(&q(-2, 1));
        assert_eq!(x.conjugate(2).unwrap(), c3.monomial(1, 2).scale(&q(-2, 1)));
        assert_eq!(c3.from_int(7).conjugate(2).unwrap(), c3.from_int(7));
        assert!(matches!(make_context(9).unwrap().zeta().conjugate(3), Err(FieldError::NotCoprime { .. })));
    }

    #[test]
    fn primitivity() {
        for n in [1usize, 3, 5, 9, 15, 21, 45] {
            let c = make_context(n).unwrap();
            let z = c.zeta();
            assert!(z.pow(n as i64).unwrap().is_one());
            for d in crate::poly::divisors(n) {
                if d < n {
                    assert!(!z.pow(d as i64).unwrap().is_one(), "n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn monomial_detection_and_lift() {
        let c = make_context(15).unwrap();
        for m in 0..15 {
            assert_eq!(c.monomial(-1, m).as_signed_monomial(), Some((-1, m as usize)));
        }
        assert_eq!((&c.one() + &c.zeta()).as_signed_monomial(), None);
        let c5 = make_context(5).unwrap();
        assert_eq!(c5.zeta().lift_to(&c).unwrap(), c.monomial(1, 3));
        assert!(c.zeta().lift_to(&c5).is_err());
    }

    #[test]
    fn trace_of_powers() {
        let c = make_context(9).unwrap();
        assert_eq!(c.zeta().trace().unwrap(), q(0, 1));
        assert_eq!(c.monomial(1, 3).trace().unwrap(), q(-3, 1));
        assert_eq!(c.one().trace().unwrap(), q(6, 1));
    }

    #[test]
    fn display() {
        let c = make_context(7).unwrap();
        assert_eq!((&c.from_int(2) - &c.zeta()).to_string(), "2 - z");
        assert_eq!(c.monomial(1, 3).scale(&q(-1, 2)).to_string(), "-1/2*z^3");
        assert_eq!(c.zero().to_string(), "0");
        assert_eq!(make_context(3).unwrap().zeta().scale(&q(-2, 1)).to_string(), "-2*z");
    }
}
