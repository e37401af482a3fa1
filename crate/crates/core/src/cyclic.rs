//! Lifted arithmetic in `Q[x]/(x^n - 1)` for products of `1 ± ζ^m` factors.
//!
//! Multiplying or dividing by `1 ± x^m` costs `O(n)` here instead of a full
//! field multiplication. The quotient map to `Q(ζ_n)` is a ring homomorphism,
//! so any lift of the true value reduces to it. Division by `1 + x^m` is exact
//! in this ring for odd `n`; division by `1 - x^m` with `ζ^m ≠ 1` uses a lift of
//! the field inverse and marks the vector dirty until the next [`clean`].
//!
//! [`clean`]: CyclicVec::clean

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{CycloContext, CycloElement};

#[derive(Clone, Debug)]
pub(crate) struct CyclicVec {
    num: Vec<BigInt>,
    den: BigInt,
    dirty: bool,
}

impl CyclicVec {
    pub fn one(n: usize) -> Self {
        let mut num = vec![BigInt::zero(); n];
        num[0] = BigInt::one();
        CyclicVec { num, den: BigInt::one(), dirty: false }
    }

    pub fn zero(n: usize) -> Self {
        CyclicVec { num: vec![BigInt::zero(); n], den: BigInt::one(), dirty: false }
    }

    fn n(&self) -> usize {
        self.num.len()
    }

    #[cfg(test)]
    pub fn is_dirty(&self) -> bool {
        self.dirty
    }

    /// `self ← self · (1 - c·x^m)` for `c = ±1`.
    pub fn mul_one_minus(&mut self, c: i8, m: usize) {
        let n = self.n();
        let m = m % n;
        let old = self.num.clone();
        for (i, o) in old.iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            let j = (i + m) % n;
            if c > 0 {
                self.num[j] -= o;
            } else {
                self.num[j] += o;
            }
        }
    }

    /// `self ← self · c·x^m`.
    pub fn mul_monomial(&mut self, c: i8, m: usize) {
        let n = self.n();
        let m = m % n;
        self.num.rotate_right(m);
        if c < 0 {
            for x in self.num.iter_mut() {
                *x = -core::mem::take(x);
            }
        }
    }

    /// Orbits of `i ↦ i + m (mod n)`, each listed in traversal order.
    fn cycles(n: usize, m: usize) -> (usize, usize) {
        let g = m.gcd(&n);
        (g, n / g)
    }

    /// `self ← self / (1 + x^m)`. Exact in `Q[x]/(x^n - 1)` for odd `n`.
    pub fn div_one_plus(&mut self, m: usize) {
        let n = self.n();
        debug_assert!(n % 2 == 1);
        let m = m % n;
        let (starts, len) = Self::cycles(n, m);
        // Along an orbit b_i + b_{i-m} = a_i; with odd length the alternating
        // sum gives 2·b at the start, and the rest follows by recurrence.
        let a = core::mem::take(&mut self.num);
        let mut out = vec![BigInt::zero(); n];
        for s in 0..starts {
            let mut alt = BigInt::zero();
            let mut idx = s;
            for t in 0..len {
                if t % 2 == 0 {
                    alt += &a[idx];
                } else {
                    alt -= &a[idx];
                }
                idx = (idx + n - m) % n;
            }
            out[s] = alt;
            let mut prev = s;
            let mut cur = (s + m) % n;
            for _ in 1..len {
                out[cur] = (&a[cur] << 1) - &out[prev];
                prev = cur;
                cur = (cur + m) % n;
            }
        }
        self.num = out;
        self.den <<= 1;
    }

    /// `self ← self · lift(1 / (1 - x^m))` where `ζ^m` has order `d > 1`:
    /// `1/(1-y) = -(1/d) Σ_{i<d} i·y^i` in the field.
    pub fn div_one_minus_nontrivial(&mut self, m: usize) {
        let n = self.n();
        let m = m % n;
        let (starts, d) = Self::cycles(n, m);
        debug_assert!(d > 1);
        let a = core::mem::take(&mut self.num);
        let mut out = vec![BigInt::zero(); n];
        let d_big = BigInt::from(d);
        for s in 0..starts {
            // c_t = Σ_i i·a_{t - i·m}; c_{t+m} = c_t + A - d·a_{t+m}.
            let mut total = BigInt::zero();
            let mut c0 = BigInt::zero();
            let mut idx = s;
            for i in 0..d {
                total += &a[idx];
                c0 += &a[idx] * BigInt::from(i);
                idx = (idx + n - m) % n;
            }
            let mut cur = s;
            let mut c = c0;
            for _ in 0..d {
                out[cur] = -&c;
                let next = (cur + m) % n;
                c = c + &total - &d_big * &a[next];
                cur = next;
            }
        }
        self.num = out;
        self.den *= d_big;
        self.dirty = true;
    }

    /// `self += other`.
    pub fn add_assign(&mut self, other: &CyclicVec) {
        if self.den == other.den {
            for (a, b) in self.num.iter_mut().zip(&other.num) {
                *a += b;
            }
        } else {
            let l = self.den.lcm(&other.den);
            let fa = &l / &self.den;
            let fb = &l / &other.den;
            for (a, b) in self.num.iter_mut().zip(&other.num) {
                *a = &*a * &fa + b * &fb;
            }
            self.den = l;
        }
        self.dirty |= other.dirty;
    }

    pub fn normalize(&mut self) {
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if g.is_negative() {
            g = -g;
        }
        for c in self.num.iter_mut() {
            *c = &*c / &g;
        }
        self.den = &self.den / &g;
    }

    pub fn to_field(&self, ctx: &Arc<CycloContext>) -> CycloElement {
        debug_assert_eq!(ctx.order(), self.n());
        CycloElement::from_poly_int(ctx, self.num.clone(), self.den.clone())
    }

    /// Replaces the lift by the canonical representative of its image.
    pub fn clean(&mut self, ctx: &Arc<CycloContext>) {
        if !self.dirty {
            return;
        }
        let e = self.to_field(ctx);
        let mut num = e.numerators().to_vec();
        num.resize(self.n(), BigInt::zero());
        self.num = num;
        self.den = e.denominator().clone();
        self.dirty = false;
    }
}
