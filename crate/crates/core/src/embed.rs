//! Complex embedding `ζ ↦ exp(2πi/n)`, computed in big-integer fixed point so
//! that the working precision tracks the requested number of digits.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::field::CycloElement;

/// Complex value of `a` at `ζ = exp(2πi/n)`, correct to about `digits`
/// decimal digits in absolute terms (capped by `f64` at roughly 16).
pub fn embed_complex(a: &CycloElement, digits: u32) -> Complex64 {
    let digits = digits.max(1);
    let n = a.order();
    let coeff_bits = a.numerators().iter().map(|c| c.bits()).max().unwrap_or(0);
    let len_bits = 64 - (a.numerators().len() as u64 * n as u64).leading_zeros() as u64;
    let work = (digits as u64 * 3322).div_ceil(1000) + coeff_bits + len_bits + 24;
    let powers = zeta_powers(n, a.numerators().len(), work);
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (c, (pr, pi)) in a.numerators().iter().zip(&powers) {
        if c.is_zero() {
            continue;
        }
        re += c * pr;
        im += c * pi;
    }
    Complex64::new(
        fixed_to_f64(&re, a.denominator(), work),
        fixed_to_f64(&im, a.denominator(), work),
    )
}

/// `x / (den · 2^bits)` rounded to `f64`.
fn fixed_to_f64(x: &BigInt, den: &BigInt, bits: u64) -> f64 {
    let scaled: BigInt = (x << 64u32) / den;
    let f = scaled.to_f64().unwrap_or(f64::NAN);
    libm::ldexp(f, -((bits + 64) as i32))
}

/// `ζ^i` for `i < count` as fixed-point pairs scaled by `2^bits`.
fn zeta_powers(n: usize, count: usize, bits: u64) -> Vec<(BigInt, BigInt)> {
    let guard = bits + 16;
    let one = BigInt::from(1) << guard;
    let (c, s) = if n == 1 {
        (one.clone(), BigInt::zero())
    } else {
        let theta = (pi_fixed(guard) << 1u32) / BigInt::from(n);
        exp_i_fixed(&theta, guard)
    };
    let mut out = Vec::with_capacity(count);
    let (mut pr, mut pi) = (one, BigInt::zero());
    for _ in 0..count {
        out.push((&pr >> 16u32, &pi >> 16u32));
        let nr = (&pr * &c - &pi * &s) >> guard;
        let ni = (&pr * &s + &pi * &c) >> guard;
        pr = nr;
        pi = ni;
    }
    out
}

/// `π · 2^bits` by Machin's formula.
fn pi_fixed(bits: u64) -> BigInt {
    let g = bits + 8;
    let pi = atan_inv(5, g) * 16 - atan_inv(239, g) * 4;
    pi >> 8u32
}

/// `atan(1/x) · 2^bits`.
fn atan_inv(x: u64, bits: u64) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut power = (BigInt::from(1) << bits) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// `(cos θ, sin θ) · 2^bits` from the Taylor series of `exp(iθ)`.
fn exp_i_fixed(theta: &BigInt, bits: u64) -> (BigInt, BigInt) {
    let mut re = BigInt::from(1) << bits;
    let mut im = BigInt::zero();
    let (mut tr, mut ti) = (re.clone(), BigInt::zero());
    let mut k = 1u64;
    loop {
        // term *= iθ / k
        let nr = -(&ti * theta >> bits) / BigInt::from(k);
        let ni = (&tr * theta >> bits) / BigInt::from(k);
        tr = nr;
        ti = ni;
        if tr.is_zero() && ti.is_zero() {
            break;
        }
        re += &tr;
        im += &ti;
        k += 1;
    }
    (re, im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_context;

    fn close(a: Complex64, re: f64, im: f64, tol: f64) -> bool {
        (a.re - re).abs() < tol && (a.im - im).abs() < tol
    }

    #[test]
    fn order_three_values() {
        let c = make_context(3).unwrap();
        assert!(close(embed_complex(&c.zeta(), 12), -0.5, 0.8660254037844386, 1e-12));
        let s = &(&c.one() + &c.zeta()) + &c.monomial(1, 2);
        assert!(close(embed_complex(&s, 12), 0.0, 0.0, 1e-15));
        let m2z = c.monomial(-2, 1);
        assert!(close(embed_complex(&m2z, 12), 1.0, -1.7320508075688772, 1e-12));
    }

    #[test]
    fn pi_digits() {
        let p = pi_fixed(200);
        let f = libm::ldexp((p >> 140u32).to_f64().unwrap(), -60);
        assert!((f - core::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn powers_against_libm() {
        for n in [1usize, 5, 7, 101, 997] {
            let ctx = make_context(n).unwrap();
            for j in [0i64, 1, 2, (n / 2) as i64] {
                if (j as usize) >= ctx.degree() {
                    continue;
                }
                let v = embed_complex(&ctx.monomial(1, j), 14);
                let ang = 2.0 * core::f64::consts::PI * j as f64 / n as f64;
                assert!(close(v, libm::cos(ang), libm::sin(ang), 1e-13), "n={n} j={j}");
            }
        }
    }

    #[test]
    fn precision_is_stable_under_doubling() {
        let c = make_context(45).unwrap();
        let mut x = c.zeta();
        for k in 1..6 {
            x = &(&x * &x) + &c.monomial(1, k);
        }
        for digits in [6u32, 9, 12] {
            let a = embed_complex(&x, digits);
            let b = embed_complex(&x, 2 * digits);
            let tol = 10f64.powi(1 - digits as i32);
            assert!((a - b).norm() <= tol.max(1e-14 * b.norm()));
        }
    }
}
