//! Binary fixed-point reals on top of `BigInt`, enough to evaluate products
//! of integers, square roots and cosines of rational multiples of `π`.
//!
//! A value `x` at precision `bits` is stored as `floor(x * 2^bits)` up to a
//! few units in the last place.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const GUARD: u32 = 32;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Precision(pub u32);

impl Precision {
    pub fn int(self, v: impl Into<BigInt>) -> BigInt {
        v.into() << self.0
    }

    pub fn mul(self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.0
    }

    /// `sqrt(v)` for a non-negative integer `v`.
    pub fn sqrt_int(self, v: u64) -> BigInt {
        (BigInt::from(v) << (2 * self.0)).sqrt()
    }

    /// `π`, from `16 atan(1/5) - 4 atan(1/239)`.
    pub fn pi(self) -> BigInt {
        let wide = Precision(self.0 + GUARD);
        let v = wide.atan_inv(5) * 16 - wide.atan_inv(239) * 4;
        v >> GUARD
    }

    fn atan_inv(self, x: u32) -> BigInt {
        let x = BigInt::from(x);
        let x2 = &x * &x;
        let mut term = self.int(1) / &x;
        let mut sum = BigInt::zero();
        let mut k = 0u32;
        while !term.is_zero() {
            let t = &term / (2 * k + 1);
            if k % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
            term /= &x2;
            k += 1;
        }
        sum
    }

    /// `cos(p π / q)` for integers `p`, `q` with `q > 0`.
    pub fn cos_pi_rational(self, p: i64, q: i64) -> BigInt {
        assert!(q > 0, "denominator must be positive");
        // Reduce p/q into [0, 1/2] using exact symmetries of cos.
        let (mut p, q) = (p.mod_floor(&(2 * q)), q);
        if p > q {
            p = 2 * q - p;
        }
        let negate = 2 * p > q;
        if negate {
            p = q - p;
        }
        let wide = Precision(self.0 + GUARD);
        let theta = wide.pi() * p / q;
        let c = wide.cos_small(&theta) >> GUARD;
        if negate {
            -c
        } else {
            c
        }
    }

    /// Taylor series, intended for `|θ| ≤ π/2`.
    fn cos_small(self, theta: &BigInt) -> BigInt {
        let t2 = self.mul(theta, theta);
        let mut term = self.int(1);
        let mut sum = term.clone();
        let mut k = 1u64;
        loop {
            term = -self.mul(&term, &t2) / ((2 * k - 1) * (2 * k));
            if term.is_zero() {
                break;
            }
            sum += &term;
            k += 1;
        }
        sum
    }

    /// Nearest integer, and whether `x` lies within `1/10^6` of it.
    pub fn round(self, x: &BigInt) -> (BigInt, bool) {
        let half = BigInt::one() << (self.0 - 1);
        let n = (x + &half) >> self.0;
        let diff = (x - (&n << self.0)).abs();
        let close = diff * 1_000_000u32 < (BigInt::one() << self.0);
        (n, close)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: Precision = Precision(128);

    fn approx(x: &BigInt, num: i64, den: i64) -> bool {
        // |x - num/den| < 2^-100
        let target: BigInt = (BigInt::from(num) << 128u32) / den;
        (x - target).abs() < (BigInt::one() << 28u32)
    }

    #[test]
    fn pi_digits() {
        let pi = P.pi();
        // 3.14159265358979323846 truncated to 20 decimals
        let scaled = (pi * BigInt::from(10u64).pow(20)) >> 128;
        assert_eq!(scaled, "314159265358979323846".parse::<BigInt>().unwrap());
    }

    #[test]
    fn exact_cosines() {
        assert!(approx(&P.cos_pi_rational(0, 1), 1, 1));
        assert!(approx(&P.cos_pi_rational(1, 1), -1, 1));
        assert!(approx(&P.cos_pi_rational(1, 3), 1, 2));
        assert!(approx(&P.cos_pi_rational(2, 3), -1, 2));
        assert!(approx(&P.cos_pi_rational(-1, 3), 1, 2));
        assert!(approx(&P.cos_pi_rational(7, 3), 1, 2));
        assert!(approx(&P.cos_pi_rational(1, 2), 0, 1));
        assert!(approx(&P.cos_pi_rational(5, 3), 1, 2));
    }

    #[test]
    fn cos_squared_identity() {
        // cos(π/4)^2 = 1/2
        let c = P.cos_pi_rational(1, 4);
        assert!(approx(&P.mul(&c, &c), 1, 2));
        let s = P.sqrt_int(2);
        assert!(approx(&P.mul(&s, &c), 1, 1));
    }

    #[test]
    fn rounding() {
        let (n, close) = P.round(&(P.int(7) + 3));
        assert_eq!(n, BigInt::from(7));
        assert!(close);
        let (n, close) = P.round(&(P.int(-7) + (BigInt::one() << 127)));
        assert_eq!(n, BigInt::from(-6));
        assert!(!close);
    }
}
