//! Integer polynomials and a primitive pseudo-remainder gcd.
//!
//! The Betti number of a cyclically presented group equals the degree of
//! `gcd(f(t), t^n - 1)` over the rationals, where `f` is the representer
//! polynomial. Working with primitive parts keeps everything in `Z[t]`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::params::GroupParams;

/// Dense polynomial, coefficient `i` multiplying `t^i`, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|c| BigInt::from(*c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    /// gcd of the coefficients, positive; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        Poly(self.0.iter().map(|c| c / &g).collect())
    }

    /// `lc(b)^e * a mod b` with `e <= deg a - deg b + 1` (one factor per
    /// elimination step actually taken).
    pub fn pseudo_rem(&self, b: &Poly) -> Poly {
        let db = b.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        let lb = b.lead().clone();
        let monic = lb.is_one();
        while r.len() > db && !r.is_empty() {
            let shift = r.len() - 1 - db;
            let lr = r.last().cloned().expect("nonempty");
            if !monic {
                for c in r.iter_mut() {
                    *c *= &lb;
                }
            }
            for (i, bc) in b.0.iter().enumerate() {
                if !bc.is_zero() {
                    r[shift + i] -= &lr * bc;
                }
            }
            debug_assert!(r.last().is_some_and(Zero::is_zero));
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly(r)
    }
}

/// Primitive gcd in `Z[t]` (unique up to sign; returned with positive
/// leading coefficient).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.primitive_part(), b.primitive_part());
    if a.degree() < b.degree() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b).primitive_part();
        a = b;
        b = r;
    }
    a
}

/// `1 + t^k + t^l`, offsets added when they coincide.
pub fn representer(p: &GroupParams) -> Poly {
    let mut c = vec![BigInt::zero(); p.n()];
    for off in [0, p.k(), p.l()] {
        c[off] += 1;
    }
    Poly::new(c)
}

/// `t^n - 1`.
pub fn cyclic_modulus(n: usize) -> Poly {
    let mut c = vec![BigInt::zero(); n + 1];
    c[0] = BigInt::from(-1);
    c[n] = BigInt::one();
    Poly::new(c)
}

/// `deg gcd(1 + t^k + t^l, t^n - 1)`.
pub fn betti_via_polynomial_gcd(p: &GroupParams) -> Result<usize> {
    p.require_standard()?;
    let g = gcd(&cyclic_modulus(p.n()), &representer(p));
    Ok(g.degree().expect("gcd of nonzero polynomials is nonzero"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn betti(n: usize, k: i64, l: i64) -> usize {
        betti_via_polynomial_gcd(&GroupParams::new(n, k, l).unwrap()).unwrap()
    }

    #[test]
    fn gcd_of_known_factors() {
        // (t^2+t+1)(t-2) and (t^2+t+1)(3t+1)
        let a = Poly::from_i64(&[-2, -1, -1, 1]);
        let b = Poly::from_i64(&[1, 4, 4, 3]);
        assert_eq!(gcd(&a, &b), Poly::from_i64(&[1, 1, 1]));
        assert_eq!(gcd(&a, &Poly::from_i64(&[5])), Poly::from_i64(&[1]));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = Poly::from_i64(&[3, 0, 2, 5]);
        let b = Poly::from_i64(&[1, 2]);
        // 2^3 * a(-1/2) = 24 + 4 - 5
        assert_eq!(a.pseudo_rem(&b), Poly::from_i64(&[23]));
    }

    #[test]
    fn primitive_part_and_content() {
        let p = Poly::from_i64(&[6, -4, -2]);
        assert_eq!(p.content(), BigInt::from(2));
        assert_eq!(p.primitive_part(), Poly::from_i64(&[-3, 2, 1]));
        assert!(Poly::from_i64(&[0, 0]).is_zero());
    }

    #[test]
    fn betti_examples() {
        assert_eq!(betti(6, 1, 2), 2);
        assert_eq!(betti(7, 1, 3), 0);
        assert_eq!(betti(12, 1, 5), 2);
        assert_eq!(betti(3, 1, 2), 2);
    }
}
