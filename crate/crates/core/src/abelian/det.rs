//! Fraction-free (Bareiss) determinants.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{relation_matrix, Order, RelationMatrix};
use crate::error::{domain, Result};
use crate::params::GroupParams;

/// `|det|` of the relation matrix, zero meaning an infinite abelianisation.
pub fn order_via_determinant(p: &GroupParams) -> Result<Order> {
    p.require_standard()?;
    Ok(Order::from_determinant(determinant(&relation_matrix(p))?))
}

/// Exact determinant of a square integer matrix.
pub fn determinant(m: &RelationMatrix) -> Result<BigInt> {
    if m.nrows() != m.ncols() {
        return Err(domain!("determinant of a {}x{} matrix", m.nrows(), m.ncols()));
    }
    let small: Vec<Vec<i128>> =
        m.rows().iter().map(|r| r.iter().map(|v| *v as i128).collect()).collect();
    if let Some(d) = bareiss_i128(small) {
        return Ok(BigInt::from(d));
    }
    let big = m.rows().iter().map(|r| r.iter().map(|v| BigInt::from(*v)).collect()).collect();
    Ok(bareiss_big(big))
}

/// Returns `None` as soon as an intermediate product leaves `i128`.
fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<i128> {
    let n = a.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for t in 0..n {
        if a[t][t] == 0 {
            // A zero column also lands here; the BigInt route reports it.
            let swap = (t + 1..n).find(|&i| a[i][t] != 0)?;
            a.swap(t, swap);
            sign = -sign;
        }
        for i in t + 1..n {
            for j in t + 1..n {
                let x = a[i][j].checked_mul(a[t][t])?;
                let y = a[i][t].checked_mul(a[t][j])?;
                a[i][j] = x.checked_sub(y)? / prev;
            }
            a[i][t] = 0;
        }
        prev = a[t][t];
    }
    if n == 0 {
        return Some(1);
    }
    Some(sign * a[n - 1][n - 1])
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for t in 0..n {
        if a[t][t].is_zero() {
            match (t + 1..n).find(|&i| !a[i][t].is_zero()) {
                Some(i) => {
                    a.swap(t, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, rest) = a.split_at_mut(t + 1);
        let pivot = &top[t];
        for row in rest.iter_mut() {
            for j in t + 1..n {
                let v = &row[j] * &pivot[t] - &row[t] * &pivot[j];
                row[j] = v / &prev;
            }
            row[t] = BigInt::zero();
        }
        prev = a[t][t].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both(rows: &[&[i64]]) -> (Option<i128>, BigInt) {
        let small = rows.iter().map(|r| r.iter().map(|v| *v as i128).collect()).collect();
        let big = rows.iter().map(|r| r.iter().map(|v| BigInt::from(*v)).collect()).collect();
        (bareiss_i128(small), bareiss_big(big))
    }

    fn order(n: usize, k: i64, l: i64) -> Order {
        order_via_determinant(&GroupParams::new(n, k, l).unwrap()).unwrap()
    }

    #[test]
    fn small_determinants() {
        let (s, b) = both(&[&[2, 1], &[1, 1]]);
        assert_eq!(s, Some(1));
        assert_eq!(b, BigInt::from(1));
        let (s, b) = both(&[&[0, 1], &[1, 0]]);
        assert_eq!(s, Some(-1));
        assert_eq!(b, BigInt::from(-1));
        let (_, b) = both(&[&[1, 2], &[2, 4]]);
        assert!(b.is_zero());
    }

    #[test]
    fn zero_column_is_zero_determinant() {
        let m = RelationMatrix::from_rows(alloc::vec![alloc::vec![0, 1], alloc::vec![0, 2]], 2);
        assert!(determinant(&m).unwrap().is_zero());
    }

    #[test]
    fn relation_matrix_orders() {
        assert_eq!(order(10, 1, 4), Order::Finite(33.into()));
        assert_eq!(order(9, 1, 3), Order::Finite(27.into()));
        assert_eq!(order(8, 1, 3), Order::Finite(27.into()));
        assert_eq!(order(6, 1, 2), Order::Infinite);
    }

    #[test]
    fn big_route_agrees_when_small_overflows() {
        // n = 90 pushes Bareiss intermediates past i128.
        let p = GroupParams::new(90, 1, 44).unwrap();
        let m = relation_matrix(&p);
        let big = m.rows().iter().map(|r| r.iter().map(|v| BigInt::from(*v)).collect()).collect();
        assert_eq!(determinant(&m).unwrap(), bareiss_big(big));
        assert_eq!(
            Order::from_determinant(determinant(&m).unwrap()),
            super::super::abelianisation(&p).order()
        );
    }

    #[test]
    fn non_square_is_an_error() {
        let m = RelationMatrix::from_rows(alloc::vec![alloc::vec![1, 1]], 2);
        assert!(determinant(&m).is_err());
    }
}
