//! Abelianisation invariants of `Γ_n(k,l)`.
//!
//! The relation matrix is the `n × n` circulant whose row `i` has a `1` in
//! columns `i`, `i+k`, `i+l`. Its Smith normal form gives the invariants;
//! [`order_via_determinant`] and [`betti_via_polynomial_gcd`] are independent
//! routes to the order and the Betti number, and [`closed_form`] holds the
//! closed-form orders for the special families.

pub mod closed_form;
mod det;
mod fixed;
mod modular;
pub mod poly;
pub(crate) mod snf;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::params::{GroupParams, NormalizationKind, NormalizationResult};

pub use closed_form::{
    check_dgamma_conjecture, closed_form_order, closed_forms, lucas, ClosedForm, ClosedFormKind,
};
pub use det::{determinant, order_via_determinant};
pub use poly::betti_via_polynomial_gcd;

/// Order of a finitely generated abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl Order {
    pub fn is_finite(&self) -> bool {
        matches!(self, Order::Finite(_))
    }

    /// Maps `|det|` to an order, zero meaning infinite.
    pub fn from_determinant(det: BigInt) -> Self {
        let det = if det < BigInt::zero() { -det } else { det };
        if det.is_zero() {
            Order::Infinite
        } else {
            Order::Finite(det)
        }
    }

    /// Zero for infinite, the order otherwise.
    pub fn as_determinant(&self) -> BigInt {
        match self {
            Order::Finite(v) => v.clone(),
            Order::Infinite => BigInt::zero(),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(v) => write!(f, "{v}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

/// `Z^betti ⊕ Z_{d_1} ⊕ ... ⊕ Z_{d_r}` with `1 < d_1 | d_2 | ... | d_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianInvariants {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    /// Normalises an arbitrary list of positive cyclic orders.
    pub fn new(betti: usize, cyclic_orders: Vec<BigInt>) -> Self {
        Self { betti, torsion: snf::invariant_factors(cyclic_orders) }
    }

    pub fn trivial() -> Self {
        Self { betti: 0, torsion: Vec::new() }
    }

    pub fn order(&self) -> Order {
        if self.betti > 0 {
            Order::Infinite
        } else {
            Order::Finite(self.torsion.iter().product())
        }
    }

    /// Product of the torsion invariant factors.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut all = self.torsion.clone();
        all.extend(other.torsion.iter().cloned());
        Self::new(self.betti + other.betti, all)
    }

    pub fn is_cyclic(&self) -> bool {
        min_generators(self) <= 1
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(alloc::format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|d| alloc::format!("Z_{d}")));
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `d(A) = betti + number of invariant factors`.
pub fn min_generators(inv: &AbelianInvariants) -> usize {
    inv.betti + inv.torsion.len()
}

/// Integer relation matrix; row `i` is the exponent-sum vector of relator `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationMatrix {
    rows: Vec<Vec<i64>>,
    ncols: usize,
}

impl RelationMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>, ncols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Self { rows, ncols }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_circulant(&self) -> bool {
        let n = self.ncols;
        self.rows.len() == n
            && (1..n).all(|i| (0..n).all(|j| self.rows[i][(j + 1) % n] == self.rows[i - 1][j]))
    }

    pub(crate) fn sparse_rows(&self) -> Vec<snf::SparseRow<i64>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(c, v)| (c as u32, *v))
                    .collect()
            })
            .collect()
    }
}

/// The circulant relation matrix of `Γ_n(k,l)`. Defined for any triple;
/// coinciding offsets add up.
pub fn relation_matrix(p: &GroupParams) -> RelationMatrix {
    let n = p.n();
    let rows = (0..n)
        .map(|i| {
            let mut row = vec![0i64; n];
            for off in [0, p.k(), p.l()] {
                row[(i + off) % n] += 1;
            }
            row
        })
        .collect();
    RelationMatrix { rows, ncols: n }
}

/// Invariants of the cokernel of `m` (rows are relations).
pub fn smith_normal_form(m: &RelationMatrix) -> AbelianInvariants {
    invariants_of_sparse(&m.sparse_rows(), m.ncols)
}

pub(crate) fn invariants_of_sparse(rows: &[snf::SparseRow<i64>], ncols: usize) -> AbelianInvariants {
    let diag = snf::diagonalize_sparse(rows, ncols);
    AbelianInvariants::new(diag.free_rank, diag.entries)
}

/// `Γ_n(k,l)^ab` for a triple, standard or not.
pub fn abelianisation(p: &GroupParams) -> AbelianInvariants {
    smith_normal_form(&relation_matrix(p))
}

/// Invariants assembled from a normalisation: a free product of `d` copies
/// abelianises to the `d`-fold direct sum of the factor's invariants.
pub fn abelianisation_of(norm: &NormalizationResult) -> AbelianInvariants {
    match &norm.kind {
        NormalizationKind::FreeProduct { copies, inner } => {
            let one = abelianisation(inner);
            (1..*copies).fold(one.clone(), |acc, _| acc.direct_sum(&one))
        }
        _ => abelianisation(&norm.params),
    }
}

/// Exact coordinates of the abelianisation: the invariants together with the
/// image of every generator in `⊕ Z_{e_t}` (free coordinates use `e_t = 0`).
#[derive(Debug, Clone)]
pub struct AbelianCoordinates {
    /// Cyclic orders of the coordinates, `0` for a free coordinate. Units
    /// are dropped.
    pub moduli: Vec<BigInt>,
    /// `images[j][t]` is the coordinate `t` of generator `j`.
    pub images: Vec<Vec<BigInt>>,
}

/// Coordinates of `coker(m)`, with images reduced modulo `modulus` when the
/// caller only needs them modulo some multiple of every finite coordinate.
pub fn coordinates(m: &RelationMatrix, modulus: Option<&BigInt>) -> AbelianCoordinates {
    let rows: Vec<Vec<BigInt>> =
        m.rows.iter().map(|r| r.iter().map(|v| BigInt::from(*v)).collect()).collect();
    let (diag, q) = snf::diagonalize_with_columns(rows, m.ncols, modulus);
    let keep: Vec<usize> = (0..m.ncols).filter(|t| !diag[*t].is_one()).collect();
    let moduli = keep.iter().map(|t| diag[*t].clone()).collect();
    let images = q
        .iter()
        .map(|row| {
            keep.iter()
                .map(|t| {
                    let d = &diag[*t];
                    if d.is_zero() {
                        row[*t].clone()
                    } else {
                        num_integer::Integer::mod_floor(&row[*t], d)
                    }
                })
                .collect()
        })
        .collect();
    AbelianCoordinates { moduli, images }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::normalize;

    fn inv(n: usize, k: i64, l: i64) -> AbelianInvariants {
        abelianisation(&GroupParams::new(n, k, l).unwrap())
    }

    fn ints(v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn relation_matrix_examples() {
        let m = relation_matrix(&GroupParams::new(3, 1, 2).unwrap());
        assert!(m.rows().iter().all(|r| r == &[1, 1, 1]));
        let m = relation_matrix(&GroupParams::new(4, 1, 2).unwrap());
        assert_eq!(m.rows()[0], [1, 1, 1, 0]);
        assert!(m.is_circulant());
        let m = relation_matrix(&GroupParams::new(8, 1, 3).unwrap());
        assert_eq!(m.rows()[0], [1, 1, 0, 1, 0, 0, 0, 0]);
        assert!(m.is_circulant());
        let m = relation_matrix(&GroupParams::new(5, 2, 2).unwrap());
        assert_eq!(m.rows()[0], [1, 0, 2, 0, 0]);
    }

    #[test]
    fn smith_examples() {
        assert_eq!(inv(8, 1, 3), AbelianInvariants { betti: 0, torsion: ints(&[3, 3, 3]) });
        assert_eq!(inv(8, 1, 3).order(), Order::Finite(27.into()));
        assert_eq!(inv(10, 1, 5), AbelianInvariants { betti: 0, torsion: ints(&[33]) });
        assert_eq!(inv(6, 1, 2).betti, 2);
        assert_eq!(inv(6, 1, 2).order(), Order::Infinite);
        assert_eq!(inv(12, 1, 5), AbelianInvariants { betti: 2, torsion: ints(&[5]) });
        assert_eq!(inv(4, 1, 2), AbelianInvariants { betti: 0, torsion: ints(&[3]) });
    }

    #[test]
    fn min_generator_examples() {
        assert_eq!(min_generators(&AbelianInvariants { betti: 0, torsion: ints(&[3, 3, 3]) }), 3);
        assert_eq!(min_generators(&AbelianInvariants { betti: 2, torsion: vec![] }), 2);
        assert_eq!(min_generators(&AbelianInvariants { betti: 0, torsion: ints(&[33]) }), 1);
    }

    #[test]
    fn free_product_is_direct_sum() {
        let norm = normalize(6, 2, 4).unwrap();
        let assembled = abelianisation_of(&norm);
        assert_eq!(assembled, inv(6, 2, 4));
        assert_eq!(assembled, AbelianInvariants { betti: 4, torsion: vec![] });
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", inv(12, 1, 5)), "Z^2 + Z_5");
        assert_eq!(alloc::format!("{}", AbelianInvariants::trivial()), "1");
    }

    #[test]
    fn coordinates_kill_relators() {
        for p in [(8, 1, 3), (10, 1, 3), (12, 1, 5), (9, 1, 3)] {
            let m = relation_matrix(&GroupParams::new(p.0, p.1, p.2).unwrap());
            let c = coordinates(&m, None);
            for row in m.rows() {
                for (t, d) in c.moduli.iter().enumerate() {
                    let s: BigInt = row.iter().zip(&c.images).map(|(a, img)| BigInt::from(*a) * &img[t]).sum();
                    if d.is_zero() {
                        assert!(s.is_zero());
                    } else {
                        assert!(num_integer::Integer::mod_floor(&s, d).is_zero());
                    }
                }
            }
        }
    }
}
