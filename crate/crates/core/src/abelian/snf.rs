//! Smith normal form over the integers.
//!
//! Two phases. The sparse phase pivots on unit entries in Markowitz order,
//! which is where almost all of the work on relation matrices of positive
//! presentations goes. Whatever is left has no unit entries and is handed to
//! a dense smallest-pivot elimination. Both phases run first in `i64` and are
//! redone with `BigInt` if any intermediate entry overflows.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;

use super::modular;
use num_traits::{One, Signed, Zero};

pub(crate) trait Entry: Clone + PartialEq + core::fmt::Debug {
    fn nil() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn mag_cmp(&self, other: &Self) -> Ordering;
    /// `self - f * x`, or `None` on overflow.
    fn sub_mul(&self, f: &Self, x: &Self) -> Option<Self>;
    /// Nearest-integer quotient `q` with `|self - q*d| <= |d|/2`.
    fn div_round(&self, d: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn nil() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn mag_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn sub_mul(&self, f: &Self, x: &Self) -> Option<Self> {
        let v = *self as i128 - (*f as i128) * (*x as i128);
        i64::try_from(v).ok()
    }
    fn div_round(&self, d: &Self) -> Option<Self> {
        let (a, d) = (*self as i128, *d as i128);
        let m = d.abs();
        let mut q = a.div_euclid(m);
        if 2 * a.rem_euclid(m) > m {
            q += 1;
        }
        i64::try_from(q * d.signum()).ok()
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn mag_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn sub_mul(&self, f: &Self, x: &Self) -> Option<Self> {
        Some(self - f * x)
    }
    fn div_round(&self, d: &Self) -> Option<Self> {
        let m = d.abs();
        let (mut q, r) = self.div_mod_floor(&m);
        if r * 2u8 > m {
            q += 1u8;
        }
        Some(if d.sign() == Sign::Minus { -q } else { q })
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Cokernel data of an integer matrix: `cols - rank` free summands and the
/// nonzero diagonal entries (not yet in divisibility order).
#[derive(Debug, Clone)]
pub(crate) struct Diagonal {
    pub free_rank: usize,
    pub entries: Vec<BigInt>,
}

/// Sparse row: sorted by column, no zero entries.
pub(crate) type SparseRow<E> = Vec<(u32, E)>;

/// Diagonalises the matrix given by sparse rows over `ncols` columns.
pub(crate) fn diagonalize_sparse(rows: &[SparseRow<i64>], ncols: usize) -> Diagonal {
    let mut elim = SparseElimination::new(rows.to_vec(), ncols);
    if elim.unit_phase().is_some() {
        let (dense, alive_cols) = elim.remainder();
        let outside = alive_cols - dense.width;
        if let Some(diag) = dense_diagonalize(dense.clone()) {
            return Diagonal { free_rank: diag.free_rank + outside, entries: diag.entries };
        }
        // Exact elimination overflowed: go modular rather than BigInt, whose
        // entries can grow exponentially on dense blocks.
        if let Some(c) = modular::cokernel(&dense.rows, dense.width) {
            return Diagonal { free_rank: c.free_rank + outside, entries: c.entries };
        }
    }
    let big = rows
        .iter()
        .map(|r| r.iter().map(|(c, v)| (*c, BigInt::from(*v))).collect())
        .collect();
    run::<BigInt>(big, ncols).expect("BigInt elimination cannot overflow")
}

fn run<E: Entry>(rows: Vec<SparseRow<E>>, ncols: usize) -> Option<Diagonal> {
    let mut elim = SparseElimination::new(rows, ncols);
    elim.unit_phase()?;
    let (dense, alive_cols) = elim.remainder();
    let mut diag = dense_diagonalize(dense)?;
    diag.free_rank += alive_cols - diag.width;
    Some(Diagonal { free_rank: diag.free_rank, entries: diag.entries })
}

struct SparseElimination<E> {
    rows: Vec<SparseRow<E>>,
    row_alive: Vec<bool>,
    col_rows: Vec<Vec<u32>>,
    col_alive: Vec<bool>,
}

impl<E: Entry> SparseElimination<E> {
    fn new(rows: Vec<SparseRow<E>>, ncols: usize) -> Self {
        let mut col_rows = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            for (c, _) in row {
                col_rows[*c as usize].push(i as u32);
            }
        }
        let row_alive = vec![true; rows.len()];
        Self { rows, row_alive, col_rows, col_alive: vec![true; ncols] }
    }

    fn unit_phase(&mut self) -> Option<()> {
        let mut heap: BinaryHeap<Reverse<(usize, u32)>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| Reverse((r.len(), i as u32)))
            .collect();
        while let Some(Reverse((len, r))) = heap.pop() {
            let r = r as usize;
            if !self.row_alive[r] || self.rows[r].len() != len || len == 0 {
                continue;
            }
            let pivot = self.rows[r]
                .iter()
                .filter(|(_, v)| v.is_unit())
                .min_by_key(|(c, _)| self.col_rows[*c as usize].len())
                .map(|(c, v)| (*c as usize, v.clone()));
            let Some((c, u)) = pivot else { continue };
            let pivot_row = core::mem::take(&mut self.rows[r]);
            self.row_alive[r] = false;
            self.col_alive[c] = false;
            let mut targets = core::mem::take(&mut self.col_rows[c]);
            targets.sort_unstable();
            targets.dedup();
            for i in targets {
                let i = i as usize;
                if i == r || !self.row_alive[i] {
                    continue;
                }
                let Ok(pos) = self.rows[i].binary_search_by_key(&(c as u32), |(cc, _)| *cc) else {
                    continue;
                };
                let a = self.rows[i][pos].1.clone();
                // pivot is ±1, so the multiplier is a·u.
                let factor = if u == E::from_i64(1) { a } else { a.neg()? };
                let merged = self.merge(i, &pivot_row, &factor)?;
                self.rows[i] = merged;
                heap.push(Reverse((self.rows[i].len(), i as u32)));
            }
        }
        Some(())
    }

    /// `rows[i] - factor * pivot_row`, registering fill-in with the column index.
    fn merge(&mut self, i: usize, pivot_row: &SparseRow<E>, factor: &E) -> Option<SparseRow<E>> {
        let old = core::mem::take(&mut self.rows[i]);
        let mut out = Vec::with_capacity(old.len() + pivot_row.len());
        let (mut a, mut b) = (0, 0);
        while a < old.len() || b < pivot_row.len() {
            let ca = old.get(a).map(|e| e.0).unwrap_or(u32::MAX);
            let cb = pivot_row.get(b).map(|e| e.0).unwrap_or(u32::MAX);
            match ca.cmp(&cb) {
                Ordering::Less => {
                    out.push(old[a].clone());
                    a += 1;
                }
                Ordering::Greater => {
                    let v = E::nil().sub_mul(factor, &pivot_row[b].1)?;
                    if self.col_alive[cb as usize] {
                        self.col_rows[cb as usize].push(i as u32);
                    }
                    out.push((cb, v));
                    b += 1;
                }
                Ordering::Equal => {
                    let v = old[a].1.sub_mul(factor, &pivot_row[b].1)?;
                    if !v.is_nil() {
                        out.push((ca, v));
                    }
                    a += 1;
                    b += 1;
                }
            }
        }
        Some(out)
    }

    /// Dense copy of the unreduced part and the number of surviving columns.
    fn remainder(self) -> (DenseMatrix<E>, usize) {
        let alive_cols = self.col_alive.iter().filter(|a| **a).count();
        let mut used: Vec<u32> = self
            .rows
            .iter()
            .zip(&self.row_alive)
            .filter(|(_, alive)| **alive)
            .flat_map(|(r, _)| r.iter().map(|(c, _)| *c))
            .collect();
        used.sort_unstable();
        used.dedup();
        let width = used.len();
        let mut data = Vec::new();
        for (row, _) in self.rows.into_iter().zip(self.row_alive).filter(|(r, a)| *a && !r.is_empty()) {
            let mut dense = vec![E::nil(); width];
            for (c, v) in row {
                let j = used.binary_search(&c).expect("column registered");
                dense[j] = v;
            }
            data.push(dense);
        }
        (DenseMatrix { rows: data, width }, alive_cols)
    }
}

#[derive(Clone)]
pub(crate) struct DenseMatrix<E> {
    pub rows: Vec<Vec<E>>,
    pub width: usize,
}

pub(crate) struct DenseDiagonal {
    pub free_rank: usize,
    pub entries: Vec<BigInt>,
    pub width: usize,
}

/// Smallest-magnitude pivoting with full row and column reduction.
pub(crate) fn dense_diagonalize<E: Entry>(mut m: DenseMatrix<E>) -> Option<DenseDiagonal> {
    let nrows = m.rows.len();
    let width = m.width;
    let a = &mut m.rows;
    let mut entries = Vec::new();
    let mut t = 0;
    while t < nrows.min(width) {
        let Some((pi, pj)) = smallest(a, t..nrows, t..width) else { break };
        a.swap(t, pi);
        swap_cols(a, t, pj, t);
        loop {
            let mut clean = true;
            for i in t + 1..nrows {
                if a[i][t].is_nil() {
                    continue;
                }
                let q = a[i][t].div_round(&a[t][t])?;
                let (top, rest) = a.split_at_mut(i);
                let pivot_row = &top[t];
                let row = &mut rest[0];
                for j in t..width {
                    if !pivot_row[j].is_nil() {
                        row[j] = row[j].sub_mul(&q, &pivot_row[j])?;
                    }
                }
                clean &= row[t].is_nil();
            }
            if !clean {
                let (i, _) = smallest(a, t..nrows, t..t + 1).expect("pivot present");
                a.swap(t, i);
                continue;
            }
            for j in t + 1..width {
                if a[t][j].is_nil() {
                    continue;
                }
                let q = a[t][j].div_round(&a[t][t])?;
                // column t is zero below the pivot, so only row t changes.
                a[t][j] = a[t][j].sub_mul(&q, &a[t][t])?;
                clean &= a[t][j].is_nil();
            }
            if clean {
                break;
            }
            let (_, j) = smallest(a, t..t + 1, t..width).expect("pivot present");
            swap_cols(a, t, j, t);
        }
        entries.push(a[t][t].to_big().abs());
        t += 1;
    }
    Some(DenseDiagonal { free_rank: width - entries.len(), entries, width })
}

fn smallest<E: Entry>(
    a: &[Vec<E>],
    rows: core::ops::Range<usize>,
    cols: core::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = &a[i][j];
            if v.is_nil() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[bi][bj].mag_cmp(v) != Ordering::Greater => {}
                _ => {
                    best = Some((i, j));
                    if v.is_unit() {
                        return best;
                    }
                }
            }
        }
    }
    best
}

fn swap_cols<E>(a: &mut [Vec<E>], x: usize, y: usize, from_row: usize) {
    if x == y {
        return;
    }
    for row in a.iter_mut().skip(from_row) {
        row.swap(x, y);
    }
}

/// Puts nonzero diagonal entries into invariant-factor form `d_1 | d_2 | ...`,
/// dropping units.
pub(crate) fn invariant_factors(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    diag.retain(|d| !d.is_one());
    diag.sort();
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            if g != diag[i] {
                let l = &diag[i] / &g * &diag[j];
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    diag.retain(|d| !d.is_one());
    diag
}

/// Dense diagonalisation of a `BigInt` matrix that also records the column
/// operations, reduced modulo `modulus` (`None` keeps them exact).
///
/// Returns the diagonal (one entry per column, zero for free coordinates) and
/// `Q` with `rows · Q = D · (unimodular)^{-1}` in the sense that the cokernel
/// coordinate of generator `j` is row `j` of `Q`, reduced modulo the
/// matching diagonal entry.
pub(crate) fn diagonalize_with_columns(
    mut a: Vec<Vec<BigInt>>,
    width: usize,
    modulus: Option<&BigInt>,
) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
    let nrows = a.len();
    let mut q: Vec<Vec<BigInt>> = (0..width)
        .map(|i| (0..width).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let reduce = |v: BigInt| match modulus {
        Some(m) => v.mod_floor(m),
        None => v,
    };
    let mut diag = vec![BigInt::zero(); width];
    let mut t = 0;
    while t < nrows.min(width) {
        let Some((pi, pj)) = smallest(&a, t..nrows, t..width) else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj, 0);
        swap_cols(&mut q, t, pj, 0);
        loop {
            let mut clean = true;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let f = Entry::div_round(&a[i][t], &a[t][t]).expect("bigint");
                for j in t..width {
                    if !a[t][j].is_zero() {
                        let v = &a[i][j] - &f * &a[t][j];
                        a[i][j] = v;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            if !clean {
                let (i, _) = smallest(&a, t..nrows, t..t + 1).expect("pivot present");
                a.swap(t, i);
                continue;
            }
            for j in t + 1..width {
                if a[t][j].is_zero() {
                    continue;
                }
                let f = Entry::div_round(&a[t][j], &a[t][t]).expect("bigint");
                a[t][j] = &a[t][j] - &f * &a[t][t];
                for row in q.iter_mut() {
                    if !row[t].is_zero() {
                        let v = &row[j] - &f * &row[t];
                        row[j] = reduce(v);
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
            let (_, j) = smallest(&a, t..t + 1, t..width).expect("pivot present");
            swap_cols(&mut a, t, j, 0);
            swap_cols(&mut q, t, j, 0);
        }
        diag[t] = a[t][t].abs();
        t += 1;
    }
    (diag, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sparse(rows: &[&[i64]]) -> Vec<SparseRow<i64>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(c, v)| (c as u32, *v))
                    .collect()
            })
            .collect()
    }

    fn factors(rows: &[&[i64]], ncols: usize) -> (usize, Vec<BigInt>) {
        let d = diagonalize_sparse(&sparse(rows), ncols);
        (d.free_rank, invariant_factors(d.entries))
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn small_matrices() {
        assert_eq!(factors(&[&[2, 0], &[0, 3]], 2), (0, big(&[6])));
        assert_eq!(factors(&[&[2, 4], &[6, 8]], 2), (0, big(&[2, 4])));
        assert_eq!(factors(&[&[1, 1, 1]], 3), (2, big(&[])));
        assert_eq!(factors(&[&[0, 0], &[0, 0]], 2), (2, big(&[])));
        assert_eq!(factors(&[&[4, 6]], 2), (1, big(&[2])));
        assert_eq!(factors(&[], 3), (3, big(&[])));
    }

    #[test]
    fn invariant_factor_normalisation() {
        assert_eq!(invariant_factors(big(&[4, 6, 1, 9])), big(&[6, 36]));
        assert_eq!(invariant_factors(big(&[2, 3])), big(&[6]));
        assert_eq!(invariant_factors(big(&[3, 3, 3])), big(&[3, 3, 3]));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        // Entries near 2^62 force the i64 path to overflow during elimination.
        let x = 1i64 << 62;
        let rows = [&[x, x - 1][..], &[x - 1, x - 3][..]];
        let (free, f) = factors(&rows, 2);
        assert_eq!(free, 0);
        let det = BigInt::from(x) * BigInt::from(x - 3) - BigInt::from(x - 1) * BigInt::from(x - 1);
        assert_eq!(f.iter().product::<BigInt>(), det.abs());
    }

    #[test]
    fn column_transform_gives_coordinates() {
        // <a, b | 2a, 3b> ≅ Z_6. The coordinate map must kill both relators.
        let rows = vec![big(&[2, 0]), big(&[0, 3])];
        let (diag, q) = diagonalize_with_columns(rows.clone(), 2, None);
        for r in &rows {
            for (t, d) in diag.iter().enumerate() {
                let image: BigInt = (0..2).map(|j| &r[j] * &q[j][t]).sum();
                if !d.is_zero() {
                    assert!((image % d).is_zero());
                } else {
                    assert!(image.is_zero());
                }
            }
        }
    }
}
