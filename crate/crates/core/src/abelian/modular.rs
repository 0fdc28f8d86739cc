//! Cokernel of a dense integer matrix without coefficient growth.
//!
//! Exact elimination over Z on the dense block left by the unit phase can
//! blow up exponentially even when the answer has small invariant factors.
//! Here the torsion primes are read off from the gcd of two maximal minors,
//! each computed exactly: p-adic lifting gives a large divisor `s` of the
//! minor and Chinese remaindering the small cofactor. Each p-part of the
//! cokernel then comes from elimination over `Z/p^k` in machine words.
//!
//! The rank is the rank modulo two 31-bit primes, which must agree. Every
//! other step is exact, and the local eliminations cross-check the rank. Any
//! inconsistency returns `None` and the caller falls back to `BigInt`
//! elimination.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Free rank within `width` and the prime-power torsion entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Cokernel {
    pub free_rank: usize,
    pub entries: Vec<BigInt>,
}

pub(crate) fn cokernel(rows: &[Vec<i64>], width: usize) -> Option<Cokernel> {
    let mut primes = PrimeStream::new();
    let (p1, p2) = (primes.next_prime(), primes.next_prime());
    let forward = profile(rows, width, p1, false);
    let backward = profile(rows, width, p2, true);
    if forward.rank != backward.rank {
        return None;
    }
    let rank = forward.rank;
    if rank == 0 {
        return Some(Cokernel { free_rank: width, entries: Vec::new() });
    }
    let m1 = exact_minor(&forward.submatrix(rows), p1, &mut primes)?;
    let m2 = exact_minor(&backward.submatrix(rows), p2, &mut primes)?;
    let g = m1.abs().gcd(&m2.abs());
    let (small, rest) = split_small(&g);
    let mut queue: Vec<BigInt> = small.into_iter().map(|(p, _)| p).collect();
    if !rest.is_one() {
        queue.push(perfect_power_root(&rest));
    }
    let mut entries = Vec::new();
    while let Some(q) = queue.pop() {
        match local_valuations(rows, width, rank, &q, multiplicity(&g, &q)) {
            Ok(vals) => entries.extend(vals?.into_iter().map(|v| num_traits::pow(q.clone(), v as usize))),
            Err(f) => queue.extend(refine(&q, &f)),
        }
    }
    Some(Cokernel { free_rank: width - rank, entries })
}

// ---- word arithmetic ----

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse of a unit `a` modulo `m`.
fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{a} is not a unit mod {m}");
    t0.rem_euclid(m as i128) as u64
}

/// Deterministic Miller–Rabin, exact below 2.1e12.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// 31-bit primes in decreasing order, so that products of two residues fit
/// in a `u64` with room for one addition.
struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    fn new() -> Self {
        Self { next: (1 << 31) - 1 }
    }

    fn next_prime(&mut self) -> u64 {
        while !is_prime(self.next) {
            self.next -= 2;
        }
        let p = self.next;
        self.next -= 2;
        p
    }
}

fn reduce(v: i64, p: u64) -> u64 {
    (v as i128).rem_euclid(p as i128) as u64
}

/// `x ← (x - f·y) mod p` along two rows; residues are below `2^31`.
fn axpy(x: &mut [u64], y: &[u64], f: u64, p: u64) {
    let nf = p - f;
    for (a, &b) in x.iter_mut().zip(y) {
        *a = (*a + nf * b) % p;
    }
}

// ---- rank profile ----

/// Pivot rows and columns of an echelon form modulo a prime.
struct Profile {
    rank: usize,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl Profile {
    fn submatrix(&self, a: &[Vec<i64>]) -> Vec<Vec<i64>> {
        self.rows.iter().map(|&i| self.cols.iter().map(|&j| a[i][j]).collect()).collect()
    }
}

/// Echelon form modulo `p`, scanning rows and columns forwards or backwards.
fn profile(a: &[Vec<i64>], width: usize, p: u64, reversed: bool) -> Profile {
    let order = |n: usize| -> Vec<usize> {
        if reversed {
            (0..n).rev().collect()
        } else {
            (0..n).collect()
        }
    };
    let (row_ids, col_ids) = (order(a.len()), order(width));
    let mut m: Vec<Vec<u64>> =
        row_ids.iter().map(|&i| col_ids.iter().map(|&j| reduce(a[i][j], p)).collect()).collect();
    let mut ids = row_ids;
    let (mut rows, mut cols) = (Vec::new(), Vec::new());
    let mut t = 0;
    for j in 0..width {
        let Some(pi) = (t..m.len()).find(|&i| m[i][j] != 0) else { continue };
        m.swap(t, pi);
        ids.swap(t, pi);
        let inv = inv_mod(m[t][j], p);
        let (top, rest) = m.split_at_mut(t + 1);
        let pivot = &top[t];
        for row in rest.iter_mut() {
            if row[j] != 0 {
                let f = mul_mod(row[j], inv, p);
                axpy(&mut row[j..], &pivot[j..], f, p);
            }
        }
        rows.push(ids[t]);
        cols.push(col_ids[j]);
        t += 1;
    }
    Profile { rank: t, rows, cols }
}

// ---- square systems modulo a prime ----

/// `P·A = L·U` modulo `p` for a square matrix.
struct Lu {
    p: u64,
    perm: Vec<usize>,
    /// Unit lower part below the diagonal, `U` on and above it.
    lu: Vec<Vec<u64>>,
    swaps: usize,
}

impl Lu {
    /// `None` when `a` is singular modulo `p`.
    fn new(a: &[Vec<i64>], p: u64) -> Option<Self> {
        let n = a.len();
        let mut lu: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|&v| reduce(v, p)).collect()).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for t in 0..n {
            let pi = (t..n).find(|&i| lu[i][t] != 0)?;
            if pi != t {
                lu.swap(t, pi);
                perm.swap(t, pi);
                swaps += 1;
            }
            let inv = inv_mod(lu[t][t], p);
            let (top, rest) = lu.split_at_mut(t + 1);
            let pivot = &top[t];
            for row in rest.iter_mut() {
                if row[t] != 0 {
                    let f = mul_mod(row[t], inv, p);
                    axpy(&mut row[t + 1..], &pivot[t + 1..], f, p);
                    row[t] = f;
                }
            }
        }
        Some(Self { p, perm, lu, swaps })
    }

    fn det(&self) -> u64 {
        let p = self.p;
        let d = (0..self.lu.len()).fold(1, |acc, i| mul_mod(acc, self.lu[i][i], p));
        if self.swaps % 2 == 1 && d != 0 {
            p - d
        } else {
            d
        }
    }

    /// Solves `A x = b` modulo `p`.
    fn solve(&self, b: &[u64]) -> Vec<u64> {
        let (p, n) = (self.p, self.lu.len());
        let mut y: Vec<u64> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 0..n {
            let s = (0..i).fold(0, |acc, j| (acc + self.lu[i][j] * y[j]) % p);
            y[i] = (y[i] + p - s) % p;
        }
        for i in (0..n).rev() {
            let s = (i + 1..n).fold(0, |acc, j| (acc + self.lu[i][j] * y[j]) % p);
            y[i] = mul_mod((y[i] + p - s) % p, inv_mod(self.lu[i][i], p), p);
        }
        y
    }
}

/// Determinant modulo `p` (any square matrix).
fn det_mod(a: &[Vec<i64>], p: u64) -> u64 {
    Lu::new(a, p).map_or(0, |lu| lu.det())
}

// ---- exact minors ----

/// Upper bound on `log2` of the Hadamard bound of a square matrix.
fn hadamard_bits(a: &[Vec<i64>]) -> u64 {
    let mut half_bits = 0u64;
    for row in a {
        let norm2 = row.iter().try_fold(0u128, |acc, &v| acc.checked_add((v as i128 * v as i128) as u128));
        half_bits += match norm2 {
            Some(0) => return 0,
            Some(n) => 128 - n.leading_zeros() as u64,
            None => 2 * (64 + 64 - (row.len() as u64).leading_zeros() as u64),
        };
    }
    half_bits.div_ceil(2) + 1
}

/// Integer `z` and denominator `s` with `a z = s b`, by p-adic lifting.
fn solve_rational(a: &[Vec<i64>], b: &[i64], p: u64, max_bits: u64) -> Option<(BigInt, Vec<BigInt>)> {
    let lu = Lu::new(a, p)?;
    let n = a.len();
    let mut residual: Vec<i128> = b.iter().map(|&v| v as i128).collect();
    let mut digits: Vec<Vec<u64>> = Vec::new();
    let p_bits = 64 - p.leading_zeros() as u64 - 1;
    let mut checkpoint = 8;
    loop {
        let rhs: Vec<u64> = residual.iter().map(|&v| v.rem_euclid(p as i128) as u64).collect();
        let y = lu.solve(&rhs);
        for (i, row) in a.iter().enumerate() {
            let ay: i128 = row.iter().zip(&y).map(|(&u, &v)| u as i128 * v as i128).sum();
            let diff = residual[i] - ay;
            debug_assert_eq!(diff % p as i128, 0);
            residual[i] = diff / p as i128;
        }
        digits.push(y);
        let k = digits.len();
        if k == checkpoint || k as u64 * p_bits > max_bits {
            if let Some(sol) = reconstruct(a, b, &digits, p, n) {
                return Some(sol);
            }
            if k as u64 * p_bits > max_bits {
                return None;
            }
            checkpoint *= 2;
        }
    }
}

/// Tries to recover `z / s` from the p-adic digits and verifies it exactly.
fn reconstruct(a: &[Vec<i64>], b: &[i64], digits: &[Vec<u64>], p: u64, n: usize) -> Option<(BigInt, Vec<BigInt>)> {
    let pb = BigInt::from(p);
    let modulus = num_traits::pow(pb.clone(), digits.len());
    let bound: BigInt = (&modulus / 2u32).sqrt();
    let x: Vec<BigInt> = (0..n)
        .map(|j| digits.iter().rev().fold(BigInt::zero(), |acc, d| acc * &pb + d[j]))
        .collect();
    let symmetric = |v: BigInt| {
        let v = v.mod_floor(&modulus);
        if v > &modulus / 2u32 {
            v - &modulus
        } else {
            v
        }
    };
    let mut s = BigInt::one();
    for xj in &x {
        let t = symmetric(&s * xj);
        if t.abs() <= bound {
            continue;
        }
        let (_, den) = rational_reconstruction(&symmetric(xj.clone()), &modulus, &bound)?;
        s = s.lcm(&den);
        if s > bound {
            return None;
        }
    }
    let z: Vec<BigInt> = x.iter().map(|xj| symmetric(&s * xj)).collect();
    for (row, &bi) in a.iter().zip(b) {
        let lhs: BigInt = row.iter().zip(&z).map(|(&u, v)| v * u).sum();
        if lhs != &s * bi {
            return None;
        }
    }
    Some((s, z))
}

/// `u ≡ num/den (mod m)` with `|num|, den ≤ bound`.
fn rational_reconstruction(u: &BigInt, m: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound {
        return None;
    }
    let sign = if t1.is_negative() { -BigInt::one() } else { BigInt::one() };
    Some((r1 * &sign, t1.abs()))
}

/// Exact determinant of a square matrix that is nonsingular modulo `p`.
fn exact_minor(a: &[Vec<i64>], p: u64, primes: &mut PrimeStream) -> Option<BigInt> {
    let n = a.len();
    let hb = hadamard_bits(a);
    let b: Vec<i64> = (0..n).map(|i| ((i * 7919 + 13) % 101) as i64 - 50).collect();
    let b_bits = 7;
    let (s, _) = solve_rational(a, &b, p, 2 * hb + b_bits + 64)?;
    // det = s·k with |k| ≤ H/s. The bound is usually far from sharp, so the
    // reconstruction also stops once it has survived two further primes.
    let need = (hb + 2).saturating_sub(s.bits().saturating_sub(1));
    let (mut k, mut modulus) = (BigInt::zero(), BigInt::one());
    let mut stable = 0;
    while modulus.bits() <= need && stable < 2 {
        let q = primes.next_prime();
        let sq = (&s % q).to_u64().expect("reduced");
        if sq == 0 {
            continue;
        }
        let kq = mul_mod(det_mod(a, q), inv_mod(sq, q), q);
        // k ≡ kq mod q, k ≡ previous mod modulus.
        let kmod = k.mod_floor(&BigInt::from(q)).to_u64().expect("reduced");
        if kmod == kq && !modulus.is_one() {
            stable += 1;
            modulus *= q;
            continue;
        }
        stable = 0;
        let mm = (&modulus % q).to_u64().expect("reduced");
        let t = mul_mod((kq + q - kmod) % q, inv_mod(mm, q), q);
        k += &modulus * t;
        modulus *= q;
        if k > &modulus / 2u32 {
            k -= &modulus;
        }
    }
    Some(s * k)
}

// ---- torsion primes and local elimination ----

/// Splits `g` into prime powers below `2^16` and a cofactor with no such
/// factor.
fn split_small(g: &BigInt) -> (Vec<(BigInt, u32)>, BigInt) {
    const LIMIT: usize = 1 << 16;
    let mut g = g.abs();
    let mut out = Vec::new();
    let mut sieve = vec![true; LIMIT];
    for p in 2..LIMIT {
        if g.is_one() {
            break;
        }
        if !sieve[p] {
            continue;
        }
        for q in (p * p..LIMIT).step_by(p) {
            sieve[q] = false;
        }
        let mut e = 0;
        while (&g % p as u64).is_zero() {
            g /= p as u64;
            e += 1;
        }
        if e > 0 {
            out.push((BigInt::from(p), e));
        }
    }
    (out, g)
}

/// The least `r` with `r^e = g`.
fn perfect_power_root(g: &BigInt) -> BigInt {
    for e in (2..=g.bits() as u32).rev() {
        let r = g.nth_root(e);
        if num_traits::pow(r.clone(), e as usize) == *g {
            return perfect_power_root(&r);
        }
    }
    g.clone()
}

fn multiplicity(g: &BigInt, q: &BigInt) -> u32 {
    let mut g = g.clone();
    let mut e = 0;
    while (&g % q).is_zero() {
        g /= q;
        e += 1;
    }
    e
}

/// Replaces `q` by pairwise coprime factors of `q` given a proper divisor.
fn refine(q: &BigInt, f: &BigInt) -> Vec<BigInt> {
    let mut parts = vec![f.clone(), q / f];
    loop {
        parts.retain(|x| !x.is_one());
        parts.sort();
        parts.dedup();
        let pair = (0..parts.len())
            .flat_map(|i| (i + 1..parts.len()).map(move |j| (i, j)))
            .find(|&(i, j)| !parts[i].gcd(&parts[j]).is_one());
        let Some((i, j)) = pair else { return parts };
        let g = parts[i].gcd(&parts[j]);
        let (a, b) = (&parts[i] / &g, &parts[j] / &g);
        parts[i] = a;
        parts[j] = b;
        parts.push(g);
    }
}

/// Nonzero valuations of the invariant factors at `q`. `q` is treated as
/// prime; if it turns out not to be, `Err` carries a proper factor. `bound`
/// is the multiplicity of `q` in a multiple of the torsion order, so no
/// valuation exceeds it.
fn local_valuations(a: &[Vec<i64>], width: usize, rank: usize, q: &BigInt, bound: u32) -> Result<Option<Vec<u32>>, BigInt> {
    let word = q.to_u64();
    let fits = |k: u32| word.and_then(|v| v.checked_pow(k));
    let mut k = (1..=bound + 1).take_while(|&k| fits(k).is_some_and(|m| m < 1 << 31)).last().unwrap_or(1);
    loop {
        let (vals, pivots) = match fits(k) {
            Some(m) => local_elimination(a, width, Word { q: word.expect("fits"), m }, k)?,
            None => local_elimination(a, width, Big { q: q.clone(), m: num_traits::pow(q.clone(), k as usize) }, k)?,
        };
        if pivots > rank {
            return Ok(None);
        }
        let mut vals: Vec<u32> = vals.into_iter().filter(|&v| v > 0).collect();
        let hidden = (rank - pivots) as u32;
        if hidden > 0 {
            // Extra vanishing columns: valuations of at least k, or a wrong
            // rank. If they use up the whole bound they are exactly k.
            let seen: u32 = vals.iter().sum();
            if seen + hidden * k == bound {
                vals.extend(core::iter::repeat_n(k, hidden as usize));
                return Ok(Some(vals));
            }
            if k > bound || seen + hidden * k > bound {
                return Ok(None);
            }
            k = (2 * k).min(bound + 1);
            continue;
        }
        return Ok(Some(vals));
    }
}

/// `Z/q^k` for a presumed prime `q`.
trait LocalRing {
    type E: Clone;
    fn from_i64(&self, v: i64) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    /// Valuation at `q`, or a proper factor of `q`.
    fn valuation(&self, x: &Self::E) -> Result<u32, BigInt>;
    /// `x / q^v` as a unit, inverted.
    fn unit_inverse(&self, x: &Self::E, v: u32) -> Self::E;
    /// `(x / q^v) · u`.
    fn factor(&self, x: &Self::E, v: u32, u: &Self::E) -> Self::E;
    /// `x - f·y`.
    fn sub_mul(&self, x: &Self::E, f: &Self::E, y: &Self::E) -> Self::E;
}

struct Word {
    q: u64,
    m: u64,
}

impl Word {
    fn mul(&self, a: u64, b: u64) -> u64 {
        if self.m < 1 << 31 {
            a * b % self.m
        } else {
            mul_mod(a, b, self.m)
        }
    }
}

impl LocalRing for Word {
    type E = u64;
    fn from_i64(&self, v: i64) -> u64 {
        reduce(v, self.m)
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn valuation(&self, x: &u64) -> Result<u32, BigInt> {
        let (mut x, mut v) = (*x, 0);
        loop {
            let g = x.gcd(&self.q);
            if g == 1 {
                return Ok(v);
            }
            if g != self.q {
                return Err(BigInt::from(g));
            }
            x /= self.q;
            v += 1;
        }
    }
    fn unit_inverse(&self, x: &u64, v: u32) -> u64 {
        inv_mod(x / self.q.pow(v), self.m)
    }
    fn factor(&self, x: &u64, v: u32, u: &u64) -> u64 {
        self.mul(x / self.q.pow(v), *u)
    }
    fn sub_mul(&self, x: &u64, f: &u64, y: &u64) -> u64 {
        let t = self.mul((self.m - f) % self.m, *y);
        if self.m < 1 << 63 {
            (x + t) % self.m
        } else {
            ((*x as u128 + t as u128) % self.m as u128) as u64
        }
    }
}

struct Big {
    q: BigInt,
    m: BigInt,
}

impl LocalRing for Big {
    type E = BigInt;
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v).mod_floor(&self.m)
    }
    fn is_zero(&self, x: &BigInt) -> bool {
        x.is_zero()
    }
    fn valuation(&self, x: &BigInt) -> Result<u32, BigInt> {
        let (mut x, mut v) = (x.clone(), 0);
        loop {
            let g = x.gcd(&self.q);
            if g.is_one() {
                return Ok(v);
            }
            if g != self.q {
                return Err(g);
            }
            x /= &self.q;
            v += 1;
        }
    }
    fn unit_inverse(&self, x: &BigInt, v: u32) -> BigInt {
        let u = x / num_traits::pow(self.q.clone(), v as usize);
        let e = u.extended_gcd(&self.m);
        debug_assert!(e.gcd.is_one());
        e.x.mod_floor(&self.m)
    }
    fn factor(&self, x: &BigInt, v: u32, u: &BigInt) -> BigInt {
        (x / num_traits::pow(self.q.clone(), v as usize) * u).mod_floor(&self.m)
    }
    fn sub_mul(&self, x: &BigInt, f: &BigInt, y: &BigInt) -> BigInt {
        (x - f * y).mod_floor(&self.m)
    }
}

/// Diagonalises over `Z/q^k`; returns the pivot valuations and their count.
fn local_elimination<R: LocalRing>(a: &[Vec<i64>], width: usize, ring: R, k: u32) -> Result<(Vec<u32>, usize), BigInt> {
    let mut rows: Vec<Vec<R::E>> = a.iter().map(|r| r.iter().map(|&v| ring.from_i64(v)).collect()).collect();
    let nrows = rows.len();
    let mut vals = Vec::new();
    let mut t = 0;
    while t < nrows.min(width) {
        // Least valuation in the remaining block; a unit ends the search.
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for (i, row) in rows.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if ring.is_zero(x) {
                    continue;
                }
                let v = ring.valuation(x)?;
                if best.is_none_or(|b| v < b.0) {
                    best = Some((v, i, j));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        debug_assert!(v < k);
        rows.swap(t, pi);
        if pj != t {
            for row in rows.iter_mut().skip(t) {
                row.swap(t, pj);
            }
        }
        let unit_inv = ring.unit_inverse(&rows[t][t], v);
        let (top, rest) = rows.split_at_mut(t + 1);
        let pivot = &top[t];
        for row in rest.iter_mut() {
            if ring.is_zero(&row[t]) {
                continue;
            }
            // Every entry of the block is divisible by q^v.
            let f = ring.factor(&row[t], v, &unit_inv);
            for (x, y) in row[t..].iter_mut().zip(&pivot[t..]) {
                *x = ring.sub_mul(x, &f, y);
            }
        }
        vals.push(v);
        t += 1;
    }
    Ok((vals, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::snf::{dense_diagonalize, invariant_factors, DenseMatrix};
    use proptest::prelude::*;

    fn exact(rows: &[Vec<i64>], width: usize) -> (usize, Vec<BigInt>) {
        let big = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let d = dense_diagonalize(DenseMatrix { rows: big, width }).unwrap();
        (d.free_rank, invariant_factors(d.entries))
    }

    fn modular(rows: &[Vec<i64>], width: usize) -> (usize, Vec<BigInt>) {
        let c = cokernel(rows, width).unwrap();
        (c.free_rank, invariant_factors(c.entries))
    }

    #[test]
    fn primes_and_inverses() {
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
        assert!(is_prime(1_000_003));
        assert!(!is_prime(3_215_031_751));
        assert_eq!(mul_mod(inv_mod(17, 1 << 20), 17, 1 << 20), 1);
    }

    #[test]
    fn minors_are_exact() {
        let a = vec![vec![2, 3, 1], vec![4, -1, 7], vec![0, 5, 9]];
        let mut primes = PrimeStream::new();
        let p = primes.next_prime();
        assert_eq!(exact_minor(&a, p, &mut primes), Some(BigInt::from(-176)));
        let big = |v: u64| BigInt::from(v);
        assert_eq!(split_small(&big(4 * 9 * 1_000_003)), (vec![(big(2), 2), (big(3), 2)], big(1_000_003)));
        assert_eq!(perfect_power_root(&num_traits::pow(big(1_000_003), 9)), big(1_000_003));
        assert_eq!(perfect_power_root(&big(1 << 12)), big(2));
        assert_eq!(perfect_power_root(&big(12)), big(12));
        let mut parts = refine(&big(1_000_003 * 1_000_003 * 65_537), &big(1_000_003));
        parts.sort();
        assert_eq!(parts, vec![big(65_537), big(1_000_003)]);
    }

    #[test]
    fn known_cokernels() {
        // diag(2, 6, 0) mixed by unimodular operations.
        let a = vec![vec![2, 0, 0], vec![2, 6, 0], vec![4, 6, 0], vec![0, 12, 0]];
        assert_eq!(modular(&a, 3), (1, vec![BigInt::from(2), BigInt::from(6)]));
        // Large torsion prime.
        let a = vec![vec![1_000_003, 0], vec![0, 1]];
        assert_eq!(modular(&a, 2), (0, vec![BigInt::from(1_000_003)]));
        // High power of two.
        let a = vec![vec![1 << 40, 3], vec![0, 9]];
        assert_eq!(modular(&a, 2), exact(&a, 2));
        assert_eq!(modular(&[vec![0, 0]], 2), (2, vec![]));
    }

    proptest! {
        #[test]
        fn agrees_with_exact_elimination(
            m in 1usize..9, w in 1usize..8,
            entries in proptest::collection::vec(-40i64..40, 72),
            scale in 1i64..6,
        ) {
            let rows: Vec<Vec<i64>> =
                (0..m).map(|i| (0..w).map(|j| entries[i * 8 + j] * if j == 0 { scale } else { 1 }).collect()).collect();
            prop_assert_eq!(modular(&rows, w), exact(&rows, w));
        }

        #[test]
        fn recovers_scrambled_diagonals(
            diag in proptest::collection::vec(prop_oneof![Just(0i64), Just(1), 2i64..50, Just(1_000_003)], 1..7),
            extra_rows in 0usize..3,
            ops in proptest::collection::vec((0usize..16, 0usize..16, -2i64..3, any::<bool>()), 0..40),
        ) {
            let w = diag.len();
            let m = w + extra_rows;
            let mut rows: Vec<Vec<i64>> = (0..m).map(|i| (0..w).map(|j| if i == j { diag[i] } else { 0 }).collect()).collect();
            for (x, y, c, on_rows) in ops {
                let (n, x, y) = if on_rows { (m, x % m, y % m) } else { (w, x % w, y % w) };
                if x == y || n < 2 { continue; }
                let next: Option<Vec<Vec<i64>>> = if on_rows {
                    let mut r = rows.clone();
                    let add: Option<Vec<i64>> = r[y].iter().zip(&r[x]).map(|(a, b)| a.checked_add(b.checked_mul(c)?)).collect();
                    add.map(|v| { r[y] = v; r })
                } else {
                    rows.iter().map(|row| {
                        let mut row = row.clone();
                        row[y] = row[y].checked_add(row[x].checked_mul(c)?)?;
                        Some(row)
                    }).collect()
                };
                if let Some(next) = next {
                    if next.iter().flatten().all(|v| v.abs() < 1 << 40) { rows = next; }
                }
            }
            let torsion = invariant_factors(diag.iter().filter(|&&d| d != 0).map(|&d| BigInt::from(d)).collect());
            let free = diag.iter().filter(|&&d| d == 0).count();
            prop_assert_eq!(modular(&rows, w), (free, torsion));
        }
    }
}
