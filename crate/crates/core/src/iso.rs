//! Isomorphism orbits of parameter pairs.
//!
//! Five moves on `(k,l)` preserve the isomorphism type of `Γ_n(k,l)`:
//!
//! ```text
//! M1 (k,l) -> (l-k, -k)      M2 (k,l) -> (l, k)      M3 (k,l) -> (k-l, -l)
//! M4 (k,l) -> (k, k-l)       M5 (k,l) -> (αk, αl)    for α a unit mod n
//! ```
//!
//! Orbits under these moves are provable isomorphism classes. Two orbits may
//! still hold isomorphic groups, so orbit counts are only an upper bound on the
//! number of groups and equal invariants are never used to merge orbits.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::abelian::{abelianisation, AbelianInvariants};
use crate::classify::{classify_params, ClassificationRecord};
use crate::error::{domain, violation, Result};
use crate::params::{alpha, gamma, ConditionVector, GroupParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsoMove {
    M1,
    M2,
    M3,
    M4,
    /// Multiplication by a unit.
    M5(usize),
}

impl fmt::Display for IsoMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoMove::M1 => f.write_str("M1"),
            IsoMove::M2 => f.write_str("M2"),
            IsoMove::M3 => f.write_str("M3"),
            IsoMove::M4 => f.write_str("M4"),
            IsoMove::M5(a) => write!(f, "M5({a})"),
        }
    }
}

fn step(n: usize, (k, l): (usize, usize), m: IsoMove) -> (usize, usize) {
    let neg = |x: usize| (n - x) % n;
    let sub = |x: usize, y: usize| (x + n - y) % n;
    match m {
        IsoMove::M1 => (sub(l, k), neg(k)),
        IsoMove::M2 => (l, k),
        IsoMove::M3 => (sub(k, l), neg(l)),
        IsoMove::M4 => (k, sub(k, l)),
        IsoMove::M5(a) => ((a % n) * k % n, (a % n) * l % n),
    }
}

/// Applies one move to a standard triple.
pub fn apply_move(p: &GroupParams, m: IsoMove) -> Result<GroupParams> {
    p.require_standard()?;
    let n = p.n();
    if let IsoMove::M5(a) = m {
        if a.gcd(&n) != 1 {
            return Err(domain!("M5({a}) needs a unit modulo {n}"));
        }
    }
    let (k, l) = step(n, (p.k(), p.l()), m);
    let q = GroupParams::from_reduced(n, k, l);
    if !q.is_standard() {
        return Err(violation!("{m} took {p} to non-standard {q}"));
    }
    Ok(q)
}

/// Units modulo `n` other than 1.
fn units(n: usize) -> Vec<usize> {
    (2..n).filter(|a| a.gcd(&n) == 1).collect()
}

/// A move-orbit of standard pairs for a fixed `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitClass {
    pub n: usize,
    /// Sorted lexicographically.
    pub members: Vec<(usize, usize)>,
    /// Lexicographically least member.
    pub canonical: (usize, usize),
}

impl OrbitClass {
    pub fn contains(&self, k: usize, l: usize) -> bool {
        self.members.binary_search(&(k % self.n, l % self.n)).is_ok()
    }

    pub fn canonical_params(&self) -> GroupParams {
        GroupParams::from_reduced(self.n, self.canonical.0, self.canonical.1)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// All `l` with `(1,l)` in the orbit, ascending.
    pub fn one_l_values(&self) -> Vec<usize> {
        let lo = self.members.partition_point(|&(k, _)| k < 1);
        let hi = self.members.partition_point(|&(k, _)| k < 2);
        self.members[lo..hi].iter().map(|&(_, l)| l).collect()
    }

    /// The `(1,l)` form used for tables: the least `l` from the L-set of `n`
    /// when there is one, else the least `(1,l)` member, else the canonical
    /// pair.
    pub fn preferred_rep(&self) -> GroupParams {
        let ones = self.one_l_values();
        let from_lset = l_set(self.n)
            .ok()
            .flatten()
            .and_then(|ls| ones.iter().copied().find(|l| ls.contains(l)));
        match from_lset.or_else(|| ones.first().copied()) {
            Some(l) => GroupParams::from_reduced(self.n, 1, l),
            None => self.canonical_params(),
        }
    }

    /// Condition vectors met by members of the orbit.
    pub fn condition_vectors(&self) -> BTreeSet<ConditionVector> {
        self.members
            .iter()
            .map(|&(k, l)| ConditionVector::evaluate(&GroupParams::from_reduced(self.n, k, l)))
            .collect()
    }

    pub fn meets_bcd_free(&self) -> bool {
        self.condition_vectors().iter().any(ConditionVector::bcd_free)
    }
}

fn index(n: usize, (k, l): (usize, usize)) -> usize {
    k * n + l
}

/// Breadth-first closure of `start`, marking `seen`.
fn close(n: usize, start: (usize, usize), moves: &[IsoMove], seen: &mut [bool]) -> OrbitClass {
    let mut members = vec![start];
    seen[index(n, start)] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(pair) = queue.pop_front() {
        for &m in moves {
            let next = step(n, pair, m);
            let slot = &mut seen[index(n, next)];
            if !*slot {
                *slot = true;
                members.push(next);
                queue.push_back(next);
            }
        }
    }
    members.sort_unstable();
    OrbitClass { n, canonical: members[0], members }
}

fn all_moves(n: usize) -> Vec<IsoMove> {
    let mut moves = vec![IsoMove::M1, IsoMove::M2, IsoMove::M3, IsoMove::M4];
    moves.extend(units(n).into_iter().map(IsoMove::M5));
    moves
}

/// The orbit of a standard triple under all five moves.
pub fn orbit(p: &GroupParams) -> Result<OrbitClass> {
    p.require_standard()?;
    let n = p.n();
    let mut seen = vec![false; n * n];
    Ok(close(n, (p.k(), p.l()), &all_moves(n), &mut seen))
}

/// Every orbit for `n`, ordered by canonical pair.
pub fn orbits(n: usize) -> Result<Vec<OrbitClass>> {
    if n < 3 {
        return Err(domain!("n = {n} is below 3"));
    }
    let moves = all_moves(n);
    let mut seen = vec![false; n * n];
    let mut out = Vec::new();
    for p in GroupParams::all_standard(n) {
        if !seen[index(n, (p.k(), p.l()))] {
            out.push(close(n, (p.k(), p.l()), &moves, &mut seen));
        }
    }
    Ok(out)
}

/// Lexicographically least member of the orbit.
pub fn canonical_rep(p: &GroupParams) -> Result<GroupParams> {
    Ok(orbit(p)?.canonical_params())
}

fn inverse_mod(a: usize, n: usize) -> Option<usize> {
    let e = (a as i64).extended_gcd(&(n as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(n as i64) as usize)
}

/// An orbit member `(1,l')`, built by swapping and scaling whenever one of
/// `k`, `l`, `k-l` is a unit modulo `n`.
pub fn reduce_to_one_l(p: &GroupParams) -> Result<Option<GroupParams>> {
    p.require_standard()?;
    let n = p.n();
    let scale = |q: GroupParams| -> Result<GroupParams> {
        let a = inverse_mod(q.k(), n).expect("caller checked the unit");
        if a == 1 {
            Ok(q)
        } else {
            apply_move(&q, IsoMove::M5(a))
        }
    };
    if p.k().gcd(&n) == 1 {
        return scale(*p).map(Some);
    }
    if p.l().gcd(&n) == 1 {
        return scale(apply_move(p, IsoMove::M2)?).map(Some);
    }
    // (k,l) -> (k,k-l) -> (k-l,k)
    let q = apply_move(&apply_move(p, IsoMove::M4)?, IsoMove::M2)?;
    if q.k().gcd(&n) == 1 {
        return scale(q).map(Some);
    }
    Ok(None)
}

/// Values `l'` with `Γ_n(1,l) ≅ Γ_n(1,l')` from the four unit identities:
/// `l l' ≡ 1`, `n+1-l'`, `1+m` and `n-m` where `(l-1) m ≡ 1`.
pub fn one_l_identities(n: usize, l: usize) -> Vec<usize> {
    let mut out = Vec::new();
    if let Some(inv) = inverse_mod(l % n, n) {
        out.push(inv);
        out.push((n + 1 - inv) % n);
    }
    if let Some(m) = inverse_mod((l + n - 1) % n, n) {
        out.push((1 + m) % n);
        out.push((n - m) % n);
    }
    out
}

/// The L-set of `n`: every `Γ_n(1,l)` is isomorphic to some `Γ_n(1,l')` with
/// `l'` in the set. `None` for `n` covered by no case (5, 6, 7).
pub fn l_set(n: usize) -> Result<Option<Vec<usize>>> {
    if n < 4 {
        return Err(domain!("L-sets need n >= 4, got {n}"));
    }
    let range = |hi: usize, skip: Option<usize>| -> Vec<usize> {
        (2..=hi).filter(|&l| Some(l) != skip).collect()
    };
    let set = match (n % 4, n % 6) {
        (0, _) => Some(range(n / 2, None)),
        (2, _) if n >= 10 => Some(range(n / 2, Some((n + 2) / 4))),
        (_, 3) if n >= 9 => Some(range((n - 3) / 2, None)),
        (_, 1) if n >= 9 => Some(range((n - 3) / 2, Some((n + 2) / 3))),
        (_, 5) if n >= 9 => Some(range((n - 3) / 2, Some((n + 1) / 3))),
        _ => None,
    };
    Ok(set)
}

/// Number of distinct prime factors.
pub fn distinct_prime_factors(mut n: usize) -> usize {
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            count += 1;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    count + usize::from(n > 1)
}

#[derive(Debug, Clone)]
pub struct ClassEntry {
    pub orbit: OrbitClass,
    /// Classification of the preferred representative.
    pub record: ClassificationRecord,
}

#[derive(Debug, Clone)]
pub struct EnumerationReport {
    pub n: usize,
    pub classes: Vec<ClassEntry>,
    /// Number of distinct invariant signatures among the classes; orbits with
    /// different signatures are certainly non-isomorphic.
    pub f_lower: usize,
    /// Number of orbits.
    pub f_upper: usize,
    /// Vector `v` to the indices of classes with a member satisfying `v`.
    pub partition: BTreeMap<ConditionVector, Vec<usize>>,
    /// `Some(true)` when every orbit was checked to meet `{(1,l) : l ∈ L}`;
    /// `None` when `n` has three or more prime factors or no L-set.
    pub l_set_verified: Option<bool>,
}

/// Orbits of `n` with their classifications and the `f(n)` bracket.
pub fn enumerate(n: usize) -> Result<EnumerationReport> {
    let orbits = orbits(n)?;
    let lset = if n >= 4 { l_set(n)? } else { None };
    let l_set_verified = match lset {
        Some(ls) if distinct_prime_factors(n) <= 2 => {
            for o in &orbits {
                if !o.one_l_values().iter().any(|l| ls.contains(l)) {
                    return Err(violation!(
                        "orbit of {} misses every (1,l) with l in the L-set",
                        o.canonical_params()
                    ));
                }
            }
            Some(true)
        }
        _ => None,
    };
    let mut classes = Vec::with_capacity(orbits.len());
    let mut partition: BTreeMap<ConditionVector, Vec<usize>> = BTreeMap::new();
    let mut signatures = BTreeSet::new();
    for (i, o) in orbits.into_iter().enumerate() {
        for v in o.condition_vectors() {
            partition.entry(v).or_default().push(i);
        }
        let record = classify_params(&o.preferred_rep())?;
        signatures.insert(record.signature());
        classes.push(ClassEntry { orbit: o, record });
    }
    Ok(EnumerationReport {
        n,
        f_lower: signatures.len(),
        f_upper: classes.len(),
        classes,
        partition,
        l_set_verified,
    })
}

/// One empirical check of a statement about the sets `S^v(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropositionCheck {
    pub name: &'static str,
    pub detail: String,
}

/// The `(n,18)` case split for `n >= 19`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionVerdict {
    pub gcd18: usize,
    pub expected: Vec<ConditionVector>,
    pub observed: Vec<ConditionVector>,
    /// For even `n`: whether the orbit of `(1,n/2-1)` meets the FFFF cell
    /// (`n ≢ 0 mod 6`) or the TFFF cell (`6 | n`). Only an orbit-level answer.
    pub half_case_orbit_meets: Option<bool>,
    /// Whether some orbit in that cell shares the abelianisation of
    /// `Γ_n(1,n/2-1)`. A match would not make the groups isomorphic.
    pub half_case_ab_match: Option<bool>,
}

impl DecompositionVerdict {
    pub fn holds(&self) -> bool {
        self.expected == self.observed
    }
}

#[derive(Debug, Clone)]
pub struct PartitionReport {
    pub n: usize,
    /// `v` to the canonical representatives of orbits meeting `v`.
    pub cells: BTreeMap<ConditionVector, Vec<GroupParams>>,
    /// Number of standard pairs with each vector.
    pub pair_counts: BTreeMap<ConditionVector, usize>,
    pub checks: Vec<PropositionCheck>,
    pub decomposition: Option<DecompositionVerdict>,
}

fn cv(s: &str) -> ConditionVector {
    s.parse().expect("literal condition vector")
}

struct PartitionCtx<'a> {
    n: usize,
    orbits: &'a [OrbitClass],
    cells: BTreeMap<ConditionVector, Vec<usize>>,
    ab: BTreeMap<usize, AbelianInvariants>,
    checks: Vec<PropositionCheck>,
}

impl PartitionCtx<'_> {
    fn cell(&self, v: &str) -> &[usize] {
        self.cells.get(&cv(v)).map(Vec::as_slice).unwrap_or(&[])
    }

    fn nonempty(&self, v: &str) -> bool {
        !self.cell(v).is_empty()
    }

    fn orbit_of(&self, k: usize, l: usize) -> Option<usize> {
        self.orbits.iter().position(|o| o.contains(k, l))
    }

    fn ab_of(&mut self, i: usize) -> AbelianInvariants {
        let p = self.orbits[i].canonical_params();
        self.ab.entry(i).or_insert_with(|| abelianisation(&p)).clone()
    }

    fn record(&mut self, name: &'static str, ok: bool, detail: String) -> Result<()> {
        if !ok {
            return Err(violation!("n = {}: {name} fails: {detail}", self.n));
        }
        self.checks.push(PropositionCheck { name, detail });
        Ok(())
    }

    /// Nonempty exactly when `expect`; when nonempty, contains the orbit of
    /// `(k,l)` and every orbit in the cell abelianises to `want`.
    fn singleton_by_ab(
        &mut self,
        name: &'static str,
        v: &str,
        expect: bool,
        witness: (usize, usize),
        want: impl Fn(usize) -> AbelianInvariants,
    ) -> Result<()> {
        let cell = self.cell(v).to_vec();
        if cell.is_empty() != !expect {
            let detail = alloc::format!("{v} nonempty = {}, expected {expect}", !cell.is_empty());
            return self.record(name, false, detail);
        }
        if !expect {
            return self.record(name, true, alloc::format!("{v} empty"));
        }
        let w = self.orbit_of(witness.0, witness.1);
        if !w.is_some_and(|w| cell.contains(&w)) {
            let detail = alloc::format!("{v} misses {:?}", witness);
            return self.record(name, false, detail);
        }
        let target = want(self.n);
        for &i in &cell {
            let got = self.ab_of(i);
            if got != target {
                let p = self.orbits[i].canonical_params();
                return self.record(name, false, alloc::format!("{p} has ab {got}, want {target}"));
            }
        }
        let detail = alloc::format!("{v}: {} orbit(s), all with ab {target}", cell.len());
        self.record(name, true, detail)
    }

    /// Nonempty exactly when `expect`; when nonempty, a single orbit
    /// containing `(1, n/2-1)`.
    fn half_case(&mut self, name: &'static str, v: &str, expect: bool) -> Result<()> {
        let cell = self.cell(v).to_vec();
        if cell.is_empty() != !expect {
            let detail = alloc::format!("{v} nonempty = {}, expected {expect}", !cell.is_empty());
            return self.record(name, false, detail);
        }
        if !expect {
            return self.record(name, true, alloc::format!("{v} empty"));
        }
        let h = self.orbit_of(1, self.n / 2 - 1);
        let ok = cell.len() == 1 && h == Some(cell[0]);
        let detail = alloc::format!("{v}: {} orbit(s), (1,{}) among them", cell.len(), self.n / 2 - 1);
        self.record(name, ok, detail)
    }

    fn contains_pair(&mut self, name: &'static str, v: &str, k: usize, l: usize) -> Result<()> {
        let ok = self.orbit_of(k, l).is_some_and(|o| self.cell(v).contains(&o))
            && ConditionVector::evaluate(&GroupParams::from_reduced(self.n, k, l)) == cv(v);
        self.record(name, ok, alloc::format!("({k},{l}) has vector {v}"))
    }
}

fn z_free(rank: usize, torsion: Option<num_bigint::BigInt>) -> AbelianInvariants {
    AbelianInvariants::new(rank, torsion.into_iter().collect())
}

/// Groups the orbits of `n` by condition vector and checks the statements
/// about the cells. A failed statement is an invariant violation.
pub fn condition_partition(n: usize) -> Result<PartitionReport> {
    let orbits = orbits(n)?;
    let mut cells: BTreeMap<ConditionVector, Vec<usize>> = BTreeMap::new();
    let mut pair_counts: BTreeMap<ConditionVector, usize> = BTreeMap::new();
    for (i, o) in orbits.iter().enumerate() {
        for &(k, l) in &o.members {
            let v = ConditionVector::evaluate(&GroupParams::from_reduced(n, k, l));
            *pair_counts.entry(v).or_default() += 1;
            let cell = cells.entry(v).or_default();
            if cell.last() != Some(&i) {
                cell.push(i);
            }
        }
    }
    let mut ctx = PartitionCtx { n, orbits: &orbits, cells, ab: BTreeMap::new(), checks: Vec::new() };

    let b_without_d = pair_counts.keys().filter(|v| v.b && !v.d).count();
    ctx.record("(B) implies (D)", b_without_d == 0, alloc::format!("{b_without_d} vectors with B and not D"))?;

    if n > 12 {
        let listed = ["FTTF", "TTTF", "TTFF", "FTFF", "TTTT", "FFTT", "FTTT", "TFTT"];
        let hit: Vec<&str> = listed.iter().copied().filter(|v| ctx.nonempty(v)).collect();
        ctx.record("eight empty cells", hit.is_empty(), alloc::format!("nonempty: {hit:?}"))?;
    }
    if n >= 9 {
        ctx.singleton_by_ab("TTFT is Z*Z", "TTFT", n % 3 == 0, (1, 2), |_| z_free(2, None))?;
    }
    ctx.singleton_by_ab("FTFT is Z_3", "FTFT", n % 3 != 0, (1, 2), |_| z_free(0, Some(3.into())))?;
    if n >= 6 {
        let w = (n / 3, (1 + 2 * n / 3) % n);
        ctx.singleton_by_ab("FFTF is metacyclic", "FFTF", n % 3 == 0, w, |n| z_free(0, alpha(n)))?;
    }
    // For n <= 12 every (T,F,T) pair also satisfies (D): the cell is empty
    // at n = 3, 6, 12 although n ≡ ±3 mod 9.
    if n > 12 {
        let tftf = n % 9 == 3 || n % 9 == 6;
        // (1, n/3+1) fails (A) when n ≡ 6 mod 9; (1, 2n/3+1) is the pair then.
        let w = if n % 9 == 3 { (1, n / 3 + 1) } else { (1, 2 * n / 3 + 1) };
        ctx.singleton_by_ab("TFTF is Z*Z*Z_gamma", "TFTF", tftf, w, |n| z_free(2, gamma(n)))?;
    }
    // At n = 4 every pair satisfies (B).
    if n > 4 {
        ctx.half_case("FFFT is one orbit", "FFFT", n % 6 == 2 || n % 6 == 4)?;
    }
    if n >= 13 {
        ctx.half_case("TFFT is one orbit", "TFFT", n % 6 == 0)?;
    }
    if n >= 19 {
        if n % 3 == 0 {
            ctx.contains_pair("TFFF contains (1,5)", "TFFF", 1, 5)?;
        } else {
            let empty = !ctx.nonempty("TFFF");
            ctx.record("TFFF empty", empty, String::from("3 does not divide n"))?;
        }
    }
    if n >= 10 {
        if n % 2 == 0 {
            ctx.contains_pair("FFFF contains (1,n/2)", "FFFF", 1, n / 2)?;
        } else {
            ctx.contains_pair("FFFF contains (1,3)", "FFFF", 1, 3)?;
        }
    }

    let decomposition = if n >= 19 { Some(decomposition(&mut ctx)?) } else { None };

    let cells = ctx
        .cells
        .iter()
        .map(|(v, idx)| (*v, idx.iter().map(|&i| orbits[i].canonical_params()).collect()))
        .collect();
    Ok(PartitionReport { n, cells, pair_counts, checks: ctx.checks, decomposition })
}

fn decomposition(ctx: &mut PartitionCtx<'_>) -> Result<DecompositionVerdict> {
    let n = ctx.n;
    let g = n.gcd(&18);
    let names: &[&str] = match g {
        1 => &["FTFT", "FFFF"],
        2 => &["FTFT", "FFFT", "FFFF"],
        3 => &["TTFT", "FFTF", "TFTF", "TFFF", "FFFF"],
        6 => &["TTFT", "FFTF", "TFTF", "TFFT", "TFFF", "FFFF"],
        9 => &["TTFT", "FFTF", "TFFF", "FFFF"],
        _ => &["TTFT", "FFTF", "TFFT", "TFFF", "FFFF"],
    };
    let mut expected: Vec<ConditionVector> = names.iter().map(|s| cv(s)).collect();
    expected.sort();
    let observed: Vec<ConditionVector> =
        ctx.cells.iter().filter(|(_, c)| !c.is_empty()).map(|(v, _)| *v).collect();

    let (mut meets, mut ab_match) = (None, None);
    if n % 2 == 0 {
        let other = if n % 3 == 0 { "TFFF" } else { "FFFF" };
        let h = ctx.orbit_of(1, n / 2 - 1).ok_or_else(|| violation!("(1,n/2-1) in no orbit"))?;
        let cell = ctx.cell(other).to_vec();
        meets = Some(cell.contains(&h));
        let target = ctx.ab_of(h);
        let mut found = false;
        for i in cell.into_iter().filter(|&i| i != h) {
            if ctx.ab_of(i) == target {
                found = true;
                break;
            }
        }
        ab_match = Some(found);
    }
    let verdict = DecompositionVerdict {
        gcd18: g,
        expected,
        observed,
        half_case_orbit_meets: meets,
        half_case_ab_match: ab_match,
    };
    let detail = alloc::format!("(n,18) = {g}: cells {:?}", verdict.observed);
    ctx.record("decomposition by (n,18)", verdict.holds(), detail)?;
    Ok(verdict)
}

/// The families of pairs `{(1,a),(1,b)}` whose abelianisations coincide.
/// Family 0 holds the two sporadic cases.
pub fn family_instances(n: usize) -> Vec<(u8, usize, usize)> {
    let mut out = Vec::new();
    match n {
        22 => out.push((0, 4, 5)),
        46 => out.push((0, 7, 11)),
        _ => {}
    }
    if n % 16 == 0 {
        out.push((1, n / 4, n / 2));
    }
    if n % 18 == 0 {
        out.push((2, n / 3 - 2, n / 3 + 3));
    }
    if n % 50 == 20 || n % 50 == 30 {
        out.push((3, n / 5, n / 5 + 1));
    }
    if n % 50 == 0 || n % 50 == 40 {
        out.push((4, n / 5, 2 * n / 5));
    }
    if n % 50 == 10 {
        out.push((5, n / 5 + 1, 2 * n / 5 + 1));
    }
    let (two, rest) = (n.trailing_zeros() as usize, n >> n.trailing_zeros());
    let mut three = 0;
    let mut r = rest;
    while r % 3 == 0 {
        r /= 3;
        three += 1;
    }
    if r == 1 && three == 1 && two >= 4 {
        if two % 2 == 1 {
            out.push((6, n / 12 + 1, 5 * n / 12));
        } else {
            out.push((7, n / 12, 5 * n / 12 + 1));
        }
    }
    if r == 1 && three >= 2 && two >= 4 {
        out.push((8, n / 12, 5 * n / 12));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollisionRecord {
    pub n: usize,
    pub first: GroupParams,
    pub second: GroupParams,
    pub invariants: AbelianInvariants,
    /// Matching family, `None` when the pair lies outside every family.
    pub family: Option<u8>,
}

/// Orbits for `n` that meet a vector with none of (B),(C),(D).
fn bcd_free_orbits(n: usize) -> Result<Vec<OrbitClass>> {
    Ok(orbits(n)?.into_iter().filter(OrbitClass::meets_bcd_free).collect())
}

/// Pairs of distinct orbits with equal abelianisation at one `n`.
pub fn collisions_at(n: usize) -> Result<Vec<CollisionRecord>> {
    let orbs = bcd_free_orbits(n)?;
    let mut by_ab: BTreeMap<AbelianInvariants, Vec<usize>> = BTreeMap::new();
    for (i, o) in orbs.iter().enumerate() {
        by_ab.entry(abelianisation(&o.canonical_params())).or_default().push(i);
    }
    let families = family_instances(n);
    let mut out = Vec::new();
    for (inv, idx) in by_ab {
        for (x, &i) in idx.iter().enumerate() {
            for &j in &idx[x + 1..] {
                let (a, b) = (&orbs[i], &orbs[j]);
                let family = families.iter().find_map(|&(f, u, v)| {
                    let hit = (a.contains(1, u) && b.contains(1, v))
                        || (a.contains(1, v) && b.contains(1, u));
                    hit.then_some(f)
                });
                out.push(CollisionRecord {
                    n,
                    first: a.preferred_rep(),
                    second: b.preferred_rep(),
                    invariants: inv.clone(),
                    family,
                });
            }
        }
    }
    out.sort_by_key(|c| (c.first, c.second));
    Ok(out)
}

/// Collisions for every `n` in `n_lo..=n_hi`.
pub fn ab_collision_scan(n_lo: usize, n_hi: usize) -> Result<Vec<CollisionRecord>> {
    if n_lo < 3 || n_lo > n_hi {
        return Err(domain!("bad range {n_lo}..={n_hi}"));
    }
    let mut out = Vec::new();
    for n in n_lo..=n_hi {
        out.extend(collisions_at(n)?);
    }
    Ok(out)
}

/// Family instances at `n` whose two pairs lie in distinct orbits that both
/// meet a (B),(C),(D)-free vector, i.e. those the scan can see.
pub fn expected_family_instances(n: usize) -> Result<Vec<(u8, usize, usize)>> {
    let orbs = orbits(n)?;
    let find = |l: usize| orbs.iter().position(|o| o.contains(1, l));
    Ok(family_instances(n)
        .into_iter()
        .filter(|&(_, a, b)| match (find(a), find(b)) {
            (Some(i), Some(j)) => i != j && orbs[i].meets_bcd_free() && orbs[j].meets_bcd_free(),
            _ => false,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(n: usize, k: i64, l: i64) -> GroupParams {
        GroupParams::standard(n, k, l).unwrap()
    }

    #[test]
    fn move_examples() {
        assert_eq!(apply_move(&gp(14, 1, 3), IsoMove::M2).unwrap(), gp(14, 3, 1));
        assert_eq!(apply_move(&gp(8, 1, 3), IsoMove::M4).unwrap(), gp(8, 1, 6));
        assert_eq!(apply_move(&gp(14, 1, 3), IsoMove::M5(5)).unwrap(), gp(14, 5, 1));
        assert!(orbit(&gp(14, 1, 3)).unwrap().contains(5, 1));
        assert!(apply_move(&gp(14, 1, 3), IsoMove::M5(7)).is_err());
        assert_eq!(apply_move(&gp(8, 1, 3), IsoMove::M1).unwrap(), gp(8, 2, 7));
        assert_eq!(apply_move(&gp(8, 1, 3), IsoMove::M3).unwrap(), gp(8, 6, 5));
    }

    #[test]
    fn orbit_examples() {
        assert!(orbit(&gp(4, 1, 3)).unwrap().contains(1, 2));
        let o = orbit(&gp(17, 1, 4)).unwrap();
        assert!(o.contains(1, 5) && o.contains(1, 7));
        assert!(orbit(&gp(25, 1, 10)).unwrap().contains(1, 11));
        assert_eq!(canonical_rep(&gp(4, 1, 3)).unwrap(), gp(4, 1, 2));
        assert_eq!(canonical_rep(&gp(7, 3, 1)).unwrap(), gp(7, 1, 3));
    }

    #[test]
    fn half_case_orbit_holds_all_fff_t() {
        let o = orbit(&gp(10, 1, 4)).unwrap();
        for p in GroupParams::all_standard(10) {
            let v = ConditionVector::evaluate(&p);
            if !v.a && !v.b && !v.c && v.d {
                assert!(o.contains(p.k(), p.l()), "{p}");
            }
        }
    }

    #[test]
    fn one_l_reduction() {
        let check = |p: GroupParams| {
            let q = reduce_to_one_l(&p).unwrap().unwrap();
            assert_eq!(q.k(), 1);
            assert!(orbit(&p).unwrap().contains(q.k(), q.l()));
        };
        check(gp(15, 3, 7));
        check(gp(12, 2, 3));
        // k, l and k-l pick up the primes 2, 3 and 5 of 30 in turn.
        assert_eq!(reduce_to_one_l(&gp(30, 8, 3)).unwrap(), None);
    }

    #[test]
    fn l_set_examples() {
        assert_eq!(l_set(8).unwrap(), Some(vec![2, 3, 4]));
        assert_eq!(l_set(10).unwrap(), Some(vec![2, 4, 5]));
        assert_eq!(l_set(13).unwrap(), Some(vec![2, 3, 4]));
        assert_eq!(l_set(4).unwrap(), Some(vec![2]));
        assert_eq!(l_set(6).unwrap(), None);
        assert!(l_set(3).is_err());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(4).unwrap().f_upper, 1);
        let reps = |n| -> Vec<usize> {
            enumerate(n).unwrap().classes.iter().map(|c| c.orbit.preferred_rep().l()).collect()
        };
        assert_eq!(reps(7), vec![2, 3]);
        assert_eq!(reps(8), vec![2, 3, 4]);
        let mut r24 = reps(24);
        r24.sort_unstable();
        assert_eq!(r24, (2..=12).collect::<Vec<_>>());
        let r = enumerate(24).unwrap();
        assert!(r.f_lower <= r.f_upper);
        assert_eq!(r.l_set_verified, Some(true));
    }

    #[test]
    fn partition_examples() {
        let r = condition_partition(20).unwrap();
        let fff_t = &r.cells[&cv("FFFT")];
        assert_eq!(fff_t.len(), 1);
        assert!(orbit(&fff_t[0]).unwrap().contains(1, 9));
        let r = condition_partition(21).unwrap();
        assert!(r.cells[&cv("TFFF")].iter().any(|p| orbit(p).unwrap().contains(1, 5)));
        assert!(r.decomposition.as_ref().unwrap().holds());
        for n in [13, 25, 30] {
            assert!(!condition_partition(n).unwrap().cells.contains_key(&cv("TTTT")));
        }
    }

    #[test]
    fn family_lists() {
        assert_eq!(family_instances(22), vec![(0, 4, 5)]);
        assert_eq!(family_instances(48), vec![(1, 12, 24), (7, 4, 21)]);
        assert_eq!(family_instances(96), vec![(1, 24, 48), (6, 9, 40)]);
        assert_eq!(family_instances(144), vec![(1, 36, 72), (2, 46, 51), (8, 12, 60)]);
        assert_eq!(family_instances(60), vec![(5, 13, 25)]);
    }

    #[test]
    fn collision_examples() {
        let c = collisions_at(22).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].first.l(), c[0].second.l(), c[0].family), (4, 5, Some(0)));
        let c = collisions_at(32).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].first.l(), c[0].second.l()), (8, 16));
        let c = collisions_at(48).unwrap();
        let pairs: Vec<_> = c.iter().map(|r| (r.first.l(), r.second.l())).collect();
        assert_eq!(c.len(), 2, "{pairs:?}");
        assert!(c.iter().all(|r| r.family.is_some()));
    }
}
