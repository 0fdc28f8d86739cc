//! Kernels of maps onto finite abelian groups, by Reidemeister–Schreier.
//!
//! For `φ: G → A` onto a finite abelian group the cosets of `ker φ` are the
//! elements of `A`. A breadth-first spanning tree of the Cayley graph of `A`
//! gives a Schreier transversal, and the kernel is generated by
//! `y_{c,j} = t_c x_j t_{c+φ(x_j)}^{-1}` subject to every base relator read
//! from every coset. Tree generators are trivial.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::abelian::{
    abelianisation, coordinates, invariants_of_sparse, relation_matrix, AbelianInvariants, Order,
};
use crate::classify::classify_params;
use crate::error::{domain, violation, Result};
use crate::iso::orbit;
use crate::params::GroupParams;

/// `+(j+1)` is `x_j`, `-(j+1)` is `x_j^-1`.
pub type Letter = i32;

fn gen_of(a: Letter) -> usize {
    a.unsigned_abs() as usize - 1
}

fn letter(j: usize, positive: bool) -> Letter {
    let a = j as Letter + 1;
    if positive {
        a
    } else {
        -a
    }
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &a in word {
        if out.last() == Some(&-a) {
            out.pop();
        } else {
            out.push(a);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePresentation {
    generator_count: usize,
    relators: Vec<Vec<Letter>>,
}

impl FinitePresentation {
    /// Freely reduces the relators and checks every letter.
    pub fn new(generator_count: usize, relators: Vec<Vec<Letter>>) -> Result<Self> {
        for r in &relators {
            if let Some(&a) = r.iter().find(|&&a| a == 0 || gen_of(a) >= generator_count) {
                return Err(domain!("letter {a} outside {generator_count} generators"));
            }
        }
        let relators = relators.iter().map(|r| free_reduce(r)).collect();
        Ok(Self { generator_count, relators })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Vec<Letter>] {
        &self.relators
    }

    /// Invariants of the abelianisation.
    pub fn abelianisation(&self) -> AbelianInvariants {
        let rows: Vec<Vec<(u32, i64)>> = self.relators.iter().map(|r| exponent_row(r)).collect();
        invariants_of_sparse(&rows, self.generator_count)
    }
}

fn exponent_row(word: &[Letter]) -> Vec<(u32, i64)> {
    let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
    for &a in word {
        *acc.entry(gen_of(a) as u32).or_default() += a.signum() as i64;
    }
    acc.into_iter().filter(|(_, v)| *v != 0).collect()
}

/// `n` generators and the relators `x_i x_{i+k} x_{i+l}`.
pub fn to_presentation(p: &GroupParams) -> Result<FinitePresentation> {
    p.require_standard()?;
    let rels = (0..p.n())
        .map(|i| {
            [0, p.k(), p.l()].iter().map(|&o| letter(p.add(i, o as i64), true)).collect()
        })
        .collect();
    FinitePresentation::new(p.n(), rels)
}

/// A homomorphism onto `Z_{m_1} ⊕ ... ⊕ Z_{m_r}`, given on generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientMap {
    pub moduli: Vec<u64>,
    /// `images[j][t]` is coordinate `t` of the image of generator `j`.
    pub images: Vec<Vec<u64>>,
}

impl QuotientMap {
    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    fn encode(&self, v: &[u64]) -> usize {
        let mut idx = 0u64;
        for (x, m) in v.iter().zip(&self.moduli) {
            idx = idx * m + x;
        }
        idx as usize
    }

    fn decode(&self, mut idx: usize) -> Vec<u64> {
        let mut v = vec![0; self.moduli.len()];
        for t in (0..self.moduli.len()).rev() {
            let m = self.moduli[t] as usize;
            v[t] = (idx % m) as u64;
            idx /= m;
        }
        v
    }

    /// Coset reached from coset `c` by the letter `a`.
    fn act(&self, c: usize, a: Letter) -> usize {
        let mut v = self.decode(c);
        let img = &self.images[gen_of(a)];
        for t in 0..v.len() {
            let m = self.moduli[t];
            v[t] = if a > 0 { (v[t] + img[t]) % m } else { (v[t] + m - img[t]) % m };
        }
        self.encode(&v)
    }

    /// Every relator maps to zero and the images generate the target.
    pub fn validate(&self, fp: &FinitePresentation) -> Result<()> {
        if self.images.len() != fp.generator_count()
            || self.images.iter().any(|v| v.len() != self.moduli.len())
        {
            return Err(domain!("map has the wrong shape for the presentation"));
        }
        if self.moduli.iter().any(|&m| m == 0) {
            return Err(domain!("moduli must be positive"));
        }
        for r in fp.relators() {
            if r.iter().fold(0, |c, &a| self.act(c, a)) != 0 {
                return Err(domain!("relator {r:?} does not map to zero"));
            }
        }
        if self.reachable().len() as u64 != self.order() {
            return Err(domain!("map is not surjective"));
        }
        Ok(())
    }

    fn reachable(&self) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for j in 0..self.images.len() {
                let d = self.act(c, letter(j, true));
                if seen.insert(d) {
                    queue.push_back(d);
                }
            }
        }
        seen
    }
}

/// A homomorphism onto `Z_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicQuotientMap {
    pub d: u64,
    pub images: Vec<u64>,
}

impl CyclicQuotientMap {
    pub fn to_map(&self) -> QuotientMap {
        QuotientMap { moduli: vec![self.d], images: self.images.iter().map(|&x| vec![x]).collect() }
    }

    /// `images[i] + images[i+k] + images[i+l] ≡ 0 mod d` for every `i`.
    pub fn sums_vanish(&self, p: &GroupParams) -> bool {
        (0..p.n()).all(|i| {
            let s = self.images[i] + self.images[p.add(i, p.k() as i64)] + self.images[p.add(i, p.l() as i64)];
            s % self.d == 0
        })
    }
}

impl fmt::Display for CyclicQuotientMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{} {:?}", self.d, self.images)
    }
}

/// Generator images of `Hom(Γ, Z_d)`, enumerated from the abelianisation.
fn homs_to_cyclic(p: &GroupParams, d: u64) -> Result<Vec<Vec<u64>>> {
    let coords = coordinates(&relation_matrix(p), Some(&BigInt::from(d)));
    // Allowed values of each coordinate: multiples of d / gcd(d, e_t).
    let steps: Vec<u64> = coords
        .moduli
        .iter()
        .map(|e| if e.is_zero() { 1 } else { d / e.gcd(&BigInt::from(d)).to_u64().expect("divides d") })
        .collect();
    let choices: Vec<u64> = steps.iter().map(|s| d / s).collect();
    let total = choices.iter().try_fold(1u64, |acc, &c| acc.checked_mul(c));
    if total.is_none_or(|t| t > 1 << 20) {
        return Err(domain!("Hom({p}, Z_{d}) is too large to enumerate"));
    }
    let images: Vec<Vec<u64>> = coords
        .images
        .iter()
        .map(|row| row.iter().map(|x| x.mod_floor(&BigInt::from(d)).to_u64().expect("< d")).collect())
        .collect();
    let mut out = Vec::new();
    let mut counter = vec![0u64; steps.len()];
    loop {
        let v: Vec<u64> = counter.iter().zip(&steps).map(|(c, s)| c * s).collect();
        out.push(images.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b % d).sum::<u64>() % d).collect());
        let mut t = 0;
        loop {
            if t == counter.len() {
                return Ok(out);
            }
            counter[t] += 1;
            if counter[t] < choices[t] {
                break;
            }
            counter[t] = 0;
            t += 1;
        }
    }
}

/// Surjections `Γ → Z_d` up to automorphisms of `Z_d`, each validated.
pub fn cyclic_quotients(p: &GroupParams, d: u64) -> Result<Vec<CyclicQuotientMap>> {
    if d < 2 {
        return Err(domain!("modulus {d} is below 2"));
    }
    let fp = to_presentation(p)?;
    let units: Vec<u64> = (1..d).filter(|u| u.gcd(&d) == 1).collect();
    let mut found = BTreeSet::new();
    for img in homs_to_cyclic(p, d)? {
        if img.iter().fold(d, |g, x| g.gcd(x)) != 1 {
            continue;
        }
        let canonical = units
            .iter()
            .map(|u| img.iter().map(|x| x * u % d).collect::<Vec<u64>>())
            .min()
            .expect("1 is a unit");
        found.insert(canonical);
    }
    let maps: Vec<CyclicQuotientMap> =
        found.into_iter().map(|images| CyclicQuotientMap { d, images }).collect();
    for m in &maps {
        m.to_map().validate(&fp)?;
        if !m.sums_vanish(p) {
            return Err(violation!("{m} does not kill the relators of {p}"));
        }
    }
    Ok(maps)
}

/// Surjections onto `Z_q ⊕ Z_q` for a prime `q`, one per kernel: pairs of
/// independent maps to `Z_q`, grouped by the plane they span.
pub fn elementary_rank2_quotients(p: &GroupParams, q: u64) -> Result<Vec<QuotientMap>> {
    let homs: Vec<Vec<u64>> = homs_to_cyclic(p, q)?
        .into_iter()
        .filter(|h| h.iter().any(|&x| x != 0))
        .collect();
    let fp = to_presentation(p)?;
    let mut planes = BTreeSet::new();
    let mut out = Vec::new();
    for (i, a) in homs.iter().enumerate() {
        for b in &homs[i + 1..] {
            let mut span: Vec<Vec<u64>> = Vec::new();
            for s in 0..q {
                for t in 0..q {
                    if s != 0 || t != 0 {
                        span.push(a.iter().zip(b).map(|(x, y)| (s * x + t * y) % q).collect());
                    }
                }
            }
            span.sort();
            span.dedup();
            if span.len() as u64 != q * q - 1 || !planes.insert(span) {
                continue;
            }
            let images = a.iter().zip(b).map(|(&x, &y)| vec![x, y]).collect();
            let map = QuotientMap { moduli: vec![q, q], images };
            map.validate(&fp)?;
            out.push(map);
        }
    }
    Ok(out)
}

/// The map `Γ → Γ^ab` when the abelianisation is finite of order at most
/// `cap`.
pub fn abelianisation_map(p: &GroupParams, cap: u64) -> Result<Option<QuotientMap>> {
    let order = match abelianisation(p).order() {
        Order::Finite(o) if o <= BigInt::from(cap) => o,
        _ => return Ok(None),
    };
    let coords = coordinates(&relation_matrix(p), Some(&order));
    let moduli: Vec<u64> = coords.moduli.iter().map(|m| m.to_u64().expect("<= cap")).collect();
    let images = coords
        .images
        .iter()
        .map(|row| row.iter().map(|x| x.to_u64().expect("reduced")).collect())
        .collect();
    let map = QuotientMap { moduli, images };
    map.validate(&to_presentation(p)?)?;
    if BigInt::from(map.order()) != order {
        return Err(violation!("abelianisation map of {p} has order {}", map.order()));
    }
    Ok(Some(map))
}

/// Choice of Schreier transversal: the spanning tree is grown by BFS from
/// coset `root`, trying generators starting at `offset`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Transversal {
    pub root: usize,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupPresentation {
    pub base_generators: usize,
    pub base_relators: usize,
    pub index: usize,
    /// All `index · base_generators` Schreier generators; `y_{c,j}` has
    /// number `c · base_generators + j`.
    pub presentation: FinitePresentation,
    /// Schreier generators on the spanning tree, trivial in the kernel.
    pub tree: Vec<usize>,
}

impl SubgroupPresentation {
    /// `g' - r' = index · (g - r)` before any simplification.
    pub fn euler_holds(&self) -> bool {
        let (g, r) = (self.base_generators as i64, self.base_relators as i64);
        let (g2, r2) =
            (self.presentation.generator_count() as i64, self.presentation.relators().len() as i64);
        g2 - r2 == self.index as i64 * (g - r)
    }

    /// Deletes tree generators, then repeatedly deletes any generator that a
    /// relator of length one declares trivial. Empty relators are dropped and
    /// the surviving generators renumbered.
    pub fn simplified(&self) -> FinitePresentation {
        let total = self.presentation.generator_count();
        let mut dead = vec![false; total];
        for &t in &self.tree {
            dead[t] = true;
        }
        let mut rels: Vec<Vec<Letter>> = self.presentation.relators().to_vec();
        loop {
            rels = rels
                .iter()
                .map(|r| free_reduce(&r.iter().copied().filter(|&a| !dead[gen_of(a)]).collect::<Vec<_>>()))
                .filter(|r| !r.is_empty())
                .collect();
            let singles: Vec<usize> = rels.iter().filter(|r| r.len() == 1).map(|r| gen_of(r[0])).collect();
            if singles.is_empty() {
                break;
            }
            for g in singles {
                dead[g] = true;
            }
        }
        let mut renumber = vec![usize::MAX; total];
        let mut next = 0;
        for g in 0..total {
            if !dead[g] {
                renumber[g] = next;
                next += 1;
            }
        }
        let rels = rels
            .iter()
            .map(|r| r.iter().map(|&a| letter(renumber[gen_of(a)], a > 0)).collect())
            .collect();
        FinitePresentation::new(next, rels).expect("renumbered letters are in range")
    }

    /// Abelianisation of the subgroup.
    pub fn abelianisation(&self) -> AbelianInvariants {
        self.simplified().abelianisation()
    }

    /// The same invariants with no simplification: every Schreier generator
    /// kept, each tree generator killed by an extra relator.
    pub fn abelianisation_unsimplified(&self) -> AbelianInvariants {
        let mut rels = self.presentation.relators().to_vec();
        rels.extend(self.tree.iter().map(|&t| vec![letter(t, true)]));
        FinitePresentation { generator_count: self.presentation.generator_count(), relators: rels }
            .abelianisation()
    }
}

/// Rewrites `fp` as a presentation of `ker q` with the default transversal.
pub fn reidemeister_schreier(fp: &FinitePresentation, q: &QuotientMap) -> Result<SubgroupPresentation> {
    reidemeister_schreier_with(fp, q, Transversal::default())
}

pub fn reidemeister_schreier_with(
    fp: &FinitePresentation,
    q: &QuotientMap,
    tr: Transversal,
) -> Result<SubgroupPresentation> {
    q.validate(fp)?;
    let index = q.order() as usize;
    let g = fp.generator_count();
    if tr.root >= index {
        return Err(domain!("root coset {} outside index {index}", tr.root));
    }
    let y = |c: usize, j: usize| c * g + j;
    // BFS spanning tree of the Cayley graph.
    let mut seen = vec![false; index];
    seen[tr.root] = true;
    let mut tree = Vec::with_capacity(index.saturating_sub(1));
    let mut queue = VecDeque::from([tr.root]);
    while let Some(c) = queue.pop_front() {
        for s in 0..g {
            let j = (s + tr.offset) % g;
            let d = q.act(c, letter(j, true));
            if !seen[d] {
                seen[d] = true;
                tree.push(y(c, j));
                queue.push_back(d);
            }
        }
    }
    let mut rels = Vec::with_capacity(index * fp.relators().len());
    for c in 0..index {
        for r in fp.relators() {
            let mut coset = c;
            let mut word = Vec::with_capacity(r.len());
            for &a in r {
                let j = gen_of(a);
                if a > 0 {
                    word.push(letter(y(coset, j), true));
                    coset = q.act(coset, a);
                } else {
                    coset = q.act(coset, a);
                    word.push(letter(y(coset, j), false));
                }
            }
            debug_assert_eq!(coset, c);
            rels.push(word);
        }
    }
    let sp = SubgroupPresentation {
        base_generators: g,
        base_relators: fp.relators().len(),
        index,
        presentation: FinitePresentation::new(index * g, rels)?,
        tree,
    };
    if !sp.euler_holds() {
        return Err(violation!("Euler characteristic of the rewritten presentation is off"));
    }
    Ok(sp)
}

/// Abelianisation of `ker q`.
pub fn kernel_abelianisation(p: &GroupParams, q: &QuotientMap) -> Result<AbelianInvariants> {
    Ok(reidemeister_schreier(&to_presentation(p)?, q)?.abelianisation())
}

/// Sorted abelianisations of the kernels of all maps onto `Z_d`.
pub fn index_kernel_multiset(p: &GroupParams, d: u64) -> Result<Vec<AbelianInvariants>> {
    let fp = to_presentation(p)?;
    let mut out = cyclic_quotients(p, d)?
        .iter()
        .map(|m| Ok(reidemeister_schreier(&fp, &m.to_map())?.abelianisation()))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// `G'/G''`, the abelianisation of the kernel of `G → G^ab`, when `G^ab` is
/// finite of order at most `index_cap`.
pub fn second_derived_quotient_ab(p: &GroupParams, index_cap: u64) -> Result<Option<AbelianInvariants>> {
    match abelianisation_map(p, index_cap)? {
        Some(map) => kernel_abelianisation(p, &map).map(Some),
        None => Ok(None),
    }
}

/// Index-9 kernels of maps onto `Z_9` or `Z_3 ⊕ Z_3`, with their
/// abelianisations.
pub fn index9_kernels(p: &GroupParams) -> Result<Vec<(QuotientMap, AbelianInvariants)>> {
    let mut maps: Vec<QuotientMap> = cyclic_quotients(p, 9)?.iter().map(|m| m.to_map()).collect();
    maps.extend(elementary_rank2_quotients(p, 3)?);
    maps.into_iter()
        .map(|m| {
            let inv = kernel_abelianisation(p, &m)?;
            Ok((m, inv))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest `|G^ab|` for which the second derived quotient is computed.
    pub index_cap: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { index_cap: 200 }
    }
}

/// The invariant that told two groups apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Structure,
    Deficiency,
    Abelianisation,
    /// One group has a normal subgroup with quotient `Z_d`, the other none.
    IndexSubgroupExistence(u64),
    /// Different multisets of kernel abelianisations for maps onto `Z_d`.
    IndexSubgroupAbelianisations(u64),
    SecondDerivedQuotient,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Structure => f.write_str("structure class"),
            Witness::Deficiency => f.write_str("deficiency"),
            Witness::Abelianisation => f.write_str("abelianisation"),
            Witness::IndexSubgroupExistence(d) => write!(f, "index-{d} subgroup existence"),
            Witness::IndexSubgroupAbelianisations(d) => write!(f, "index-{d} subgroup abelianisations"),
            Witness::SecondDerivedQuotient => f.write_str("second derived quotient"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Distinct(Witness),
    Indistinguishable,
    ProvablyIsomorphic,
}

/// Tries, in order: orbit equality, structure class, deficiency,
/// abelianisation, index 2 and 3 kernels, and the second derived quotient.
pub fn distinguish(p1: &GroupParams, p2: &GroupParams, budget: Budget) -> Result<Verdict> {
    if p1.n() != p2.n() {
        return Err(domain!("{p1} and {p2} have different n"));
    }
    if orbit(p1)?.contains(p2.k(), p2.l()) {
        return Ok(Verdict::ProvablyIsomorphic);
    }
    let (r1, r2) = (classify_params(p1)?, classify_params(p2)?);
    let (s1, s2) = (r1.signature(), r2.signature());
    if s1.0 != s2.0 {
        return Ok(Verdict::Distinct(Witness::Structure));
    }
    if s1.1 != s2.1 {
        return Ok(Verdict::Distinct(Witness::Deficiency));
    }
    if s1.2 != s2.2 {
        return Ok(Verdict::Distinct(Witness::Abelianisation));
    }
    for d in [2, 3] {
        let (q1, q2) = (cyclic_quotients(p1, d)?, cyclic_quotients(p2, d)?);
        if q1.is_empty() != q2.is_empty() {
            return Ok(Verdict::Distinct(Witness::IndexSubgroupExistence(d)));
        }
    }
    for d in [2, 3] {
        if index_kernel_multiset(p1, d)? != index_kernel_multiset(p2, d)? {
            return Ok(Verdict::Distinct(Witness::IndexSubgroupAbelianisations(d)));
        }
    }
    let a1 = second_derived_quotient_ab(p1, budget.index_cap)?;
    let a2 = second_derived_quotient_ab(p2, budget.index_cap)?;
    if let (Some(a1), Some(a2)) = (a1, a2) {
        if a1 != a2 {
            return Ok(Verdict::Distinct(Witness::SecondDerivedQuotient));
        }
    }
    Ok(Verdict::Indistinguishable)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(n: usize, k: i64, l: i64) -> GroupParams {
        GroupParams::standard(n, k, l).unwrap()
    }

    #[test]
    fn presentations() {
        let fp = to_presentation(&gp(8, 1, 3)).unwrap();
        assert_eq!(fp.generator_count(), 8);
        assert_eq!(fp.relators()[0], vec![1, 2, 4]);
        assert_eq!(fp.relators()[7], vec![8, 1, 3]);
        let fp = to_presentation(&gp(3, 1, 2)).unwrap();
        assert_eq!(fp.relators(), &[vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]]);
        assert_eq!(to_presentation(&gp(10, 1, 5)).unwrap().relators().len(), 10);
        assert!(FinitePresentation::new(2, vec![vec![3]]).is_err());
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
    }

    #[test]
    fn quotient_examples() {
        assert!(!cyclic_quotients(&gp(36, 1, 11), 2).unwrap().is_empty());
        assert!(cyclic_quotients(&gp(36, 1, 15), 2).unwrap().is_empty());
        // Z_3^3: 26 surjections, two per kernel.
        assert_eq!(cyclic_quotients(&gp(8, 1, 3), 3).unwrap().len(), 13);
        // Z_2^3: seven maps onto Z_2.
        assert_eq!(cyclic_quotients(&gp(7, 1, 3), 2).unwrap().len(), 7);
    }

    #[test]
    fn bad_maps_are_rejected() {
        let fp = to_presentation(&gp(7, 1, 3)).unwrap();
        let q = QuotientMap { moduli: vec![3], images: vec![vec![1]; 7] };
        assert!(reidemeister_schreier(&fp, &q).is_ok());
        let q = QuotientMap { moduli: vec![2], images: vec![vec![1]; 7] };
        assert!(reidemeister_schreier(&fp, &q).is_err());
    }

    #[test]
    fn trivial_map_is_identity_rewriting() {
        let p = gp(8, 1, 3);
        let fp = to_presentation(&p).unwrap();
        let q = QuotientMap { moduli: vec![1], images: vec![vec![0]; 8] };
        let sp = reidemeister_schreier(&fp, &q).unwrap();
        assert_eq!(sp.index, 1);
        assert!(sp.tree.is_empty());
        assert_eq!(sp.presentation, fp);
        assert_eq!(sp.abelianisation(), abelianisation(&p));
    }

    #[test]
    fn simplification_preserves_abelianisation() {
        for (n, k, l) in [(7, 1, 3), (8, 1, 3), (10, 1, 4), (9, 1, 3)] {
            let p = gp(n, k, l);
            let fp = to_presentation(&p).unwrap();
            for d in [2, 3] {
                for m in cyclic_quotients(&p, d).unwrap() {
                    let sp = reidemeister_schreier(&fp, &m.to_map()).unwrap();
                    assert_eq!(sp.abelianisation(), sp.abelianisation_unsimplified(), "{p} {m}");
                }
            }
        }
    }

    #[test]
    fn second_derived_cap() {
        assert_eq!(second_derived_quotient_ab(&gp(6, 1, 2), 200).unwrap(), None);
        assert!(second_derived_quotient_ab(&gp(10, 1, 5), 200).unwrap().is_some());
        assert_eq!(second_derived_quotient_ab(&gp(10, 1, 5), 10).unwrap(), None);
    }
}
