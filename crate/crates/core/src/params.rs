//! Parameter triples, their normalisation, the (A),(B),(C),(D) congruence
//! conditions, and the coarse structure classification keyed by (A,B,C).

use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};

use crate::error::{domain, Error, Result};

/// The triple `(n, k, l)` with `k` and `l` reduced into `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupParams {
    n: usize,
    k: usize,
    l: usize,
}

impl GroupParams {
    /// Builds a triple, reducing `k` and `l` modulo `n`. Requires `n >= 1`.
    pub fn new(n: usize, k: i64, l: i64) -> Result<Self> {
        if n == 0 {
            return Err(domain!("n must be positive"));
        }
        Ok(Self { n, k: reduce(k, n), l: reduce(l, n) })
    }

    /// Builds a triple and insists it is standard.
    pub fn standard(n: usize, k: i64, l: i64) -> Result<Self> {
        let p = Self::new(n, k, l)?;
        p.require_standard()?;
        Ok(p)
    }

    pub(crate) fn from_reduced(n: usize, k: usize, l: usize) -> Self {
        debug_assert!(k < n && l < n);
        Self { n, k, l }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// `n >= 3`, `1 <= k,l < n`, `k != l` and `gcd(n,k,l) = 1`.
    pub fn is_standard(&self) -> bool {
        self.n >= 3
            && self.k != 0
            && self.l != 0
            && self.k != self.l
            && self.n.gcd(&self.k).gcd(&self.l) == 1
    }

    pub fn require_standard(&self) -> Result<()> {
        if self.is_standard() {
            Ok(())
        } else {
            Err(domain!("{self} is not a standard parameter triple"))
        }
    }

    /// Iterates over every standard triple with the given `n`, ordered by `(k, l)`.
    pub fn all_standard(n: usize) -> impl Iterator<Item = GroupParams> {
        (1..n)
            .flat_map(move |k| (1..n).map(move |l| GroupParams { n, k, l }))
            .filter(|p| p.is_standard())
    }

    /// Index arithmetic modulo `n`.
    pub fn add(&self, a: usize, b: i64) -> usize {
        reduce(a as i64 + b, self.n)
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.k, self.l)
    }
}

pub(crate) fn reduce(x: i64, n: usize) -> usize {
    x.rem_euclid(n as i64) as usize
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizationKind {
    Standard,
    /// `Γ_n(k,l)` is the free product of `copies` copies of `Γ_{n/d}(k/d, l/d)`.
    FreeProduct { copies: usize, inner: GroupParams },
    /// `k = 0`, `l = 0` or `k = l` after the gcd reduction.
    FiniteCyclic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationResult {
    pub kind: NormalizationKind,
    pub params: GroupParams,
}

pub fn normalize(n: i64, k: i64, l: i64) -> Result<NormalizationResult> {
    if n < 3 {
        return Err(domain!("n = {n} is below 3"));
    }
    let params = GroupParams::new(n as usize, k, l)?;
    let (n, k, l) = (params.n, params.k, params.l);
    let d = n.gcd(&k).gcd(&l);
    let kind = if d > 1 {
        let inner = GroupParams { n: n / d, k: k / d, l: l / d };
        NormalizationKind::FreeProduct { copies: d, inner }
    } else if k == 0 || l == 0 || k == l {
        NormalizationKind::FiniteCyclic
    } else {
        NormalizationKind::Standard
    };
    Ok(NormalizationResult { kind, params })
}

/// The four congruence conditions of a parameter triple.
///
/// These are properties of the triple, not of the group: isomorphic groups
/// can come from triples with different vectors (for instance `Γ_6(1,2)` and
/// `Γ_6(1,5)` are both `Z*Z`), so a vector never certifies isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConditionVector {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
}

impl ConditionVector {
    pub const fn new(a: bool, b: bool, c: bool, d: bool) -> Self {
        Self { a, b, c, d }
    }

    /// Evaluates the congruences on any triple, standard or not.
    pub fn evaluate(p: &GroupParams) -> Self {
        let n = p.n as i64;
        let (k, l) = (p.k as i64, p.l as i64);
        let zero = |x: i64| x.rem_euclid(n) == 0;
        Self {
            a: n % 3 == 0 && (k + l) % 3 == 0,
            b: zero(k + l) || zero(2 * l - k) || zero(2 * k - l),
            c: zero(3 * l) || zero(3 * k) || zero(3 * (l - k)),
            d: zero(2 * (k + l)) || zero(2 * (2 * l - k)) || zero(2 * (2 * k - l)),
        }
    }

    /// All sixteen vectors in `FFFF, FFFT, ..., TTTT` order.
    pub fn all() -> impl Iterator<Item = ConditionVector> {
        (0..16u8).map(|bits| Self {
            a: bits & 8 != 0,
            b: bits & 4 != 0,
            c: bits & 2 != 0,
            d: bits & 1 != 0,
        })
    }

    /// None of (B), (C), (D) hold.
    pub fn bcd_free(&self) -> bool {
        !self.b && !self.c && !self.d
    }
}

impl fmt::Display for ConditionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for flag in [self.a, self.b, self.c, self.d] {
            f.write_str(if flag { "T" } else { "F" })?;
        }
        Ok(())
    }
}

impl FromStr for ConditionVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        if bytes.len() != 4 {
            return Err(domain!("condition vector must have four letters, got {s:?}"));
        }
        let mut flags = [false; 4];
        for (flag, &b) in flags.iter_mut().zip(bytes) {
            *flag = match b {
                b'T' | b't' => true,
                b'F' | b'f' => false,
                _ => return Err(domain!("bad condition letter in {s:?}")),
            };
        }
        Ok(Self::new(flags[0], flags[1], flags[2], flags[3]))
    }
}

/// Condition vector of a standard triple.
pub fn conditions(p: &GroupParams) -> Result<ConditionVector> {
    p.require_standard()?;
    Ok(ConditionVector::evaluate(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StructureLabel {
    /// (F,F,F) with (D) false.
    InfiniteTorsionFree,
    /// (F,F,T): the metacyclic group `B((2^n-(-1)^n)/3, 3, 2^{2n/3}, 1)`.
    Metacyclic,
    /// (F,T,F).
    CyclicZ3,
    /// (T,F,F) with `n != 18`.
    Large,
    /// (T,F,T): `Z*Z*Z_γ`.
    FreeProductZZZgamma,
    /// (T,F,F) with `n = 18`.
    FreeProductZZZ19,
    /// (T,T,·).
    FreeZZ,
    /// (F,F,F) with (D) true; the group is `Γ_n(1,n/2-1)`.
    HalfCase,
    /// (F,T,T), which the (A,B,C) table does not cover.
    Unclassified,
}

impl StructureLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::InfiniteTorsionFree => "infinite-torsion-free",
            Self::Metacyclic => "metacyclic",
            Self::CyclicZ3 => "Z3",
            Self::Large => "large",
            Self::FreeProductZZZgamma => "Z*Z*Z_gamma",
            Self::FreeProductZZZ19 => "Z*Z*Z_19",
            Self::FreeZZ => "Z*Z",
            Self::HalfCase => "half-case",
            Self::Unclassified => "unclassified",
        }
    }

    /// Coarse group kind used when comparing two groups: labels that name the
    /// same row of the (A,B,C) table collapse to one kind.
    pub fn group_kind(&self) -> Option<StructureLabel> {
        match self {
            Self::HalfCase => Some(Self::InfiniteTorsionFree),
            Self::Unclassified => None,
            other => Some(*other),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbelianShape {
    FiniteNontrivial,
    /// `Z_α`, `α = 3(2^{n/3} - (-1)^{n/3})`.
    CyclicAlpha(BigInt),
    Z3,
    Z2PlusFinite,
    Z2PlusZ19,
    /// `Z^2 ⊕ Z_γ`, `γ = (2^{n/3} - (-1)^{n/3})/3`.
    Z2PlusZgamma(BigInt),
    Z2,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureClass {
    pub label: StructureLabel,
    pub deficiency: Option<u32>,
    pub abelianisation_shape: AbelianShape,
    /// Set for (F,F,F,T) triples: the group is isomorphic to this one.
    pub identified_with: Option<GroupParams>,
}

fn two_pow_minus_sign(e: usize) -> BigInt {
    let pow: BigInt = BigInt::from(2u8).pow(e);
    if e % 2 == 0 {
        pow - BigInt::one()
    } else {
        pow + BigInt::one()
    }
}

/// `γ = (2^{n/3} - (-1)^{n/3}) / 3`, defined when `3 | n`.
pub fn gamma(n: usize) -> Option<BigInt> {
    (n % 3 == 0).then(|| two_pow_minus_sign(n / 3) / BigInt::from(3u8))
}

/// `α = 3 (2^{n/3} - (-1)^{n/3})`, defined when `3 | n`.
pub fn alpha(n: usize) -> Option<BigInt> {
    (n % 3 == 0).then(|| two_pow_minus_sign(n / 3) * BigInt::from(3u8))
}

/// `2^m - (-1)^m`.
pub fn two_pow_alternating(m: usize) -> BigInt {
    two_pow_minus_sign(m)
}

pub fn classify_structure(p: &GroupParams, cv: &ConditionVector) -> Result<StructureClass> {
    p.require_standard()?;
    let n = p.n;
    let (label, deficiency, shape) = match (cv.a, cv.b, cv.c) {
        (false, false, false) if cv.d => {
            (StructureLabel::HalfCase, Some(0), AbelianShape::FiniteNontrivial)
        }
        (false, false, false) => {
            (StructureLabel::InfiniteTorsionFree, Some(0), AbelianShape::FiniteNontrivial)
        }
        (false, false, true) => {
            let alpha = alpha(n).ok_or_else(|| domain!("(F,F,T) with 3 not dividing {n}"))?;
            (StructureLabel::Metacyclic, Some(0), AbelianShape::CyclicAlpha(alpha))
        }
        (false, true, false) => (StructureLabel::CyclicZ3, Some(0), AbelianShape::Z3),
        (true, false, false) if n == 18 => {
            (StructureLabel::FreeProductZZZ19, Some(2), AbelianShape::Z2PlusZ19)
        }
        (true, false, false) => (StructureLabel::Large, Some(0), AbelianShape::Z2PlusFinite),
        (true, false, true) => {
            let gamma = gamma(n).ok_or_else(|| domain!("(T,F,T) with 3 not dividing {n}"))?;
            (StructureLabel::FreeProductZZZgamma, Some(2), AbelianShape::Z2PlusZgamma(gamma))
        }
        (true, true, _) => (StructureLabel::FreeZZ, Some(2), AbelianShape::Z2),
        (false, true, true) => (StructureLabel::Unclassified, None, AbelianShape::Unknown),
    };
    let identified_with = (!cv.a && !cv.b && !cv.c && cv.d && n % 2 == 0)
        .then(|| GroupParams::from_reduced(n, 1, n / 2 - 1));
    Ok(StructureClass { label, deficiency, abelianisation_shape: shape, identified_with })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn cv(s: &str) -> ConditionVector {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        let r = normalize(6, 2, 4).unwrap();
        assert_eq!(
            r.kind,
            NormalizationKind::FreeProduct { copies: 2, inner: GroupParams::new(3, 1, 2).unwrap() }
        );
        assert_eq!(normalize(7, 1, 3).unwrap().kind, NormalizationKind::Standard);
        assert_eq!(normalize(5, 2, 2).unwrap().kind, NormalizationKind::FiniteCyclic);
        assert_eq!(normalize(5, 0, 3).unwrap().kind, NormalizationKind::FiniteCyclic);
        assert!(matches!(normalize(2, 1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn negative_inputs_reduce() {
        let r = normalize(7, -6, -4).unwrap();
        assert_eq!(r.params, GroupParams::new(7, 1, 3).unwrap());
        assert_eq!(r.kind, NormalizationKind::Standard);
    }

    #[test]
    fn condition_examples() {
        let c = |n, k, l| conditions(&GroupParams::new(n, k, l).unwrap()).unwrap();
        assert_eq!(c(7, 1, 3), cv("FFFF"));
        assert_eq!(c(8, 1, 3), cv("FFFT"));
        assert_eq!(c(6, 1, 5), cv("TTTT"));
        assert!(conditions(&GroupParams::new(6, 2, 4).unwrap()).is_err());
    }

    #[test]
    fn condition_vector_text() {
        assert_eq!(cv("TFTF").to_string(), "TFTF");
        assert!("TFT".parse::<ConditionVector>().is_err());
        assert!("TFXF".parse::<ConditionVector>().is_err());
        assert_eq!(ConditionVector::all().count(), 16);
    }

    #[test]
    fn structure_examples() {
        let class = |n, k, l| {
            let p = GroupParams::new(n, k, l).unwrap();
            classify_structure(&p, &conditions(&p).unwrap()).unwrap()
        };
        let s = class(9, 1, 3);
        assert_eq!(s.label, StructureLabel::Metacyclic);
        assert_eq!(s.deficiency, Some(0));
        assert_eq!(s.abelianisation_shape, AbelianShape::CyclicAlpha(BigInt::from(27)));

        let s = class(18, 1, 8);
        assert_eq!(s.label, StructureLabel::FreeProductZZZ19);
        assert_eq!(s.deficiency, Some(2));

        assert_eq!(class(21, 1, 5).label, StructureLabel::Large);
        assert_eq!(class(12, 1, 5).abelianisation_shape, AbelianShape::Z2PlusZgamma(5.into()));

        let s = class(10, 1, 4);
        assert_eq!(s.label, StructureLabel::HalfCase);
        assert_eq!(s.identified_with, Some(GroupParams::new(10, 1, 4).unwrap()));
    }

    #[test]
    fn unclassified_combination() {
        let p = GroupParams::new(7, 1, 3).unwrap();
        let s = classify_structure(&p, &cv("FTTT")).unwrap();
        assert_eq!(s.label, StructureLabel::Unclassified);
        assert_eq!(s.deficiency, None);
    }

    #[test]
    fn alpha_gamma_values() {
        assert_eq!(gamma(12), Some(BigInt::from(5)));
        assert_eq!(gamma(15), Some(BigInt::from(11)));
        assert_eq!(gamma(21), Some(BigInt::from(43)));
        assert_eq!(gamma(24), Some(BigInt::from(85)));
        assert_eq!(alpha(9), Some(BigInt::from(27)));
        assert_eq!(gamma(10), None);
    }
}
