//! Closed-form abelianisation orders for special parameter families.
//!
//! Every formula here is an independent route to a number the Smith normal
//! form also produces; the tests and the verification suites compare them.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::fixed::Precision;
use super::{abelianisation, min_generators, AbelianInvariants, Order};
use crate::error::{violation, Result};
use crate::params::{self, ConditionVector, GroupParams};

/// Lucas numbers `L_0 = 2, L_1 = 1, L_{j+2} = L_{j+1} + L_j`.
pub fn lucas(j: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::from(2), BigInt::one());
    for _ in 0..j {
        let c = &a + &b;
        a = core::mem::replace(&mut b, c);
    }
    a
}

fn neg_one_pow(m: usize) -> i32 {
    if m % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `2^m - (-1)^m`.
pub fn power_alternating(m: usize) -> BigInt {
    params::two_pow_alternating(m)
}

/// Sign in front of `(-1)^{n/2}` in `3(L_{n/2} + 1 ± (-1)^{n/2})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LucasSign {
    Minus,
    Plus,
}

/// `3(L_m + 1 ± (-1)^m)` with `m = n/2`, for `(n,6) = 2`.
///
/// With [`LucasSign::Plus`] this is `|Γ_n(1,n/2-1)^ab|`. The `Minus` variant
/// differs from it by `6` and is kept so the two can be compared side by side.
pub fn lucas_order(n: usize, sign: LucasSign) -> Option<BigInt> {
    if num_integer::gcd(n, 6) != 2 {
        return None;
    }
    let m = n / 2;
    let s = neg_one_pow(m);
    let s = if sign == LucasSign::Plus { s } else { -s };
    Some((lucas(m) + 1 + s) * 3)
}

/// `|(2^m - (-1)^m)(2^m + 1 - (-√2)^m · 2cos((n-8)π/16))|` with `m = n/4`.
/// Zero means the abelianisation is infinite.
pub fn cosine_quarter_order(n: usize) -> Result<Option<Order>> {
    if n % 4 != 0 || n < 4 {
        return Ok(None);
    }
    let m = n / 4;
    let value = evaluate_to_integer(|prec| {
        let x = prec.int(power_alternating(m));
        let y = prec.int(BigInt::from(2).pow(m as u32) + 1u32)
            - prec.mul(&neg_sqrt_pow(prec, 2, m), &(prec.cos_pi_rational(n as i64 - 8, 16) * 2));
        prec.mul(&x, &y)
    })?;
    Ok(Some(Order::from_determinant(value)))
}

/// `|(2^m - (-1)^m)(3^m + 1 - (-√3)^m · 2cos((n-12)π/36))
///  (2 - (-1)^m · 2cos((n-12)π/18))|` with `m = n/6`.
pub fn cosine_sixth_order(n: usize) -> Result<Option<Order>> {
    if n % 6 != 0 || n < 6 {
        return Ok(None);
    }
    let m = n / 6;
    let value = evaluate_to_integer(|prec| {
        let x = prec.int(power_alternating(m));
        let y = prec.int(BigInt::from(3).pow(m as u32) + 1u32)
            - prec.mul(&neg_sqrt_pow(prec, 3, m), &(prec.cos_pi_rational(n as i64 - 12, 36) * 2));
        let z = prec.int(2) - prec.cos_pi_rational(n as i64 - 12, 18) * (2 * neg_one_pow(m));
        prec.mul(&prec.mul(&x, &y), &z)
    })?;
    Ok(Some(Order::from_determinant(value)))
}

/// `(-√s)^m` in fixed point.
fn neg_sqrt_pow(prec: Precision, s: u64, m: usize) -> BigInt {
    let whole = prec.int(BigInt::from(s).pow((m / 2) as u32) * neg_one_pow(m));
    if m % 2 == 0 {
        whole
    } else {
        prec.mul(&whole, &prec.sqrt_int(s))
    }
}

const START_BITS: u32 = 128;
const MAX_BITS: u32 = 1 << 14;

/// Evaluates at rising precision until the result is within `1e-6` of an
/// integer; failing that at the precision cap is an error.
fn evaluate_to_integer(f: impl Fn(Precision) -> BigInt) -> Result<BigInt> {
    let mut bits = START_BITS;
    while bits <= MAX_BITS {
        let prec = Precision(bits);
        let (n, close) = prec.round(&f(prec));
        if close {
            return Ok(n.abs());
        }
        bits *= 2;
    }
    Err(violation!("cosine formula not within 1e-6 of an integer at {MAX_BITS} bits"))
}

/// Which closed form produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFormKind {
    /// `(1, n/2-1)` with `(n,6) = 2`, or any triple with conditions `FFFT`.
    Lucas,
    /// `(1, n/2)`: cyclic of order `2^{n/2} - (-1)^{n/2}`.
    PowerHalf,
    /// `(1, n/4)` cosine product.
    CosineQuarter,
    /// `(1, n/6)` cosine product.
    CosineSixth,
    /// Conditions `FFT`: `Z_α`, `α = 3(2^{n/3} - (-1)^{n/3})`.
    Metacyclic,
    /// Conditions `TFT`: `Z^2 ⊕ Z_γ`, `γ = (2^{n/3} - (-1)^{n/3})/3`.
    FreeProductGamma,
    /// Conditions `TFF` at `n = 18`: `Z^2 ⊕ Z_19`.
    FreeProductZ19,
    /// Conditions `FTF`: `Z_3`.
    CyclicZ3,
    /// Conditions `TT·`: `Z^2`.
    FreeZZ,
}

impl ClosedFormKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClosedFormKind::Lucas => "lucas",
            ClosedFormKind::PowerHalf => "power-half",
            ClosedFormKind::CosineQuarter => "cosine-quarter",
            ClosedFormKind::CosineSixth => "cosine-sixth",
            ClosedFormKind::Metacyclic => "metacyclic-alpha",
            ClosedFormKind::FreeProductGamma => "free-product-gamma",
            ClosedFormKind::FreeProductZ19 => "free-product-19",
            ClosedFormKind::CyclicZ3 => "cyclic-3",
            ClosedFormKind::FreeZZ => "free-rank-2",
        }
    }
}

/// A closed-form prediction. `torsion` is the predicted torsion order when
/// the formula determines it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub kind: ClosedFormKind,
    pub order: Order,
    pub torsion: Option<BigInt>,
}

impl ClosedForm {
    fn finite(kind: ClosedFormKind, v: BigInt) -> Self {
        Self { kind, order: Order::Finite(v.clone()), torsion: Some(v) }
    }

    fn from_order(kind: ClosedFormKind, order: Order) -> Self {
        let torsion = match &order {
            Order::Finite(v) => Some(v.clone()),
            Order::Infinite => None,
        };
        Self { kind, order, torsion }
    }

    fn infinite(kind: ClosedFormKind, torsion: BigInt) -> Self {
        Self { kind, order: Order::Infinite, torsion: Some(torsion) }
    }

    /// Whether the computed invariants agree with this prediction.
    pub fn agrees_with(&self, inv: &AbelianInvariants) -> bool {
        inv.order() == self.order
            && self.torsion.as_ref().is_none_or(|t| inv.torsion_order() == *t)
    }
}

/// Every closed form that applies to `p`, most specific first.
pub fn closed_forms(p: &GroupParams) -> Result<Vec<ClosedForm>> {
    p.require_standard()?;
    let (n, k, l) = (p.n(), p.k(), p.l());
    let mut out = Vec::new();
    if k == 1 {
        if n % 2 == 0 && l == n / 2 - 1 {
            if let Some(v) = lucas_order(n, LucasSign::Plus) {
                out.push(ClosedForm::finite(ClosedFormKind::Lucas, v));
            }
        }
        if n % 2 == 0 && l == n / 2 {
            out.push(ClosedForm::finite(ClosedFormKind::PowerHalf, power_alternating(n / 2)));
        }
        if n % 4 == 0 && l == n / 4 {
            if let Some(o) = cosine_quarter_order(n)? {
                out.push(ClosedForm::from_order(ClosedFormKind::CosineQuarter, o));
            }
        }
        if n % 6 == 0 && l == n / 6 {
            if let Some(o) = cosine_sixth_order(n)? {
                out.push(ClosedForm::from_order(ClosedFormKind::CosineSixth, o));
            }
        }
    }
    let cv = ConditionVector::evaluate(p);
    let have_lucas = out.iter().any(|f| f.kind == ClosedFormKind::Lucas);
    let by_conditions = match (cv.a, cv.b, cv.c) {
        (true, true, _) => Some(ClosedForm::infinite(ClosedFormKind::FreeZZ, BigInt::one())),
        (false, true, false) => Some(ClosedForm::finite(ClosedFormKind::CyclicZ3, BigInt::from(3))),
        (false, false, true) => {
            let alpha = params::alpha(n).expect("C without A forces 3 | n");
            Some(ClosedForm::finite(ClosedFormKind::Metacyclic, alpha))
        }
        (true, false, true) => {
            let gamma = params::gamma(n).expect("A forces 3 | n");
            Some(ClosedForm::infinite(ClosedFormKind::FreeProductGamma, gamma))
        }
        (true, false, false) if n == 18 => {
            Some(ClosedForm::infinite(ClosedFormKind::FreeProductZ19, BigInt::from(19)))
        }
        // Any FFFT triple is isomorphic to Γ_n(1,n/2-1).
        (false, false, false) if cv.d && !have_lucas => {
            let v = lucas_order(n, LucasSign::Plus).expect("FFFT forces (n,6) = 2");
            Some(ClosedForm::finite(ClosedFormKind::Lucas, v))
        }
        _ => None,
    };
    out.extend(by_conditions);
    Ok(out)
}

/// The most specific closed form for `p`, if any.
pub fn closed_form_order(p: &GroupParams) -> Result<Option<ClosedForm>> {
    Ok(closed_forms(p)?.into_iter().next())
}

/// `d(Γ_n(1,n/2-1)^ab)` against the pattern `1, 2, 3` for
/// `(n,16) = 2`, `(n,16) ∈ {4,16}`, `(n,16) = 8`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DGammaRow {
    pub n: usize,
    pub expected: usize,
    pub observed: usize,
    pub invariants: AbelianInvariants,
}

impl DGammaRow {
    pub fn matches(&self) -> bool {
        self.expected == self.observed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DGammaReport {
    pub rows: Vec<DGammaRow>,
}

impl DGammaReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &DGammaRow> {
        self.rows.iter().filter(|r| !r.matches())
    }
}

/// Expected minimum generator count for `(n,6) = 2`, `n ≥ 8`.
pub fn dgamma_expected(n: usize) -> Option<usize> {
    if n < 8 || num_integer::gcd(n, 6) != 2 {
        return None;
    }
    match num_integer::gcd(n, 16) {
        2 => Some(1),
        4 | 16 => Some(2),
        8 => Some(3),
        _ => None,
    }
}

pub fn check_dgamma_conjecture(n_max: usize) -> DGammaReport {
    let rows = (8..=n_max)
        .filter_map(|n| {
            let expected = dgamma_expected(n)?;
            let p = GroupParams::standard(n, 1, n as i64 / 2 - 1).ok()?;
            let invariants = abelianisation(&p);
            Some(DGammaRow { n, expected, observed: min_generators(&invariants), invariants })
        })
        .collect();
    DGammaReport { rows }
}

/// `Γ_{2^t}(1, 2^{t-1}-1)^ab` against `Z_3 ⊕ Z_{L_j}^2` for a candidate `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerOfTwoCheck {
    pub t: u32,
    pub invariants: AbelianInvariants,
    pub lucas_index: usize,
    pub predicted: AbelianInvariants,
}

impl PowerOfTwoCheck {
    pub fn holds(&self) -> bool {
        self.invariants == self.predicted
    }
}

/// Compares with `Z_3 ⊕ Z_{L_j}^2`, `j = lucas_index(t)`.
pub fn check_power_of_two(t: u32, lucas_index: impl Fn(u32) -> usize) -> Result<PowerOfTwoCheck> {
    if t < 4 {
        return Err(crate::error::domain!("power-of-two family needs t >= 4, got {t}"));
    }
    let n = 1usize << t;
    let p = GroupParams::standard(n, 1, (n / 2 - 1) as i64)?;
    let invariants = abelianisation(&p);
    let j = lucas_index(t);
    let lj = lucas(j);
    let predicted = AbelianInvariants::new(0, alloc::vec![BigInt::from(3), lj.clone(), lj]);
    Ok(PowerOfTwoCheck { t, invariants, lucas_index: j, predicted })
}
