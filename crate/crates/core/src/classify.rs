//! One record per triple: normalisation, conditions, structure, invariants,
//! small-cancellation status and orbit representative, cross-checked.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::abelian::{abelianisation, abelianisation_of, AbelianInvariants};
use crate::error::{violation, Result};
use crate::iso::orbit;
use crate::params::{
    classify_structure, conditions, normalize, AbelianShape, ConditionVector, GroupParams,
    NormalizationKind, NormalizationResult, StructureClass, StructureLabel,
};
use crate::stargraph::{smallcanc_status, SmallCancStatus};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub params: GroupParams,
    pub normalization: NormalizationResult,
    /// Set for standard triples only, like the fields below it.
    pub conditions: Option<ConditionVector>,
    pub structure: Option<StructureClass>,
    pub deficiency: Option<u32>,
    pub invariants: AbelianInvariants,
    pub smallcanc: Option<SmallCancStatus>,
    /// Lexicographically least member of the move-orbit.
    pub canonical: Option<GroupParams>,
    pub notes: Vec<String>,
}

/// What two records must share if their groups are isomorphic.
pub type Signature = (Option<StructureLabel>, Option<u32>, AbelianInvariants);

impl ClassificationRecord {
    pub fn signature(&self) -> Signature {
        let kind = self.structure.as_ref().and_then(|s| s.label.group_kind());
        (kind, self.deficiency, self.invariants.clone())
    }

    /// Checks the record against itself: the abelianisation must have the
    /// shape the structure class predicts, and small cancellation must agree
    /// with the conditions.
    pub fn check_consistency(&self) -> Result<()> {
        let p = self.params;
        let inv = &self.invariants;
        if let (Some(s), Some(cv)) = (&self.structure, &self.conditions) {
            if !shape_matches(&s.abelianisation_shape, inv) {
                return Err(violation!("{p}: ab {inv} does not have shape {:?}", s.abelianisation_shape));
            }
            if cv.a != (inv.betti == 2) || (!cv.a && inv.betti != 0) {
                return Err(violation!("{p}: betti {} but (A) = {}", inv.betti, cv.a));
            }
            if let Some(sc) = &self.smallcanc {
                if sc.c3t6 != cv.bcd_free() {
                    return Err(violation!("{p}: C(3)-T(6) disagrees with {cv}"));
                }
            }
        }
        Ok(())
    }
}

fn shape_matches(shape: &AbelianShape, inv: &AbelianInvariants) -> bool {
    let cyclic = |b: usize, d: &BigInt| {
        let want = if *d == BigInt::from(1) { Vec::new() } else { alloc::vec![d.clone()] };
        inv.betti == b && inv.torsion == want
    };
    match shape {
        AbelianShape::FiniteNontrivial => inv.betti == 0 && !inv.torsion.is_empty(),
        AbelianShape::CyclicAlpha(a) => cyclic(0, a),
        AbelianShape::Z3 => cyclic(0, &BigInt::from(3)),
        AbelianShape::Z2PlusFinite => inv.betti == 2,
        AbelianShape::Z2PlusZ19 => cyclic(2, &BigInt::from(19)),
        AbelianShape::Z2PlusZgamma(g) => cyclic(2, g),
        AbelianShape::Z2 => cyclic(2, &BigInt::from(1)),
        AbelianShape::Unknown => true,
    }
}

/// Classifies any triple with `n >= 3`.
pub fn classify(n: i64, k: i64, l: i64) -> Result<ClassificationRecord> {
    let norm = normalize(n, k, l)?;
    let p = norm.params;
    match &norm.kind {
        NormalizationKind::Standard => classify_params(&p),
        NormalizationKind::FreeProduct { copies, inner } => Ok(ClassificationRecord {
            params: p,
            invariants: abelianisation_of(&norm),
            notes: alloc::vec![format!("free product of {copies} copies of Γ{inner}")],
            normalization: norm.clone(),
            conditions: None,
            structure: None,
            deficiency: None,
            smallcanc: None,
            canonical: None,
        }),
        NormalizationKind::FiniteCyclic => Ok(ClassificationRecord {
            params: p,
            invariants: abelianisation(&p),
            notes: alloc::vec![String::from("k = 0, l = 0 or k = l: a finite cyclic group")],
            normalization: norm.clone(),
            conditions: None,
            structure: None,
            deficiency: None,
            smallcanc: None,
            canonical: None,
        }),
    }
}

/// Classifies a standard triple.
pub fn classify_params(p: &GroupParams) -> Result<ClassificationRecord> {
    let cv = conditions(p)?;
    let structure = classify_structure(p, &cv)?;
    let mut notes = Vec::new();
    if let Some(h) = structure.identified_with {
        if h == *p {
            notes.push(format!("(F,F,F,T): Γ{h} is itself the (1,n/2-1) group"));
        } else {
            notes.push(format!("(F,F,F,T): isomorphic to Γ{h}"));
        }
    }
    if structure.label == StructureLabel::Unclassified {
        notes.push(String::from("(F,T,T) is not covered by the (A,B,C) table"));
    }
    let record = ClassificationRecord {
        params: *p,
        normalization: NormalizationResult { kind: NormalizationKind::Standard, params: *p },
        conditions: Some(cv),
        deficiency: structure.deficiency,
        structure: Some(structure),
        invariants: abelianisation(p),
        smallcanc: Some(smallcanc_status(p)?),
        canonical: Some(orbit(p)?.canonical_params()),
        notes,
    };
    record.check_consistency()?;
    Ok(record)
}

/// Row label in the style of the table of `Γ_n(1,l)` for small `n`.
pub fn table_label(p: &GroupParams) -> Result<String> {
    let cv = conditions(p)?;
    let n = p.n();
    let s = classify_structure(p, &cv)?;
    let label = match s.label {
        StructureLabel::CyclicZ3 => String::from("Z_3"),
        StructureLabel::FreeZZ => String::from("Z*Z"),
        StructureLabel::Metacyclic => String::from("metacyclic"),
        StructureLabel::FreeProductZZZgamma => {
            format!("Z_{}*Z*Z", crate::params::gamma(n).expect("3 | n"))
        }
        StructureLabel::FreeProductZZZ19 => String::from("Z_19*Z*Z"),
        StructureLabel::Large if cv.d => String::from("large"),
        StructureLabel::Large => String::from("C(3)-T(6)-ns, large"),
        StructureLabel::InfiniteTorsionFree => {
            if smallcanc_status(p)?.special {
                String::from("C(3)-T(6)-s")
            } else {
                String::from("C(3)-T(6)-ns")
            }
        }
        // Largeness of Γ_n(1,n/2-1) is known when it maps onto Γ_8(1,3) or
        // Γ_20(1,9), i.e. (n,16) = 8 or n ≡ 20 mod 40.
        StructureLabel::HalfCase if n.gcd(&16) == 8 || n % 40 == 20 => String::from("large"),
        StructureLabel::HalfCase => String::from("infinite"),
        StructureLabel::Unclassified => String::from("unclassified"),
    };
    Ok(label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = classify(8, 1, 3).unwrap();
        assert_eq!(r.invariants.torsion, alloc::vec![BigInt::from(3); 3]);
        assert!(!r.smallcanc.unwrap().c3t6);
        assert!(classify(7, 1, 3).unwrap().smallcanc.unwrap().special);
        let r = classify(6, 2, 4).unwrap();
        assert!(r.notes[0].contains("(3,1,2)"));
        assert_eq!(r.conditions, None);
        let r = classify(10, 1, 4).unwrap();
        assert!(r.notes[0].contains("(10,1,4)"));
        assert_eq!(r.canonical, Some(GroupParams::new(10, 1, 3).unwrap()));
        assert!(classify(2, 1, 0).is_err());
    }

    #[test]
    fn labels() {
        let label = |n, l| table_label(&GroupParams::standard(n, 1, l).unwrap()).unwrap();
        assert_eq!(label(7, 3), "C(3)-T(6)-s");
        assert_eq!(label(8, 3), "large");
        assert_eq!(label(10, 4), "infinite");
        assert_eq!(label(12, 5), "Z_5*Z*Z");
        assert_eq!(label(18, 8), "Z_19*Z*Z");
        assert_eq!(label(21, 5), "C(3)-T(6)-ns, large");
        assert_eq!(label(24, 11), "large");
        assert_eq!(label(20, 9), "large");
    }

    #[test]
    fn records_are_consistent_for_small_n() {
        for n in 3..=30 {
            for p in GroupParams::all_standard(n) {
                classify_params(&p).unwrap();
            }
        }
    }
}
