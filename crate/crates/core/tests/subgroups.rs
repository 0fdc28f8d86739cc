use cycpres_core::abelian::abelianisation;
use cycpres_core::iso::orbit;
use cycpres_core::subgroup::*;
use cycpres_core::GroupParams;
use num_traits::Zero;
use proptest::prelude::*;

fn gp(n: usize, k: i64, l: i64) -> GroupParams {
    GroupParams::standard(n, k, l).unwrap()
}

/// Display form of `Z^betti + Z_d (xm) ...`.
fn expect(betti: usize, factors: &[(&str, usize)]) -> String {
    let mut parts = Vec::new();
    match betti {
        0 => {}
        1 => parts.push("Z".to_string()),
        b => parts.push(format!("Z^{b}")),
    }
    for &(d, m) in factors {
        parts.extend(std::iter::repeat(format!("Z_{d}")).take(m));
    }
    parts.join(" + ")
}

fn sdq(n: usize, l: i64, cap: u64) -> String {
    second_derived_quotient_ab(&gp(n, 1, l), cap).unwrap().unwrap().to_string()
}

// Values cross-checked against an independent rewriting with FLINT snf.
#[test]
fn second_derived_quotients_n10() {
    assert_eq!(sdq(10, 3, 200), "Z_31");
    assert_eq!(sdq(10, 5, 200), expect(0, &[("9", 4), ("549", 1)]));
}

#[test]
fn second_derived_quotients_n16() {
    assert_eq!(sdq(16, 4, 300), expect(8, &[("114", 8), ("1938", 6), ("13566", 2)]));
    assert_eq!(
        sdq(16, 8, 300),
        expect(0, &[("2", 64), ("4", 48), ("8", 4), ("104", 10), ("4264", 2)])
    );
}

/// Both groups have `|Γ^ab| = 513`; nothing below the second derived
/// quotient tells them apart.
#[test]
fn second_derived_quotients_n18() {
    assert_eq!(sdq(18, 4, 513), expect(0, &[("133", 3), ("4921", 1)]));
    assert_eq!(
        sdq(18, 9, 513),
        expect(
            0,
            &[
                ("1252760329684221098495", 5),
                ("8769322307789547689465", 3),
                ("6164833582376052025693895", 1),
            ]
        )
    );
    assert!(second_derived_quotient_ab(&gp(18, 1, 4), 512).unwrap().is_none());
}

#[test]
fn index_three_kernels_of_table_pairs() {
    let rows: &[(usize, i64, &str)] = &[
        (10, 3, "Z_341"),
        (10, 5, "Z_671"),
        (16, 4, "Z_5 + Z_35 + Z_595"),
        (16, 8, "Z_41 + Z_3485"),
        (20, 4, "Z_5123525"),
        (20, 5, "Z_3036275"),
        (22, 4, "Z_23 + Z_1323719"),
        (22, 5, "Z_23 + Z_713483"),
        (32, 8, "Z_3977 + Z_86877565"),
        (32, 16, "Z_17 + Z_3281 + Z_4216085"),
        (48, 12, "Z_35 + Z_493115 + Z_78791394045"),
        (48, 24, "Z_265721 + Z_1486019449005"),
    ];
    for &(n, l, want) in rows {
        let got = index_kernel_multiset(&gp(n, 1, l), 3).unwrap();
        assert_eq!(got.len(), 1, "({n},1,{l})");
        assert_eq!(got[0].to_string(), want, "({n},1,{l})");
    }
}

#[test]
fn index_nine_kernel_with_free_abelianisation() {
    let kernels = index9_kernels(&gp(8, 1, 3)).unwrap();
    assert_eq!(kernels.len(), 13);
    let free: Vec<_> = kernels.iter().filter(|(_, inv)| inv.to_string() == "Z^8").collect();
    assert_eq!(free.len(), 1);
    assert_eq!(free[0].0.moduli, vec![3, 3]);
    for (_, inv) in &kernels {
        assert!(inv.to_string() == "Z^8" || inv.to_string() == "Z^2 + Z_3 + Z_3");
    }
}

#[test]
fn index_three_multisets_are_move_invariant() {
    for n in 4..=30 {
        for o in cycpres_core::iso::orbits(n).unwrap() {
            let rep = o.canonical_params();
            let three = abelianisation(&rep).torsion.iter().any(|d| (d % 3u32).is_zero());
            if !three {
                continue;
            }
            let want = index_kernel_multiset(&rep, 3).unwrap();
            for &(k, l) in &o.members {
                let got = index_kernel_multiset(&gp(n, k as i64, l as i64), 3).unwrap();
                assert_eq!(got, want, "({n},{k},{l}) vs {rep}");
            }
        }
    }
}

#[test]
fn distinguish_examples() {
    let b = Budget::default();
    assert_eq!(
        distinguish(&gp(22, 1, 4), &gp(22, 1, 5), b).unwrap(),
        Verdict::Distinct(Witness::IndexSubgroupAbelianisations(3))
    );
    assert_eq!(distinguish(&gp(16, 1, 6), &gp(16, 1, 3), b).unwrap(), Verdict::ProvablyIsomorphic);
    assert_eq!(distinguish(&gp(48, 1, 4), &gp(48, 1, 21), b).unwrap(), Verdict::Indistinguishable);
    assert_eq!(distinguish(&gp(54, 1, 16), &gp(54, 1, 21), b).unwrap(), Verdict::Indistinguishable);
    assert_eq!(
        distinguish(&gp(36, 1, 11), &gp(36, 1, 15), b).unwrap(),
        Verdict::Distinct(Witness::Structure)
    );
    assert!(orbit(&gp(36, 1, 10)).unwrap().contains(1, 10));
    assert_eq!(distinguish(&gp(36, 1, 10), &gp(36, 1, 15), b).unwrap(), Verdict::Indistinguishable);
}

fn small_params() -> impl Strategy<Value = GroupParams> {
    (3usize..=14).prop_flat_map(|n| {
        let all: Vec<_> = GroupParams::all_standard(n).collect();
        prop::sample::select(all)
    })
}

/// A valid quotient map: the full abelianisation when small, else a cyclic one.
fn some_map(p: &GroupParams) -> Option<QuotientMap> {
    if let Some(m) = abelianisation_map(p, 40).unwrap() {
        if m.order() > 1 {
            return Some(m);
        }
    }
    (2..=7).find_map(|d| cyclic_quotients(p, d).unwrap().first().map(|m| m.to_map()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rewriting_satisfies_euler(p in small_params()) {
        let fp = to_presentation(&p).unwrap();
        if let Some(q) = some_map(&p) {
            let sp = reidemeister_schreier(&fp, &q).unwrap();
            prop_assert!(sp.euler_holds());
            let idx = q.order() as usize;
            prop_assert_eq!(sp.presentation.generator_count(), idx * p.n());
            prop_assert_eq!(sp.presentation.relators().len(), idx * p.n());
            prop_assert_eq!(sp.tree.len(), idx - 1);
        }
    }

    #[test]
    fn kernel_invariants_ignore_the_transversal(p in small_params(), root in 0usize..64, offset in 0usize..64) {
        let fp = to_presentation(&p).unwrap();
        if let Some(q) = some_map(&p) {
            let base = reidemeister_schreier(&fp, &q).unwrap().abelianisation();
            let tr = Transversal { root: root % q.order() as usize, offset };
            let other = reidemeister_schreier_with(&fp, &q, tr).unwrap();
            prop_assert_eq!(other.abelianisation(), base.clone());
            prop_assert_eq!(other.abelianisation_unsimplified(), base);
        }
    }

    #[test]
    fn cyclic_maps_kill_relators(p in small_params(), d in 2u64..8) {
        for m in cyclic_quotients(&p, d).unwrap() {
            prop_assert!(m.sums_vanish(&p));
            prop_assert!(m.to_map().validate(&to_presentation(&p).unwrap()).is_ok());
        }
    }
}
