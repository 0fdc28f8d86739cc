//! Published reference data the verification suites compare against.
//!
//! Everything here is transcribed as printed, including the rows the
//! computations disagree with; the suites report those as failures.

/// Representatives `(1,l)` and labels of the groups `Γ_n(1,l)`, `6 <= n <= 29`.
pub type Table2Row = (usize, &'static [(&'static [usize], &'static str)]);

const NS: &str = "C(3)-T(6)-ns";
const NS_LARGE: &str = "C(3)-T(6)-ns, large";

pub const TABLE2: &[Table2Row] = &[
    (6, &[(&[2], "Z*Z"), (&[3], "metacyclic")]),
    (7, &[(&[2], "Z_3"), (&[3], "C(3)-T(6)-s")]),
    (8, &[(&[2], "Z_3"), (&[3], "large"), (&[4], NS)]),
    (9, &[(&[2], "Z*Z"), (&[3], "metacyclic")]),
    (10, &[(&[2], "Z_3"), (&[4], "infinite"), (&[5], NS)]),
    (11, &[(&[2], "Z_3"), (&[3], NS)]),
    (12, &[(&[2], "Z*Z"), (&[3, 6], NS), (&[4], "metacyclic"), (&[5], "Z_5*Z*Z")]),
    (13, &[(&[2], "Z_3"), (&[3, 4], NS)]),
    (14, &[(&[2], "Z_3"), (&[3, 7], NS), (&[6], "infinite")]),
    (15, &[(&[2], "Z*Z"), (&[3, 4], NS), (&[5], "Z_11*Z*Z"), (&[6], "metacyclic")]),
    (16, &[(&[2], "Z_3"), (&[3, 4, 8], NS), (&[7], "infinite")]),
    (17, &[(&[2], "Z_3"), (&[3, 4], NS)]),
    (18, &[(&[2], "Z*Z"), (&[3, 4, 9], NS), (&[8], "Z_19*Z*Z"), (&[6], "metacyclic")]),
    (19, &[(&[2], "Z_3"), (&[3, 4, 8], NS)]),
    (20, &[(&[2], "Z_3"), (&[3, 4, 5, 6, 10], NS), (&[9], "large")]),
    (
        21,
        &[
            (&[2], "Z*Z"),
            (&[3, 4, 6, 9], NS),
            (&[5], NS_LARGE),
            (&[7], "metacyclic"),
            (&[8], "Z_43*Z*Z"),
        ],
    ),
    (22, &[(&[2], "Z_3"), (&[3, 4, 5, 11], NS), (&[10], "infinite")]),
    (23, &[(&[2], "Z_3"), (&[3, 4, 5], NS)]),
    (
        24,
        &[
            (&[2], "Z*Z"),
            (&[3, 4, 6, 7, 10, 12], NS),
            (&[5], NS_LARGE),
            (&[8], "Z_85*Z*Z"),
            (&[9], "metacyclic"),
            (&[11], "large"),
        ],
    ),
    (25, &[(&[2], "Z_3"), (&[3, 4, 5, 10], NS)]),
    (26, &[(&[2], "Z_3"), (&[3, 4, 5, 8, 13], NS), (&[12], "infinite")]),
    (27, &[(&[2], "Z*Z"), (&[3, 4, 6], NS), (&[5], NS_LARGE), (&[9], "metacyclic")]),
    (28, &[(&[2], "Z_3"), (&[3, 4, 5, 6, 7, 8, 14], NS), (&[13], "infinite")]),
    (29, &[(&[2], "Z_3"), (&[3, 4, 5, 9], NS)]),
];

/// Pairs of `Γ_n(1,l)` rows that agree on structure, deficiency and
/// abelianisation and need subgroup invariants to tell apart.
pub const SUBGROUP_SEPARATIONS: &[(usize, usize, usize)] =
    &[(10, 3, 5), (16, 4, 8), (18, 4, 9), (20, 4, 5), (22, 4, 5)];

/// `|Γ^ab| = 513` for the `n = 18` pair, so its second derived quotient needs
/// at least this cap.
pub const SEPARATION_INDEX_CAP: u64 = 513;

/// `(n; l_1, ..., l_t)`: the groups `Γ_n(1,l_i)` are isomorphic.
pub const ONE_L_ISOMORPHISMS: &[(usize, &[usize])] = &[
    (14, &[3, 5]),
    (16, &[3, 6]),
    (16, &[4, 5]),
    (17, &[4, 5, 7]),
    (18, &[6, 7]),
    (19, &[4, 5, 6]),
    (20, &[3, 7]),
    (20, &[4, 8]),
    (22, &[3, 8]),
    (22, &[4, 7]),
    (22, &[5, 9]),
    (23, &[4, 6, 9]),
    (23, &[5, 7, 10]),
    (25, &[4, 7, 8]),
    (25, &[5, 6]),
    (25, &[10, 11]),
    (26, &[3, 9]),
    (26, &[4, 10]),
    (26, &[5, 6]),
    (26, &[8, 11]),
    (27, &[4, 7]),
    (27, &[5, 8, 11]),
    (27, &[6, 12]),
    (27, &[9, 10]),
    (28, &[3, 10]),
    (28, &[4, 9]),
    (28, &[5, 12]),
    (28, &[6, 11]),
    (29, &[4, 8, 11]),
    (29, &[5, 6, 7]),
    (29, &[9, 12, 13]),
];

/// How a pair of abelianisation-colliding groups was shown non-isomorphic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separation {
    SecondDerived,
    IndexTwoExistence,
    IndexThree,
    /// Open: not known to be non-isomorphic.
    Open,
}

/// `(n, l_1, l_2, separation)` for the pairs `{(1,l_1),(1,l_2)}`, `n <= 60`.
pub const TABLE3: &[(usize, usize, usize, Separation)] = &[
    (10, 3, 5, Separation::IndexThree),
    (16, 4, 8, Separation::IndexThree),
    (18, 4, 9, Separation::SecondDerived),
    (20, 4, 5, Separation::IndexThree),
    (22, 4, 5, Separation::IndexThree),
    (30, 6, 7, Separation::IndexThree),
    (32, 8, 16, Separation::Open),
    (36, 11, 15, Separation::IndexTwoExistence),
    (40, 8, 16, Separation::IndexThree),
    (46, 7, 11, Separation::IndexThree),
    (48, 12, 24, Separation::Open),
    (48, 4, 21, Separation::Open),
    (50, 10, 20, Separation::IndexThree),
    (54, 16, 21, Separation::Open),
    (60, 13, 25, Separation::IndexThree),
];
