//! Serialisable views of the core results.
//!
//! Big integers are decimal strings. Every top-level document carries
//! `"schema": SCHEMA` so stale cache entries can be recognised.

use std::fmt::Write as _;

use cycpres_core::abelian::{closed_forms, AbelianInvariants, Order};
use cycpres_core::classify::{table_label, ClassificationRecord};
use cycpres_core::iso::{CollisionRecord, EnumerationReport, PartitionReport};
use cycpres_core::params::{AbelianShape, NormalizationKind};
use cycpres_core::stargraph::{GirthReport, SmallCancStatus, Vertex};
use cycpres_core::GroupParams;
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub n: usize,
    pub k: usize,
    pub l: usize,
}

impl From<GroupParams> for Triple {
    fn from(p: GroupParams) -> Self {
        Triple { n: p.n(), k: p.k(), l: p.l() }
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.n, self.k, self.l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub betti: usize,
    pub torsion: Vec<String>,
    /// Decimal order, or `"infinite"`.
    pub order: String,
    pub display: String,
}

impl From<&AbelianInvariants> for Invariants {
    fn from(inv: &AbelianInvariants) -> Self {
        Invariants {
            betti: inv.betti,
            torsion: inv.torsion.iter().map(|d| d.to_string()).collect(),
            order: order_string(&inv.order()),
            display: inv.to_string(),
        }
    }
}

pub fn order_string(o: &Order) -> String {
    match o {
        Order::Finite(v) => v.to_string(),
        Order::Infinite => "infinite".to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub copies: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inner: Option<Triple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Structure {
    pub label: String,
    pub table_label: String,
    pub deficiency: Option<u32>,
    pub abelianisation_shape: String,
    pub identified_with: Option<Triple>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallCanc {
    pub c3t6: bool,
    pub max_t: usize,
    pub special: bool,
    pub girth: usize,
}

impl From<SmallCancStatus> for SmallCanc {
    fn from(s: SmallCancStatus) -> Self {
        SmallCanc { c3t6: s.c3t6, max_t: s.max_t, special: s.special, girth: s.girth }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormValue {
    pub kind: String,
    pub order: String,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub schema: u32,
    pub params: Triple,
    pub normalization: Normalization,
    pub conditions: Option<String>,
    pub structure: Option<Structure>,
    pub deficiency: Option<u32>,
    pub invariants: Invariants,
    pub smallcanc: Option<SmallCanc>,
    pub canonical: Option<Triple>,
    pub closed_forms: Vec<ClosedFormValue>,
    pub notes: Vec<String>,
}

fn shape_string(s: &AbelianShape) -> String {
    match s {
        AbelianShape::FiniteNontrivial => "finite, nontrivial".into(),
        AbelianShape::CyclicAlpha(a) => format!("Z_{a}"),
        AbelianShape::Z3 => "Z_3".into(),
        AbelianShape::Z2PlusFinite => "Z^2 + finite".into(),
        AbelianShape::Z2PlusZ19 => "Z^2 + Z_19".into(),
        AbelianShape::Z2PlusZgamma(g) => format!("Z^2 + Z_{g}"),
        AbelianShape::Z2 => "Z^2".into(),
        AbelianShape::Unknown => "unknown".into(),
    }
}

impl Record {
    pub fn from_core(r: &ClassificationRecord) -> cycpres_core::Result<Self> {
        let normalization = match &r.normalization.kind {
            NormalizationKind::Standard => Normalization { kind: "standard".into(), copies: None, inner: None },
            NormalizationKind::FreeProduct { copies, inner } => Normalization {
                kind: "free-product".into(),
                copies: Some(*copies),
                inner: Some((*inner).into()),
            },
            NormalizationKind::FiniteCyclic => {
                Normalization { kind: "finite-cyclic".into(), copies: None, inner: None }
            }
        };
        let structure = match &r.structure {
            Some(s) => Some(Structure {
                label: s.label.as_str().into(),
                table_label: table_label(&r.params)?,
                deficiency: s.deficiency,
                abelianisation_shape: shape_string(&s.abelianisation_shape),
                identified_with: s.identified_with.map(Triple::from),
            }),
            None => None,
        };
        let closed = if r.params.is_standard() {
            closed_forms(&r.params)?
                .into_iter()
                .map(|c| ClosedFormValue {
                    kind: c.kind.as_str().into(),
                    order: order_string(&c.order),
                    agrees: c.agrees_with(&r.invariants),
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(Record {
            schema: SCHEMA,
            params: r.params.into(),
            normalization,
            conditions: r.conditions.map(|c| c.to_string()),
            structure,
            deficiency: r.deficiency,
            invariants: (&r.invariants).into(),
            smallcanc: r.smallcanc.map(SmallCanc::from),
            canonical: r.canonical.map(Triple::from),
            closed_forms: closed,
            notes: r.notes.clone(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "params        {}", self.params);
        let _ = write!(s, "normalization {}", self.normalization.kind);
        if let (Some(c), Some(i)) = (self.normalization.copies, self.normalization.inner) {
            let _ = write!(s, " ({c} copies of {i})");
        }
        s.push('\n');
        if let Some(c) = &self.conditions {
            let _ = writeln!(s, "conditions    {c}");
        }
        if let Some(st) = &self.structure {
            let _ = writeln!(s, "structure     {} [{}]", st.label, st.table_label);
            let _ = writeln!(s, "ab shape      {}", st.abelianisation_shape);
        }
        match self.deficiency {
            Some(d) => {
                let _ = writeln!(s, "deficiency    {d}");
            }
            None => {
                let _ = writeln!(s, "deficiency    unknown");
            }
        }
        let _ = writeln!(s, "abelianised   {}", self.invariants.display);
        let _ = writeln!(s, "order         {}", self.invariants.order);
        if let Some(sc) = &self.smallcanc {
            let _ = writeln!(
                s,
                "smallcanc     C3T6={} T({}) special={} girth={}",
                sc.c3t6, sc.max_t, sc.special, sc.girth
            );
        }
        if let Some(c) = &self.canonical {
            let _ = writeln!(s, "canonical     {c}");
        }
        for cf in &self.closed_forms {
            let _ = writeln!(s, "closed form   {} = {} ({})", cf.kind, cf.order, if cf.agrees { "agrees" } else { "DISAGREES" });
        }
        for n in &self.notes {
            let _ = writeln!(s, "note          {n}");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub canonical: Triple,
    pub representative: Triple,
    pub size: usize,
    pub conditions: Vec<String>,
    pub label: String,
    pub invariants: Invariants,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    pub n: usize,
    pub first: Triple,
    pub second: Triple,
    pub invariants: Invariants,
    /// Family number, or `None` when outside every family.
    pub family: Option<u8>,
}

impl From<&CollisionRecord> for Collision {
    fn from(c: &CollisionRecord) -> Self {
        Collision {
            n: c.n,
            first: c.first.into(),
            second: c.second.into(),
            invariants: (&c.invariants).into(),
            family: c.family,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    /// Condition vector to canonical representatives of the orbits meeting it.
    pub cells: Vec<(String, Vec<Triple>)>,
    pub pair_counts: Vec<(String, usize)>,
    pub checks: Vec<Check>,
    pub decomposition_holds: Option<bool>,
}

impl From<&PartitionReport> for Partition {
    fn from(p: &PartitionReport) -> Self {
        Partition {
            cells: p
                .cells
                .iter()
                .map(|(v, reps)| (v.to_string(), reps.iter().map(|&q| q.into()).collect()))
                .collect(),
            pair_counts: p.pair_counts.iter().map(|(v, c)| (v.to_string(), *c)).collect(),
            checks: p.checks.iter().map(|c| Check { name: c.name.into(), detail: c.detail.clone() }).collect(),
            decomposition_holds: p.decomposition.as_ref().map(|d| d.holds()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub schema: u32,
    pub n: usize,
    pub f_lower: usize,
    pub f_upper: usize,
    pub l_set_verified: Option<bool>,
    pub classes: Vec<ClassRow>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub partition: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub collisions: Option<Vec<Collision>>,
}

impl Enumeration {
    pub fn from_core(e: &EnumerationReport) -> cycpres_core::Result<Self> {
        let classes = e
            .classes
            .iter()
            .map(|c| {
                Ok(ClassRow {
                    canonical: c.orbit.canonical_params().into(),
                    representative: c.record.params.into(),
                    size: c.orbit.len(),
                    conditions: c.orbit.condition_vectors().iter().map(|v| v.to_string()).collect(),
                    label: table_label(&c.record.params)?,
                    invariants: (&c.record.invariants).into(),
                })
            })
            .collect::<cycpres_core::Result<Vec<_>>>()?;
        Ok(Enumeration {
            schema: SCHEMA,
            n: e.n,
            f_lower: e.f_lower,
            f_upper: e.f_upper,
            l_set_verified: e.l_set_verified,
            classes,
            partition: None,
            collisions: None,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n = {}: f in [{}, {}]", self.n, self.f_lower, self.f_upper);
        for c in &self.classes {
            let _ = writeln!(
                s,
                "  {:<14} size {:<5} {:<24} {}  [{}]",
                c.representative.to_string(),
                c.size,
                c.label,
                c.invariants.display,
                c.conditions.join(" ")
            );
        }
        if let Some(p) = &self.partition {
            let _ = writeln!(s, "partition:");
            for (v, reps) in &p.cells {
                let reps: Vec<String> = reps.iter().map(Triple::to_string).collect();
                let _ = writeln!(s, "  {v}: {}", reps.join(" "));
            }
            for c in &p.checks {
                let _ = writeln!(s, "  ok  {}: {}", c.name, c.detail);
            }
            if let Some(h) = p.decomposition_holds {
                let _ = writeln!(s, "  decomposition holds: {h}");
            }
        }
        if let Some(cs) = &self.collisions {
            let _ = writeln!(s, "collisions:");
            for c in cs {
                let fam = c.family.map_or("outside families".to_string(), |f| format!("family ({f})"));
                let _ = writeln!(s, "  {} ~ {}  {}  {fam}", c.first, c.second, c.invariants.display);
            }
        }
        s
    }

    /// One CSV row per class.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "k", "l", "canonical_k", "canonical_l", "size", "label", "conditions", "betti", "torsion", "order"])?;
        for c in &self.classes {
            w.write_record([
                self.n.to_string(),
                c.representative.k.to_string(),
                c.representative.l.to_string(),
                c.canonical.k.to_string(),
                c.canonical.l.to_string(),
                c.size.to_string(),
                c.label.clone(),
                c.conditions.join(" "),
                c.invariants.betti.to_string(),
                c.invariants.torsion.join(";"),
                c.invariants.order.clone(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Girth {
    pub schema: u32,
    pub params: Triple,
    pub vertices: usize,
    pub edges: usize,
    pub simple: bool,
    /// `None` for a forest.
    pub girth: Option<usize>,
    pub witness: Vec<String>,
    pub heawood: bool,
    pub c3t6: bool,
}

impl Girth {
    pub fn new(p: GroupParams, vertices: usize, edges: usize, simple: bool, g: Option<&GirthReport>, heawood: bool) -> Self {
        Girth {
            schema: SCHEMA,
            params: p.into(),
            vertices,
            edges,
            simple,
            girth: g.map(|r| r.girth),
            witness: g.map(|r| r.witness.iter().map(Vertex::to_string).collect()).unwrap_or_default(),
            heawood,
            c3t6: g.is_none_or(|r| r.girth >= 6),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "star graph of {}: {} vertices, {} edges, simple={}", self.params, self.vertices, self.edges, self.simple);
        match self.girth {
            Some(g) => {
                let _ = writeln!(s, "girth {g}: {}", self.witness.join(" - "));
            }
            None => {
                let _ = writeln!(s, "girth infinite (forest)");
            }
        }
        let _ = writeln!(s, "C(3)-T(6) {}  heawood {}", self.c3t6, self.heawood);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianisation {
    pub schema: u32,
    pub params: Triple,
    pub invariants: Invariants,
    pub min_generators: usize,
    /// Independent routes, present for standard triples.
    pub betti_polynomial: Option<usize>,
    pub order_determinant: Option<String>,
    pub closed_forms: Vec<ClosedFormValue>,
}

impl Abelianisation {
    pub fn to_text(&self) -> String {
        let mut s = format!("{}^ab = {}  (order {}, d = {})\n", self.params, self.invariants.display, self.invariants.order, self.min_generators);
        if let (Some(b), Some(o)) = (self.betti_polynomial, &self.order_determinant) {
            let _ = writeln!(s, "  polynomial gcd betti {b}, determinant order {o}");
        }
        for c in &self.closed_forms {
            let _ = writeln!(s, "  {}: {} ({})", c.kind, c.order, if c.agrees { "agrees" } else { "DISAGREES" });
        }
        s
    }
}

/// Kernel abelianisations of all maps onto `Z_d`, one entry per map up to
/// automorphisms of `Z_d`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelFamily {
    pub index: u64,
    pub kernels: Vec<Invariants>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub other: Triple,
    pub verdict: String,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroups {
    pub schema: u32,
    pub params: Triple,
    pub index_cap: u64,
    pub families: Vec<KernelFamily>,
    /// `G'/G''`, when `|G^ab|` is finite and at most the cap.
    pub second_derived: Option<Invariants>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub against: Option<Comparison>,
}

impl Subgroups {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in &self.families {
            let _ = writeln!(s, "{}: {} map(s) onto Z_{}", self.params, f.kernels.len(), f.index);
            for k in &f.kernels {
                let _ = writeln!(s, "  kernel^ab = {}", k.display);
            }
        }
        match &self.second_derived {
            Some(q) => {
                let _ = writeln!(s, "G'/G'' = {}", q.display);
            }
            None => {
                let _ = writeln!(s, "G'/G'' not computed (|G^ab| infinite or above cap {})", self.index_cap);
            }
        }
        if let Some(c) = &self.against {
            let _ = writeln!(s, "against {}: {}", c.other, c.verdict);
        }
        s
    }
}
