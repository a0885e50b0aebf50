//! Nilpotent orbits of E6, E7 and E8 with their invariant pairs.
//!
//! The bundled table stores, per orbit, the invariant pairs `(Q1, Q2)` of
//! the stabilizer together with the admissible degrees and raisability data.
//! The degree sets are recomputed from the pairs and the stored weighted
//! diagrams are checked against the root-system grading.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qa::DegreeSet;
use crate::roots::{
    center_dim, graded_dims, levi_semisimple_dim, CartanKind, CartanSpec, WeightedDynkinDiagram,
};

const BUNDLED: &str = include_str!("../data/exceptional_orbits.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExceptionalGroup {
    E6,
    E7,
    E8,
}

impl ExceptionalGroup {
    pub const ALL: [ExceptionalGroup; 3] = [Self::E6, Self::E7, Self::E8];

    pub fn cartan_kind(self) -> CartanKind {
        match self {
            Self::E6 => CartanKind::E6,
            Self::E7 => CartanKind::E7,
            Self::E8 => CartanKind::E8,
        }
    }

    pub fn rank(self) -> usize {
        self.cartan_kind().rank()
    }

    pub fn dimension(self) -> usize {
        match self {
            Self::E6 => 78,
            Self::E7 => 133,
            Self::E8 => 248,
        }
    }

    /// Number of nilpotent orbits.
    pub fn orbit_count(self) -> usize {
        match self {
            Self::E6 => 21,
            Self::E7 => 45,
            Self::E8 => 70,
        }
    }
}

impl fmt::Display for ExceptionalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.cartan_kind().fmt(f)
    }
}

impl FromStr for ExceptionalGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "E6" => Ok(Self::E6),
            "E7" => Ok(Self::E7),
            "E8" => Ok(Self::E8),
            other => Err(Error::Domain(format!("unknown exceptional group {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantPair {
    pub q1: u32,
    pub q2: u32,
}

/// How the admissible degrees of a row are justified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// Intersection of the per-pair conditions.
    Standard,
    /// Stabilizer with an `SO` or `PGL` factor, argued separately; the
    /// resulting conditions still agree with the per-pair rule.
    SoLemma,
    /// Trivial stabilizer: admissible for every degree.
    Direct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "RawRaisability")]
pub enum Raisability {
    /// Raisable for every degree.
    All,
    /// Raisable for every degree outside `members`.
    Complement { members: BTreeSet<u32> },
    NotApplicable,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRaisability {
    kind: String,
    members: Option<BTreeSet<u32>>,
}

impl TryFrom<RawRaisability> for Raisability {
    type Error = String;

    fn try_from(raw: RawRaisability) -> std::result::Result<Self, String> {
        match (raw.kind.as_str(), raw.members) {
            ("all", None) => Ok(Raisability::All),
            ("not_applicable", None) => Ok(Raisability::NotApplicable),
            ("complement", Some(members)) => Ok(Raisability::Complement { members }),
            (kind, _) => Err(format!("malformed raisability of kind {kind:?}")),
        }
    }
}

impl Raisability {
    /// Degrees where the orbit is not raisable, when the row has that data.
    pub fn exceptions(&self) -> Option<BTreeSet<u32>> {
        match self {
            Raisability::All => Some(BTreeSet::new()),
            Raisability::Complement { members } => Some(members.clone()),
            Raisability::NotApplicable => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedDims {
    pub g1: usize,
    pub g2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExceptionalOrbitRecord {
    pub label: String,
    pub special: bool,
    pub even: bool,
    pub stabilizer: String,
    pub pairs: Vec<InvariantPair>,
    pub criterion: Criterion,
    pub qa_set: DegreeSet,
    pub raisable: Raisability,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_dims: Option<ExpectedDims>,
    /// The raisability data comes from the same pair as the degree set, so
    /// the two must describe the same exceptional degrees.
    #[serde(default, skip_serializing_if = "is_false")]
    pub tau_pair_matches: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl ExceptionalOrbitRecord {
    pub fn weighted_diagram(&self, group: ExceptionalGroup) -> Result<Option<WeightedDynkinDiagram>> {
        let Some(labels) = &self.diagram else { return Ok(None) };
        let spec = CartanSpec::new(group.cartan_kind())?;
        let labels: Vec<i64> = labels.iter().map(|&l| l as i64).collect();
        WeightedDynkinDiagram::new(spec, &labels).map(Some)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    #[serde(rename = "E6")]
    e6: Vec<ExceptionalOrbitRecord>,
    #[serde(rename = "E7")]
    e7: Vec<ExceptionalOrbitRecord>,
    #[serde(rename = "E8")]
    e8: Vec<ExceptionalOrbitRecord>,
}

/// Validated orbit tables for the three groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableData {
    raw: RawTable,
}

impl TableData {
    /// The copy compiled into the library.
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED).expect("bundled table data is valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawTable = serde_json::from_str(text).map_err(|e| Error::Data(e.to_string()))?;
        let data = TableData { raw };
        for group in ExceptionalGroup::ALL {
            for rec in data.rows(group) {
                validate_record(group, rec)?;
            }
        }
        Ok(data)
    }

    pub fn rows(&self, group: ExceptionalGroup) -> &[ExceptionalOrbitRecord] {
        match group {
            ExceptionalGroup::E6 => &self.raw.e6,
            ExceptionalGroup::E7 => &self.raw.e7,
            ExceptionalGroup::E8 => &self.raw.e8,
        }
    }

    pub fn find(&self, group: ExceptionalGroup, label: &str) -> Option<&ExceptionalOrbitRecord> {
        self.rows(group).iter().find(|r| r.label == label)
    }
}

fn validate_record(group: ExceptionalGroup, rec: &ExceptionalOrbitRecord) -> Result<()> {
    let fail = |msg: &str| Err(Error::Data(format!("{group} {}: {msg}", rec.label)));
    if rec.pairs.iter().any(|p| p.q1 == 0) {
        return fail("Q1 must be positive");
    }
    if rec.pairs.is_empty() != (rec.criterion == Criterion::Direct) {
        return fail("rows without invariant pairs are exactly the direct rows");
    }
    if rec.criterion == Criterion::Direct && !rec.qa_set.is_all() {
        return fail("direct rows are admissible for all degrees");
    }
    if let Some(d) = &rec.diagram {
        if d.len() != group.rank() {
            return fail("diagram length differs from the rank");
        }
        if d.iter().any(|&l| l > 2) {
            return fail("diagram label outside {0,1,2}");
        }
    }
    Ok(())
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Degrees allowed by one pair: divisors of `Q1` when `Q2` is even,
/// otherwise the `n` with `n / gcd(n, Q1) = 2`.
pub fn qa_set_from_pair(p: InvariantPair) -> DegreeSet {
    if p.q2.is_multiple_of(2) {
        DegreeSet::finite((1..=p.q1).filter(|n| p.q1.is_multiple_of(*n)), p.q1)
    } else {
        let bound = 2 * p.q1;
        DegreeSet::finite((1..=bound).filter(|&n| n / gcd(n, p.q1) == 2), bound)
    }
}

pub fn qa_set_for_record(rec: &ExceptionalOrbitRecord) -> Result<DegreeSet> {
    match rec.criterion {
        Criterion::Direct => Ok(rec.qa_set.clone()),
        Criterion::Standard | Criterion::SoLemma => {
            if rec.pairs.is_empty() {
                return Err(Error::Data(format!("{}: no invariant pairs", rec.label)));
            }
            Ok(rec
                .pairs
                .iter()
                .map(|&p| qa_set_from_pair(p))
                .reduce(|a, b| a.intersect(&b))
                .expect("pairs are non-empty"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub label: String,
    pub field: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub group: ExceptionalGroup,
    pub rows: usize,
    pub diagrams_checked: usize,
    pub dims_checked: usize,
    pub raisability_audited: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ConsistencyReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn check_table_consistency(data: &TableData, group: ExceptionalGroup) -> ConsistencyReport {
    let rows = data.rows(group);
    let mut report = ConsistencyReport {
        group,
        rows: rows.len(),
        diagrams_checked: 0,
        dims_checked: 0,
        raisability_audited: 0,
        mismatches: Vec::new(),
    };
    let mut flag = |label: &str, field: &str, detail: String| {
        report.mismatches.push(Mismatch { label: label.into(), field: field.into(), detail });
    };
    if rows.len() != group.orbit_count() {
        flag("*", "row_count", format!("expected {}, found {}", group.orbit_count(), rows.len()));
    }
    let mut diagrams = 0;
    let mut dims_checked = 0;
    let mut audited = 0;
    for rec in rows {
        let label = rec.label.as_str();
        match qa_set_for_record(rec) {
            Ok(set) if set == rec.qa_set => {}
            Ok(set) => flag(label, "qa_set", format!("stored {}, recomputed {set}", rec.qa_set)),
            Err(e) => flag(label, "qa_set", e.to_string()),
        }
        if rec.tau_pair_matches {
            audited += 1;
            match (rec.raisable.exceptions(), rec.qa_set.members()) {
                (Some(s), Some(m)) if &s == m => {}
                _ => flag(label, "raisable", format!("exceptional degrees differ from qa_set {}", rec.qa_set)),
            }
        }
        let wd = match rec.weighted_diagram(group) {
            Ok(Some(wd)) => wd,
            Ok(None) => continue,
            Err(e) => {
                flag(label, "diagram", e.to_string());
                continue;
            }
        };
        diagrams += 1;
        let dims = graded_dims(&wd);
        if dims.total() != group.dimension() {
            flag(label, "diagram", format!("graded pieces sum to {}", dims.total()));
        }
        if !dims.is_symmetric() {
            flag(label, "diagram", "grading is not symmetric".into());
        }
        let ss = levi_semisimple_dim(&wd);
        if dims.get(0) != ss + center_dim(&wd) {
            flag(label, "diagram", format!("dim g[0] = {} but Levi gives {ss} + {}", dims.get(0), center_dim(&wd)));
        }
        if wd.is_even() != rec.even {
            flag(label, "even", format!("stored {}, diagram says {}", rec.even, wd.is_even()));
        }
        if let Some(e) = rec.expected_dims {
            dims_checked += 1;
            let got = (dims.get(1), dims.get(2));
            if got != (e.g1, e.g2) {
                flag(label, "expected_dims", format!("stored ({}, {}), computed {got:?}", e.g1, e.g2));
            }
        }
    }
    report.diagrams_checked = diagrams;
    report.dims_checked = dims_checked;
    report.raisability_audited = audited;
    report
}

/// Labels of orbits admissible for no degree.
pub fn n0_qa_exceptional(data: &TableData, group: ExceptionalGroup) -> Vec<String> {
    data.rows(group).iter().filter(|r| r.qa_set.is_empty()).map(|r| r.label.clone()).collect()
}
