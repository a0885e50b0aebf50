//! Quasi-admissibility of classical orbits.
//!
//! The criteria are divisibility conditions on the repeated parts of the
//! Jordan type. They lead to exact degree sets, the never-admissible sets
//! `N0_QA`, and an exhaustive check that duality images are admissible.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::duality::{d_bv, degree_cap, dual_group, image_union, CoverDegree};
use crate::error::{Error, Result};
use crate::partition::{enumerate_orbits, is_valid_orbit_partition, ClassicalFamily, ClassicalType, Partition};

/// Set of cover degrees satisfying a criterion.
///
/// `Finite` carries a bound past which no degree can qualify; equality
/// compares members only.
#[derive(Clone, Debug, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawDegreeSet")]
pub enum DegreeSet {
    All,
    Finite {
        members: BTreeSet<u32>,
        #[serde(skip)]
        bound: u32,
    },
}

// Serde's internally tagged enums accept stray keys on unit variants.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDegreeSet {
    kind: String,
    members: Option<BTreeSet<u32>>,
}

impl TryFrom<RawDegreeSet> for DegreeSet {
    type Error = String;

    fn try_from(raw: RawDegreeSet) -> std::result::Result<Self, String> {
        match (raw.kind.as_str(), raw.members) {
            ("all", None) => Ok(DegreeSet::All),
            ("finite", Some(m)) => Ok(DegreeSet::finite(m, 0)),
            (kind, _) => Err(format!("malformed degree set of kind {kind:?}")),
        }
    }
}

impl DegreeSet {
    pub fn finite<I: IntoIterator<Item = u32>>(members: I, bound: u32) -> Self {
        let members: BTreeSet<u32> = members.into_iter().collect();
        let bound = bound.max(members.iter().next_back().copied().unwrap_or(0));
        DegreeSet::Finite { members, bound }
    }

    pub fn empty() -> Self {
        DegreeSet::finite([], 0)
    }

    pub fn contains(&self, n: u32) -> bool {
        match self {
            DegreeSet::All => n >= 1,
            DegreeSet::Finite { members, .. } => members.contains(&n),
        }
    }

    pub fn is_all(&self) -> bool {
        matches!(self, DegreeSet::All)
    }

    /// Finite and without members.
    pub fn is_empty(&self) -> bool {
        matches!(self, DegreeSet::Finite { members, .. } if members.is_empty())
    }

    pub fn members(&self) -> Option<&BTreeSet<u32>> {
        match self {
            DegreeSet::All => None,
            DegreeSet::Finite { members, .. } => Some(members),
        }
    }

    pub fn bound(&self) -> Option<u32> {
        match self {
            DegreeSet::All => None,
            DegreeSet::Finite { bound, .. } => Some(*bound),
        }
    }

    pub fn intersect(&self, other: &DegreeSet) -> DegreeSet {
        match (self, other) {
            (DegreeSet::All, x) | (x, DegreeSet::All) => x.clone(),
            (DegreeSet::Finite { members: a, bound: ba }, DegreeSet::Finite { members: b, bound: bb }) => {
                DegreeSet::Finite { members: a.intersection(b).copied().collect(), bound: (*ba).min(*bb) }
            }
        }
    }
}

impl PartialEq for DegreeSet {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (DegreeSet::All, DegreeSet::All) => true,
            (DegreeSet::Finite { members: a, .. }, DegreeSet::Finite { members: b, .. }) => a == b,
            _ => false,
        }
    }
}

/// `{1,2,6}` or `all`.
impl fmt::Display for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeSet::All => f.write_str("all"),
            DegreeSet::Finite { members, .. } => {
                let items: Vec<String> = members.iter().map(u32::to_string).collect();
                write!(f, "{{{}}}", items.join(","))
            }
        }
    }
}

fn opposite_parity_count(p: &Partition, v: u32, keep: impl Fn(u32) -> bool) -> usize {
    p.parts().iter().filter(|&&u| keep(u) && (u + v) % 2 == 1).count()
}

/// Number of parts above `v` with parity opposite to `v`.
pub fn count_above(p: &Partition, v: u32) -> usize {
    opposite_parity_count(p, v, |u| u > v)
}

/// Number of parts below `v` with parity opposite to `v`.
pub fn count_below(p: &Partition, v: u32) -> usize {
    opposite_parity_count(p, v, |u| u < v)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A single triggered condition of the criterion.
#[derive(Clone, Copy, Debug)]
enum Condition {
    /// Type A: `n | v`.
    Divides(u32),
    /// Parity-governed parts: `n | v` or `gcd(n, v) = n/2` depending on the
    /// parity of `count`.
    Governed { value: u32, count: usize },
    /// Remaining repeated parts: `n | v` for odd `n`, `n | 2v` or `n | 4v`
    /// for even `n`.
    Scaled { value: u32, multiplicity: usize },
}

impl Condition {
    fn holds(self, n: u32) -> bool {
        match self {
            Condition::Divides(v) => v % n == 0,
            Condition::Governed { value, count } => {
                if n % 2 == 1 {
                    value % n == 0 && count % 2 == 0
                } else if count % 2 == 0 {
                    value % n == 0
                } else {
                    gcd(n, value) == n / 2
                }
            }
            Condition::Scaled { value, multiplicity } => {
                if n % 2 == 1 {
                    value % n == 0
                } else if multiplicity >= 4 {
                    (2 * value) % n == 0
                } else {
                    (4 * value) % n == 0
                }
            }
        }
    }

    fn describe(self, n: u32) -> String {
        match self {
            Condition::Divides(v) => format!("{n} does not divide repeated part {v}"),
            Condition::Governed { value, count } => {
                if n % 2 == 1 && value % n == 0 {
                    format!("parity count {count} for part {value} is odd at odd degree {n}")
                } else if n % 2 == 1 || count % 2 == 0 {
                    format!("{n} does not divide part {value} (parity count {count})")
                } else {
                    format!("gcd({n},{value}) != {} for part {value} (parity count {count})", n / 2)
                }
            }
            Condition::Scaled { value, multiplicity } => {
                let scale = if n % 2 == 1 {
                    1
                } else if multiplicity >= 4 {
                    2
                } else {
                    4
                };
                format!("{n} does not divide {scale}*{value} (part {value}, multiplicity {multiplicity})")
            }
        }
    }
}

fn conditions(family: ClassicalFamily, p: &Partition) -> Vec<Condition> {
    let mut out = Vec::new();
    for (value, mult) in p.multiplicities() {
        let even = value % 2 == 0;
        let cond = match family {
            ClassicalFamily::A => (mult >= 2).then_some(Condition::Divides(value)),
            ClassicalFamily::B | ClassicalFamily::D => {
                if even && mult >= 2 {
                    Some(Condition::Governed { value, count: count_below(p, value) })
                } else if !even && mult >= 3 {
                    Some(Condition::Scaled { value, multiplicity: mult })
                } else {
                    None
                }
            }
            ClassicalFamily::C => {
                if !even && mult >= 2 {
                    Some(Condition::Governed { value, count: count_above(p, value) })
                } else if even && mult >= 3 {
                    Some(Condition::Scaled { value, multiplicity: mult })
                } else {
                    None
                }
            }
        };
        out.extend(cond);
    }
    out
}

fn require_valid(t: ClassicalType, p: &Partition) -> Result<()> {
    if is_valid_orbit_partition(t, p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{p} is not an orbit partition of {t}")))
    }
}

/// Failing conditions of the criterion at degree `n`; empty when admissible.
pub fn qa_failures(t: ClassicalType, p: &Partition, n: CoverDegree) -> Result<Vec<String>> {
    require_valid(t, p)?;
    let n = n.get();
    Ok(conditions(t.family, p)
        .into_iter()
        .filter(|c| !c.holds(n))
        .map(|c| c.describe(n))
        .collect())
}

pub fn is_quasi_admissible(t: ClassicalType, p: &Partition, n: CoverDegree) -> Result<bool> {
    require_valid(t, p)?;
    Ok(conditions(t.family, p).iter().all(|c| c.holds(n.get())))
}

/// Every degree at which the orbit is quasi-admissible.
pub fn qa_degree_set(t: ClassicalType, p: &Partition) -> Result<DegreeSet> {
    qa_degree_set_with_bound(t, p, 4 * p.largest())
}

/// As [`qa_degree_set`] with an explicit enumeration bound. Bounds below
/// four times the largest part may drop members.
pub fn qa_degree_set_with_bound(t: ClassicalType, p: &Partition, bound: u32) -> Result<DegreeSet> {
    require_valid(t, p)?;
    let conds = conditions(t.family, p);
    if conds.is_empty() {
        return Ok(DegreeSet::All);
    }
    let members = (1..=bound).filter(|&n| conds.iter().all(|c| c.holds(n)));
    Ok(DegreeSet::finite(members, bound))
}

/// Special orbits are exactly those admissible for the trivial cover.
pub fn is_special(t: ClassicalType, p: &Partition) -> Result<bool> {
    is_quasi_admissible(t, p, CoverDegree::new(1).expect("1 is a valid degree"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub dual: Partition,
    pub image: Partition,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: ClassicalFamily,
    pub rank: u32,
    pub degree: u32,
    pub total_orbits_checked: usize,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every duality image at degree `n` against the criterion.
pub fn verify_theorem(t: ClassicalType, n: CoverDegree) -> VerificationReport {
    let duals = enumerate_orbits(dual_group(t, n).classical_type());
    let mut violations = Vec::new();
    for dual in &duals {
        let outcome = d_bv(t, n, dual).and_then(|image| {
            let failures = qa_failures(t, &image, n)?;
            Ok((image, failures))
        });
        match outcome {
            Ok((_, failures)) if failures.is_empty() => {}
            Ok((image, failures)) => violations.push(Violation { dual: dual.clone(), image, reason: failures.join("; ") }),
            Err(e) => violations.push(Violation { dual: dual.clone(), image: Partition::empty(), reason: e.to_string() }),
        }
    }
    VerificationReport {
        family: t.family,
        rank: t.rank,
        degree: n.get(),
        total_orbits_checked: duals.len(),
        violations,
    }
}

/// Orbits admissible for no degree, largest first.
pub fn n0_qa_set(t: ClassicalType) -> Vec<Partition> {
    n0_qa_set_with_bound(t, None)
}

/// As [`n0_qa_set`], enumerating degrees up to `bound` when given.
pub fn n0_qa_set_with_bound(t: ClassicalType, bound: Option<u32>) -> Vec<Partition> {
    enumerate_orbits(t)
        .into_par_iter()
        .filter(|p| {
            let set = match bound {
                Some(b) => qa_degree_set_with_bound(t, p, b),
                None => qa_degree_set(t, p),
            };
            set.map(|s| s.is_empty()).unwrap_or(false)
        })
        .collect()
}

/// Orbits outside every duality image, scanning `n` up to [`degree_cap`].
pub fn n0_bv_set(t: ClassicalType) -> Vec<Partition> {
    n0_bv_set_with_cap(t, degree_cap(t))
}

pub fn n0_bv_set_with_cap(t: ClassicalType, cap: u32) -> Vec<Partition> {
    let images: BTreeSet<Partition> = image_union(t, cap).into_iter().collect();
    enumerate_orbits(t).into_iter().filter(|p| !images.contains(p)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub rank: u32,
    pub n0_qa: Vec<Partition>,
    pub n0_bv: Vec<Partition>,
    pub equal: bool,
    /// `n0_bv` minus `n0_qa`.
    pub bv_only: Vec<Partition>,
    /// `n0_qa` minus `n0_bv`; nonempty would contradict the inclusion.
    pub qa_only: Vec<Partition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub family: ClassicalFamily,
    pub rows: Vec<ScanRow>,
    pub first_divergence: Option<u32>,
}

/// Compares `N0_QA` and `N0_BV` rank by rank.
pub fn conjecture_scan(family: ClassicalFamily, rank_max: u32) -> Result<ScanReport> {
    conjecture_scan_with_bound(family, rank_max, None)
}

/// As [`conjecture_scan`]; `bound`, when given, replaces both the degree-set
/// enumeration bound and the image degree cap.
pub fn conjecture_scan_with_bound(family: ClassicalFamily, rank_max: u32, bound: Option<u32>) -> Result<ScanReport> {
    if family == ClassicalFamily::A {
        return Err(Error::Domain("the scan covers families B, C and D".into()));
    }
    if rank_max == 0 {
        return Err(Error::Domain("rank_max must be positive".into()));
    }
    let rows: Vec<ScanRow> = (1..=rank_max)
        .into_par_iter()
        .map(|rank| {
            let t = ClassicalType { family, rank };
            let n0_qa = n0_qa_set_with_bound(t, bound);
            let n0_bv = n0_bv_set_with_cap(t, bound.unwrap_or_else(|| degree_cap(t)));
            let bv_only: Vec<Partition> = n0_bv.iter().filter(|p| !n0_qa.contains(p)).cloned().collect();
            let qa_only: Vec<Partition> = n0_qa.iter().filter(|p| !n0_bv.contains(p)).cloned().collect();
            ScanRow { rank, equal: bv_only.is_empty() && qa_only.is_empty(), n0_qa, n0_bv, bv_only, qa_only }
        })
        .collect();
    let first_divergence = rows.iter().find(|r| !r.equal).map(|r| r.rank);
    Ok(ScanReport { family, rows, first_divergence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ClassicalFamily::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    fn n(k: u32) -> CoverDegree {
        CoverDegree::new(k).unwrap()
    }

    fn t(f: ClassicalFamily, r: u32) -> ClassicalType {
        ClassicalType::new(f, r).unwrap()
    }

    #[test]
    fn counts() {
        let q = p(&[3, 3, 2, 1, 1]);
        assert_eq!(count_above(&q, 3), 0);
        assert_eq!(count_above(&q, 1), 1);
        assert_eq!(count_above(&Partition::empty(), 5), 0);
        assert_eq!(count_below(&p(&[2, 2, 1, 1, 1, 1, 1]), 2), 5);
        assert_eq!(count_below(&p(&[2, 2, 1, 1, 1]), 2), 3);
        assert_eq!(count_below(&p(&[4, 4]), 4), 0);
    }

    #[test]
    fn admissibility_examples() {
        let w = p(&[2, 2, 1, 1, 1, 1, 1]);
        for k in 1..=8 {
            assert!(!is_quasi_admissible(t(B, 4), &w, n(k)).unwrap());
        }
        assert!(is_quasi_admissible(t(B, 3), &p(&[2, 2, 1, 1, 1]), n(4)).unwrap());
        let ones = p(&[1; 6]);
        assert!(is_quasi_admissible(t(C, 3), &ones, n(1)).unwrap());
        assert!(!is_quasi_admissible(t(C, 3), &ones, n(2)).unwrap());
        assert!(is_quasi_admissible(t(A, 5), &p(&[2, 2, 1]), n(2)).unwrap());
        assert!(!is_quasi_admissible(t(A, 5), &p(&[2, 2, 1]), n(3)).unwrap());
        assert!(matches!(is_quasi_admissible(t(C, 2), &p(&[3, 1]), n(1)), Err(Error::Domain(_))));
    }

    #[test]
    fn failures_are_described() {
        let msgs = qa_failures(t(B, 4), &p(&[2, 2, 1, 1, 1, 1, 1]), n(2)).unwrap();
        assert!(!msgs.is_empty());
        assert!(qa_failures(t(B, 2), &p(&[5]), n(3)).unwrap().is_empty());
    }

    #[test]
    fn degree_set_examples() {
        assert_eq!(qa_degree_set(t(C, 2), &p(&[4])).unwrap(), DegreeSet::All);
        assert_eq!(qa_degree_set(t(B, 3), &p(&[1; 7])).unwrap(), DegreeSet::finite([1, 2], 4));
        let w = qa_degree_set(t(B, 4), &p(&[2, 2, 1, 1, 1, 1, 1])).unwrap();
        assert!(w.is_empty());
        assert_eq!(w.bound(), Some(8));
    }

    #[test]
    fn degree_set_display_and_serde() {
        let s = DegreeSet::finite([6, 1, 2], 8);
        assert_eq!(s.to_string(), "{1,2,6}");
        assert_eq!(DegreeSet::All.to_string(), "all");
        assert_eq!(DegreeSet::empty().to_string(), "{}");
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"kind":"finite","members":[1,2,6]}"#);
        assert_eq!(serde_json::to_string(&DegreeSet::All).unwrap(), r#"{"kind":"all"}"#);
        let back: DegreeSet = serde_json::from_str(r#"{"kind":"finite","members":[2]}"#).unwrap();
        assert_eq!(back, DegreeSet::finite([2], 0));
        assert_eq!(DegreeSet::finite([2], 4), DegreeSet::finite([2], 99));
    }

    #[test]
    fn intersection() {
        let a = DegreeSet::finite([1, 2, 3, 6], 6);
        let b = DegreeSet::finite([2, 4], 4);
        assert_eq!(a.intersect(&b), DegreeSet::finite([2], 0));
        assert_eq!(a.intersect(&DegreeSet::All), a);
    }

    #[test]
    fn special_examples() {
        assert!(is_special(t(B, 2), &p(&[5])).unwrap());
        assert!(is_special(t(B, 2), &p(&[3, 1, 1])).unwrap());
        assert!(!is_special(t(B, 4), &p(&[2, 2, 1, 1, 1, 1, 1])).unwrap());
    }

    #[test]
    fn verify_examples() {
        assert!(verify_theorem(t(B, 4), n(3)).holds());
        assert!(verify_theorem(t(C, 5), n(2)).holds());
        let r = verify_theorem(t(A, 6), n(4));
        assert!(r.holds());
        assert_eq!(r.total_orbits_checked, 11);
    }

    #[test]
    fn n0_examples() {
        assert!(n0_qa_set(t(B, 3)).is_empty());
        assert!(n0_qa_set(t(B, 4)).contains(&p(&[2, 2, 1, 1, 1, 1, 1])));
        assert!(n0_qa_set(t(D, 6)).contains(&p(&[3, 2, 2, 1, 1, 1, 1, 1])));
        assert!(n0_bv_set(t(B, 1)).is_empty());
        assert!(n0_bv_set(t(B, 4)).contains(&p(&[2, 2, 1, 1, 1, 1, 1])));
        let qa = n0_qa_set(t(C, 5));
        let bv = n0_bv_set(t(C, 5));
        assert!(qa.iter().all(|x| bv.contains(x)));
    }

    #[test]
    fn scan_rejects_bad_input() {
        assert!(conjecture_scan(A, 3).is_err());
        assert!(conjecture_scan(B, 0).is_err());
        let r = conjecture_scan(C, 4).unwrap();
        assert_eq!(r.rows.len(), 4);
    }
}
