//! Integer partitions as Jordan types of nilpotent orbits.
//!
//! Besides the usual arithmetic (transpose, dominance order, enumeration)
//! this module hosts the collapse and decoration operations used by the
//! covering duality maps. All of them are built on the pair-balancing
//! operation [`star`]: walking a non-increasing sequence two entries at a
//! time, every strictly decreasing pair `(a, b)` becomes `(a - 1, b + 1)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition: parts are positive and kept in non-increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from arbitrary non-negative parts, sorting them and
    /// dropping zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Partition `[value^count]`.
    pub fn rectangle(value: u32, count: usize) -> Self {
        Partition::new(vec![value; count])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Distinct part values with their multiplicities, largest value first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn multiplicity(&self, value: u32) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    /// Conjugate partition: column lengths of the Young diagram.
    pub fn transpose(&self) -> Partition {
        let width = self.largest();
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Dominance order: equal weight and every prefix sum of `self` bounded
    /// by the corresponding prefix sum of `other`.
    pub fn dominance_leq(&self, other: &Partition) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..len {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }

    /// `p^+`: the largest part grows by one (`[] -> [1]`).
    pub fn plus(&self) -> Partition {
        let mut parts = self.parts.clone();
        match parts.first_mut() {
            Some(first) => *first += 1,
            None => parts.push(1),
        }
        Partition { parts }
    }

    /// `p^-`: the smallest part shrinks by one and disappears at zero.
    pub fn minus(&self) -> Result<Partition> {
        let mut parts = self.parts.clone();
        match parts.last_mut() {
            Some(last) => *last -= 1,
            None => {
                return Err(Error::InvalidPartition(
                    "cannot lower the smallest part of the empty partition".into(),
                ))
            }
        }
        Ok(Partition::new(parts))
    }

    fn split_parity(&self) -> (Vec<u32>, Vec<u32>) {
        self.parts.iter().partition(|&&p| p % 2 == 0)
    }
}

/// Accepts any signed input; negative entries are rejected.
pub fn make_partition(values: &[i64]) -> Result<Partition> {
    let parts = values
        .iter()
        .map(|&v| {
            u32::try_from(v).map_err(|_| Error::InvalidPartition(format!("part {v} is not a non-negative integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition::new(parts))
}

impl From<Vec<u32>> for Partition {
    fn from(parts: Vec<u32>) -> Self {
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// Parses comma-separated parts, optionally bracketed; `a^k` repeats `a`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let mut values = Vec::new();
        for item in body.split(',') {
            let item = item.trim();
            let (base, count) = match item.split_once('^') {
                Some((b, c)) => (b.trim(), c.trim()),
                None => (item, "1"),
            };
            let bad = || Error::InvalidPartition(format!("cannot parse part {item:?}"));
            let value: i64 = base.parse().map_err(|_| bad())?;
            let count: usize = count.parse().map_err(|_| bad())?;
            values.extend(std::iter::repeat_n(value, count));
        }
        make_partition(&values)
    }
}

/// Classical Cartan families; `A` stands for `GL_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassicalFamily {
    A,
    B,
    C,
    D,
}

impl ClassicalFamily {
    pub const ALL: [ClassicalFamily; 4] = [Self::A, Self::B, Self::C, Self::D];

    pub fn collapse_kind(self) -> Option<CollapseKind> {
        match self {
            Self::A => None,
            Self::B => Some(CollapseKind::B),
            Self::C => Some(CollapseKind::C),
            Self::D => Some(CollapseKind::D),
        }
    }
}

impl fmt::Display for ClassicalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for ClassicalFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Self::A),
            "B" => Ok(Self::B),
            "C" => Ok(Self::C),
            "D" => Ok(Self::D),
            other => Err(Error::Domain(format!("unknown classical family {other:?}"))),
        }
    }
}

/// A classical group: `GL_r`, `SO_{2r+1}`, `Sp_{2r}` or `SO_{2r}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassicalType {
    pub family: ClassicalFamily,
    pub rank: u32,
}

impl ClassicalType {
    pub fn new(family: ClassicalFamily, rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Domain("rank must be positive".into()));
        }
        Ok(ClassicalType { family, rank })
    }

    /// Weight of the partitions labelling orbits of this group.
    pub fn orbit_weight(&self) -> u32 {
        match self.family {
            ClassicalFamily::A => self.rank,
            ClassicalFamily::B => 2 * self.rank + 1,
            ClassicalFamily::C | ClassicalFamily::D => 2 * self.rank,
        }
    }
}

impl fmt::Display for ClassicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Parity rule without the weight condition: B and D forbid even parts of
/// odd multiplicity, C forbids odd parts of odd multiplicity.
pub fn satisfies_parity_rule(family: ClassicalFamily, p: &Partition) -> bool {
    let bad_parity = match family {
        ClassicalFamily::A => return true,
        ClassicalFamily::B | ClassicalFamily::D => 0,
        ClassicalFamily::C => 1,
    };
    p.multiplicities()
        .iter()
        .all(|&(v, m)| v % 2 != bad_parity || m % 2 == 0)
}

pub fn is_valid_orbit_partition(t: ClassicalType, p: &Partition) -> bool {
    p.weight() == t.orbit_weight() && satisfies_parity_rule(t.family, p)
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn all_partitions(n: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Orbits of `t`, largest (regular) orbit first.
pub fn enumerate_orbits(t: ClassicalType) -> Vec<Partition> {
    all_partitions(t.orbit_weight())
        .into_iter()
        .filter(|p| satisfies_parity_rule(t.family, p))
        .collect()
}

/// A non-increasing sequence of non-negative integers; zeros are kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SortedSequence {
    values: Vec<u32>,
}

impl SortedSequence {
    pub fn new(mut values: Vec<u32>) -> Self {
        values.sort_unstable_by(|a, b| b.cmp(a));
        SortedSequence { values }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_partition(self) -> Partition {
        Partition::new(self.values)
    }
}

/// Pair-balancing on an even-length sequence; the result is re-sorted.
pub fn star(s: &SortedSequence) -> Result<SortedSequence> {
    if !s.values.len().is_multiple_of(2) {
        return Err(Error::BadSequence(format!(
            "pair balancing needs an even number of entries, got {}",
            s.values.len()
        )));
    }
    let mut values = s.values.clone();
    balance_pairs(&mut values);
    Ok(SortedSequence::new(values))
}

// Caller guarantees a non-increasing slice of even length.
fn balance_pairs(values: &mut [u32]) {
    debug_assert!(values.len().is_multiple_of(2));
    for pair in values.chunks_exact_mut(2) {
        if pair[0] > pair[1] {
            pair[0] -= 1;
            pair[1] += 1;
        }
    }
}

fn sort_desc(v: &mut [u32]) {
    v.sort_unstable_by(|a, b| b.cmp(a));
}

fn merge(a: Vec<u32>, b: Vec<u32>) -> Partition {
    let mut parts = a;
    parts.extend(b);
    Partition::new(parts)
}

/// Target of a collapse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CollapseKind {
    B,
    C,
    D,
}

impl CollapseKind {
    pub fn family(self) -> ClassicalFamily {
        match self {
            Self::B => ClassicalFamily::B,
            Self::C => ClassicalFamily::C,
            Self::D => ClassicalFamily::D,
        }
    }
}

/// The X-collapse: the largest partition satisfying the type-X parity rule
/// that is dominated by `p`.
pub fn collapse(target: CollapseKind, p: &Partition) -> Partition {
    let (evens, odds) = p.split_parity();
    let (mut moved, kept) = match target {
        CollapseKind::B | CollapseKind::D => (evens, odds),
        CollapseKind::C => (odds, evens),
    };
    if moved.len() % 2 == 1 {
        moved.push(0);
    }
    balance_pairs(&mut moved);
    merge(moved, kept)
}

/// `(p^+)_B` computed directly on the even parts.
pub fn plus_b(p: &Partition) -> Partition {
    let (mut evens, odds) = p.split_parity();
    if evens.len() % 2 == 0 {
        evens.push(0);
    }
    evens[0] += 1;
    balance_pairs(&mut evens[1..]);
    merge(evens, odds)
}

/// `(p^-)_C` computed directly on the odd parts.
///
/// The direct rule needs an odd number of odd parts, which is what the
/// duality maps produce. With an even count the composite
/// `collapse(C, minus(p))` is used instead.
pub fn minus_c(p: &Partition) -> Result<Partition> {
    if p.is_empty() {
        return Err(Error::InvalidPartition("cannot lower the empty partition".into()));
    }
    let (mut odds, evens) = {
        let (e, o) = p.split_parity();
        (o, e)
    };
    if odds.len() % 2 == 0 {
        return Ok(collapse(CollapseKind::C, &p.minus()?));
    }
    let last = odds.len() - 1;
    balance_pairs(&mut odds[..last]);
    odds[last] -= 1;
    sort_desc(&mut odds);
    Ok(merge(odds, evens))
}

/// `(p^{+-})_C` computed directly on the odd parts.
///
/// Needs an even number of odd parts. Without odd parts the direct rule has
/// nothing to act on and the composite `collapse(C, minus(plus(p)))` is used.
pub fn plus_minus_c(p: &Partition) -> Result<Partition> {
    let (evens, mut odds) = p.split_parity();
    if odds.is_empty() {
        return Ok(collapse(CollapseKind::C, &p.plus().minus()?));
    }
    if odds.len() % 2 == 1 {
        return Err(Error::Domain(format!("{p} has an odd number of odd parts")));
    }
    let last = odds.len() - 1;
    odds[0] += 1;
    odds[last] -= 1;
    balance_pairs(&mut odds[1..last]);
    Ok(merge(odds, evens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn construction_sorts_and_strips() {
        assert_eq!(make_partition(&[1, 3, 2, 0]).unwrap(), p(&[3, 2, 1]));
        assert_eq!(make_partition(&[]).unwrap(), Partition::empty());
        assert_eq!(make_partition(&[]).unwrap().weight(), 0);
        assert_eq!(make_partition(&[2, 2, 1, 1, 1]).unwrap().parts(), &[2, 2, 1, 1, 1]);
        assert!(matches!(make_partition(&[2, -1]), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("2^2,1^5".parse::<Partition>().unwrap(), p(&[2, 2, 1, 1, 1, 1, 1]));
        assert_eq!("[4, 2]".parse::<Partition>().unwrap(), p(&[4, 2]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("3,x".parse::<Partition>().is_err());
        assert!("3,-1".parse::<Partition>().is_err());
        assert_eq!(p(&[3, 1, 1]).to_string(), "[3,1,1]");
        assert_eq!(Partition::empty().to_string(), "[]");
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[5, 4]).transpose(), p(&[2, 2, 2, 2, 1]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
        assert_eq!(p(&[7]).transpose(), p(&[1; 7]));
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[3, 3]).dominance_leq(&p(&[4, 2])));
        assert!(!p(&[4, 2]).dominance_leq(&p(&[3, 3])));
        assert!(p(&[2, 2, 2]).dominance_leq(&p(&[3, 2, 1])));
        assert!(!p(&[2, 2]).dominance_leq(&p(&[3, 2])));
    }

    #[test]
    fn validity_examples() {
        let b4 = ClassicalType::new(ClassicalFamily::B, 4).unwrap();
        let c2 = ClassicalType::new(ClassicalFamily::C, 2).unwrap();
        let d3 = ClassicalType::new(ClassicalFamily::D, 3).unwrap();
        assert!(is_valid_orbit_partition(b4, &p(&[2, 2, 1, 1, 1, 1, 1])));
        assert!(!is_valid_orbit_partition(c2, &p(&[3, 1])));
        assert!(is_valid_orbit_partition(d3, &p(&[3, 3])));
        assert!(!is_valid_orbit_partition(d3, &p(&[3, 2, 1])));
        assert!(ClassicalType::new(ClassicalFamily::A, 0).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let c2 = ClassicalType::new(ClassicalFamily::C, 2).unwrap();
        assert_eq!(
            enumerate_orbits(c2),
            vec![p(&[4]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        let b1 = ClassicalType::new(ClassicalFamily::B, 1).unwrap();
        assert_eq!(enumerate_orbits(b1), vec![p(&[3]), p(&[1, 1, 1])]);
        let a3 = ClassicalType::new(ClassicalFamily::A, 3).unwrap();
        assert_eq!(enumerate_orbits(a3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
    }

    #[test]
    fn partition_counts() {
        // p(n) for n = 0..=12
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(all_partitions(n as u32).len(), count, "p({n})");
        }
    }

    #[test]
    fn star_examples() {
        let s = |v: &[u32]| SortedSequence::new(v.to_vec());
        assert_eq!(star(&s(&[6, 4, 2, 0])).unwrap().values(), &[5, 5, 1, 1]);
        assert_eq!(star(&s(&[3, 3])).unwrap().values(), &[3, 3]);
        assert_eq!(star(&s(&[1, 0])).unwrap().values(), &[1, 0]);
        assert!(matches!(star(&s(&[3, 2, 1])), Err(Error::BadSequence(_))));
    }

    #[test]
    fn collapse_examples() {
        assert_eq!(collapse(CollapseKind::D, &p(&[4, 2])), p(&[3, 3]));
        assert_eq!(collapse(CollapseKind::B, &p(&[4, 4, 3])), p(&[4, 4, 3]));
        assert_eq!(collapse(CollapseKind::C, &p(&[5, 3, 2, 1, 1])), p(&[4, 4, 2, 1, 1]));
        assert_eq!(collapse(CollapseKind::B, &Partition::empty()), Partition::empty());
    }

    #[test]
    fn plus_minus_examples() {
        assert_eq!(p(&[1, 1, 1, 1]).plus(), p(&[2, 1, 1, 1]));
        assert_eq!(Partition::empty().plus(), p(&[1]));
        assert_eq!(p(&[5, 3, 1]).minus().unwrap(), p(&[5, 3]));
        assert_eq!(p(&[1]).minus().unwrap(), Partition::empty());
        assert!(Partition::empty().minus().is_err());
    }

    #[test]
    fn plus_b_examples() {
        assert_eq!(plus_b(&p(&[1, 1, 1, 1])), p(&[1, 1, 1, 1, 1]));
        assert_eq!(plus_b(&p(&[1, 1, 1, 1])), collapse(CollapseKind::B, &p(&[1, 1, 1, 1]).plus()));
        assert_eq!(plus_b(&p(&[5, 2])), p(&[5, 3]));
        assert_eq!(plus_b(&p(&[3])), p(&[3, 1]));
    }

    #[test]
    fn minus_c_examples() {
        assert_eq!(minus_c(&p(&[5, 3, 1])).unwrap(), p(&[4, 4]));
        assert_eq!(minus_c(&p(&[1])).unwrap(), Partition::empty());
        assert_eq!(minus_c(&p(&[3, 3, 3])).unwrap(), p(&[3, 3, 2]));
        assert!(matches!(minus_c(&Partition::empty()), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn plus_minus_c_examples() {
        assert_eq!(plus_minus_c(&p(&[1, 1, 1, 1])).unwrap(), p(&[2, 1, 1]));
        assert_eq!(plus_minus_c(&p(&[3, 3])).unwrap(), p(&[4, 2]));
        assert_eq!(plus_minus_c(&p(&[5, 1, 1, 1])).unwrap(), p(&[6, 1, 1]));
        assert!(matches!(plus_minus_c(&p(&[4, 3])), Err(Error::Domain(_))));
        assert!(matches!(plus_minus_c(&p(&[3, 1, 1])), Err(Error::Domain(_))));
        assert_eq!(plus_minus_c(&p(&[2, 2])).unwrap(), p(&[2, 2]));
        assert_eq!(plus_minus_c(&p(&[10])).unwrap(), p(&[10]));
        assert_eq!(plus_minus_c(&Partition::empty()).unwrap(), Partition::empty());
    }

    #[test]
    fn multiplicity_view() {
        let q = p(&[3, 3, 2, 1, 1, 1]);
        assert_eq!(q.multiplicities(), vec![(3, 2), (2, 1), (1, 3)]);
        assert_eq!(q.multiplicity(1), 3);
        assert_eq!(q.multiplicity(5), 0);
    }
}
