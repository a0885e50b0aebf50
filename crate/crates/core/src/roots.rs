//! Root systems, weighted Dynkin diagrams and the induced gradings.
//!
//! Cartan matrices follow the convention `a[i][j] = 2(α_i, α_j) / (α_i, α_i)`,
//! so `<β, α_i^∨> = Σ_j m_j a[i][j]` for `β = Σ_j m_j α_j`. Nodes use the
//! Bourbaki numbering; for the E series the chain is `α1 α3 α4 α5 ...` with
//! `α2` attached to `α4`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanKind {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl CartanKind {
    pub fn rank(self) -> usize {
        match self {
            CartanKind::A(r) | CartanKind::B(r) | CartanKind::C(r) | CartanKind::D(r) => r as usize,
            CartanKind::E6 => 6,
            CartanKind::E7 => 7,
            CartanKind::E8 => 8,
            CartanKind::F4 => 4,
            CartanKind::G2 => 2,
        }
    }
}

impl fmt::Display for CartanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanKind::A(r) => write!(f, "A{r}"),
            CartanKind::B(r) => write!(f, "B{r}"),
            CartanKind::C(r) => write!(f, "C{r}"),
            CartanKind::D(r) => write!(f, "D{r}"),
            CartanKind::E6 => f.write_str("E6"),
            CartanKind::E7 => f.write_str("E7"),
            CartanKind::E8 => f.write_str("E8"),
            CartanKind::F4 => f.write_str("F4"),
            CartanKind::G2 => f.write_str("G2"),
        }
    }
}

impl FromStr for CartanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_uppercase();
        let bad = || Error::Domain(format!("unknown Cartan type {s:?}"));
        let (head, tail) = s.split_at(s.chars().next().map(char::len_utf8).ok_or_else(bad)?);
        let rank: u32 = tail.trim_start_matches('_').parse().map_err(|_| bad())?;
        match (head, rank) {
            ("A", r) => Ok(CartanKind::A(r)),
            ("B", r) => Ok(CartanKind::B(r)),
            ("C", r) => Ok(CartanKind::C(r)),
            ("D", r) => Ok(CartanKind::D(r)),
            ("E", 6) => Ok(CartanKind::E6),
            ("E", 7) => Ok(CartanKind::E7),
            ("E", 8) => Ok(CartanKind::E8),
            ("F", 4) => Ok(CartanKind::F4),
            ("G", 2) => Ok(CartanKind::G2),
            _ => Err(bad()),
        }
    }
}

/// A Cartan type together with its Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanSpec {
    kind: CartanKind,
    matrix: Vec<Vec<i32>>,
}

impl CartanSpec {
    pub fn new(kind: CartanKind) -> Result<Self> {
        let r = kind.rank();
        let min = match kind {
            CartanKind::D(_) => 2,
            _ => 1,
        };
        if r < min {
            return Err(Error::Domain(format!("rank of {kind} is too small")));
        }
        let mut m = vec![vec![0i32; r]; r];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            m[i][j] = -1;
            m[j][i] = -1;
        };
        match kind {
            CartanKind::A(_) | CartanKind::B(_) | CartanKind::C(_) | CartanKind::F4 | CartanKind::G2 => {
                for i in 0..r - 1 {
                    link(i, i + 1);
                }
            }
            CartanKind::D(_) => {
                for i in 0..r.saturating_sub(2) {
                    link(i, i + 1);
                }
                if r >= 3 {
                    link(r - 3, r - 1);
                }
            }
            CartanKind::E6 | CartanKind::E7 | CartanKind::E8 => {
                link(0, 2);
                link(1, 3);
                for i in 2..r - 1 {
                    link(i, i + 1);
                }
            }
        }
        match kind {
            // α_r short
            CartanKind::B(_) if r >= 2 => m[r - 1][r - 2] = -2,
            // α_r long
            CartanKind::C(_) if r >= 2 => m[r - 2][r - 1] = -2,
            // α3, α4 short
            CartanKind::F4 => m[2][1] = -2,
            // α1 short
            CartanKind::G2 => m[0][1] = -3,
            _ => {}
        }
        Ok(CartanSpec { kind, matrix: m })
    }

    pub fn kind(&self) -> CartanKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.matrix
    }

    /// Cached positive roots.
    pub fn positive_roots(&self) -> Arc<[Root]> {
        static CACHE: OnceLock<Mutex<HashMap<CartanKind, Arc<[Root]>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(hit) = cache.lock().expect("root cache poisoned").get(&self.kind) {
            return Arc::clone(hit);
        }
        let roots: Arc<[Root]> = positive_roots_of(&self.matrix).into();
        cache
            .lock()
            .expect("root cache poisoned")
            .entry(self.kind)
            .or_insert(roots)
            .clone()
    }

    pub fn dimension(&self) -> usize {
        self.rank() + 2 * self.positive_roots().len()
    }
}

impl fmt::Display for CartanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

/// A root in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub height: i32,
    pub coefficients: Vec<i32>,
}

impl Root {
    fn new(coefficients: Vec<i32>) -> Self {
        Root { height: coefficients.iter().sum(), coefficients }
    }

    pub fn is_positive(&self) -> bool {
        self.coefficients.iter().all(|&c| c >= 0)
    }
}

pub fn positive_roots(spec: &CartanSpec) -> Vec<Root> {
    spec.positive_roots().to_vec()
}

/// Positive roots of any Cartan matrix of finite type, closed under
/// root-string extension. Sorted by height, then coefficients.
pub fn positive_roots_of(matrix: &[Vec<i32>]) -> Vec<Root> {
    let r = matrix.len();
    let simple = |i: usize| {
        let mut v = vec![0i32; r];
        v[i] = 1;
        v
    };
    let mut known: HashSet<Vec<i32>> = (0..r).map(simple).collect();
    let mut layer: Vec<Vec<i32>> = (0..r).map(simple).collect();
    let mut all = layer.clone();
    while !layer.is_empty() {
        let mut next: BTreeSet<Vec<i32>> = BTreeSet::new();
        for beta in &layer {
            for i in 0..r {
                // how far the α_i-string through β extends downwards
                let mut p = 0;
                let mut lower = beta.clone();
                loop {
                    lower[i] -= 1;
                    if known.contains(&lower) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i32 = (0..r).map(|j| beta[j] * matrix[i][j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        layer = next.into_iter().collect();
        for v in &layer {
            known.insert(v.clone());
        }
        all.extend(layer.iter().cloned());
    }
    let mut roots: Vec<Root> = all.into_iter().map(Root::new).collect();
    roots.sort();
    roots
}

/// Node labels `α_i(h) ∈ {0,1,2}`, in node order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedDynkinDiagram {
    spec: CartanSpec,
    labels: Vec<u8>,
}

impl WeightedDynkinDiagram {
    pub fn new(spec: CartanSpec, labels: &[i64]) -> Result<Self> {
        if labels.len() != spec.rank() {
            return Err(Error::InvalidDiagram(format!(
                "{} needs {} labels, got {}",
                spec.kind(),
                spec.rank(),
                labels.len()
            )));
        }
        let labels = labels
            .iter()
            .map(|&l| match l {
                0..=2 => Ok(l as u8),
                _ => Err(Error::InvalidDiagram(format!("label {l} is not in {{0,1,2}}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightedDynkinDiagram { spec, labels })
    }

    pub fn spec(&self) -> &CartanSpec {
        &self.spec
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// All labels even; the grading then lives in even degrees.
    pub fn is_even(&self) -> bool {
        self.labels.iter().all(|l| l % 2 == 0)
    }
}

/// `dim g[i]` for every degree with a nonzero piece.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims {
    pub dims: BTreeMap<i32, usize>,
}

impl GradedDims {
    pub fn get(&self, i: i32) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.dims.iter().all(|(&i, &d)| self.get(-i) == d)
    }
}

pub fn graded_dims(wd: &WeightedDynkinDiagram) -> GradedDims {
    let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
    dims.insert(0, wd.spec.rank());
    for root in wd.spec.positive_roots().iter() {
        let w: i32 = root.coefficients.iter().zip(&wd.labels).map(|(&m, &l)| m * l as i32).sum();
        *dims.entry(w).or_default() += 1;
        *dims.entry(-w).or_default() += 1;
    }
    GradedDims { dims }
}

/// Nodes labelled 0, numbered from 1.
pub fn levi_nodes(wd: &WeightedDynkinDiagram) -> BTreeSet<usize> {
    wd.labels.iter().enumerate().filter(|(_, &l)| l == 0).map(|(i, _)| i + 1).collect()
}

/// Dimension of the centre of `g[0]`.
pub fn center_dim(wd: &WeightedDynkinDiagram) -> usize {
    wd.labels.iter().filter(|&&l| l != 0).count()
}

/// A connected piece of the Levi sub-diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviComponent {
    pub kind: CartanKind,
    /// Node numbers from 1.
    pub nodes: Vec<usize>,
    /// `rank + 2 · #positive roots` of the sub-diagram.
    pub dimension: usize,
}

fn sub_matrix(matrix: &[Vec<i32>], nodes: &[usize]) -> Vec<Vec<i32>> {
    nodes.iter().map(|&i| nodes.iter().map(|&j| matrix[i][j]).collect()).collect()
}

/// Connected components of the sub-diagram on `nodes` (0-based).
fn components(matrix: &[Vec<i32>], nodes: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in nodes {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for &j in nodes {
                if matrix[i][j] != 0 && i != j && seen.insert(j) {
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Names a connected Cartan matrix of finite type.
pub fn classify_connected(matrix: &[Vec<i32>]) -> Result<CartanKind> {
    let n = matrix.len();
    let unknown = || Error::InvalidDiagram("unrecognised connected Cartan matrix".into());
    if n == 0 {
        return Err(unknown());
    }
    let neighbours = |i: usize| (0..n).filter(move |&j| j != i && matrix[i][j] != 0);
    let degree = |i: usize| neighbours(i).count();
    let edges: usize = (0..n).map(degree).sum::<usize>() / 2;
    if edges + 1 != n || (0..n).any(|i| degree(i) > 3) {
        return Err(unknown());
    }
    let r = n as u32;
    let multiple: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| matrix[i][j] < -1)
        .collect();
    if let Some(&(short, long)) = multiple.first() {
        if multiple.len() > 1 || (0..n).any(|i| degree(i) > 2) {
            return Err(unknown());
        }
        if matrix[short][long] == -3 {
            return if n == 2 { Ok(CartanKind::G2) } else { Err(unknown()) };
        }
        if n == 2 {
            return Ok(CartanKind::B(2));
        }
        return match (degree(short), degree(long)) {
            (1, _) => Ok(CartanKind::B(r)),
            (_, 1) => Ok(CartanKind::C(r)),
            _ if n == 4 => Ok(CartanKind::F4),
            _ => Err(unknown()),
        };
    }
    let Some(branch) = (0..n).find(|&i| degree(i) == 3) else {
        return Ok(CartanKind::A(r));
    };
    if (0..n).filter(|&i| degree(i) == 3).count() > 1 {
        return Err(unknown());
    }
    let mut legs: Vec<usize> = neighbours(branch)
        .map(|first| {
            let (mut prev, mut cur, mut len) = (branch, first, 1);
            while let Some(next) = neighbours(cur).find(|&j| j != prev) {
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    legs.sort_unstable();
    match legs.as_slice() {
        [1, 1, _] => Ok(CartanKind::D(r)),
        [1, 2, 2] => Ok(CartanKind::E6),
        [1, 2, 3] => Ok(CartanKind::E7),
        [1, 2, 4] => Ok(CartanKind::E8),
        _ => Err(unknown()),
    }
}

/// Simple factors of the Levi subalgebra `g[0]`.
pub fn levi_components(wd: &WeightedDynkinDiagram) -> Vec<LeviComponent> {
    let zero: BTreeSet<usize> = levi_nodes(wd).into_iter().map(|i| i - 1).collect();
    components(wd.spec.cartan_matrix(), &zero)
        .into_iter()
        .map(|nodes| {
            let sub = sub_matrix(wd.spec.cartan_matrix(), &nodes);
            let kind = classify_connected(&sub).expect("sub-diagrams of Dynkin diagrams are Dynkin");
            let dimension = sub.len() + 2 * positive_roots_of(&sub).len();
            LeviComponent { kind, nodes: nodes.iter().map(|i| i + 1).collect(), dimension }
        })
        .collect()
}

/// Dimension of the semisimple part of `g[0]`.
pub fn levi_semisimple_dim(wd: &WeightedDynkinDiagram) -> usize {
    levi_components(wd).iter().map(|c| c.dimension).sum()
}

/// Levi type such as `A4+A1`, or `T` when the Levi is a torus.
pub fn levi_type(wd: &WeightedDynkinDiagram) -> String {
    let comps = levi_components(wd);
    if comps.is_empty() {
        return "T".into();
    }
    comps.iter().map(|c| c.kind.to_string()).collect::<Vec<_>>().join("+")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(k: CartanKind) -> CartanSpec {
        CartanSpec::new(k).unwrap()
    }

    fn wd(k: CartanKind, labels: &[i64]) -> WeightedDynkinDiagram {
        WeightedDynkinDiagram::new(spec(k), labels).unwrap()
    }

    #[test]
    fn root_counts() {
        assert_eq!(spec(CartanKind::E6).positive_roots().len(), 36);
        assert_eq!(spec(CartanKind::E7).positive_roots().len(), 63);
        assert_eq!(spec(CartanKind::E8).positive_roots().len(), 120);
        assert_eq!(spec(CartanKind::F4).positive_roots().len(), 24);
        assert_eq!(spec(CartanKind::G2).positive_roots().len(), 6);
        let a2 = positive_roots(&spec(CartanKind::A(2)));
        let coeffs: Vec<Vec<i32>> = a2.iter().map(|r| r.coefficients.clone()).collect();
        assert_eq!(coeffs, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn highest_roots() {
        let top = |k| spec(k).positive_roots().last().unwrap().coefficients.clone();
        assert_eq!(top(CartanKind::E8), vec![2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(top(CartanKind::E6), vec![1, 2, 2, 3, 2, 1]);
        assert_eq!(top(CartanKind::B(3)), vec![1, 2, 2]);
        assert_eq!(top(CartanKind::C(3)), vec![2, 2, 1]);
    }

    #[test]
    fn matrix_checks() {
        assert!(CartanSpec::new(CartanKind::D(1)).is_err());
        assert!(CartanSpec::new(CartanKind::A(0)).is_err());
        let b2 = spec(CartanKind::B(2));
        assert_eq!(b2.cartan_matrix(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(spec(CartanKind::E8).dimension(), 248);
    }

    #[test]
    fn parses_kinds() {
        assert_eq!("E7".parse::<CartanKind>().unwrap(), CartanKind::E7);
        assert_eq!("d_5".parse::<CartanKind>().unwrap(), CartanKind::D(5));
        assert!("E9".parse::<CartanKind>().is_err());
        assert!("".parse::<CartanKind>().is_err());
    }

    #[test]
    fn grading_examples() {
        let g = graded_dims(&wd(CartanKind::E6, &[0, 1, 0, 0, 0, 0]));
        assert_eq!((g.get(1), g.get(2)), (20, 1));
        let g = graded_dims(&wd(CartanKind::E6, &[1, 0, 0, 0, 0, 1]));
        assert_eq!((g.get(1), g.get(2)), (16, 8));
        let g = graded_dims(&wd(CartanKind::E8, &[0; 8]));
        assert_eq!(g.dims, BTreeMap::from([(0, 248)]));
        let g = graded_dims(&wd(CartanKind::E7, &[1, 0, 0, 0, 0, 0, 0]));
        assert_eq!((g.get(1), g.get(2)), (32, 1));
        assert!(g.is_symmetric());
        assert_eq!(g.total(), 133);
    }

    #[test]
    fn bad_labels() {
        let e6 = spec(CartanKind::E6);
        assert!(matches!(WeightedDynkinDiagram::new(e6.clone(), &[0, 3, 0, 0, 0, 0]), Err(Error::InvalidDiagram(_))));
        assert!(matches!(WeightedDynkinDiagram::new(e6.clone(), &[0, -1, 0, 0, 0, 0]), Err(Error::InvalidDiagram(_))));
        assert!(matches!(WeightedDynkinDiagram::new(e6, &[0, 1]), Err(Error::InvalidDiagram(_))));
    }

    #[test]
    fn levi_examples() {
        let d = wd(CartanKind::E6, &[0, 1, 0, 0, 0, 0]);
        assert_eq!(levi_nodes(&d), BTreeSet::from([1, 3, 4, 5, 6]));
        assert_eq!(levi_type(&d), "A5");
        assert_eq!(center_dim(&d), 1);
        assert_eq!(graded_dims(&d).get(0) - center_dim(&d), levi_semisimple_dim(&d));

        let d = wd(CartanKind::E7, &[1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(levi_nodes(&d), BTreeSet::from([2, 3, 4, 5, 6, 7]));
        assert_eq!(levi_type(&d), "D6");

        let d = wd(CartanKind::E6, &[2; 6]);
        assert!(levi_nodes(&d).is_empty());
        assert_eq!(levi_type(&d), "T");
        assert_eq!(center_dim(&wd(CartanKind::E6, &[1, 1, 0, 0, 0, 1])), 3);
        assert_eq!(center_dim(&wd(CartanKind::E6, &[0; 6])), 0);
        assert_eq!(levi_type(&wd(CartanKind::E8, &[0; 8])), "E8");
        assert_eq!(levi_type(&wd(CartanKind::E7, &[0, 0, 0, 0, 0, 0, 1])), "E6");
    }

    #[test]
    fn classification() {
        for k in [
            CartanKind::A(4),
            CartanKind::B(3),
            CartanKind::C(4),
            CartanKind::D(5),
            CartanKind::E6,
            CartanKind::E7,
            CartanKind::E8,
            CartanKind::F4,
            CartanKind::G2,
            CartanKind::B(2),
        ] {
            assert_eq!(classify_connected(spec(k).cartan_matrix()).unwrap(), k);
        }
        assert_eq!(classify_connected(spec(CartanKind::D(3)).cartan_matrix()).unwrap(), CartanKind::A(3));
    }
}
