//! Covering Barbasch-Vogan duality for the classical families.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{
    collapse, enumerate_orbits, is_valid_orbit_partition, minus_c, plus_b, plus_minus_c, ClassicalFamily,
    ClassicalType, CollapseKind, Partition,
};

/// Degree `n >= 1` of the central extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct CoverDegree(u32);

impl CoverDegree {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("cover degree must be at least 1".into()));
        }
        Ok(CoverDegree(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `n / gcd(n, 2)`.
    pub fn n_star(self) -> u32 {
        if self.0.is_multiple_of(2) {
            self.0 / 2
        } else {
            self.0
        }
    }

    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }
}

impl TryFrom<u32> for CoverDegree {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        CoverDegree::new(n)
    }
}

impl From<CoverDegree> for u32 {
    fn from(n: CoverDegree) -> u32 {
        n.0
    }
}

impl fmt::Display for CoverDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The group whose orbits form the domain of `d_bv(t, n, ·)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualGroupSpec {
    pub family: ClassicalFamily,
    pub rank: u32,
    pub orbit_weight: u32,
}

impl DualGroupSpec {
    pub fn classical_type(&self) -> ClassicalType {
        ClassicalType { family: self.family, rank: self.rank }
    }
}

/// `s(m; n) = [n^a, b]` where `m = n a + b`, `0 <= b < n`.
pub fn s_partition(m: u32, n: CoverDegree) -> Partition {
    let n = n.get();
    let mut parts = vec![n; (m / n) as usize];
    parts.push(m % n);
    Partition::new(parts)
}

/// Coordinatewise sum of the zero-padded vectors `s(p_i; n)`.
pub fn d_com_a(n: CoverDegree, p: &Partition) -> Partition {
    let k = n.get();
    let len = p.parts().iter().map(|&m| m.div_ceil(k)).max().unwrap_or(0) as usize;
    let mut out = vec![0u32; len];
    for &m in p.parts() {
        let full = (m / k) as usize;
        for slot in out.iter_mut().take(full) {
            *slot += k;
        }
        if m % k != 0 {
            out[full] += m % k;
        }
    }
    Partition::new(out)
}

pub fn dual_group(t: ClassicalType, n: CoverDegree) -> DualGroupSpec {
    let r = t.rank;
    let (family, orbit_weight) = match t.family {
        ClassicalFamily::A => (ClassicalFamily::A, r),
        ClassicalFamily::B if n.n_star() % 2 == 1 => (ClassicalFamily::C, 2 * r),
        ClassicalFamily::B => (ClassicalFamily::B, 2 * r + 1),
        ClassicalFamily::C if n.is_odd() => (ClassicalFamily::B, 2 * r + 1),
        ClassicalFamily::C => (ClassicalFamily::C, 2 * r),
        ClassicalFamily::D => (ClassicalFamily::D, 2 * r),
    };
    DualGroupSpec { family, rank: r, orbit_weight }
}

/// `d_BV^(n)` applied to an orbit of the dual group.
pub fn d_bv(t: ClassicalType, n: CoverDegree, p: &Partition) -> Result<Partition> {
    let dual = dual_group(t, n);
    if !is_valid_orbit_partition(dual.classical_type(), p) {
        return Err(Error::Domain(format!(
            "{p} is not an orbit of the dual group {}{} (weight {})",
            dual.family, dual.rank, dual.orbit_weight
        )));
    }
    let at = |k: u32| d_com_a(CoverDegree(k), p);
    let image = match t.family {
        ClassicalFamily::A => at(n.get()),
        ClassicalFamily::B => {
            let s = n.n_star();
            if s % 2 == 1 {
                plus_b(&at(s))
            } else {
                collapse(CollapseKind::B, &at(s))
            }
        }
        ClassicalFamily::C => {
            let k = n.get();
            if k % 2 == 1 {
                minus_c(&at(k))?
            } else if (k / 2) % 2 == 1 {
                plus_minus_c(&at(k / 2))?
            } else {
                collapse(CollapseKind::C, &at(k / 2))
            }
        }
        ClassicalFamily::D => collapse(CollapseKind::D, &at(n.n_star())),
    };
    Ok(image)
}

/// Distinct images of all dual orbits, largest first.
pub fn image_of_bv(t: ClassicalType, n: CoverDegree) -> Vec<Partition> {
    let dual = dual_group(t, n).classical_type();
    let mut images: Vec<Partition> = enumerate_orbits(dual)
        .iter()
        .map(|p| d_bv(t, n, p).expect("dual orbits lie in the domain"))
        .collect();
    images.sort_unstable_by(|a, b| b.cmp(a));
    images.dedup();
    images
}

/// Largest degree whose image can differ from every smaller degree.
///
/// Once the relevant contracted degree (`n`, `n*` or `n/2`) reaches the dual
/// orbit weight, `d_com_a` returns the one-part partition and the map only
/// depends on the parity regime. The slowest regime is `n ≡ 0 mod 4` in
/// type B, which settles at `n = 4r + 4`.
pub fn degree_cap(t: ClassicalType) -> u32 {
    4 * t.rank + 4
}

/// Union of `image_of_bv(t, n)` for `n = 1..=cap`, largest first.
pub fn image_union(t: ClassicalType, cap: u32) -> Vec<Partition> {
    let mut all: Vec<Partition> = (1..=cap)
        .into_par_iter()
        .flat_map_iter(|n| image_of_bv(t, CoverDegree(n)))
        .collect();
    all.sort_unstable_by(|a, b| b.cmp(a));
    all.dedup();
    all
}
