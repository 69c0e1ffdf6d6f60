//! Partitions, their combinatorics, and symmetric-group characters.

mod characters;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use characters::{char_table, mn_character, CharTable};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A partition: a weakly decreasing list of positive parts.
///
/// `Ord` is reverse-lexicographic on the parts, so sorting puts `[4]` before
/// `[3, 1]` before `[2, 2]`; this fixes every output ordering in the crate.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// The partition `(k)` with a single part.
    pub fn single(k: u32) -> Partition {
        assert!(k > 0);
        Partition(vec![k])
    }

    /// `(1^n)`.
    pub fn column(n: usize) -> Partition {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `|λ|`, the sum of the parts.
    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// `ℓ(λ)`, the number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `m_r(λ)`, the number of parts equal to `r`.
    pub fn multiplicity(&self, r: u32) -> usize {
        self.0.iter().filter(|&&p| p == r).count()
    }

    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `𝔷_λ = Π r^{m_r} m_r!`, the centralizer order of a permutation of
    /// cycle type λ.
    pub fn z_factor(&self) -> Rational {
        self.multiplicities()
            .into_iter()
            .map(|(r, m)| {
                Rational::from_int(r as i64).pow(m as u32) * Rational::factorial(m as u32)
            })
            .product()
    }

    pub fn transpose(&self) -> Partition {
        let Some(&first) = self.0.first() else {
            return Partition::empty();
        };
        Partition(
            (1..=first)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// Hook lengths, row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let t = self.transpose();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = t.0[j as usize] - i as u32 - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// The product of all hook lengths.
    pub fn hook_product(&self) -> Rational {
        self.hooks()
            .into_iter()
            .map(|h| Rational::from_int(h as i64))
            .product()
    }

    /// Contents `column - row` of all boxes, row by row.
    pub fn contents(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.0.iter().enumerate() {
            out.extend((0..row as i64).map(|j| j - i as i64));
        }
        out
    }

    /// `λ + μ`: the union of the multisets of parts.
    pub fn combine(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    /// `λ ⊂ μ`: every multiplicity of `self` is at most that of `other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        let mo = other.multiplicities();
        self.multiplicities()
            .into_iter()
            .all(|(r, m)| mo.get(&r).copied().unwrap_or(0) >= m)
    }

    /// `self − λ`, removing the parts of `λ`; requires `λ ⊂ self`.
    pub fn subtract(&self, lambda: &Partition) -> Result<Partition> {
        if !lambda.is_contained_in(self) {
            return Err(Error::Domain(format!(
                "{lambda} is not contained in {self}"
            )));
        }
        let mut rest = self.0.clone();
        for p in &lambda.0 {
            let i = rest.iter().position(|q| q == p).expect("contained");
            rest.remove(i);
        }
        Ok(Partition(rest))
    }

    /// The parts at the 1-based positions in `indices`.
    pub fn subpartition(&self, indices: &[usize]) -> Result<Partition> {
        let mut v = Vec::with_capacity(indices.len());
        for &i in indices {
            if i == 0 || i > self.0.len() {
                return Err(Error::Domain(format!("index {i} out of range for {self}")));
            }
            v.push(self.0[i - 1]);
        }
        Partition::new(v)
    }

    /// Removes one part equal to `k`, if present.
    pub fn remove_part(&self, k: u32) -> Option<Partition> {
        let i = self.0.iter().position(|&p| p == k)?;
        let mut v = self.0.clone();
        v.remove(i);
        Some(Partition(v))
    }

    /// Adds one part `k`.
    pub fn add_part(&self, k: u32) -> Partition {
        assert!(k > 0);
        let i = self.0.iter().position(|&p| p < k).unwrap_or(self.0.len());
        let mut v = self.0.clone();
        v.insert(i, k);
        Partition(v)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Partition> {
        if v.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts; an empty string is the empty partition.
    fn from_str(s: &str) -> Result<Partition> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n as u32, n as u32, &mut cur, &mut out);
    out
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for k in (1..=max.min(rest)).rev() {
        cur.push(k);
        fill(rest - k, k, cur, out);
        cur.pop();
    }
}

/// All partitions of size at most `n`, by size then reverse-lexicographically.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// Selector for [`partition_algebra`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraOp {
    Combine,
    Contains,
    Subtract,
}

/// Result of [`partition_algebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraValue {
    Partition(Partition),
    Bool(bool),
}

/// `combine` gives `λ + μ`, `contains` tests `λ ⊂ μ`, `subtract` gives `λ − μ`
/// (requiring `μ ⊂ λ`).
pub fn partition_algebra(
    lambda: &Partition,
    mu: &Partition,
    op: AlgebraOp,
) -> Result<AlgebraValue> {
    Ok(match op {
        AlgebraOp::Combine => AlgebraValue::Partition(lambda.combine(mu)),
        AlgebraOp::Contains => AlgebraValue::Bool(lambda.is_contained_in(mu)),
        AlgebraOp::Subtract => AlgebraValue::Partition(lambda.subtract(mu)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(1), vec![p(&[1])]);
        assert_eq!(
            partitions_of(4),
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        let mut sorted = partitions_of(6);
        sorted.sort();
        assert_eq!(sorted, partitions_of(6));
    }

    #[test]
    fn z_factor_values() {
        assert_eq!(Partition::empty().z_factor(), Rational::one());
        assert_eq!(p(&[1, 1]).z_factor(), Rational::from_int(2));
        assert_eq!(p(&[3, 3, 1]).z_factor(), Rational::from_int(18));
        assert_eq!(p(&[2, 1]).z_factor(), Rational::from_int(2));
    }

    #[test]
    fn hook_values() {
        assert_eq!(p(&[1]).hook_product(), Rational::from_int(1));
        assert_eq!(p(&[2, 1]).hook_product(), Rational::from_int(3));
        assert_eq!(p(&[2, 2]).hook_product(), Rational::from_int(12));
        let mut h = p(&[2, 2]).hooks();
        h.sort();
        assert_eq!(h, vec![1, 2, 2, 3]);
    }

    #[test]
    fn content_values() {
        assert_eq!(p(&[1]).contents(), vec![0]);
        assert_eq!(p(&[2, 1]).contents(), vec![0, 1, -1]);
        assert_eq!(p(&[3]).contents(), vec![0, 1, 2]);
    }

    #[test]
    fn algebra_examples() {
        assert_eq!(
            partition_algebra(&p(&[2]), &p(&[1, 1]), AlgebraOp::Combine).unwrap(),
            AlgebraValue::Partition(p(&[2, 1, 1]))
        );
        assert_eq!(
            partition_algebra(&p(&[2]), &p(&[1, 1]), AlgebraOp::Contains).unwrap(),
            AlgebraValue::Bool(false)
        );
        assert_eq!(
            partition_algebra(&p(&[2, 1, 1]), &p(&[1, 1]), AlgebraOp::Subtract).unwrap(),
            AlgebraValue::Partition(p(&[2]))
        );
        assert!(matches!(p(&[2]).subtract(&p(&[1])), Err(Error::Domain(_))));
    }

    #[test]
    fn subpartition_examples() {
        let l = p(&[3, 2, 2]);
        assert_eq!(l.subpartition(&[1, 3]).unwrap(), p(&[3, 2]));
        assert_eq!(l.subpartition(&[]).unwrap(), Partition::empty());
        assert_eq!(l.subpartition(&[1, 2, 3]).unwrap(), l);
        assert!(matches!(l.subpartition(&[4]), Err(Error::Domain(_))));
        assert!(matches!(l.subpartition(&[0]), Err(Error::Domain(_))));
    }

    #[test]
    fn parse_and_json() {
        assert_eq!("1,1".parse::<Partition>().unwrap(), p(&[1, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("2,x".parse::<Partition>().is_err());
        assert_eq!(serde_json::to_string(&p(&[3, 1, 1])).unwrap(), "[3,1,1]");
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
        assert_eq!(
            serde_json::from_str::<Partition>("[2,1]").unwrap(),
            p(&[2, 1])
        );
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
        assert!(serde_json::from_str::<Partition>("[2,0]").is_err());
    }

    #[test]
    fn transpose_and_parts() {
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 2]).add_part(3), p(&[3, 2, 2]));
        assert_eq!(p(&[3, 2, 2]).remove_part(2), Some(p(&[3, 2])));
        assert_eq!(p(&[3, 2, 2]).remove_part(1), None);
    }
}
