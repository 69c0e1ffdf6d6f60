//! Symmetric-group characters via the Murnaghan–Nakayama rule.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{partitions_of, Partition};
use crate::error::{Error, Result};

/// The full character table of `S_n`, rows and columns indexed by
/// `partitions_of(n)`.
#[derive(Debug)]
pub struct CharTable {
    n: usize,
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    values: Vec<i64>,
}

impl CharTable {
    pub fn build(n: usize) -> CharTable {
        let parts = partitions_of(n);
        let index: HashMap<Partition, usize> = parts
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut memo = HashMap::new();
        let mut values = Vec::with_capacity(parts.len() * parts.len());
        for lambda in &parts {
            for mu in &parts {
                values.push(mn(lambda, mu.parts(), &mut memo));
            }
        }
        CharTable {
            n,
            parts,
            index,
            values,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.parts
    }

    /// `χ^λ(μ)`; both must be partitions of `n`.
    pub fn get(&self, lambda: &Partition, mu: &Partition) -> i64 {
        let (i, j) = (self.index[lambda], self.index[mu]);
        self.values[i * self.parts.len() + j]
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `χ` by row/column position in [`CharTable::partitions`].
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.values[i * self.parts.len() + j]
    }
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<CharTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CharTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The cached character table of `S_n`, built on first use.
pub fn char_table(n: usize) -> Arc<CharTable> {
    if let Some(t) = cache().lock().expect("character cache poisoned").get(&n) {
        return t.clone();
    }
    // built outside the lock; a racing builder produces an identical table
    let t = Arc::new(CharTable::build(n));
    cache()
        .lock()
        .expect("character cache poisoned")
        .entry(n)
        .or_insert(t)
        .clone()
}

/// `χ^λ(μ)` for `|λ| = |μ|`.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::Domain(format!(
            "character of {lambda} at {mu}: sizes differ"
        )));
    }
    Ok(char_table(lambda.size()).get(lambda, mu))
}

type Memo = HashMap<(Partition, Vec<u32>), i64>;

// Removes border strips of length mu[0], mu[1], ... using beta-numbers: a
// strip of length k is a bead moved from b to b-k onto an empty position,
// with sign (-1)^(number of beads jumped over).
fn mn(lambda: &Partition, mu: &[u32], memo: &mut Memo) -> i64 {
    if mu.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let key = (lambda.clone(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let k = mu[0] as i64;
    let l = lambda.len() as i64;
    let beta: Vec<i64> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + l - 1 - i as i64)
        .collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        let nb = b - k;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let jumped = beta.iter().filter(|&&c| c > nb && c < b).count();
        let mut nbeta = beta.clone();
        nbeta[i] = nb;
        nbeta.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = nbeta
            .iter()
            .enumerate()
            .map(|(j, &x)| (x - (l - 1 - j as i64)) as u32)
            .filter(|&p| p > 0)
            .collect();
        let sub = mn(&Partition(parts), &mu[1..], memo);
        total += if jumped % 2 == 0 { sub } else { -sub };
    }
    memo.insert(key, total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    // Frobenius formula: χ^λ(μ) is the coefficient of x^(λ+δ) in
    // Δ(x)·p_μ(x), with ℓ = n variables. Independent of border strips.
    fn frobenius(lambda: &Partition, mu: &Partition) -> i64 {
        let n = lambda.size();
        let vars = n.max(1);
        type Poly = HashMap<Vec<u32>, i64>;
        let mul = |a: &Poly, b: &Poly| {
            let mut out: Poly = HashMap::new();
            for (ea, ca) in a {
                for (eb, cb) in b {
                    let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                    *out.entry(e).or_insert(0) += ca * cb;
                }
            }
            out.retain(|_, c| *c != 0);
            out
        };
        let mut acc: Poly = HashMap::from([(vec![0; vars], 1)]);
        for i in 0..vars {
            for j in i + 1..vars {
                let mut ei = vec![0; vars];
                ei[i] = 1;
                let mut ej = vec![0; vars];
                ej[j] = 1;
                acc = mul(&acc, &HashMap::from([(ei, 1), (ej, -1)]));
            }
        }
        for &k in mu.parts() {
            let pk: Poly = (0..vars)
                .map(|i| {
                    let mut e = vec![0; vars];
                    e[i] = k;
                    (e, 1)
                })
                .collect();
            acc = mul(&acc, &pk);
        }
        let target: Vec<u32> = (0..vars)
            .map(|i| lambda.parts().get(i).copied().unwrap_or(0) + (vars - 1 - i) as u32)
            .collect();
        acc.get(&target).copied().unwrap_or(0)
    }

    #[test]
    fn frozen_values() {
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert_eq!(mn_character(&p(&[1, 1]), &p(&[2])).unwrap(), -1);
        for mu in partitions_of(5) {
            assert_eq!(mn_character(&p(&[5]), &mu).unwrap(), 1);
        }
        assert!(matches!(
            mn_character(&p(&[2]), &p(&[1])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn agrees_with_frobenius_formula() {
        for n in 0..=6 {
            let t = char_table(n);
            for l in partitions_of(n) {
                for m in partitions_of(n) {
                    assert_eq!(t.get(&l, &m), frobenius(&l, &m), "χ^{l}({m})");
                }
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        for n in 0..=10 {
            let t = char_table(n);
            for m in t.partitions() {
                for v in t.partitions() {
                    let s: i64 = t
                        .partitions()
                        .iter()
                        .map(|l| t.get(l, m) * t.get(l, v))
                        .sum();
                    let expect = if m == v {
                        m.z_factor()
                    } else {
                        Rational::zero()
                    };
                    assert_eq!(Rational::from_int(s), expect);
                }
            }
        }
    }

    #[test]
    fn dimensions_from_hooks() {
        for n in 1..=10 {
            let t = char_table(n);
            let fact = Rational::factorial(n as u32);
            let ones = Partition::column(n);
            let mut total = Rational::zero();
            for l in t.partitions() {
                let dim = &fact / &l.hook_product();
                assert_eq!(Rational::from_int(t.get(l, &ones)), dim);
                total += &(&dim * &dim);
            }
            assert_eq!(total, fact);
        }
    }
}
