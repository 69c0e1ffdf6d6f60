//! Determinant sums evaluated in exponential coordinates `X_j = e^{z_j/2}`.
//!
//! `Θ(z) = ς(z) φ(X)` where `φ` has Laurent-polynomial q-coefficients, and
//! `ς(z₁+⋯+z_k) = X₁⋯X_k − (X₁⋯X_k)^{−1}`. Every `det M_σ/Θ_σ` therefore
//! lives in `ℚ[X^{±1}][[q]]` divided by products of binomials
//! `ς(z_T)`. The sum over `σ` is formed over the common denominator, the
//! binomials for `|T| ≥ 2` are removed by exact division, and only then is
//! the result expanded in `z`. A series in `z` alone could not represent the
//! intermediate poles along `z₁ + z₂ = 0`.

use std::collections::HashMap;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::Result;
use crate::operators::inv_varsigma;
use crate::rational::Rational;
use crate::series::{Series, VarSpec, Window};

/// `Σ_{σ∈S_U} det M_{U,σ} / Θ_{U,σ}` for the variables `zvars` (in the
/// order `u₁ < u₂ < ⋯`), as a series in `window`. The window needs pole
/// order 1 in each variable of `zvars`; the empty set gives 1.
pub fn determinant_sum(zvars: &[&str], q: &str, window: &Arc<Window>) -> Result<Series> {
    let k = zvars.len();
    if k == 0 {
        return Ok(Series::one(window));
    }
    let qmax = window.var(q)?.max_degree;
    for z in zvars {
        window.var(z)?;
    }
    let ring = Ring::new(k, qmax)?;
    let p = ring.reduced_numerator()?;

    let zw = window.map_vars(|v| {
        if zvars.contains(&v.name.as_str()) {
            VarSpec {
                name: v.name.clone(),
                max_pole: v.max_pole.max(1),
                max_degree: v.max_degree + 1,
            }
        } else {
            v.clone()
        }
    })?;
    let mut out = expand(&p, zvars, q, &zw)?;
    for z in zvars {
        out = out.try_mul(&inv_varsigma(&zw, z)?)?;
    }
    out.into_window(window)
}

struct Ring {
    k: usize,
    window: Arc<Window>,
    theta: Series,
    phi_inv: Series,
    memo: std::cell::RefCell<HashMap<(u32, u32), Series>>,
}

impl Ring {
    fn new(k: usize, qmax: u32) -> Result<Ring> {
        // |X-exponent| grows by at most 2 per power of q, plus one per
        // binomial factor; strict products report any overflow.
        let w = 2 * qmax + (2u32 << k) + 8;
        let uni = Window::new(vec![
            VarSpec::laurent("X", w, w),
            VarSpec::taylor("q", qmax),
        ])?;
        let mut vars: Vec<VarSpec> = (0..k)
            .map(|j| VarSpec::laurent(format!("X{j}"), w, w))
            .collect();
        vars.push(VarSpec::taylor("q", qmax));
        let window = Window::new(vars)?;

        let mono = |x: i32, n: i32, c: i64| Series::monomial(&uni, &[x, n], Rational::from_int(c));
        let mut qq = Series::one(&uni);
        let mut pair = Series::one(&uni);
        let mut geo = Series::one(&uni);
        for j in 1..=qmax as i32 {
            let one = Series::one(&uni);
            qq = qq.mul_exact_support(&one.try_sub(&mono(0, j, 1)?)?)?;
            pair = pair
                .mul_exact_support(&one.try_sub(&mono(2, j, 1)?)?)?
                .mul_exact_support(&one.try_sub(&mono(-2, j, 1)?)?)?;
            for x in [2, -2] {
                let mut g = Series::zero(&uni);
                let mut n = 0;
                while n * j <= qmax as i32 {
                    g = g.try_add(&mono(x * n, n * j, 1)?)?;
                    n += 1;
                }
                geo = geo.mul_exact_support(&g)?;
            }
        }
        let qq_inv = qq.invert(&uni)?;
        let sig = mono(1, 0, 1)?.try_sub(&mono(-1, 0, 1)?)?;
        let theta = sig
            .mul_exact_support(&pair)?
            .mul_exact_support(&qq_inv.mul_exact_support(&qq_inv)?)?;
        let phi_inv = qq.mul_exact_support(&qq)?.mul_exact_support(&geo)?;
        Ok(Ring {
            k,
            window,
            theta,
            phi_inv,
            memo: Default::default(),
        })
    }

    // f(X_T) in the k-variable ring, with each X^a weighted by (a/2)^d.
    fn subst(&self, f: &Series, set: u32, d: u32) -> Result<Series> {
        let half = Rational::new(1, 2);
        let terms = f.terms().map(|(e, c)| {
            let mut x = vec![0; self.k + 1];
            for (j, slot) in x.iter_mut().take(self.k).enumerate() {
                if set >> j & 1 == 1 {
                    *slot = e[0];
                }
            }
            x[self.k] = e[1];
            let w = (&Rational::from_int(e[0] as i64) * &half).pow(d);
            (x, c * &w)
        });
        Series::from_terms(&self.window, terms.collect::<Vec<_>>())
    }

    /// `Θ^{(d)}(z_T)/d!`.
    fn theta_at(&self, set: u32, d: u32) -> Result<Series> {
        if let Some(s) = self.memo.borrow().get(&(set, d)) {
            return Ok(s.clone());
        }
        let fact = Rational::factorial(d).recip().expect("positive");
        let s = self.subst(&self.theta, set, d)?.scale(&fact);
        self.memo.borrow_mut().insert((set, d), s.clone());
        Ok(s)
    }

    fn varsigma_at(&self, set: u32) -> Result<Series> {
        let e = |s: i32| -> Vec<i32> {
            let mut x = vec![0; self.k + 1];
            for (j, slot) in x.iter_mut().take(self.k).enumerate() {
                if set >> j & 1 == 1 {
                    *slot = s;
                }
            }
            x
        };
        Series::from_terms(
            &self.window,
            vec![(e(1), Rational::one()), (e(-1), Rational::from_int(-1))],
        )
    }

    // Σ_σ det M_σ/Θ_σ times Π_{j} ς(z_j): a Laurent polynomial per q-power.
    fn reduced_numerator(&self) -> Result<Series> {
        let k = self.k;
        let full = (1u32 << k) - 1;
        let mut num = Series::zero(&self.window);
        for sigma in permutations(k) {
            let prefix = |len: usize| -> u32 { sigma[..len].iter().fold(0, |m, &j| m | 1 << j) };
            // M_{ij} = Θ^{(j−i+1)}(z_{σu_1}+⋯+z_{σu_{k−j}})/(j−i+1)!
            let entry = |i: usize, j: usize| -> Result<Option<Series>> {
                let d = j as i64 - i as i64 + 1;
                if d < 0 {
                    return Ok(None);
                }
                Ok(Some(self.theta_at(prefix(k - j), d as u32)?))
            };
            let mut det = Series::zero(&self.window);
            for (tau, sign) in permutations(k).into_iter().zip(signs(k)) {
                let mut prod = Some(Series::one(&self.window));
                for i in 1..=k {
                    let Some(p) = prod else { break };
                    prod = match entry(i, tau[i - 1] + 1)? {
                        Some(m) => Some(p.mul_exact_support(&m)?),
                        None => None,
                    };
                }
                if let Some(p) = prod {
                    det = det.try_add(&p.scale(&Rational::from_int(sign)))?;
                }
            }
            let mut chain = 0u64;
            let mut term = det;
            for len in 1..=k {
                let t = prefix(len);
                chain |= 1 << t;
                term = term.mul_exact_support(&self.subst(&self.phi_inv, t, 0)?)?;
            }
            for t in 1..=full {
                if chain >> t & 1 == 0 {
                    term = term.mul_exact_support(&self.varsigma_at(t)?)?;
                }
            }
            num = num.try_add(&term)?;
        }
        for t in 1..=full {
            if t.count_ones() >= 2 {
                num = num.div_exact(&self.varsigma_at(t)?)?;
            }
        }
        Ok(num)
    }
}

// Expands Σ c X^a q^n as Σ c q^n Π_j e^{a_j z_j/2}, one variable at a time.
fn expand(p: &Series, zvars: &[&str], q: &str, target: &Arc<Window>) -> Result<Series> {
    let k = zvars.len();
    let mut cur: FxHashMap<Vec<i32>, Rational> = FxHashMap::default();
    for (e, c) in p.terms() {
        *cur.entry(e).or_default() += c;
    }
    let mut exp_cache: HashMap<(i32, u32), Vec<Rational>> = HashMap::new();
    for (j, z) in zvars.iter().enumerate() {
        let d = target.var(z)?.max_degree;
        let mut next: FxHashMap<Vec<i32>, Rational> = FxHashMap::default();
        for (key, c) in cur {
            let a = key[j];
            let coeffs = exp_cache.entry((a, d)).or_insert_with(|| {
                let s = Rational::new(a as i64, 2);
                let mut v = Vec::with_capacity(d as usize + 1);
                let mut t = Rational::one();
                for n in 0..=d {
                    if n > 0 {
                        t = &(&t * &s) / &Rational::from_int(n as i64);
                    }
                    v.push(t.clone());
                }
                v
            });
            for (n, e) in coeffs.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let mut key2 = key.clone();
                key2[j] = n as i32;
                *next.entry(key2).or_default() += &(&c * e);
            }
        }
        cur = next;
    }
    let zi: Vec<usize> = zvars
        .iter()
        .map(|z| target.index_of(z))
        .collect::<Result<_>>()?;
    let qi = target.index_of(q)?;
    let terms: Vec<(Vec<i32>, Rational)> = cur
        .into_iter()
        .map(|(key, c)| {
            let mut e = vec![0; target.nvars()];
            for j in 0..k {
                e[zi[j]] = key[j];
            }
            e[qi] = key[k];
            (e, c)
        })
        .collect();
    Series::from_terms(target, terms)
}

/// All permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn signs(k: usize) -> Vec<i64> {
    permutations(k)
        .iter()
        .map(|p| {
            let inversions = (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            if inversions % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .collect()
}
