//! Diagonal operators on the fixed-point basis and the commutator evaluator
//! for products of `ε_r(z)`.
//!
//! All eigenvalues are series in one variable of a caller-supplied window.
//! `ς(z) = e^{z/2} − e^{−z/2}` and its inverse are the basic building blocks;
//! the divergent sum `Σ_{i≥1} e^{z(λ_i−i+1/2)}` is always evaluated in the
//! regularized form `Σ_{i≤ℓ(λ)} (e^{z(λ_i−i+1/2)} − e^{z(−i+1/2)}) + 1/ς(z)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fock::{apply_p, basis_change, Basis, FockVector};
use crate::partitions::{char_table, Partition};
use crate::rational::Rational;
use crate::series::{Series, VarSpec, Window};

/// `ς(kz) = e^{kz/2} − e^{−kz/2}` in `var`.
pub fn varsigma(window: &Arc<Window>, var: &str, k: i64) -> Result<Series> {
    let d = window.var(var)?.max_degree;
    let p = Series::exp_linear(window, var, &Rational::new(k, 2), d)?;
    let m = Series::exp_linear(window, var, &Rational::new(-k, 2), d)?;
    p.try_sub(&m)
}

/// `ς(λ, z) = Π_i ς(λ_i z)`, with `ς(∅, z) = 1`.
pub fn varsigma_partition(window: &Arc<Window>, var: &str, lambda: &Partition) -> Result<Series> {
    let mut acc = Series::one(window);
    for &k in lambda.parts() {
        acc = acc.try_mul(&varsigma(window, var, k as i64)?)?;
    }
    Ok(acc)
}

/// `1/ς(z) = z^{-1} − z/24 + 7z³/5760 − …`; needs `max_pole ≥ 1` in `var`.
pub fn inv_varsigma(window: &Arc<Window>, var: &str) -> Result<Series> {
    require_pole(window, var, 1)?;
    let wide = window.widened(2)?;
    varsigma(&wide, var, 1)?.invert(window)
}

fn require_pole(window: &Window, var: &str, pole: u32) -> Result<()> {
    let v = window.var(var)?;
    if v.max_pole < pole {
        return Err(Error::Window(format!(
            "{var} needs max_pole >= {pole} but the window allows {}",
            v.max_pole
        )));
    }
    Ok(())
}

/// `window` with `var` allowed pole order at least `pole` and `extra` more
/// degrees: the scratch space for intermediate pole arithmetic.
pub(crate) fn scratch(window: &Window, var: &str, pole: u32, extra: u32) -> Result<Arc<Window>> {
    window.var(var)?;
    window.map_vars(|v| {
        if v.name == var {
            VarSpec {
                name: v.name.clone(),
                max_pole: v.max_pole.max(pole),
                max_degree: v.max_degree + extra,
            }
        } else {
            v.clone()
        }
    })
}

/// Eigenvalue of `𝔊_z` on `[λ]`: `Σ_{□∈λ} e^{z c_□}`.
pub fn chern_eigenvalue(lambda: &Partition, window: &Arc<Window>, var: &str) -> Result<Series> {
    let d = window.var(var)?.max_degree;
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for c in lambda.contents() {
        *counts.entry(c).or_insert(0) += 1;
    }
    let mut acc = Series::zero(window);
    for (c, n) in counts {
        let e = Series::exp_linear(window, var, &Rational::from_int(c), d)?;
        acc = acc.try_add(&e.scale(&Rational::from_int(n)))?;
    }
    Ok(acc)
}

/// Eigenvalue of `ε₀(z)` on `[λ]`, regularized; a Laurent series with a
/// simple pole of residue 1. Needs `max_pole ≥ 1` in `var`.
pub fn epsilon0_eigenvalue(lambda: &Partition, window: &Arc<Window>, var: &str) -> Result<Series> {
    epsilon0_with(inv_varsigma(window, var)?, lambda, window, var)
}

/// Eigenvalue of `ℌ(z) = (1/ς)(ε₀(z) − 1/ς)` on `[λ]`, computed from the
/// `ε₀` eigenvalue with exact pole cancellation. The result is pole-free and
/// equals [`chern_eigenvalue`].
pub fn master_eigenvalue(lambda: &Partition, window: &Arc<Window>, var: &str) -> Result<Series> {
    let w = scratch(window, var, 2, 2)?;
    let inv = inv_varsigma(&w, var)?;
    let e = epsilon0_eigenvalue(lambda, &w, var)?;
    inv.try_mul(&e.try_sub(&inv)?)?.into_window(window)
}

/// Eigenvalue of the charge-`m` twist `𝔊̃^{(m)}_z` on `[λ]`:
/// the regular part of `e^{mz}(1/ς)(ε₀ − 1/ς) + (e^{mz} − 1)/ς²`, i.e. the
/// full expression minus its `m z^{-1}` pole. Its Taylor coefficients are
/// `𝔊^{(m)}_k + c^{(m)}_k/k!`.
pub fn twisted_eigenvalue(
    lambda: &Partition,
    m: i64,
    window: &Arc<Window>,
    var: &str,
) -> Result<Series> {
    let w = scratch(window, var, 2, 3)?;
    let d = w.var(var)?.max_degree;
    let inv = inv_varsigma(&w, var)?;
    let emz = Series::exp_linear(&w, var, &Rational::from_int(m), d)?;
    let e = epsilon0_eigenvalue(lambda, &w, var)?;
    let main = emz.try_mul(&inv)?.try_mul(&e.try_sub(&inv)?)?;
    let twist = emz
        .try_sub(&Series::one(&w))?
        .try_mul(&inv.try_mul(&inv)?)?;
    let full = main.try_add(&twist)?;
    let i = w.index_of(var)?;
    let mut pole = vec![0; w.nvars()];
    pole[i] = -1;
    let polar = full.filter_terms(|e, _| e[i] < 0);
    let expect = Series::monomial(&w, &pole, Rational::from_int(m))?;
    if polar != expect {
        return Err(Error::Domain(format!(
            "twisted eigenvalue has polar part {polar}"
        )));
    }
    full.try_sub(&expect)?.into_window(window)
}

/// The kinds of diagonal operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    /// `𝔊_z`
    Chern,
    /// `ε₀(z)`
    Epsilon0,
    /// `ℌ(z)`
    Master,
    /// `𝔊̃^{(m)}_z`
    ChernTwisted,
}

/// An operator acting diagonally on the fixed-point basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalOperator {
    pub kind: OperatorKind,
    pub var: String,
    /// Charge `m`; only used by [`OperatorKind::ChernTwisted`].
    pub charge: i64,
}

impl DiagonalOperator {
    pub fn new(kind: OperatorKind, var: impl Into<String>) -> Self {
        DiagonalOperator {
            kind,
            var: var.into(),
            charge: 0,
        }
    }

    pub fn twisted(m: i64, var: impl Into<String>) -> Self {
        DiagonalOperator {
            kind: OperatorKind::ChernTwisted,
            var: var.into(),
            charge: m,
        }
    }

    pub fn eigenvalue(&self, lambda: &Partition, window: &Arc<Window>) -> Result<Series> {
        match self.kind {
            OperatorKind::Chern => chern_eigenvalue(lambda, window, &self.var),
            OperatorKind::Epsilon0 => epsilon0_eigenvalue(lambda, window, &self.var),
            OperatorKind::Master => master_eigenvalue(lambda, window, &self.var),
            OperatorKind::ChernTwisted => {
                twisted_eigenvalue(lambda, self.charge, window, &self.var)
            }
        }
    }
}

/// Eigenvalues memoized per operator and partition, all in one window.
///
/// `ε₀` eigenvalues share a single `1/ς(z)` per variable, so filling the
/// cache costs one series inversion per variable.
#[derive(Debug)]
pub struct EigenCache {
    window: Arc<Window>,
    memo: Mutex<HashMap<(DiagonalOperator, Partition), Series>>,
}

impl EigenCache {
    pub fn new(window: &Arc<Window>) -> Self {
        EigenCache {
            window: window.clone(),
            memo: Mutex::default(),
        }
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn get(&self, op: &DiagonalOperator, lambda: &Partition) -> Result<Series> {
        let key = (op.clone(), lambda.clone());
        if let Some(s) = self
            .memo
            .lock()
            .expect("eigenvalue cache poisoned")
            .get(&key)
        {
            return Ok(s.clone());
        }
        let s = match op.kind {
            OperatorKind::Epsilon0 if !lambda.is_empty() => {
                let inv = self.get(op, &Partition::empty())?;
                epsilon0_with(inv, lambda, &self.window, &op.var)?
            }
            _ => op.eigenvalue(lambda, &self.window)?,
        };
        self.memo
            .lock()
            .expect("eigenvalue cache poisoned")
            .insert(key, s.clone());
        Ok(s)
    }

    /// The eigenvalue of `ops[0] ⋯ ops[n-1]` on `[λ]`.
    pub fn product(&self, ops: &[DiagonalOperator], lambda: &Partition) -> Result<Series> {
        let mut acc = Series::one(&self.window);
        for op in ops {
            acc = acc.try_mul(&self.get(op, lambda)?)?;
        }
        Ok(acc)
    }

    /// `⟨𝔭_{−λ}, D 𝔭_{−μ}⟩` for the diagonal product `D = ops`, using
    /// `⟨𝔭_{−λ}, [ν]⟩ = χ^ν(λ)/𝔷_λ`. In the cache's window.
    pub fn matrix_element(
        &self,
        lambda: &Partition,
        mu: &Partition,
        ops: &[DiagonalOperator],
    ) -> Result<Series> {
        if lambda.size() != mu.size() {
            return Ok(Series::zero(&self.window));
        }
        let table = char_table(lambda.size());
        let norm = (lambda.z_factor() * mu.z_factor())
            .recip()
            .expect("positive");
        let mut acc = Series::zero(&self.window);
        for nu in table.partitions() {
            let c = table.get(nu, lambda) * table.get(nu, mu);
            if c != 0 {
                let e = self.product(ops, nu)?;
                acc = acc.try_add(&e.scale(&(Rational::from_int(c) * &norm)))?;
            }
        }
        Ok(acc)
    }
}

fn epsilon0_with(
    inv: Series,
    lambda: &Partition,
    window: &Arc<Window>,
    var: &str,
) -> Result<Series> {
    let d = window.var(var)?.max_degree;
    let mut acc = inv;
    for (i, &p) in lambda.parts().iter().enumerate() {
        let i = i as i64 + 1;
        let a = Series::exp_linear(window, var, &Rational::new(2 * (p as i64 - i) + 1, 2), d)?;
        let b = Series::exp_linear(window, var, &Rational::new(-2 * i + 1, 2), d)?;
        acc = acc.try_add(&a.try_sub(&b)?)?;
    }
    Ok(acc)
}

/// Applies a product of diagonal operators to `v`: converts to `[λ]`,
/// multiplies each coefficient by the product of eigenvalues, converts back.
///
/// Eigenvalues are computed with guard degrees so that products of Laurent
/// eigenvalues in a shared variable stay exact within `v`'s window; the
/// coefficients of `v` are taken to be exact (e.g. constants).
pub fn apply_diagonal(
    ops: &[DiagonalOperator],
    v: &FockVector<Series>,
) -> Result<FockVector<Series>> {
    let window = v.zero_coefficient().window().clone();
    let cache = EigenCache::new(&window.widened(ops.len() as u32 + 1)?);
    let fixed = basis_change(v, Basis::FixedPoint)?;
    let mut out = FockVector::new(Basis::FixedPoint, Series::zero(&window));
    for (lambda, c) in fixed.terms() {
        let c = c
            .into_window(cache.window())?
            .try_mul(&cache.product(ops, lambda)?)?
            .into_window(&window)?;
        out.add_term(lambda.clone(), c)?;
    }
    basis_change(&out, v.basis())
}

/// Precomputed `ς(kz)` and `1/ς(z)` for one variable.
struct Atoms {
    inv: Series,
    sig: Vec<Series>,
}

impl Atoms {
    fn new(window: &Arc<Window>, var: &str, kmax: usize) -> Result<Atoms> {
        let sig = (0..=kmax)
            .map(|k| varsigma(window, var, k as i64))
            .collect::<Result<Vec<_>>>()?;
        Ok(Atoms {
            inv: inv_varsigma(window, var)?,
            sig,
        })
    }

    fn of_partition(&self, window: &Arc<Window>, p: &Partition) -> Result<Series> {
        let mut acc = Series::one(window);
        for &k in p.parts() {
            acc = acc.try_mul(&self.sig[k as usize])?;
        }
        Ok(acc)
    }
}

/// `⟨𝔭_{−λ}, ε_{r₁}(z₁)⋯ε_{r_N}(z_N) 𝔭_{−μ}⟩` by commutator calculus alone.
///
/// Each `ε_r(z)` is moved left past the annihilators of `⟨𝔭_{−λ}|` using
/// `[𝔭_k, ε_r(z)] = ς(kz) ε_{k+r}(z)`, giving
/// `Σ_{U⊂{1..ℓ(λ)}} ς(λ_U, z) ⟨ε_{r+|λ_U|}(z) Π_{i∉U}𝔭_{λ_i} 𝔭_{−μ}⟩`;
/// the remaining annihilators act on the creation monomial, and the vacuum
/// rules reduce `⟨ε_R Π_j 𝔭_{−ν_j}|0⟩⟩` to `δ_{R,|ν|} ς(ν, z)/ς(z)`.
/// Several factors are chained through the resolution of the identity
/// `Σ_ν 𝔷_ν |𝔭_{−ν}⟩⟨𝔭_{−ν}|`. Characters are never used.
///
/// `factors` lists `(r_j, z_j)` from left to right. Each variable needs a
/// pole bound at least its number of occurrences.
pub fn epsilon_product_vev(
    lambda: &Partition,
    mu: &Partition,
    factors: &[(i64, &str)],
    window: &Arc<Window>,
) -> Result<Series> {
    let shift: i64 = factors.iter().map(|f| f.0).sum();
    if lambda.size() as i64 != mu.size() as i64 - shift {
        return Err(Error::Domain(format!(
            "⟨{lambda}, ε⋯ε {mu}⟩ pairs different degrees"
        )));
    }
    let mut uses: BTreeMap<&str, u32> = BTreeMap::new();
    for (_, v) in factors {
        *uses.entry(v).or_insert(0) += 1;
    }
    for (v, n) in &uses {
        require_pole(window, v, *n)?;
    }
    let wide = window.widened(factors.len() as u32 + 1)?;
    let kmax = lambda.size().max(mu.size())
        + factors
            .iter()
            .map(|f| f.0.unsigned_abs() as usize)
            .sum::<usize>();
    let atoms: BTreeMap<&str, Atoms> = uses
        .keys()
        .map(|v| Ok((*v, Atoms::new(&wide, v, kmax)?)))
        .collect::<Result<_>>()?;

    // state = Σ_ν w_ν 𝔭_{−ν}
    let mut state: BTreeMap<Partition, Series> = BTreeMap::from([(mu.clone(), Series::one(&wide))]);
    let mut degree = mu.size() as i64;
    for &(r, var) in factors.iter().rev() {
        degree -= r;
        let mut next: BTreeMap<Partition, Series> = BTreeMap::new();
        if degree >= 0 {
            for target in crate::partitions::partitions_of(degree as usize) {
                let mut acc = Series::zero(&wide);
                for (nu, w) in &state {
                    let m = single_epsilon(&target, r, &atoms[var], nu, &wide)?;
                    acc = acc.try_add(&m.try_mul(w)?)?;
                }
                if !acc.is_zero() {
                    next.insert(target.clone(), acc.scale(&target.z_factor()));
                }
            }
        }
        state = next;
    }
    let top = state
        .get(lambda)
        .cloned()
        .unwrap_or_else(|| Series::zero(&wide));
    top.scale(&lambda.z_factor().recip().expect("positive"))
        .into_window(window)
}

// ⟨𝔭_{−λ}, ε_r(z) 𝔭_{−μ}⟩ with |λ| = |μ| − r.
fn single_epsilon(
    lambda: &Partition,
    r: i64,
    atoms: &Atoms,
    mu: &Partition,
    w: &Arc<Window>,
) -> Result<Series> {
    let mut total = Series::zero(w);
    // subsets U of positions, grouped by the multiset λ_U
    let mult: Vec<(u32, usize)> = lambda.multiplicities().into_iter().collect();
    let mut choice = vec![0usize; mult.len()];
    loop {
        let mut lu = Vec::new();
        let mut rest = Vec::new();
        let mut count = Rational::one();
        for (&(part, m), &k) in mult.iter().zip(&choice) {
            lu.extend(std::iter::repeat(part).take(k));
            rest.extend(std::iter::repeat(part).take(m - k));
            count = count * binomial(m, k);
        }
        let lu = Partition::new(lu)?;
        let big_r = r + lu.size() as i64;
        // Π_{i∉U} 𝔭_{λ_i} applied to 𝔷_μ 𝔭_{−μ}
        let mut v = FockVector::basis_vector(mu.clone(), Basis::PowerSum, mu.z_factor());
        for &k in &rest {
            v = apply_p(k as i32, &v)?;
        }
        let mut inner = Series::zero(w);
        for (nu, c) in v.terms() {
            if nu.size() as i64 == big_r {
                let coef = c * &nu.z_factor().recip().expect("positive");
                inner = inner.try_add(&atoms.of_partition(w, nu)?.scale(&coef))?;
            }
        }
        if !inner.is_zero() {
            let term = atoms
                .of_partition(w, &lu)?
                .try_mul(&inner)?
                .try_mul(&atoms.inv)?;
            total = total.try_add(&term.scale(&count))?;
        }
        // next sub-multiset
        let mut i = 0;
        loop {
            if i == mult.len() {
                let norm = (lambda.z_factor() * mu.z_factor())
                    .recip()
                    .expect("positive");
                return Ok(total.scale(&norm));
            }
            if choice[i] < mult[i].1 {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| {
        acc * Rational::new((n - i) as i64, (i + 1) as i64)
    })
}
