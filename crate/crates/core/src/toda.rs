//! Tau functions `τ(x, t, s, m)` and the lowest equation of the 2-Toda
//! hierarchy.
//!
//! `τ(x,t,s,m) = ⟨Γ₊(t) exp(Σ_k x_k ℌ_k) Γ₋(s)⟩` on the charge-`m` sector,
//! where `ℌ_k` acts on `[λ]` by the `z^k` coefficient of the regular part
//! of the twisted eigenvalue. Both `Γ₋(t)|0⟩` and `Γ₋(s)|0⟩` are expanded in
//! the fixed-point basis, which is orthonormal and diagonalizes every `ℌ_k`,
//! so `τ = Σ_ν a_ν(t) b_ν(s) exp(Σ_k x_k g_k(ν))`.
//!
//! Truncation is by weighted degree: `t_k` and `s_k` weigh `k` and every
//! `x_k` weighs 2, with everything above `2D` dropped. The `t_λ s_μ`
//! coefficients with `|λ| = |μ| ≤ D` and their `x`-expansions through
//! degree `D − |λ|` are exact.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fock::{basis_change, gamma_minus, Basis, FockVector};
use crate::operators::{inv_varsigma, twisted_eigenvalue};
use crate::partitions::{char_table, partitions_up_to, Partition};
use crate::rational::Rational;
use crate::series::{DegreeCap, Series, VarSpec, Window};

/// `c^{(m)}_0, …, c^{(m)}_{k_max}` from
/// `(e^{mz} − 1)/ς(z)² = m z^{−1} + Σ_k c^{(m)}_k z^k/k!`.
/// The `z^{−1}` coefficient is checked to be `m` and the `z^{−2}` coefficient
/// to vanish.
pub fn c_constants(m: i64, k_max: u32) -> Result<Vec<Rational>> {
    let s = twist_series(m, k_max)?;
    if !s.coeff(&[-2]).is_zero() || s.coeff(&[-1]) != Rational::from_int(m) {
        return Err(Error::Domain(format!(
            "(e^{{{m}z}} − 1)/ς² has an unexpected polar part"
        )));
    }
    Ok((0..=k_max)
        .map(|k| &s.coeff(&[k as i32]) * &Rational::factorial(k))
        .collect())
}

/// `(e^{mz} − 1)/ς(z)²` through `z^{k_max}`, poles included.
pub fn twist_series(m: i64, k_max: u32) -> Result<Series> {
    let w = Window::new(vec![VarSpec::laurent("z", 2, k_max + 3)])?;
    let inv = inv_varsigma(&w, "z")?;
    let e = Series::exp_linear(&w, "z", &Rational::from_int(m), k_max + 3)?;
    let out = Window::new(vec![VarSpec::laurent("z", 2, k_max)])?;
    e.try_sub(&Series::one(&w))?
        .try_mul(&inv.try_mul(&inv)?)?
        .into_window(&out)
}

/// Parameters of a tau function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauRequest {
    /// Charge `m`.
    pub m: i64,
    /// Index bound `K`: `t₁..t_K`, `s₁..s_K` and `x₀..x_K` are materialized.
    pub k: u32,
    /// Total degree `D`.
    pub total_degree: u32,
    /// Largest Fock degree summed over; at least `D`.
    pub n_max: usize,
}

impl TauRequest {
    /// The window `t₁..t_K, s₁..s_K, x₀..x_K` with weighted cap `2D`.
    pub fn window(&self) -> Result<Arc<Window>> {
        if self.k == 0 {
            return Err(Error::Domain("tau needs K >= 1".into()));
        }
        let d2 = 2 * self.total_degree;
        let mut vars = Vec::new();
        let mut weights = Vec::new();
        for prefix in ["t", "s"] {
            for k in 1..=self.k {
                vars.push(VarSpec::taylor(format!("{prefix}{k}"), d2 / k));
                weights.push(k);
            }
        }
        for k in 0..=self.k {
            vars.push(VarSpec::taylor(format!("x{k}"), self.total_degree));
            weights.push(2);
        }
        Window::with_cap(vars, DegreeCap { weights, max: d2 })
    }

    fn at_charge(&self, m: i64) -> TauRequest {
        TauRequest { m, ..self.clone() }
    }
}

/// `g_k(λ)`, `k = 0..=k_max`: the Taylor coefficients of the regular part
/// of the charge-`m` eigenvalue on `[λ]`, i.e. `𝔊^{(m)}_k + c^{(m)}_k/k!`.
pub fn hamiltonian_eigenvalues(lambda: &Partition, m: i64, k_max: u32) -> Result<Vec<Rational>> {
    let w = Window::new(vec![VarSpec::taylor("z", k_max)])?;
    let e = twisted_eigenvalue(lambda, m, &w, "z")?;
    Ok((0..=k_max).map(|k| e.coeff(&[k as i32])).collect())
}

// The fixed-point coefficients of Γ₋(y)|0⟩ with y = t or s.
fn gamma_fixed(
    window: &Arc<Window>,
    prefix: &str,
    k: u32,
    cap: usize,
) -> Result<FockVector<Series>> {
    let values: BTreeMap<u32, Series> = (1..=k)
        .map(|i| Ok((i, Series::var(window, &format!("{prefix}{i}"))?)))
        .collect::<Result<_>>()?;
    let vac = FockVector::vacuum(Basis::PowerSum, Series::one(window));
    basis_change(&gamma_minus(&values, &vac, cap)?, Basis::FixedPoint)
}

/// `τ(x, t, s, m)` in [`TauRequest::window`].
pub fn tau(req: &TauRequest) -> Result<Series> {
    if req.n_max < req.total_degree as usize {
        return Err(Error::Window(format!(
            "n_max {} is below the total degree {}",
            req.n_max, req.total_degree
        )));
    }
    let w = req.window()?;
    let cap = req.total_degree as usize;
    let a = gamma_fixed(&w, "t", req.k, cap)?;
    let b = gamma_fixed(&w, "s", req.k, cap)?;
    let mut acc = Series::zero(&w);
    for nu in partitions_up_to(cap.min(req.n_max)) {
        let (an, bn) = (a.coeff(&nu), b.coeff(&nu));
        if an.is_zero() || bn.is_zero() {
            continue;
        }
        let g = hamiltonian_eigenvalues(&nu, req.m, req.k)?;
        let mut lin = Series::zero(&w);
        for (k, gk) in g.iter().enumerate() {
            lin = lin.try_add(&Series::var(&w, &format!("x{k}"))?.scale(gk))?;
        }
        acc = acc.try_add(&an.try_mul(&bn)?.try_mul(&lin.exp()?)?)?;
    }
    if acc.constant_term() != Rational::one() {
        return Err(Error::Normalization(format!(
            "τ has constant term {}",
            acc.constant_term()
        )));
    }
    Ok(acc)
}

/// Outcome of checking the lowest Toda equation.
#[derive(Clone, Debug, PartialEq)]
pub struct TodaReport {
    /// `τ(m)²·∂²ln τ(m)/∂t₁∂s₁ − τ(m+1)τ(m−1)`, within truncation.
    pub residual: Series,
    /// Largest weighted degree of a nonzero residual term.
    pub max_nonzero_degree: Option<i64>,
    pub pass: bool,
}

/// The cross-multiplied lowest equation
/// `τ(m)² ∂²/∂t₁∂s₁ ln τ(m) = τ(m+1) τ(m−1)`, checked in the window where
/// the derivative is exact (cap `2D − 2`).
pub fn toda_residual(req: &TauRequest) -> Result<TodaReport> {
    if req.total_degree < 2 {
        return Err(Error::Domain(
            "the Toda residual needs total degree >= 2".into(),
        ));
    }
    let t0 = tau(req)?;
    let tp = tau(&req.at_charge(req.m + 1))?;
    let tm = tau(&req.at_charge(req.m - 1))?;
    let d = t0
        .log()?
        .partial_derivative("t1")?
        .partial_derivative("s1")?;
    let w = d.window().clone();
    let t0 = t0.into_window(&w)?;
    let lhs = t0.try_mul(&t0)?.try_mul(&d)?;
    let rhs = tp.into_window(&w)?.try_mul(&tm.into_window(&w)?)?;
    let residual = lhs.try_sub(&rhs)?;
    let max_nonzero_degree = residual.terms().map(|(e, _)| w.weighted_degree(&e)).max();
    Ok(TodaReport {
        pass: residual.is_zero(),
        residual,
        max_nonzero_degree,
    })
}

/// `τ(u, x₁) = Σ_n wⁿ ⟨𝔭_{−1}ⁿ/n!, exp(x₁𝔊₁) 𝔭_{−1}ⁿ/n!⟩` with `w = e^u`,
/// through `w^{w_order}` and `x₁^{x_order}`.
pub fn reduced_tau(w_order: u32, x_order: u32, n_max: usize) -> Result<Series> {
    let win = reduced_window(w_order, x_order)?;
    let mut acc = Series::zero(&win);
    for n in 0..=(w_order as usize).min(n_max) {
        let table = char_table(n);
        let ones = Partition::column(n);
        let norm = Rational::factorial(n as u32)
            .pow(2)
            .recip()
            .expect("positive");
        let mut coef = Series::zero(&win);
        for nu in table.partitions() {
            let chi = table.get(nu, &ones);
            let g1 = Rational::from_int(nu.contents().iter().sum());
            let e = Series::exp_linear(&win, "x1", &g1, x_order)?;
            coef = coef.try_add(&e.scale(&(Rational::from_int(chi * chi) * &norm)))?;
        }
        acc = acc.try_add(&coef.try_mul(&Series::monomial(
            &win,
            &[n as i32, 0],
            Rational::one(),
        )?)?)?;
    }
    Ok(acc)
}

fn reduced_window(w_order: u32, x_order: u32) -> Result<Arc<Window>> {
    Window::new(vec![
        VarSpec::taylor("w", w_order),
        VarSpec::taylor("x1", x_order),
    ])
}

/// `τ(w e^{c x₁}, x₁)`: the shift `u ↦ u + c x₁`.
pub fn shift_u(tau: &Series, c: i64) -> Result<Series> {
    let win = tau.window().clone();
    let x_order = win.var("x1")?.max_degree;
    let mut acc = Series::zero(&win);
    let mut by_power: BTreeMap<i32, Vec<(Vec<i32>, Rational)>> = BTreeMap::new();
    for (e, c) in tau.terms() {
        by_power.entry(e[0]).or_default().push((e, c.clone()));
    }
    for (n, terms) in by_power {
        let part = Series::from_terms(&win, terms)?;
        let e = Series::exp_linear(&win, "x1", &Rational::from_int(c * n as i64), x_order)?;
        acc = acc.try_add(&part.try_mul(&e)?)?;
    }
    Ok(acc)
}

/// `τ(u)² (w∂_w)² ln τ − w τ(u+x₁) τ(u−x₁)`, the cross-multiplied reduced
/// equation `e^{−u} ∂²_u ln τ = τ(u+x₁)τ(u−x₁)/τ(u)²`.
pub fn reduced_toda_residual(w_order: u32, x_order: u32, n_max: usize) -> Result<Series> {
    let t = reduced_tau(w_order, x_order, n_max)?;
    let win = t.window().clone();
    let euler = |s: &Series| s.map_coeffs(|e, c| c * &Rational::from_int(e[0] as i64));
    let d2 = euler(&euler(&t.log()?));
    let lhs = t.try_mul(&t)?.try_mul(&d2)?;
    let w = Series::var(&win, "w")?;
    let rhs = w.try_mul(&shift_u(&t, 1)?)?.try_mul(&shift_u(&t, -1)?)?;
    lhs.try_sub(&rhs)
}

#[cfg(test)]
mod tests;
