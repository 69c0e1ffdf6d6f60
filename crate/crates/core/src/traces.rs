//! q-traces over the Fock space, theta functions, and the determinant
//! formula for traces of products of `ε₀(z)` and `𝔊_z`.
//!
//! Theta functions use the normalization in which every fractional power of
//! `q` cancels:
//! `Θ(z; q) = ς(z) (qe^z; q)_∞ (qe^{−z}; q)_∞ / (q; q)_∞²`.
//! Multiplicatively written arguments `Θ(z₁z₂)` mean `Θ(z₁ + z₂)`, and an
//! empty argument means `z = 0`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operators::{inv_varsigma, varsigma, DiagonalOperator, EigenCache, OperatorKind};
use crate::partitions::partitions_up_to;
use crate::rational::Rational;
use crate::series::{Series, VarSpec, Window};

mod xring;

pub use xring::determinant_sum;

/// The operator in one trace factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceOp {
    Epsilon0,
    Chern,
}

/// `Tr_q` of a product of diagonal operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRequest {
    /// `(operator, variable)` per factor.
    pub factors: Vec<(TraceOp, String)>,
    pub q: String,
    /// Largest partition size summed over; at least the q-window.
    pub n_max: usize,
}

/// `(a; q)_∞` with `a = q e^{c z}` for `shift = Some((z, c))` or `a = q`,
/// truncated by the window in `q`.
pub fn q_pochhammer(window: &Arc<Window>, q: &str, shift: Option<(&str, i64)>) -> Result<Series> {
    let qi = window.index_of(q)?;
    let qmax = window.vars()[qi].max_degree;
    let mut acc = Series::one(window);
    for j in 1..=qmax {
        let mut e = vec![0; window.nvars()];
        e[qi] = j as i32;
        let mut term = Series::monomial(window, &e, Rational::one())?;
        if let Some((z, c)) = shift {
            let d = window.var(z)?.max_degree;
            term = term.try_mul(&Series::exp_linear(window, z, &Rational::from_int(c), d)?)?;
        }
        acc = acc.try_sub(&acc.try_mul(&term)?)?;
    }
    Ok(acc)
}

/// `Θ(z; q)` in product form.
pub fn theta(window: &Arc<Window>, z: &str, q: &str) -> Result<Series> {
    let qq = q_pochhammer(window, q, None)?;
    let den = qq.try_mul(&qq)?.invert(window)?;
    varsigma(window, z, 1)?
        .try_mul(&q_pochhammer(window, q, Some((z, 1)))?)?
        .try_mul(&q_pochhammer(window, q, Some((z, -1)))?)?
        .try_mul(&den)
}

/// `Θ^{(k)}(z; q) = d^k/dz^k Θ`. The z-window shrinks by `k`, as for
/// [`Series::partial_derivative`].
pub fn theta_deriv(k: u32, window: &Arc<Window>, z: &str, q: &str) -> Result<Series> {
    let mut t = theta(window, z, q)?;
    for _ in 0..k {
        t = t.partial_derivative(z)?;
    }
    Ok(t)
}

/// `Σ_m (−1)^m q^{m(m+1)/2} e^{(m+1/2)z}`, the theta sum with its
/// `q^{1/8}` stripped. Equals `(q;q)_∞ Θ(z; q) (q;q)_∞²/(q;q)_∞²`, i.e.
/// `(q;q)_∞ ς(z)(qe^z;q)_∞(qe^{−z};q)_∞`.
pub fn jacobi_sum_form(window: &Arc<Window>, z: &str, q: &str) -> Result<Series> {
    let qi = window.index_of(q)?;
    let qmax = window.vars()[qi].max_degree as i64;
    let d = window.var(z)?.max_degree;
    let mut acc = Series::zero(window);
    let mut m = 0i64;
    // m and −1−m share the power m(m+1)/2
    while m * (m + 1) / 2 <= qmax {
        let mut e = vec![0; window.nvars()];
        e[qi] = (m * (m + 1) / 2) as i32;
        let qm = Series::monomial(window, &e, Rational::one())?;
        let sign = Rational::from_int(if m % 2 == 0 { 1 } else { -1 });
        let plus = Series::exp_linear(window, z, &Rational::new(2 * m + 1, 2), d)?;
        let minus = Series::exp_linear(window, z, &Rational::new(-(2 * m + 1), 2), d)?;
        acc = acc.try_add(&qm.try_mul(&plus.try_sub(&minus)?)?.scale(&sign))?;
        m += 1;
    }
    Ok(acc)
}

/// `(q;q)_∞ ς(z) (qe^z;q)_∞ (qe^{−z};q)_∞`, the product side of the triple
/// product identity.
pub fn jacobi_product_form(window: &Arc<Window>, z: &str, q: &str) -> Result<Series> {
    q_pochhammer(window, q, None)?
        .try_mul(&varsigma(window, z, 1)?)?
        .try_mul(&q_pochhammer(window, q, Some((z, 1)))?)?
        .try_mul(&q_pochhammer(window, q, Some((z, -1)))?)
}

/// `Tr_q` by direct summation: `Σ_λ q^{|λ|} Π_j eigenvalue_j(λ)`, valid
/// because the fixed-point basis is orthonormal.
pub fn q_trace(req: &TraceRequest, window: &Arc<Window>) -> Result<Series> {
    let qi = window.index_of(&req.q)?;
    let qmax = window.vars()[qi].max_degree as usize;
    if req.n_max < qmax {
        return Err(Error::Window(format!(
            "n_max {} is below the q-window {qmax}",
            req.n_max
        )));
    }
    let mut uses: BTreeMap<&str, u32> = BTreeMap::new();
    for (_, v) in &req.factors {
        window.var(v)?;
        *uses.entry(v.as_str()).or_insert(0) += 1;
    }
    let guard = req.factors.len() as u32 + 1;
    let wide = window.map_vars(|v| match uses.get(v.name.as_str()) {
        Some(&n) => VarSpec {
            name: v.name.clone(),
            max_pole: v.max_pole.max(n),
            max_degree: v.max_degree + guard,
        },
        None => v.clone(),
    })?;
    let cache = EigenCache::new(&wide);
    let ops: Vec<DiagonalOperator> = req
        .factors
        .iter()
        .map(|(op, v)| {
            let kind = match op {
                TraceOp::Epsilon0 => OperatorKind::Epsilon0,
                TraceOp::Chern => OperatorKind::Chern,
            };
            DiagonalOperator::new(kind, v.clone())
        })
        .collect();
    let mut acc = Series::zero(&wide);
    for lambda in partitions_up_to(qmax) {
        let mut e = vec![0; wide.nvars()];
        e[qi] = lambda.size() as i32;
        let qn = Series::monomial(&wide, &e, Rational::one())?;
        acc = acc.try_add(&qn.try_mul(&cache.product(&ops, &lambda)?)?)?;
    }
    acc.into_window(window)
}

/// The right side of the Bloch–Okounkov formula,
/// `(1/(q;q)_∞) Σ_{σ∈S_N} det M_{N,σ} / Θ_{N,σ}`, which equals
/// `Tr_q(ε₀(z₁)⋯ε₀(z_N))`. Needs pole order 1 in each `z_i`.
pub fn bloch_okounkov_rhs(zvars: &[&str], q: &str, window: &Arc<Window>) -> Result<Series> {
    let wide = scratch(window, zvars, 1, 2)?;
    let inv_qq = q_pochhammer(&wide, q, None)?.invert(&wide)?;
    determinant_sum(zvars, q, &wide)?
        .try_mul(&inv_qq)?
        .into_window(window)
}

/// The right side of the trace theorem for `Tr_q(𝔊_{z₁}⋯𝔊_{z_N})`:
/// `(1/((q;q)_∞ Π ς(z_i))) Σ_U (−1)^{N−|U|} (Σ_{σ∈S_U} det M_{U,σ}/Θ_{U,σ}) / Π_{i∉U} ς(z_i)`.
/// The result is pole-free.
pub fn trace_theorem_rhs(zvars: &[&str], q: &str, window: &Arc<Window>) -> Result<Series> {
    let wide = scratch(window, zvars, 2, 3)?;
    let inv: Vec<Series> = zvars
        .iter()
        .map(|z| inv_varsigma(&wide, z))
        .collect::<Result<_>>()?;
    let n = zvars.len();
    let mut total = Series::zero(&wide);
    for mask in 0u64..(1u64 << n) {
        let u: Vec<&str> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| zvars[i])
            .collect();
        let mut term = determinant_sum(&u, q, &wide)?;
        for (i, s) in inv.iter().enumerate() {
            if mask >> i & 1 == 0 {
                term = term.try_mul(s)?;
            }
        }
        if (n - u.len()) % 2 == 1 {
            term = term.scale(&Rational::from_int(-1));
        }
        total = total.try_add(&term)?;
    }
    for s in &inv {
        total = total.try_mul(s)?;
    }
    let inv_qq = q_pochhammer(&wide, q, None)?.invert(&wide)?;
    total.try_mul(&inv_qq)?.into_window(window)
}

// `window` with each z given pole order at least `pole` and `extra` more
// degrees.
fn scratch(window: &Arc<Window>, zvars: &[&str], pole: u32, extra: u32) -> Result<Arc<Window>> {
    for z in zvars {
        window.var(z)?;
    }
    window.map_vars(|v| {
        if zvars.contains(&v.name.as_str()) {
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

#[cfg(test)]
mod tests;
