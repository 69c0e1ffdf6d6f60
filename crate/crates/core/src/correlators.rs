//! N-point functions `F•_{λ,μ}(z₁,…,z_N)` and `G_{λ,μ}(z₁,…,z_N)`.
//!
//! `F•` pairs `𝔭_{−λ}` with a product of `ε₀(z_i)` applied to `𝔭_{−μ}`;
//! `G` does the same with `ℌ(z_i)`. Coefficients of `z₁^{k₁}⋯z_N^{k_N}` in
//! `G` are the intersection numbers `⟨λ, c̃h_{k₁}⋯c̃h_{k_N}, μ⟩`.
//!
//! Each quantity has more than one independent evaluation route; see
//! [`Method`] and [`GMethod`].

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operators::{
    epsilon_product_vev, inv_varsigma, varsigma, DiagonalOperator, EigenCache, OperatorKind,
};
use crate::partitions::Partition;
use crate::rational::Rational;
use crate::series::{Series, VarSpec, Window};

/// How to evaluate `F•`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Schur-basis diagonalization: `Σ_ν χ^ν(λ)χ^ν(μ)/(𝔷_λ𝔷_μ) Π_i ε₀-eigenvalue`.
    Diagonal,
    /// Commutator calculus, no characters.
    Commutator,
    /// The subset-sum closed form; only for `N ≤ 1`.
    ClosedForm,
}

/// How to evaluate `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GMethod {
    /// `⟨𝔭_{−λ}, ℌ(z₁)⋯ℌ(z_N) 𝔭_{−μ}⟩` on the fixed-point basis.
    Direct,
    /// Inclusion–exclusion over `F•(z_U)`, `U ⊂ {1..N}`.
    InclusionExclusion,
    /// The closed 1-point formula; only for `N ≤ 1`.
    ClosedForm,
    /// `(1/ς)(F•(z) − F•()/ς)`; only for `N = 1`.
    Relation,
}

/// Evaluates correlators over a fixed set of variables and target window.
///
/// Intermediate work happens in a wider scratch window: each correlator
/// variable gets pole order at least 2 and `N + 2` guard degrees. Results are
/// truncated back into the target window, which must itself admit the
/// answer (pole order `N` per variable for `F•`; `G` is pole-free).
#[derive(Debug)]
pub struct Correlators {
    window: Arc<Window>,
    vars: Vec<String>,
    cache: EigenCache,
}

impl Correlators {
    pub fn new(window: &Arc<Window>, vars: &[&str]) -> Result<Correlators> {
        for v in vars {
            window.var(v)?;
        }
        let guard = vars.len() as u32 + 2;
        let wide = window.map_vars(|v| {
            if vars.contains(&v.name.as_str()) {
                VarSpec {
                    name: v.name.clone(),
                    max_pole: v.max_pole.max(2),
                    max_degree: v.max_degree + guard,
                }
            } else {
                v.clone()
            }
        })?;
        Ok(Correlators {
            window: window.clone(),
            vars: vars.iter().map(|s| s.to_string()).collect(),
            cache: EigenCache::new(&wide),
        })
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    fn wide(&self) -> &Arc<Window> {
        self.cache.window()
    }

    fn check(&self, lambda: &Partition, mu: &Partition, vars: &[&str]) -> Result<()> {
        if lambda.size() != mu.size() {
            return Err(Error::Domain(format!(
                "correlator of {lambda} and {mu}: sizes differ"
            )));
        }
        for v in vars {
            if !self.vars.iter().any(|x| x == v) {
                return Err(Error::Structural(format!(
                    "{v} is not a correlator variable"
                )));
            }
        }
        Ok(())
    }

    fn vacuum_term(&self, lambda: &Partition, mu: &Partition, w: &Arc<Window>) -> Series {
        if lambda == mu {
            Series::constant(w, lambda.z_factor().recip().expect("positive"))
        } else {
            Series::zero(w)
        }
    }

    /// `F•_{λ,μ}(vars)`; `vars` may be any sequence of correlator variables.
    pub fn f_bullet(
        &self,
        lambda: &Partition,
        mu: &Partition,
        vars: &[&str],
        method: Method,
    ) -> Result<Series> {
        self.check(lambda, mu, vars)?;
        match method {
            Method::Diagonal => self.f_wide(lambda, mu, vars)?.into_window(&self.window),
            Method::Commutator => {
                let factors: Vec<(i64, &str)> = vars.iter().map(|v| (0, *v)).collect();
                epsilon_product_vev(lambda, mu, &factors, &self.window)
            }
            Method::ClosedForm => match vars {
                [] => Ok(self.vacuum_term(lambda, mu, &self.window)),
                [z] => {
                    let inv = self.cache.get(
                        &DiagonalOperator::new(OperatorKind::Epsilon0, *z),
                        &Partition::empty(),
                    )?;
                    let s = self.subset_sum(lambda, mu, z)?;
                    s.try_mul(&inv)?
                        .scale(&lambda.z_factor().recip().expect("positive"))
                        .into_window(&self.window)
                }
                _ => Err(Error::Domain(
                    "closed form F• exists only for N <= 1".into(),
                )),
            },
        }
    }

    // F• by diagonalization, in the scratch window.
    fn f_wide(&self, lambda: &Partition, mu: &Partition, vars: &[&str]) -> Result<Series> {
        let ops: Vec<_> = vars
            .iter()
            .map(|v| DiagonalOperator::new(OperatorKind::Epsilon0, *v))
            .collect();
        self.cache.matrix_element(lambda, mu, &ops)
    }

    // Σ_U ς(λ_U, z) ς(λ_U+μ−λ, z) / 𝔷_{λ_U+μ−λ} over index subsets U of
    // λ with λ ⊂ λ_U + μ.
    fn subset_sum(&self, lambda: &Partition, mu: &Partition, z: &str) -> Result<Series> {
        let w = self.wide();
        let sig = |p: &Partition| -> Result<Series> {
            let mut acc = Series::one(w);
            for &k in p.parts() {
                acc = acc.try_mul(&varsigma(w, z, k as i64)?)?;
            }
            Ok(acc)
        };
        let r = lambda.len();
        let mut total = Series::zero(w);
        for mask in 0u64..(1u64 << r) {
            let u: Vec<usize> = (0..r)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| i + 1)
                .collect();
            let lu = lambda.subpartition(&u)?;
            let sum = lu.combine(mu);
            if !lambda.is_contained_in(&sum) {
                continue;
            }
            let rest = sum.subtract(lambda)?;
            let term = sig(&lu)?.try_mul(&sig(&rest)?)?;
            total = total.try_add(&term.scale(&rest.z_factor().recip().expect("positive")))?;
        }
        Ok(total)
    }

    /// `G_{λ,μ}(vars)`.
    pub fn g_npoint(
        &self,
        lambda: &Partition,
        mu: &Partition,
        vars: &[&str],
        method: GMethod,
    ) -> Result<Series> {
        self.check(lambda, mu, vars)?;
        let w = self.wide();
        let inv = |z: &str| {
            self.cache.get(
                &DiagonalOperator::new(OperatorKind::Epsilon0, z),
                &Partition::empty(),
            )
        };
        let out = match method {
            GMethod::Direct => {
                let ops: Vec<_> = vars
                    .iter()
                    .map(|v| DiagonalOperator::new(OperatorKind::Master, *v))
                    .collect();
                self.cache.matrix_element(lambda, mu, &ops)?
            }
            GMethod::InclusionExclusion => {
                let n = vars.len();
                let mut total = Series::zero(w);
                for mask in 0u64..(1u64 << n) {
                    let inside: Vec<&str> = (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| vars[i])
                        .collect();
                    let mut term = self.f_wide(lambda, mu, &inside)?;
                    for (i, z) in vars.iter().enumerate() {
                        if mask >> i & 1 == 0 {
                            term = term.try_mul(&inv(z)?)?;
                        }
                    }
                    if (n - inside.len()) % 2 == 1 {
                        term = term.scale(&Rational::from_int(-1));
                    }
                    total = total.try_add(&term)?;
                }
                for z in vars {
                    total = total.try_mul(&inv(z)?)?;
                }
                total
            }
            GMethod::ClosedForm => match vars {
                [] => self.vacuum_term(lambda, mu, w),
                [z] => {
                    let i = inv(z)?;
                    let s = self
                        .subset_sum(lambda, mu, z)?
                        .try_sub(&self.vacuum_term(lambda, mu, w).scale(&lambda.z_factor()))?;
                    s.try_mul(&i.try_mul(&i)?)?
                        .scale(&lambda.z_factor().recip().expect("positive"))
                }
                _ => return Err(Error::Domain("closed form G exists only for N <= 1".into())),
            },
            GMethod::Relation => match vars {
                [z] => {
                    let i = inv(z)?;
                    let f = self.f_wide(lambda, mu, vars)?;
                    f.try_sub(&self.vacuum_term(lambda, mu, w).try_mul(&i)?)?
                        .try_mul(&i)?
                }
                _ => {
                    return Err(Error::Domain(
                        "the 1-point relation needs exactly one variable".into(),
                    ))
                }
            },
        };
        out.into_window(&self.window)
    }
}

/// `F•_{λ,μ}(z)` by the closed subset-sum formula, in `window` (pole ≥ 1).
pub fn one_point_closed_form(
    lambda: &Partition,
    mu: &Partition,
    var: &str,
    window: &Arc<Window>,
) -> Result<Series> {
    inv_varsigma(window, var)?;
    Correlators::new(window, &[var])?.f_bullet(lambda, mu, &[var], Method::ClosedForm)
}

/// `G_{λ,μ}(z)` by the closed 1-point formula.
pub fn g_one_point_theorem(
    lambda: &Partition,
    mu: &Partition,
    var: &str,
    window: &Arc<Window>,
) -> Result<Series> {
    Correlators::new(window, &[var])?.g_npoint(lambda, mu, &[var], GMethod::ClosedForm)
}

/// `F•_{λ,μ}(z₁,…,z_N)` by diagonalization; the window needs pole order at
/// least the number of occurrences of each variable.
pub fn f_bullet(
    lambda: &Partition,
    mu: &Partition,
    vars: &[&str],
    window: &Arc<Window>,
) -> Result<Series> {
    Correlators::new(window, &dedup(vars))?.f_bullet(lambda, mu, vars, Method::Diagonal)
}

/// `G_{λ,μ}(z₁,…,z_N)` as a matrix element of `ℌ(z₁)⋯ℌ(z_N)`.
pub fn g_npoint(
    lambda: &Partition,
    mu: &Partition,
    vars: &[&str],
    window: &Arc<Window>,
) -> Result<Series> {
    Correlators::new(window, &dedup(vars))?.g_npoint(lambda, mu, vars, GMethod::Direct)
}

fn dedup<'a>(vars: &[&'a str]) -> Vec<&'a str> {
    let mut out: Vec<&str> = Vec::new();
    for v in vars {
        if !out.contains(v) {
            out.push(v);
        }
    }
    out
}
