//! Exact cross-checks of every identity the crate implements.
//!
//! Each check compares two independently computed quantities coefficient by
//! coefficient. A failed [`Check`] names its module and identity and carries
//! the first offending coefficient with both values. Sizes are parameters so
//! the same checks serve the quick `verify` suites and the acceptance run.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::correlators::{Correlators, GMethod, Method};
use crate::error::{Error, Result};
use crate::fock::{apply_p, basis_change, inner_product, Basis, FockVector};
use crate::operators::{
    apply_diagonal, chern_eigenvalue, epsilon0_eigenvalue, epsilon_product_vev, master_eigenvalue,
    twisted_eigenvalue, DiagonalOperator, OperatorKind,
};
use crate::partitions::{char_table, partitions_of, partitions_up_to, Partition};
use crate::rational::Rational;
use crate::series::{Series, VarSpec, Window};
use crate::toda::{self, TauRequest};
use crate::traces::{self, TraceOp, TraceRequest};

/// The first coefficient at which two sides differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// Where: an exponent vector (`|`-separated), a partition, or both.
    pub at: String,
    pub left: String,
    pub right: String,
}

/// Outcome of one identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub module: &'static str,
    pub identity: String,
    pub failure: Option<Mismatch>,
    /// Set when a side could not be computed at all.
    pub error: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.error.is_none()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "ok  " } else { "FAIL" };
        write!(f, "{tag} [{}] {}", self.module, self.identity)?;
        if let Some(m) = &self.failure {
            write!(f, ": at {} left {} right {}", m.at, m.left, m.right)?;
        }
        if let Some(e) = &self.error {
            write!(f, ": {e}")?;
        }
        Ok(())
    }
}

/// Records the first mismatch of a check.
#[derive(Default)]
pub struct Probe {
    first: Option<Mismatch>,
}

impl Probe {
    pub fn failed(&self) -> bool {
        self.first.is_some()
    }

    /// Coefficient-wise equality of two series in the same window.
    pub fn series(&mut self, ctx: impl fmt::Display, a: &Series, b: &Series) -> Result<()> {
        if self.failed() {
            return Ok(());
        }
        let d = a.try_sub(b)?;
        if let Some((e, _)) = d.terms().next() {
            let at: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            self.first = Some(Mismatch {
                at: format!("{ctx} {}", at.join("|")).trim().to_string(),
                left: a.coeff(&e).to_string(),
                right: b.coeff(&e).to_string(),
            });
        }
        Ok(())
    }

    pub fn value<T: PartialEq + fmt::Display>(&mut self, ctx: impl fmt::Display, a: T, b: T) {
        if !self.failed() && a != b {
            self.first = Some(Mismatch {
                at: ctx.to_string(),
                left: a.to_string(),
                right: b.to_string(),
            });
        }
    }

    pub fn holds(&mut self, ctx: impl fmt::Display, ok: bool) {
        self.value(ctx, ok, true);
    }
}

fn check(
    module: &'static str,
    identity: impl Into<String>,
    f: impl FnOnce(&mut Probe) -> Result<()>,
) -> Check {
    let mut p = Probe::default();
    let r = f(&mut p);
    Check {
        module,
        identity: identity.into(),
        failure: p.first,
        error: r.err().map(|e| e.to_string()),
    }
}

fn zwin(pole: u32, degree: u32) -> Result<Arc<Window>> {
    Window::new(vec![VarSpec::laurent("z", pole, degree)])
}

// exact-series

fn samples() -> Result<(Arc<Window>, Vec<Series>)> {
    let w = Window::new(vec![VarSpec::laurent("x", 3, 5), VarSpec::taylor("y", 4)])?;
    let mut out = Vec::new();
    for s in 0..4i64 {
        let mut terms = Vec::new();
        for i in -1..=3i32 {
            for j in 0..=2i32 {
                let c = (s * 7 + i as i64 * 5 + j as i64 * 3) % 11 - 5;
                if c != 0 && (i + j + s as i32) % 3 != 0 {
                    terms.push((vec![i, j], Rational::new(c, j as i64 + 1)));
                }
            }
        }
        out.push(Series::from_terms(&w, terms)?);
    }
    Ok((w, out))
}

/// Associativity, commutativity and distributivity on fixed samples.
/// Products of pole-order-1 samples stay exact through `x³` in a window
/// of degree 5 (each factor can lose one degree).
pub fn ring_axioms() -> Check {
    check("exact-series", "ring axioms", |p| {
        let (w, s) = samples()?;
        let exact = Window::new(vec![VarSpec::laurent("x", 3, 3), VarSpec::taylor("y", 4)])?;
        let cut = |x: Series| -> Result<Series> { x.into_window(&exact) };
        for (i, a) in s.iter().enumerate() {
            for b in &s {
                p.series(format!("a+b sample {i}"), &a.try_add(b)?, &b.try_add(a)?)?;
                p.series(format!("ab sample {i}"), &a.try_mul(b)?, &b.try_mul(a)?)?;
                for c in &s {
                    let lhs = a.try_mul(&b.try_add(c)?)?;
                    let rhs = a.try_mul(b)?.try_add(&a.try_mul(c)?)?;
                    p.series("a(b+c)", &lhs, &rhs)?;
                    let ab_c = a.try_mul(b)?.try_mul(c)?;
                    let a_bc = a.try_mul(&b.try_mul(c)?)?;
                    p.series("(ab)c", &cut(ab_c)?, &cut(a_bc)?)?;
                }
            }
        }
        p.holds("window", w.nvars() == 2);
        Ok(())
    })
}

/// `a · a⁻¹ = 1` for Laurent and Taylor units.
pub fn invert_identity() -> Check {
    check("exact-series", "series_invert(a)·a = 1", |p| {
        let w = Window::new(vec![VarSpec::laurent("x", 3, 6), VarSpec::taylor("y", 3)])?;
        let (_, s) = samples()?;
        for (i, a) in s.iter().enumerate() {
            // a leading monomial x⁻¹ over a regular tail
            let a = a.filter_terms(|e, _| e[0] >= 0).into_window(&w)?;
            let a = a.try_add(&Series::monomial(
                &w,
                &[-1, 0],
                Rational::from_int(i as i64 + 2),
            )?)?;
            let wide = w.widened(4)?;
            let inv = a.into_window(&wide)?.invert(&wide)?;
            let prod = a.into_window(&wide)?.try_mul(&inv)?;
            let out = Window::new(vec![VarSpec::laurent("x", 3, 2), VarSpec::taylor("y", 3)])?;
            p.series(
                format!("sample {i}"),
                &prod.into_window(&out)?,
                &Series::one(&out),
            )?;
        }
        let t = Window::new(vec![VarSpec::taylor("x", 6)])?;
        let unit = Series::exp_linear(&t, "x", &Rational::new(3, 2), 6)?;
        p.series(
            "exp(3x/2)",
            &unit.try_mul(&unit.invert(&t)?)?,
            &Series::one(&t),
        )?;
        Ok(())
    })
}

/// `log(exp a) = a` and `exp(log(1+b)) = 1+b`.
pub fn exp_log() -> Check {
    check("exact-series", "log∘exp and exp∘log", |p| {
        let w = Window::new(vec![VarSpec::taylor("x", 6), VarSpec::taylor("y", 4)])?;
        let (_, s) = samples()?;
        for (i, a) in s.iter().enumerate() {
            let a = a
                .filter_terms(|e, _| e[0] >= 0 && e.iter().any(|&x| x > 0))
                .into_window(&w)?;
            p.series(format!("log exp sample {i}"), &a.exp()?.log()?, &a)?;
            let one_b = Series::one(&w).try_add(&a)?;
            p.series(format!("exp log sample {i}"), &one_b.log()?.exp()?, &one_b)?;
        }
        Ok(())
    })
}

/// `∂(ab) = ∂a·b + a·∂b`.
pub fn leibniz() -> Check {
    check("exact-series", "Leibniz rule", |p| {
        let (_, s) = samples()?;
        for (i, a) in s.iter().enumerate() {
            for b in &s {
                for v in ["x", "y"] {
                    let lhs = a.try_mul(b)?.partial_derivative(v)?;
                    let da = a.partial_derivative(v)?;
                    let db = b.partial_derivative(v)?;
                    let w = da.window().clone();
                    let rhs = da
                        .try_mul(&b.into_window(&w)?)?
                        .try_add(&a.into_window(&w)?.try_mul(&db)?)?;
                    // products of pole-order-1 factors lose one degree
                    let exact = w.map_vars(|x| VarSpec {
                        max_degree: x
                            .max_degree
                            .saturating_sub(if x.max_pole > 0 { 2 } else { 0 }),
                        ..x.clone()
                    })?;
                    p.series(
                        format!("∂{v} sample {i}"),
                        &lhs.into_window(&exact)?,
                        &rhs.into_window(&exact)?,
                    )?;
                }
            }
        }
        Ok(())
    })
}

/// Canonical form and JSON round trips.
pub fn canonical_form() -> Check {
    check(
        "exact-series",
        "canonical form and serialization round trip",
        |p| {
            let (_, s) = samples()?;
            for (i, a) in s.iter().enumerate() {
                p.holds(
                    format!("no stored zeros in sample {i}"),
                    a.terms().all(|(_, c)| !c.is_zero()),
                );
                let text = a.to_json();
                let back = Series::from_json(&text)?;
                p.series(format!("sample {i}"), &back, a)?;
                p.value(format!("json of sample {i}"), back.to_json(), text);
            }
            Ok(())
        },
    )
}

// partitions

/// `Σ_λ χ^λ(μ)χ^λ(ν) = δ_{μν} 𝔷_μ`, `n ≤ max_n`.
pub fn column_orthogonality(max_n: usize) -> Check {
    check(
        "partitions",
        format!("character column orthogonality, n ≤ {max_n}"),
        |p| {
            for n in 0..=max_n {
                let t = char_table(n);
                for mu in t.partitions() {
                    for nu in t.partitions() {
                        let s: i64 = t
                            .partitions()
                            .iter()
                            .map(|l| t.get(l, mu) * t.get(l, nu))
                            .sum();
                        let want = if mu == nu {
                            mu.z_factor()
                        } else {
                            Rational::zero()
                        };
                        p.value(format!("{mu} {nu}"), Rational::from_int(s), want);
                    }
                }
            }
            Ok(())
        },
    )
}

/// `χ^λ(1ⁿ) = n!/h(λ)` and `Σ_λ (dim λ)² = n!`.
pub fn dimension_squares(max_n: usize) -> Check {
    check(
        "partitions",
        format!("Σ (dim λ)² = n!, dim λ = n!/h(λ), n ≤ {max_n}"),
        |p| {
            for n in 0..=max_n {
                let t = char_table(n);
                let fact = Rational::factorial(n as u32);
                let mut sum = Rational::zero();
                for l in t.partitions() {
                    let dim = Rational::from_int(t.get(l, &Partition::column(n)));
                    p.value(format!("{l}"), dim.clone(), &fact / &l.hook_product());
                    sum += &(&dim * &dim);
                }
                p.value(format!("n = {n}"), sum, fact);
            }
            Ok(())
        },
    )
}

/// `contents(λᵀ) = −contents(λ)` as multisets.
pub fn contents_transpose(max_n: usize) -> Check {
    check(
        "partitions",
        format!("contents of λᵀ are negated, n ≤ {max_n}"),
        |p| {
            for l in partitions_up_to(max_n) {
                let mut a: Vec<i64> = l.contents().iter().map(|c| -c).collect();
                let mut b = l.transpose().contents();
                a.sort();
                b.sort();
                p.value(format!("{l}"), format!("{a:?}"), format!("{b:?}"));
            }
            Ok(())
        },
    )
}

// fock

fn ps(l: &Partition) -> FockVector<Rational> {
    FockVector::basis_vector(l.clone(), Basis::PowerSum, Rational::one())
}

/// `[𝔭_m, 𝔭_n] v = m δ_{m,−n} v` on basis vectors.
pub fn heisenberg(max_mode: i32, max_n: usize) -> Check {
    check(
        "fock",
        format!("[𝔭_m, 𝔭_n] = m δ_(m,−n), |m|,|n| ≤ {max_mode}, |λ| ≤ {max_n}"),
        |p| {
            for l in partitions_up_to(max_n) {
                let v = ps(&l);
                for m in -max_mode..=max_mode {
                    for n in -max_mode..=max_mode {
                        let lhs = apply_p(m, &apply_p(n, &v)?)?
                            .try_sub(&apply_p(n, &apply_p(m, &v)?)?)?;
                        let rhs = if m == -n && m != 0 {
                            v.scale(&Rational::from_int(m as i64))
                        } else {
                            FockVector::rational(Basis::PowerSum)
                        };
                        p.value(
                            format!("m={m} n={n} λ={l}"),
                            format!("{lhs:?}"),
                            format!("{rhs:?}"),
                        );
                    }
                }
            }
            Ok(())
        },
    )
}

/// Both pairings: `⟨𝔭_{−λ},𝔭_{−μ}⟩ = δ/𝔷_λ` by composing `apply_p`, and
/// `⟨[λ],[μ]⟩ = δ` computed in the power-sum basis.
pub fn pairing(max_n: usize) -> Check {
    check(
        "fock",
        format!("⟨𝔭_−λ, 𝔭_−μ⟩ = δ/𝔷_λ and ⟨[λ],[μ]⟩ = δ, |λ|,|μ| ≤ {max_n}"),
        |p| {
            let vac = FockVector::vacuum(Basis::PowerSum, Rational::zero());
            for n in 0..=max_n {
                let parts = partitions_of(n);
                for l in &parts {
                    // 𝔭_{−λ} = 𝔷_λ⁻¹ 𝔭_{−λ₁}⋯𝔭_{−λ_ℓ}|0⟩, and each 𝔭_{−k} moves
                    // across the pairing as 𝔭_k
                    for mu in &parts {
                        let mut w = ps(mu);
                        for &k in l.parts() {
                            w = apply_p(k as i32, &w)?;
                        }
                        let got = &inner_product(&vac, &w)? / &l.z_factor();
                        let want = if l == mu {
                            l.z_factor().recip().expect("positive")
                        } else {
                            Rational::zero()
                        };
                        p.value(format!("power sum {l} {mu}"), got, want);
                        let a = basis_change(
                            &FockVector::basis_vector(
                                l.clone(),
                                Basis::FixedPoint,
                                Rational::one(),
                            ),
                            Basis::PowerSum,
                        )?;
                        let b = basis_change(
                            &FockVector::basis_vector(
                                mu.clone(),
                                Basis::FixedPoint,
                                Rational::one(),
                            ),
                            Basis::PowerSum,
                        )?;
                        let want = if l == mu {
                            Rational::one()
                        } else {
                            Rational::zero()
                        };
                        p.value(
                            format!("fixed point {l} {mu}"),
                            inner_product(&a, &b)?,
                            want,
                        );
                    }
                }
            }
            Ok(())
        },
    )
}

/// `⟨𝔭_k v, w⟩ = ⟨v, 𝔭_{−k} w⟩`.
pub fn adjointness(max_n: usize) -> Check {
    check(
        "fock",
        format!("𝔭_k is adjoint to 𝔭_−k, |λ| ≤ {max_n}"),
        |p| {
            for k in 1..=max_n as i32 {
                for l in partitions_up_to(max_n) {
                    if l.size() < k as usize {
                        continue;
                    }
                    for mu in partitions_of(l.size() - k as usize) {
                        let lhs = inner_product(&apply_p(k, &ps(&l))?, &ps(&mu))?;
                        let rhs = inner_product(&ps(&l), &apply_p(-k, &ps(&mu))?)?;
                        p.value(format!("k={k} {l} {mu}"), lhs, rhs);
                    }
                }
            }
            Ok(())
        },
    )
}

/// `𝔭_k|0⟩ = 0` for `k > 0`; creation monomials reach every basis vector;
/// the basis change round trip is the identity.
pub fn vacuum_and_basis(max_n: usize) -> Check {
    check(
        "fock",
        format!("vacuum, spanning and basis round trip, n ≤ {max_n}"),
        |p| {
            let vac = FockVector::vacuum(Basis::PowerSum, Rational::zero());
            for k in 1..=max_n as i32 {
                p.holds(format!("𝔭_{k}|0⟩"), apply_p(k, &vac)?.is_zero());
            }
            for l in partitions_up_to(max_n) {
                let mut v = vac.clone();
                for &k in l.parts() {
                    v = apply_p(-(k as i32), &v)?;
                }
                // 𝔭_{−λ_1}⋯𝔭_{−λ_ℓ}|0⟩ = 𝔷_λ 𝔭_{−λ}
                p.value(
                    format!("creation {l}"),
                    format!("{v:?}"),
                    format!("{:?}", ps(&l).scale(&l.z_factor())),
                );
                for basis in [Basis::PowerSum, Basis::FixedPoint] {
                    let b = FockVector::basis_vector(l.clone(), basis, Rational::one());
                    let other = if basis == Basis::PowerSum {
                        Basis::FixedPoint
                    } else {
                        Basis::PowerSum
                    };
                    let back = basis_change(&basis_change(&b, other)?, basis)?;
                    p.value(
                        format!("round trip {l} {basis:?}"),
                        format!("{back:?}"),
                        format!("{b:?}"),
                    );
                }
            }
            Ok(())
        },
    )
}

// operators

/// `Σ_□ e^{z c_□} = (1/ς)(ε₀-eigenvalue − 1/ς)`, the contents sum
/// against the regularized sum over rows.
pub fn chern_identity(max_n: usize, z_order: u32) -> Check {
    check(
        "operators",
        format!("chern = (1/ς)(ε₀ − 1/ς) on [λ], |λ| ≤ {max_n}, z^{z_order}"),
        |p| {
            let w = zwin(0, z_order)?;
            for l in partitions_up_to(max_n) {
                let m = master_eigenvalue(&l, &w, "z")?;
                p.series(format!("{l}"), &chern_eigenvalue(&l, &w, "z")?, &m)?;
            }
            Ok(())
        },
    )
}

/// `ε₀` eigenvalues have residue 1 and Chern eigenvalues constant term `|λ|`.
pub fn eigenvalue_normalizations(max_n: usize) -> Check {
    check(
        "operators",
        format!("Res ε₀ = 1 and 𝔊₀ = |λ|, |λ| ≤ {max_n}"),
        |p| {
            let w = zwin(1, 4)?;
            for l in partitions_up_to(max_n) {
                let e = epsilon0_eigenvalue(&l, &w, "z")?;
                p.value(format!("residue {l}"), e.coeff(&[-1]), Rational::one());
                p.value(
                    format!("pole order {l}"),
                    e.coeff(&[-2]).is_zero() && e.min_exponent("z")? == Some(-1),
                    true,
                );
                let c = chern_eigenvalue(&l, &w, "z")?;
                p.value(
                    format!("constant term {l}"),
                    c.constant_term(),
                    Rational::from_int(l.size() as i64),
                );
                let m = master_eigenvalue(&l, &w, "z")?;
                p.holds(format!("master pole-free {l}"), m.is_pole_free());
            }
            Ok(())
        },
    )
}

/// The charge-`m` twist against contents shifted by `m`:
/// `e^{mz}·chern(λ) + Σ_k c^{(m)}_k z^k/k!`.
pub fn twist_shift(max_n: usize, max_m: i64) -> Check {
    check(
        "operators",
        format!("charge-m twist = e^(mz)·chern + Σ c_k z^k/k!, |λ| ≤ {max_n}, |m| ≤ {max_m}"),
        |p| {
            let d = 6;
            let w = zwin(0, d)?;
            for m in -max_m..=max_m {
                let c = toda::c_constants(m, d)?;
                let twist = Series::from_terms(
                    &w,
                    c.iter()
                        .enumerate()
                        .map(|(k, ck)| (vec![k as i32], ck / &Rational::factorial(k as u32)))
                        .collect::<Vec<_>>(),
                )?;
                let emz = Series::exp_linear(&w, "z", &Rational::from_int(m), d)?;
                for l in partitions_up_to(max_n) {
                    let want = emz
                        .try_mul(&chern_eigenvalue(&l, &w, "z")?)?
                        .try_add(&twist)?;
                    p.series(
                        format!("m={m} {l}"),
                        &twisted_eigenvalue(&l, m, &w, "z")?,
                        &want,
                    )?;
                }
            }
            Ok(())
        },
    )
}

/// Commutator calculus against diagonalization for up to `factors` ε₀'s.
pub fn vev_routes(max_n: usize, factors: usize, z_order: u32) -> Check {
    check(
        "operators",
        format!("commutator route = diagonal route, ≤ {factors} ε₀ factors, |λ| ≤ {max_n}"),
        |p| {
            let names = ["z1", "z2", "z3", "z4"];
            for nf in 0..=factors {
                let vars = &names[..nf];
                let w = Window::new(
                    vars.iter()
                        .map(|v| VarSpec::laurent(*v, 1, z_order))
                        .collect(),
                )?;
                let ops: Vec<_> = vars
                    .iter()
                    .map(|v| DiagonalOperator::new(OperatorKind::Epsilon0, *v))
                    .collect();
                let fac: Vec<(i64, &str)> = vars.iter().map(|v| (0, *v)).collect();
                for n in 0..=max_n {
                    for mu in partitions_of(n) {
                        let v = apply_diagonal(&ops, &ps(&mu).lift(&w))?;
                        for l in partitions_of(n) {
                            let diag = inner_product(&ps(&l).lift(&w), &v)?;
                            let comm = epsilon_product_vev(&l, &mu, &fac, &w)?;
                            p.series(format!("N={nf} {l} {mu}"), &comm, &diag)?;
                        }
                    }
                }
            }
            Ok(())
        },
    )
}

// correlators

/// Diagonal, commutator and closed-form 1-point `F•` agree.
pub fn one_point_routes(max_n: usize, z_order: u32) -> Check {
    check(
        "correlators",
        format!("F• closed form = diagonal = commutator, |λ| = |μ| ≤ {max_n}, z^{z_order}"),
        |p| {
            let w = zwin(1, z_order)?;
            let c = Correlators::new(&w, &["z"])?;
            for n in 0..=max_n {
                let parts = partitions_of(n);
                for l in &parts {
                    for mu in &parts {
                        let closed = c.f_bullet(l, mu, &["z"], Method::ClosedForm)?;
                        p.series(
                            format!("diagonal {l} {mu}"),
                            &closed,
                            &c.f_bullet(l, mu, &["z"], Method::Diagonal)?,
                        )?;
                        p.series(
                            format!("commutator {l} {mu}"),
                            &closed,
                            &c.f_bullet(l, mu, &["z"], Method::Commutator)?,
                        )?;
                        p.series(
                            format!("symmetry {l} {mu}"),
                            &closed,
                            &c.f_bullet(mu, l, &["z"], Method::ClosedForm)?,
                        )?;
                    }
                }
            }
            Ok(())
        },
    )
}

/// The closed 1-point `G` and the relation with `F•` both reproduce the
/// direct `ℌ`-matrix element, which is pole-free.
pub fn g_one_point(max_n: usize, z_order: u32) -> Check {
    check(
        "correlators",
        format!("G closed form = relation = direct, |λ| = |μ| ≤ {max_n}, z^{z_order}"),
        |p| {
            // a pole slot lets pole-freeness be observed rather than assumed
            let w = zwin(1, z_order)?;
            let c = Correlators::new(&w, &["z"])?;
            for n in 0..=max_n {
                let parts = partitions_of(n);
                for l in &parts {
                    for mu in &parts {
                        let direct = c.g_npoint(l, mu, &["z"], GMethod::Direct)?;
                        p.holds(format!("pole-free {l} {mu}"), direct.is_pole_free());
                        p.series(
                            format!("closed form {l} {mu}"),
                            &c.g_npoint(l, mu, &["z"], GMethod::ClosedForm)?,
                            &direct,
                        )?;
                        p.series(
                            format!("relation {l} {mu}"),
                            &c.g_npoint(l, mu, &["z"], GMethod::Relation)?,
                            &direct,
                        )?;
                    }
                }
            }
            Ok(())
        },
    )
}

/// Inclusion–exclusion over `F•(z_U)` equals the direct product of `ℌ`'s,
/// and both are symmetric under permuting the points.
pub fn inclusion_exclusion(points: usize, max_n: usize, z_order: u32) -> Check {
    check(
        "correlators",
        format!("G by inclusion–exclusion = direct, N = {points}, |λ| ≤ {max_n}, z^{z_order}"),
        |p| {
            let names = ["z1", "z2", "z3", "z4"];
            let vars = &names[..points];
            let w = Window::new(
                vars.iter()
                    .map(|v| VarSpec::laurent(*v, points as u32, z_order))
                    .collect(),
            )?;
            let c = Correlators::new(&w, vars)?;
            let rev: Vec<&str> = vars.iter().rev().copied().collect();
            for n in 0..=max_n {
                let parts = partitions_of(n);
                for l in &parts {
                    for mu in &parts {
                        let direct = c.g_npoint(l, mu, vars, GMethod::Direct)?;
                        p.series(
                            format!("{l} {mu}"),
                            &c.g_npoint(l, mu, vars, GMethod::InclusionExclusion)?,
                            &direct,
                        )?;
                        if points > 1 && l <= mu {
                            p.series(
                                format!("swap λ, μ {l} {mu}"),
                                &c.g_npoint(mu, l, vars, GMethod::Direct)?,
                                &direct,
                            )?;
                            p.series(
                                format!("reversed points {l} {mu}"),
                                &c.g_npoint(l, mu, &rev, GMethod::Direct)?,
                                &direct,
                            )?;
                        }
                    }
                }
            }
            Ok(())
        },
    )
}

// traces

fn zq(zvars: &[&str], pole: u32, z_order: u32, q_order: u32) -> Result<Arc<Window>> {
    let mut v: Vec<VarSpec> = zvars
        .iter()
        .map(|z| VarSpec::laurent(*z, pole, z_order))
        .collect();
    v.push(VarSpec::taylor("q", q_order));
    Window::new(v)
}

const ZS: [&str; 4] = ["z1", "z2", "z3", "z4"];

/// Sum and product forms of the triple product, and `Θ(−z) = −Θ(z)`.
pub fn jacobi_triple_product(q_order: u32, z_order: u32) -> Check {
    check(
        "traces",
        format!("Jacobi triple product, q^{q_order}, z^{z_order}"),
        |p| {
            let w = zq(&["z"], 0, z_order, q_order)?;
            p.series(
                "",
                &traces::jacobi_sum_form(&w, "z", "q")?,
                &traces::jacobi_product_form(&w, "z", "q")?,
            )?;
            Ok(())
        },
    )
}

pub fn theta_odd(q_order: u32, z_order: u32) -> Check {
    check(
        "traces",
        format!("Θ(−z) = −Θ(z), q^{q_order}, z^{z_order}"),
        |p| {
            let w = zq(&["z"], 0, z_order, q_order)?;
            let t = traces::theta(&w, "z", "q")?;
            let flipped = t.map_coeffs(|e, c| if e[0] % 2 == 0 { c.clone() } else { -c });
            p.series("", &flipped, &t.scale(&Rational::from_int(-1)))?;
            Ok(())
        },
    )
}

/// `Tr_q I = Σ p(n) qⁿ`, with `p(n)` counted by enumeration.
pub fn partition_numbers(max_n: usize) -> Check {
    check(
        "traces",
        format!("Tr_q I = 1/(q;q)_∞ = Σ p(n) qⁿ, n ≤ {max_n}"),
        |p| {
            let w = Window::new(vec![VarSpec::taylor("q", max_n as u32)])?;
            let req = TraceRequest {
                factors: vec![],
                q: "q".into(),
                n_max: max_n,
            };
            let tr = traces::q_trace(&req, &w)?;
            let inv = traces::q_pochhammer(&w, "q", None)?.invert(&w)?;
            p.series("1/(q;q)", &tr, &inv)?;
            for n in 0..=max_n {
                p.value(
                    format!("p({n})"),
                    tr.coeff(&[n as i32]),
                    Rational::from_int(partitions_of(n).len() as i64),
                );
            }
            Ok(())
        },
    )
}

/// The determinant formula against the direct trace of `ε₀` factors.
pub fn bloch_okounkov(points: usize, q_order: u32, z_order: u32) -> Check {
    check(
        "traces",
        format!("determinant formula = Tr_q ε₀⋯ε₀, N = {points}, q^{q_order}, z^{z_order}"),
        |p| {
            let z = &ZS[..points];
            let w = zq(z, 1, z_order, q_order)?;
            let req = TraceRequest {
                factors: z
                    .iter()
                    .map(|v| (TraceOp::Epsilon0, v.to_string()))
                    .collect(),
                q: "q".into(),
                n_max: q_order as usize,
            };
            p.series(
                "",
                &traces::bloch_okounkov_rhs(z, "q", &w)?,
                &traces::q_trace(&req, &w)?,
            )?;
            Ok(())
        },
    )
}

/// The trace theorem against the direct trace of `𝔊` factors.
pub fn trace_theorem(points: usize, q_order: u32, z_order: u32) -> Check {
    check(
        "traces",
        format!("trace theorem = Tr_q 𝔊⋯𝔊, N = {points}, q^{q_order}, z^{z_order}"),
        |p| {
            let z = &ZS[..points];
            let w = zq(z, 0, z_order, q_order)?;
            let req = TraceRequest {
                factors: z.iter().map(|v| (TraceOp::Chern, v.to_string())).collect(),
                q: "q".into(),
                n_max: q_order as usize,
            };
            p.series(
                "",
                &traces::trace_theorem_rhs(z, "q", &w)?,
                &traces::q_trace(&req, &w)?,
            )?;
            Ok(())
        },
    )
}

// toda

/// The `z⁻¹` coefficient of `(e^{mz} − 1)/ς²` is `m`, and `c^{(0)} = 0`.
pub fn c_constants_sanity(max_m: i64, k_max: u32) -> Check {
    check(
        "toda",
        format!("Res (e^(mz) − 1)/ς² = m, |m| ≤ {max_m}; c^(0) = 0"),
        |p| {
            for m in -max_m..=max_m {
                let s = toda::twist_series(m, k_max)?;
                p.value(format!("m={m} z^-1"), s.coeff(&[-1]), Rational::from_int(m));
                p.value(format!("m={m} z^-2"), s.coeff(&[-2]), Rational::zero());
                toda::c_constants(m, k_max)?;
            }
            for (k, c) in toda::c_constants(0, k_max)?.iter().enumerate() {
                p.value(format!("c^(0)_{k}"), c.clone(), Rational::zero());
            }
            Ok(())
        },
    )
}

/// The lowest 2-Toda equation, cross-multiplied.
pub fn toda_lowest(m: i64, k: u32, total_degree: u32, n_max: usize) -> Check {
    check(
        "toda",
        format!("τ(m)²∂t1∂s1 ln τ(m) = τ(m+1)τ(m−1), m = {m}, K = {k}, D = {total_degree}"),
        |p| {
            let rep = toda::toda_residual(&TauRequest {
                m,
                k,
                total_degree,
                n_max,
            })?;
            let zero = Series::zero(rep.residual.window());
            p.series(
                format!("weighted degree {:?}", rep.max_nonzero_degree),
                &rep.residual,
                &zero,
            )?;
            p.holds("pass flag", rep.pass);
            Ok(())
        },
    )
}

/// The reduced equation in `(w, x₁)`, and the `w²` coefficient `cosh(x₁)/2`.
pub fn toda_reduced(w_order: u32, x_order: u32) -> Check {
    check(
        "toda",
        format!("reduced Toda identity through w^{w_order}, x1^{x_order}; [w²] = cosh(x1)/2"),
        |p| {
            let r = toda::reduced_toda_residual(w_order, x_order, w_order as usize)?;
            p.series("residual", &r, &Series::zero(r.window()))?;
            let t = toda::reduced_tau(w_order, x_order, w_order as usize)?;
            let x = Window::new(vec![VarSpec::taylor("x1", x_order)])?;
            let w2 = Series::from_terms(
                &x,
                t.terms()
                    .filter(|(e, _)| e[0] == 2)
                    .map(|(e, c)| (vec![e[1]], c.clone()))
                    .collect::<Vec<_>>(),
            )?;
            let cosh = Series::exp_linear(&x, "x1", &Rational::one(), x_order)?
                .try_add(&Series::exp_linear(
                    &x,
                    "x1",
                    &Rational::from_int(-1),
                    x_order,
                )?)?
                .scale(&Rational::new(1, 4));
            p.series("w²", &w2, &cosh)?;
            Ok(())
        },
    )
}

/// `τ` at charge 0 against `Σ t_λ s_μ ⟨𝔭_{−λ}, exp(Σ x_k 𝔊_k) 𝔭_{−μ}⟩`
/// built from characters and untwisted Chern eigenvalues, and its linear
/// `x_k` terms against `G` coefficients.
pub fn tau_untwisted(k: u32, total_degree: u32) -> Check {
    check(
        "toda",
        format!("τ(x,t,s,0) = untwisted τ, K = {k}, D = {total_degree}"),
        |p| {
            let req = TauRequest {
                m: 0,
                k,
                total_degree,
                n_max: total_degree as usize,
            };
            let tau = toda::tau(&req)?;
            let w = tau.window().clone();
            let zw = zwin(0, k)?;
            let mut want = Series::zero(&w);
            for n in 0..=total_degree as usize {
                let table = char_table(n);
                let exps: BTreeMap<&Partition, Series> = table
                    .partitions()
                    .iter()
                    .map(|nu| {
                        let e = chern_eigenvalue(nu, &zw, "z")?;
                        let mut lin = Series::zero(&w);
                        for j in 0..=k {
                            lin = lin.try_add(
                                &Series::var(&w, &format!("x{j}"))?.scale(&e.coeff(&[j as i32])),
                            )?;
                        }
                        Ok((nu, lin.exp()?))
                    })
                    .collect::<Result<_>>()?;
                for l in table.partitions() {
                    if l.parts().iter().any(|&x| x > k) {
                        continue;
                    }
                    for mu in table.partitions() {
                        if mu.parts().iter().any(|&x| x > k) {
                            continue;
                        }
                        let mut e = vec![0; w.nvars()];
                        for &x in l.parts() {
                            e[x as usize - 1] += 1;
                        }
                        for &x in mu.parts() {
                            e[k as usize + x as usize - 1] += 1;
                        }
                        if !w.admits(&e) {
                            continue;
                        }
                        let mono = Series::monomial(&w, &e, Rational::one())?;
                        let norm = (&l.z_factor() * &mu.z_factor()).recip().expect("positive");
                        for nu in table.partitions() {
                            let chi = Rational::from_int(table.get(nu, l) * table.get(nu, mu));
                            want =
                                want.try_add(&mono.try_mul(&exps[nu])?.scale(&(&chi * &norm)))?;
                        }
                    }
                }
            }
            p.series("", &tau, &want)?;
            // linear x_j terms are the coefficients of G_{λ,μ}(z)
            for n in 1..=(total_degree as usize).saturating_sub(1) {
                for l in partitions_of(n)
                    .iter()
                    .filter(|l| l.parts().iter().all(|&x| x <= k))
                {
                    for mu in partitions_of(n)
                        .iter()
                        .filter(|l| l.parts().iter().all(|&x| x <= k))
                    {
                        let g = crate::correlators::g_npoint(l, mu, &["z"], &zw)?;
                        for j in 0..=k {
                            let mut e = vec![0; w.nvars()];
                            for &x in l.parts() {
                                e[x as usize - 1] += 1;
                            }
                            for &x in mu.parts() {
                                e[k as usize + x as usize - 1] += 1;
                            }
                            e[2 * k as usize + j as usize] = 1;
                            if w.admits(&e) {
                                p.value(
                                    format!("x{j} t_{l} s_{mu}"),
                                    tau.coeff(&e),
                                    g.coeff(&[j as i32]),
                                );
                            }
                        }
                    }
                }
            }
            Ok(())
        },
    )
}

/// A verification suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Arith,
    Partitions,
    Fock,
    Operators,
    Correlators,
    Traces,
    Toda,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "arith" => Suite::Arith,
            "partitions" => Suite::Partitions,
            "fock" => Suite::Fock,
            "operators" => Suite::Operators,
            "correlators" => Suite::Correlators,
            "traces" => Suite::Traces,
            "toda" => Suite::Toda,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s}"))),
        })
    }
}

/// Runs a suite with partition sizes and series orders scaled by `max_n`.
pub fn run_suite(suite: Suite, max_n: usize) -> Vec<Check> {
    let n = max_n;
    let o = max_n as u32;
    let small = n.min(6);
    let mut out = Vec::new();
    let want = |s: Suite| suite == s || suite == Suite::All;
    if want(Suite::Arith) {
        out.extend([
            ring_axioms(),
            invert_identity(),
            exp_log(),
            leibniz(),
            canonical_form(),
        ]);
    }
    if want(Suite::Partitions) {
        out.extend([
            column_orthogonality(n),
            dimension_squares(n),
            contents_transpose(n),
        ]);
    }
    if want(Suite::Fock) {
        out.extend([
            heisenberg(5, n),
            pairing(n),
            adjointness(n),
            vacuum_and_basis(n),
        ]);
    }
    if want(Suite::Operators) {
        out.extend([
            chern_identity(n, o),
            eigenvalue_normalizations(n),
            twist_shift(n, 2),
            vev_routes(small.min(4), 3, 4),
        ]);
    }
    if want(Suite::Correlators) {
        out.extend([one_point_routes(n, o), g_one_point(n, o)]);
        for points in 1..=3 {
            out.push(inclusion_exclusion(points, small.min(4), 4));
        }
    }
    if want(Suite::Traces) {
        out.extend([
            jacobi_triple_product(o, o),
            theta_odd(o, o),
            partition_numbers(3 * n),
        ]);
        for points in 1..=3 {
            out.push(bloch_okounkov(points, o.min(6), o.min(6)));
        }
        for points in 1..=2 {
            out.push(trace_theorem(points, o.min(6), o.min(6)));
        }
    }
    if want(Suite::Toda) {
        out.push(c_constants_sanity(5, 6));
        for m in -1..=1 {
            out.push(toda_lowest(m, 2, 3, 3));
        }
        out.extend([toda_reduced(4, 6), tau_untwisted(2, 3)]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probe_reports_first_coefficient() {
        let w = zwin(0, 3).unwrap();
        let a = Series::exp_linear(&w, "z", &Rational::one(), 3).unwrap();
        let b = a
            .try_add(&Series::monomial(&w, &[2], Rational::one()).unwrap())
            .unwrap();
        let mut p = Probe::default();
        p.series("", &a, &b).unwrap();
        assert_eq!(
            p.first,
            Some(Mismatch {
                at: "2".into(),
                left: "1/2".into(),
                right: "3/2".into()
            })
        );
        let c = Check {
            module: "m",
            identity: "id".into(),
            failure: p.first,
            error: None,
        };
        assert_eq!(c.to_string(), "FAIL [m] id: at 2 left 1/2 right 3/2");
    }

    #[test]
    fn small_suites_pass() {
        for c in run_suite(Suite::All, 4) {
            assert!(c.passed(), "{c}");
        }
    }
}
