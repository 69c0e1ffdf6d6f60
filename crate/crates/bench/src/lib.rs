//! Workloads shared by the kernel benchmarks.

use std::sync::Arc;

use fockseries::correlators::{Correlators, Method};
use fockseries::toda::{self, TauRequest};
use fockseries::traces;
use fockseries::{Partition, Rational, Result, Series, VarSpec, Window};

/// `1/ς(z)` to order `d`, by series inversion.
pub fn invert_varsigma(d: u32) -> Result<Series> {
    let w = Window::new(vec![VarSpec::laurent("z", 1, d)])?;
    fockseries::operators::inv_varsigma(&w, "z")
}

/// A dense product in two Laurent variables.
pub fn dense_product(d: u32) -> Result<Series> {
    let w: Arc<Window> = Window::new(vec![
        VarSpec::laurent("x", 2, d),
        VarSpec::laurent("y", 2, d),
    ])?;
    let a = Series::exp_linear(&w, "x", &Rational::new(1, 2), d)?.try_mul(&Series::exp_linear(
        &w,
        "y",
        &Rational::new(-1, 3),
        d,
    )?)?;
    a.try_mul(&a)
}

/// Every 1-point `F•` with `|λ| = |μ| = n` by the commutator route.
pub fn one_point_block(n: usize, d: u32) -> Result<usize> {
    let w = Window::new(vec![VarSpec::laurent("z", 1, d)])?;
    let c = Correlators::new(&w, &["z"])?;
    let parts = fockseries::partitions::partitions_of(n);
    let mut terms = 0;
    for l in &parts {
        for mu in &parts {
            terms += c.f_bullet(l, mu, &["z"], Method::Commutator)?.len();
        }
    }
    Ok(terms)
}

/// The determinant side for `N` points.
pub fn determinant(points: usize, q: u32, d: u32) -> Result<Series> {
    let z = ["z1", "z2", "z3"];
    let mut v: Vec<VarSpec> = z[..points]
        .iter()
        .map(|n| VarSpec::laurent(*n, 1, d))
        .collect();
    v.push(VarSpec::taylor("q", q));
    let w = Window::new(v)?;
    traces::bloch_okounkov_rhs(&z[..points], "q", &w)
}

/// The Toda residual at charge `m`.
pub fn toda(m: i64, k: u32, d: u32) -> Result<bool> {
    Ok(toda::toda_residual(&TauRequest {
        m,
        k,
        total_degree: d,
        n_max: d as usize,
    })?
    .pass)
}

/// The character table of `S_n`, built from scratch.
pub fn characters(n: usize) -> usize {
    fockseries::CharTable::build(n).partitions().len()
}

/// A partition used as a fixed benchmark input.
pub fn staircase(k: u32) -> Partition {
    Partition::new((1..=k).rev().collect()).expect("valid")
}
