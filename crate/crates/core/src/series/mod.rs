//! Sparse truncated multivariate Laurent series over [`Rational`].
//!
//! A [`Series`] is a sorted list of `(packed exponent key, coefficient)`
//! pairs attached to a shared [`Window`]. Terms outside the window are
//! discarded eagerly; callers that need exact answers at order `D` compute in
//! a widened window and truncate back.

mod json;
mod transcend;
mod window;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rustc_hash::FxHashMap;

pub use transcend::{series_exp, series_invert, series_log};
pub use window::{DegreeCap, VarSpec, Window};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A truncated multivariate Laurent series with exact coefficients.
#[derive(Clone)]
pub struct Series {
    window: Arc<Window>,
    terms: Vec<(u128, Rational)>,
}

/// Binary operation selector for [`series_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// `a op b`, truncated to the shared window.
pub fn series_arith(a: &Series, b: &Series, op: ArithOp) -> Result<Series> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}

impl Series {
    pub fn zero(window: &Arc<Window>) -> Series {
        Series {
            window: window.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(window: &Arc<Window>) -> Series {
        Series::constant(window, Rational::one())
    }

    pub fn constant(window: &Arc<Window>, c: Rational) -> Series {
        let exps = vec![0; window.nvars()];
        match window.encode(&exps) {
            Some(k) if !c.is_zero() => Series {
                window: window.clone(),
                terms: vec![(k, c)],
            },
            _ => Series::zero(window),
        }
    }

    /// `c * x^exps`. Exponents above a window are truncated away; exponents
    /// below a pole bound are a window error.
    pub fn monomial(window: &Arc<Window>, exps: &[i32], c: Rational) -> Result<Series> {
        Series::from_terms(window, [(exps.to_vec(), c)])
    }

    /// The variable `name` as a series.
    pub fn var(window: &Arc<Window>, name: &str) -> Result<Series> {
        let i = window.index_of(name)?;
        let mut e = vec![0; window.nvars()];
        e[i] = 1;
        Series::monomial(window, &e, Rational::one())
    }

    /// Builds a series from exponent/coefficient pairs, summing repeats.
    pub fn from_terms<I>(window: &Arc<Window>, terms: I) -> Result<Series>
    where
        I: IntoIterator<Item = (Vec<i32>, Rational)>,
    {
        let mut acc: FxHashMap<u128, Rational> = FxHashMap::default();
        for (exps, c) in terms {
            if exps.len() != window.nvars() {
                return Err(Error::Structural("exponent vector length mismatch".into()));
            }
            if c.is_zero() {
                continue;
            }
            check_poles(window, &exps)?;
            if !window.admits(&exps) {
                continue;
            }
            let k = window.encode(&exps).expect("admitted");
            *acc.entry(k).or_default() += &c;
        }
        Ok(Series::from_map(window, acc))
    }

    fn from_map(window: &Arc<Window>, acc: FxHashMap<u128, Rational>) -> Series {
        let mut terms: Vec<(u128, Rational)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| t.0);
        Series {
            window: window.clone(),
            terms,
        }
    }

    /// `sum_{k <= order} (c z)^k / k!` in the variable `var`.
    pub fn exp_linear(window: &Arc<Window>, var: &str, c: &Rational, order: u32) -> Result<Series> {
        let i = window.index_of(var)?;
        let order = order.min(window.vars()[i].max_degree);
        let mut e = vec![0; window.nvars()];
        let mut term = Rational::one();
        let mut out = Vec::with_capacity(order as usize + 1);
        for k in 0..=order {
            if k > 0 {
                term = &(&term * c) / &Rational::from_int(k as i64);
            }
            e[i] = k as i32;
            out.push((e.clone(), term.clone()));
        }
        Series::from_terms(window, out)
    }

    /// A univariate series `sum_k coeffs[k] var^(k + lowest)`.
    pub fn univariate(
        window: &Arc<Window>,
        var: &str,
        lowest: i32,
        coeffs: &[Rational],
    ) -> Result<Series> {
        let i = window.index_of(var)?;
        let n = window.nvars();
        Series::from_terms(
            window,
            coeffs.iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; n];
                e[i] = lowest + k as i32;
                (e, c.clone())
            }),
        )
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn vars(&self) -> &[VarSpec] {
        self.window.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<i32>, &Rational)> + '_ {
        self.terms
            .iter()
            .map(move |(k, c)| (self.window.decode(*k), c))
    }

    pub(crate) fn raw_terms(&self) -> &[(u128, Rational)] {
        &self.terms
    }

    pub fn coeff(&self, exps: &[i32]) -> Rational {
        match self.window.encode(exps) {
            Some(k) => match self.terms.binary_search_by_key(&k, |t| t.0) {
                Ok(i) => self.terms[i].1.clone(),
                Err(_) => Rational::zero(),
            },
            None => Rational::zero(),
        }
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.window.nvars()])
    }

    /// Coefficient list of a univariate slice: `[z^lo, ..., z^hi]` of `var`
    /// with all other exponents zero.
    pub fn coeffs_of(&self, var: &str, lo: i32, hi: i32) -> Result<Vec<Rational>> {
        let i = self.window.index_of(var)?;
        let mut e = vec![0; self.window.nvars()];
        Ok((lo..=hi)
            .map(|k| {
                e[i] = k;
                self.coeff(&e)
            })
            .collect())
    }

    /// Smallest exponent of `var` among the terms, if any.
    pub fn min_exponent(&self, var: &str) -> Result<Option<i32>> {
        let i = self.window.index_of(var)?;
        Ok(self.terms().map(|(e, _)| e[i]).min())
    }

    /// Whether no term has a negative exponent.
    pub fn is_pole_free(&self) -> bool {
        self.terms().all(|(e, _)| e.iter().all(|&x| x >= 0))
    }

    fn check_same(&self, other: &Series) -> Result<()> {
        if Arc::ptr_eq(&self.window, &other.window) || *self.window == *other.window {
            Ok(())
        } else {
            Err(Error::Structural(
                "series over different variable windows".into(),
            ))
        }
    }

    pub fn try_add(&self, other: &Series) -> Result<Series> {
        self.check_same(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Series) -> Result<Series> {
        self.check_same(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Series, negate: bool) -> Series {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else {
                let cb = if negate { -&b[j].1 } else { b[j].1.clone() };
                if i < a.len() && a[i].0 == b[j].0 {
                    let s = &a[i].1 + &cb;
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                } else {
                    out.push((b[j].0, cb));
                }
                j += 1;
            }
        }
        Series {
            window: self.window.clone(),
            terms: out,
        }
    }

    /// Product truncated to the window. A term below a pole bound cannot be
    /// represented and is a window error rather than a truncation.
    pub fn try_mul(&self, other: &Series) -> Result<Series> {
        self.check_same(other)?;
        self.mul_impl(other, false)
    }

    /// Multiplication that also reports a window error for terms above a
    /// Laurent variable's degree bound (power-series variables still
    /// truncate). Used where the window is meant to contain the full support
    /// of the result. Terms below a pole bound are an error in every product.
    pub fn mul_exact_support(&self, other: &Series) -> Result<Series> {
        self.check_same(other)?;
        self.mul_impl(other, true)
    }

    fn mul_impl(&self, other: &Series, strict: bool) -> Result<Series> {
        if self.is_zero() || other.is_zero() {
            return Ok(Series::zero(&self.window));
        }
        let w = &self.window;
        let n = w.nvars();
        let bounds: Vec<(u32, i64, i64)> = w.field_bounds().collect();
        let unpack = |s: &Series| {
            let mut offs = Vec::with_capacity(s.terms.len() * n);
            let mut wdeg = Vec::with_capacity(s.terms.len());
            for (k, _) in &s.terms {
                let start = offs.len();
                w.offsets_into(*k, &mut offs);
                let d: i64 = match w.cap() {
                    None => 0,
                    Some(c) => (0..n)
                        .map(|v| c.weights[v] as i64 * (offs[start + v] - bounds[v].1))
                        .sum(),
                };
                wdeg.push(d);
            }
            (offs, wdeg)
        };
        let (oa, da) = unpack(self);
        let (ob, db) = unpack(other);
        let cap = w.cap_max();
        let mut acc: FxHashMap<u128, Rational> = FxHashMap::default();
        acc.reserve(self.terms.len().max(other.terms.len()) * 2);
        for (i, (_, ca)) in self.terms.iter().enumerate() {
            let pa = &oa[i * n..(i + 1) * n];
            'inner: for (j, (_, cb)) in other.terms.iter().enumerate() {
                if let Some(m) = cap {
                    if da[i] + db[j] > m {
                        continue;
                    }
                }
                let pb = &ob[j * n..(j + 1) * n];
                // a term truncated away in any variable is dropped before
                // any other variable can report it
                for v in 0..n {
                    let (_, pole, span) = bounds[v];
                    let off = pa[v] + pb[v] - pole;
                    if off > span && (pole == 0 || !strict) {
                        continue 'inner;
                    }
                }
                let mut key = 0u128;
                for v in 0..n {
                    let (shift, pole, span) = bounds[v];
                    let off = pa[v] + pb[v] - pole;
                    if off < 0 || off > span {
                        return Err(Error::Window(format!(
                            "product term leaves the window of {}",
                            w.vars()[v].name
                        )));
                    }
                    key |= (off as u128) << shift;
                }
                let p = ca * cb;
                match acc.get_mut(&key) {
                    Some(c) => *c += &p,
                    None => {
                        acc.insert(key, p);
                    }
                }
            }
        }
        Ok(Series::from_map(&self.window, acc))
    }

    pub fn scale(&self, c: &Rational) -> Series {
        if c.is_zero() {
            return Series::zero(&self.window);
        }
        Series {
            window: self.window.clone(),
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: u32) -> Result<Series> {
        let mut base = self.clone();
        let mut acc = Series::one(&self.window);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Re-expresses the series in another window, matching variables by name.
    ///
    /// Variables missing from `target` must not occur with nonzero exponent.
    /// Terms above the target's degree windows or cap are truncated; a term
    /// below a target pole bound is a window error.
    pub fn into_window(&self, target: &Arc<Window>) -> Result<Series> {
        if Arc::ptr_eq(&self.window, target) || *self.window == **target {
            return Ok(Series {
                window: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let map: Vec<Option<usize>> = self
            .vars()
            .iter()
            .map(|v| target.index_of(&v.name).ok())
            .collect();
        let mut out = Vec::with_capacity(self.terms.len());
        let mut e = vec![0i32; target.nvars()];
        for (exps, c) in self.terms() {
            e.iter_mut().for_each(|x| *x = 0);
            for (i, &x) in exps.iter().enumerate() {
                match map[i] {
                    Some(j) => e[j] = x,
                    None if x != 0 => {
                        return Err(Error::Structural(format!(
                            "variable {} is absent from the target window",
                            self.vars()[i].name
                        )))
                    }
                    None => {}
                }
            }
            check_poles(target, &e)?;
            if target.admits(&e) {
                out.push((target.encode(&e).expect("admitted"), c.clone()));
            }
        }
        out.sort_unstable_by_key(|t| t.0);
        Ok(Series {
            window: target.clone(),
            terms: out,
        })
    }

    /// Keeps only the terms selected by `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&[i32], &Rational) -> bool) -> Series {
        let w = &self.window;
        Series {
            window: w.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, c)| keep(&w.decode(*k), c))
                .cloned()
                .collect(),
        }
    }

    /// Applies `f` to every coefficient, given its exponent vector.
    pub fn map_coeffs(&self, mut f: impl FnMut(&[i32], &Rational) -> Rational) -> Series {
        let w = &self.window;
        Series {
            window: w.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(k, c)| {
                    let v = f(&w.decode(*k), c);
                    (!v.is_zero()).then_some((*k, v))
                })
                .collect(),
        }
    }

    /// Term-wise derivative in `var`. The result lives in a window whose
    /// degree bound for `var` is one lower (pole bound one higher when the
    /// variable admits poles) and whose cap drops by the variable's weight.
    pub fn partial_derivative(&self, var: &str) -> Result<Series> {
        let w = &self.window;
        let i = w.index_of(var)?;
        let vars: Vec<VarSpec> = w
            .vars()
            .iter()
            .enumerate()
            .map(|(j, v)| {
                if j != i {
                    return v.clone();
                }
                VarSpec {
                    name: v.name.clone(),
                    max_pole: if v.max_pole > 0 { v.max_pole + 1 } else { 0 },
                    max_degree: v.max_degree.saturating_sub(1),
                }
            })
            .collect();
        let cap = w.cap().map(|c| DegreeCap {
            weights: c.weights.clone(),
            max: c.max.saturating_sub(c.weights[i]),
        });
        let target = Window::build(vars, cap)?;
        let mut out = Vec::with_capacity(self.terms.len());
        for (mut e, c) in self.terms() {
            if e[i] == 0 {
                continue;
            }
            let f = Rational::from_int(e[i] as i64);
            e[i] -= 1;
            out.push((e, c * &f));
        }
        Series::from_terms(&target, out)
    }

    /// Substitutes `var -> 0`, keeping the window.
    pub fn at_zero(&self, var: &str) -> Result<Series> {
        let i = self.window.index_of(var)?;
        Ok(self.filter_terms(|e, _| e[i] == 0))
    }
}

fn check_poles(window: &Window, exps: &[i32]) -> Result<()> {
    for (v, &e) in window.vars().iter().zip(exps) {
        if (e as i64) < -(v.max_pole as i64) {
            return Err(Error::Window(format!(
                "pole of order {} in {} exceeds max_pole {}",
                -e, v.name, v.max_pole
            )));
        }
    }
    Ok(())
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.check_same(other).is_ok() && self.terms == other.terms
    }
}

impl Eq for Series {}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if c.is_integer() {
                write!(f, "{}", c.numer())?;
            } else {
                write!(f, "{c}")?;
            }
            for (v, x) in self.vars().iter().zip(&e) {
                match x {
                    0 => {}
                    1 => write!(f, "*{}", v.name)?,
                    _ => write!(f, "*{}^{}", v.name, x)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Operator sugar for series known to share a window. These panic where the
// `try_*` methods would return an error.
macro_rules! series_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Series> for &Series {
            type Output = Series;
            fn $m(self, o: &Series) -> Series {
                self.$f(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Series> for Series {
            type Output = Series;
            fn $m(self, o: Series) -> Series {
                self.$f(&o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $m(self, o: &Series) -> Series {
                self.$f(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

series_binop!(Add, add, try_add);
series_binop!(Sub, sub, try_sub);
series_binop!(Mul, mul, try_mul);

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            window: self.window.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

#[cfg(test)]
mod tests;
