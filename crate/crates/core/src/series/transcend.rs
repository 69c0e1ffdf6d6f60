//! Inversion, exponential, logarithm and exact division.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{DegreeCap, Series, VarSpec, Window};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `a^{-1}` computed into `target`; see [`Series::invert`].
pub fn series_invert(a: &Series, target: &Arc<Window>) -> Result<Series> {
    a.invert(target)
}

/// `exp(a)`; see [`Series::exp`].
pub fn series_exp(a: &Series) -> Result<Series> {
    a.exp()
}

/// `log(a)`; see [`Series::log`].
pub fn series_log(a: &Series) -> Result<Series> {
    a.log()
}

impl Series {
    /// The multiplicative inverse, expressed in `target` (same variable names
    /// and order as `self`, possibly different windows).
    ///
    /// `self` is factored as `c * x^e * (1 + r)` in one of two ways:
    ///
    /// * the componentwise-minimal exponent vector is itself a term, so `r`
    ///   is a power series without constant term;
    /// * otherwise, over the power-series variables (those with no poles)
    ///   there is a unique term of minimal exponent, and every term of `r`
    ///   has positive degree in those variables. Laurent variables may then
    ///   carry arbitrary exponents, and the target window must contain the
    ///   full support in them or a window error is raised.
    ///
    /// The result is exact up to the precision to which `self` is known.
    pub fn invert(&self, target: &Arc<Window>) -> Result<Series> {
        if self.is_zero() {
            return Err(Error::Division("inverse of the zero series".into()));
        }
        let w = self.window();
        if !w
            .vars()
            .iter()
            .map(|v| &v.name)
            .eq(target.vars().iter().map(|v| &v.name))
        {
            return Err(Error::Structural(
                "inverse target has different variables".into(),
            ));
        }
        let n = w.nvars();
        let terms: Vec<(Vec<i32>, &Rational)> = self.terms().collect();
        let emin: Vec<i32> = (0..n)
            .map(|v| terms.iter().map(|t| t.0[v]).min().unwrap())
            .collect();

        let (lead, strict) = if let Some(t) = terms.iter().find(|t| t.0 == emin) {
            (t, false)
        } else {
            let taylor: Vec<bool> = w.vars().iter().map(|v| v.max_pole == 0).collect();
            if !taylor.iter().any(|&t| t) {
                return Err(Error::Division("no unique lowest term to invert".into()));
            }
            let on_taylor = |e: &[i32]| (0..n).all(|v| !taylor[v] || e[v] == emin[v]);
            let mut lows = terms.iter().filter(|t| on_taylor(&t.0));
            match (lows.next(), lows.next()) {
                (Some(t), None) => (t, true),
                _ => return Err(Error::Division("no unique lowest term to invert".into())),
            }
        };
        let (e, c) = (lead.0.clone(), lead.1.clone());
        let cinv = c.recip().expect("nonzero coefficient");

        let mut vars = Vec::with_capacity(n);
        for (v, t) in target.vars().iter().enumerate() {
            if e[v] as i64 > t.max_pole as i64 {
                return Err(Error::Window(format!(
                    "inverse has a pole of order {} in {} but max_pole is {}",
                    e[v], t.name, t.max_pole
                )));
            }
            let deg = t.max_degree as i64 + e[v] as i64;
            if deg < 0 {
                // the leading term already lies above the target window
                return Ok(Series::zero(target));
            }
            vars.push(VarSpec {
                name: t.name.clone(),
                max_pole: (t.max_pole as i64 - e[v] as i64) as u32,
                max_degree: deg as u32,
            });
        }
        let cap = match target.cap() {
            None => None,
            Some(cp) => {
                let m = cp.max as i64 + target.weighted_degree(&e);
                if m < 0 {
                    return Ok(Series::zero(target));
                }
                Some(DegreeCap {
                    weights: cp.weights.clone(),
                    max: m as u32,
                })
            }
        };
        let tmp = Window::build(vars, cap)?;

        let r = Series::from_terms(
            &tmp,
            terms.iter().filter(|t| t.0 != e).map(|(x, k)| {
                let d: Vec<i32> = x.iter().zip(&e).map(|(a, b)| a - b).collect();
                (d, *k * &cinv)
            }),
        )?;
        let neg_r = -&r;
        let mut sum = Series::one(&tmp);
        let mut term = Series::one(&tmp);
        loop {
            term = if strict {
                term.mul_exact_support(&neg_r)?
            } else {
                term.try_mul(&neg_r)?
            };
            if term.is_zero() {
                break;
            }
            sum = sum.try_add(&term)?;
        }
        Series::from_terms(
            target,
            sum.terms().map(|(x, k)| {
                let d: Vec<i32> = x.iter().zip(&e).map(|(a, b)| a - b).collect();
                (d, k * &cinv)
            }),
        )
    }

    /// `exp(self)`; requires zero constant term and no negative exponents.
    pub fn exp(&self) -> Result<Series> {
        if !self.constant_term().is_zero() {
            return Err(Error::Domain(
                "exp of a series with nonzero constant term".into(),
            ));
        }
        if !self.is_pole_free() {
            return Err(Error::Domain("exp of a series with pole terms".into()));
        }
        let mut sum = Series::one(self.window());
        let mut term = Series::one(self.window());
        for k in 1.. {
            term = term.try_mul(self)?.scale(&Rational::new(1, k));
            if term.is_zero() {
                break;
            }
            sum = sum.try_add(&term)?;
        }
        Ok(sum)
    }

    /// `log(self)`; requires constant term 1 and no negative exponents.
    pub fn log(&self) -> Result<Series> {
        if self.constant_term() != Rational::one() {
            return Err(Error::Domain(
                "log of a series whose constant term is not 1".into(),
            ));
        }
        if !self.is_pole_free() {
            return Err(Error::Domain("log of a series with pole terms".into()));
        }
        let b = self.try_sub(&Series::one(self.window()))?;
        let mut sum = Series::zero(self.window());
        let mut pow = Series::one(self.window());
        for k in 1i64.. {
            pow = pow.try_mul(&b)?;
            if pow.is_zero() {
                break;
            }
            let s = if k % 2 == 1 {
                Rational::new(1, k)
            } else {
                Rational::new(-1, k)
            };
            sum = sum.try_add(&pow.scale(&s))?;
        }
        Ok(sum)
    }

    /// Exact quotient `self / d` of Laurent polynomials.
    ///
    /// The divisor must not involve power-series variables (those without
    /// poles), so that truncation in them commutes with the division. Fails
    /// with a division error if `d` does not divide `self` exactly.
    pub fn div_exact(&self, d: &Series) -> Result<Series> {
        self.check_same(d)?;
        if d.is_zero() {
            return Err(Error::Division("division by the zero series".into()));
        }
        let w = self.window().clone();
        let n = w.nvars();
        let dterms: Vec<(Vec<i32>, Rational)> = d.terms().map(|(e, c)| (e, c.clone())).collect();
        for (e, _) in &dterms {
            if w.vars()
                .iter()
                .zip(e)
                .any(|(v, &x)| v.max_pole == 0 && x != 0)
            {
                return Err(Error::Structural(
                    "exact division by a divisor in power-series variables".into(),
                ));
            }
        }
        let (dlead, dc) = dterms.last().cloned().expect("nonzero divisor");
        let dcinv = dc.recip().expect("nonzero coefficient");
        let bound = |s: &[(Vec<i32>, Rational)], f: fn(i32, i32) -> i32| -> Vec<i32> {
            (0..n)
                .map(|v| s.iter().map(|t| t.0[v]).reduce(f).unwrap_or(0))
                .collect()
        };
        let num: Vec<(Vec<i32>, Rational)> = self.terms().map(|(e, c)| (e, c.clone())).collect();
        let (nlo, nhi) = (bound(&num, i32::min), bound(&num, i32::max));
        let (dlo, dhi) = (bound(&dterms, i32::min), bound(&dterms, i32::max));

        let mut rem: BTreeMap<u128, Rational> = self.raw_terms().iter().cloned().collect();
        let mut quot: Vec<(Vec<i32>, Rational)> = Vec::new();
        let inexact = || Error::Division("divisor does not divide exactly".into());
        while let Some((&k, c)) = rem.iter().next_back() {
            let e = w.decode(k);
            let qe: Vec<i32> = e.iter().zip(&dlead).map(|(a, b)| a - b).collect();
            let inside = (0..n).all(|v| qe[v] >= nlo[v] - dlo[v] && qe[v] <= nhi[v] - dhi[v]);
            if !inside {
                return Err(inexact());
            }
            let qc = c * &dcinv;
            for (de, dcoef) in &dterms {
                let pe: Vec<i32> = qe.iter().zip(de).map(|(a, b)| a + b).collect();
                let pk = w.encode(&pe).ok_or_else(inexact)?;
                let v = rem.remove(&pk).unwrap_or_default() - &qc * dcoef;
                if !v.is_zero() {
                    rem.insert(pk, v);
                }
            }
            quot.push((qe, qc));
        }
        Series::from_terms(&w, quot)
    }
}
