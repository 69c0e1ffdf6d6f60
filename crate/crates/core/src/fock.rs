//! The bosonic Fock space spanned by partitions.
//!
//! Vectors are finite combinations of either the normalized power-sum basis
//! `𝔭_{−λ} = 𝔷_λ^{-1} Π_i 𝔭_{−λ_i}|0⟩` or the fixed-point basis `[λ]`
//! (Schur functions). The pairing is `⟨𝔭_{−λ}, 𝔭_{−μ}⟩ = δ_{λμ}/𝔷_λ`, under
//! which `[λ]` is orthonormal.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{char_table, Partition};
use crate::rational::Rational;
use crate::series::{Series, Window};

/// The two bases of the Fock space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `𝔭_{−λ}`
    PowerSum,
    /// `[λ]`
    FixedPoint,
}

/// A coefficient ring for Fock vectors: [`Rational`] or [`Series`].
pub trait Coefficient: Clone + PartialEq + Debug + Serialize {
    fn is_zero(&self) -> bool;
    /// The zero of the same ring.
    fn zero_like(&self) -> Self;
    /// The constant `r` in the same ring.
    fn constant_like(&self, r: Rational) -> Self;
    fn try_add(&self, o: &Self) -> Result<Self>;
    fn try_mul(&self, o: &Self) -> Result<Self>;
    fn scale(&self, r: &Rational) -> Self;
}

impl Coefficient for Rational {
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn constant_like(&self, r: Rational) -> Self {
        r
    }
    fn try_add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn try_mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl Coefficient for Series {
    fn is_zero(&self) -> bool {
        Series::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Series::zero(self.window())
    }
    fn constant_like(&self, r: Rational) -> Self {
        Series::constant(self.window(), r)
    }
    fn try_add(&self, o: &Self) -> Result<Self> {
        Series::try_add(self, o)
    }
    fn try_mul(&self, o: &Self) -> Result<Self> {
        Series::try_mul(self, o)
    }
    fn scale(&self, r: &Rational) -> Self {
        Series::scale(self, r)
    }
}

/// A finite linear combination of basis vectors indexed by partitions.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector<C: Coefficient> {
    basis: Basis,
    zero: C,
    terms: BTreeMap<Partition, C>,
}

impl FockVector<Rational> {
    pub fn rational(basis: Basis) -> Self {
        FockVector::new(basis, Rational::zero())
    }

    /// The same vector with coefficients embedded as constants of `window`.
    pub fn lift(&self, window: &Arc<Window>) -> FockVector<Series> {
        let zero = Series::zero(window);
        let mut out = FockVector::new(self.basis, zero);
        for (p, c) in &self.terms {
            out.terms
                .insert(p.clone(), Series::constant(window, c.clone()));
        }
        out
    }
}

impl<C: Coefficient> FockVector<C> {
    /// The zero vector; `zero` fixes the coefficient ring.
    pub fn new(basis: Basis, zero: C) -> Self {
        FockVector {
            basis,
            zero: zero.zero_like(),
            terms: BTreeMap::new(),
        }
    }

    /// `c` times the basis vector of `λ`.
    pub fn basis_vector(lambda: Partition, basis: Basis, c: C) -> Self {
        let mut v = FockVector::new(basis, c.zero_like());
        v.add_term(lambda, c).expect("same ring");
        v
    }

    /// The vacuum `|0⟩` (the empty partition, identical in both bases).
    pub fn vacuum(basis: Basis, zero: C) -> Self {
        let one = zero.constant_like(Rational::one());
        FockVector::basis_vector(Partition::empty(), basis, one)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn zero_coefficient(&self) -> &C {
        &self.zero
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

    /// Terms in reverse-lexicographic partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> C {
        self.terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    fn check_ring(&self, c: &C) -> Result<()> {
        // adding to the ring's zero detects a foreign window
        self.zero.try_add(c).map(|_| ())
    }

    /// Adds `c` to the coefficient of `λ`.
    pub fn add_term(&mut self, lambda: Partition, c: C) -> Result<()> {
        self.check_ring(&c)?;
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.remove(&lambda) {
            Some(old) => {
                let s = old.try_add(&c)?;
                if !s.is_zero() {
                    self.terms.insert(lambda, s);
                }
            }
            None => {
                self.terms.insert(lambda, c);
            }
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::Structural(
                "adding Fock vectors in different bases".into(),
            ));
        }
        self.check_ring(&other.zero)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = FockVector::new(self.basis, self.zero.clone());
        if r.is_zero() {
            return out;
        }
        for (p, c) in &self.terms {
            out.terms.insert(p.clone(), c.scale(r));
        }
        out
    }

    /// Multiplies every coefficient by the ring element `c`.
    pub fn mul_coeff(&self, c: &C) -> Result<Self> {
        let mut out = FockVector::new(self.basis, self.zero.clone());
        for (p, x) in &self.terms {
            out.add_term(p.clone(), x.try_mul(c)?)?;
        }
        Ok(out)
    }

    /// Keeps the terms of degree at most `cap`.
    pub fn truncate_degree(&self, cap: usize) -> Self {
        let mut out = self.clone();
        out.terms.retain(|p, _| p.size() <= cap);
        out
    }

    /// The largest degree present.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::size).max()
    }
}

/// `𝔭_k v` for `v` in the power-sum basis.
///
/// Creation (`k < 0`): `𝔭_{−k}𝔭_{−λ} = (𝔷_{λ+(k)}/𝔷_λ) 𝔭_{−(λ+(k))}`.
/// Annihilation (`k > 0`): `𝔭_k 𝔭_{−λ} = 𝔭_{−(λ−(k))}` when `k` is a part of
/// `λ` and zero otherwise; together these give `[𝔭_m, 𝔭_n] = m δ_{m,−n}`.
/// `𝔭_0` acts as zero.
pub fn apply_p<C: Coefficient>(k: i32, v: &FockVector<C>) -> Result<FockVector<C>> {
    if v.basis != Basis::PowerSum {
        return Err(Error::Structural(
            "Heisenberg action needs the power-sum basis".into(),
        ));
    }
    let mut out = FockVector::new(Basis::PowerSum, v.zero.clone());
    if k == 0 {
        return Ok(out);
    }
    for (lambda, c) in &v.terms {
        if k < 0 {
            let m = lambda.multiplicity((-k) as u32) as i64;
            // 𝔷_{λ+(k)}/𝔷_λ = k (m_k + 1)
            let factor = Rational::from_int(-(k as i64) * (m + 1));
            out.add_term(lambda.add_part((-k) as u32), c.scale(&factor))?;
        } else if let Some(rest) = lambda.remove_part(k as u32) {
            out.add_term(rest, c.clone())?;
        }
    }
    Ok(out)
}

/// The bilinear pairing with `⟨𝔭_{−λ}, 𝔭_{−μ}⟩ = δ_{λμ}/𝔷_λ`
/// (equivalently `⟨[λ],[μ]⟩ = δ_{λμ}`). Mixed bases are converted first.
pub fn inner_product<C: Coefficient>(v: &FockVector<C>, w: &FockVector<C>) -> Result<C> {
    v.check_ring(&w.zero)?;
    let w = if w.basis == v.basis {
        w.clone()
    } else {
        basis_change(w, v.basis)?
    };
    let mut acc = v.zero.clone();
    for (p, a) in &v.terms {
        if let Some(b) = w.terms.get(p) {
            let mut t = a.try_mul(b)?;
            if v.basis == Basis::PowerSum {
                t = t.scale(&p.z_factor().recip().expect("positive"));
            }
            acc = acc.try_add(&t)?;
        }
    }
    Ok(acc)
}

/// Re-expresses `v` in `target` using
/// `[λ] = Σ_μ χ^λ(μ) 𝔭_{−μ}` and `𝔭_{−μ} = 𝔷_μ^{-1} Σ_λ χ^λ(μ) [λ]`.
pub fn basis_change<C: Coefficient>(v: &FockVector<C>, target: Basis) -> Result<FockVector<C>> {
    if v.basis == target {
        return Ok(v.clone());
    }
    let mut out = FockVector::new(target, v.zero.clone());
    for (p, c) in &v.terms {
        let table = char_table(p.size());
        let j = table.index_of(p).expect("partition of n");
        let inv_z = p.z_factor().recip().expect("positive");
        for (i, q) in table.partitions().iter().enumerate() {
            let (chi, scale) = match v.basis {
                // p is μ (power sum), q is λ (fixed point)
                Basis::PowerSum => (table.at(i, j), &inv_z),
                // p is λ (fixed point), q is μ (power sum)
                Basis::FixedPoint => (table.at(j, i), &Rational::one()),
            };
            if chi != 0 {
                out.add_term(q.clone(), c.scale(&(Rational::from_int(chi) * scale)))?;
            }
        }
    }
    Ok(out)
}

fn exp_action<C: Coefficient>(
    values: &BTreeMap<u32, C>,
    v: &FockVector<C>,
    degree_cap: usize,
    sign: i32,
) -> Result<FockVector<C>> {
    let v = basis_change(v, Basis::PowerSum)?.truncate_degree(degree_cap);
    let mut sum = v.clone();
    let mut term = v;
    for n in 1.. {
        let mut next = FockVector::new(Basis::PowerSum, term.zero.clone());
        for (&k, s) in values {
            if k == 0 || s.is_zero() {
                continue;
            }
            let moved = apply_p(sign * k as i32, &term)?.truncate_degree(degree_cap);
            next = next.try_add(&moved.mul_coeff(s)?.scale(&Rational::new(1, k as i64)))?;
        }
        term = next.scale(&Rational::new(1, n));
        if term.is_zero() {
            break;
        }
        sum = sum.try_add(&term)?;
    }
    Ok(sum)
}

/// `Γ₋(s) v = exp(Σ_k s_k 𝔭_{−k}/k) v`, truncated to Fock degree `degree_cap`.
/// The result is in the power-sum basis.
pub fn gamma_minus<C: Coefficient>(
    s_values: &BTreeMap<u32, C>,
    v: &FockVector<C>,
    degree_cap: usize,
) -> Result<FockVector<C>> {
    exp_action(s_values, v, degree_cap, -1)
}

/// `Γ₊(t) v = exp(Σ_k t_k 𝔭_k/k) v`, the adjoint of [`gamma_minus`].
/// The result is in the power-sum basis.
pub fn gamma_plus<C: Coefficient>(
    t_values: &BTreeMap<u32, C>,
    v: &FockVector<C>,
    degree_cap: usize,
) -> Result<FockVector<C>> {
    exp_action(t_values, v, degree_cap, 1)
}

impl<C: Coefficient> Serialize for FockVector<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a, C> {
            partition: &'a Partition,
            coef: &'a C,
        }
        let terms: Vec<Term<C>> = self
            .terms
            .iter()
            .map(|(p, c)| Term {
                partition: p,
                coef: c,
            })
            .collect();
        let mut st = s.serialize_struct("FockVector", 2)?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}
