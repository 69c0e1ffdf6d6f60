use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One variable of a series ring together with its exponent window
/// `[-max_pole, max_degree]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarSpec {
    pub name: String,
    pub max_pole: u32,
    pub max_degree: u32,
}

impl VarSpec {
    /// A power-series variable truncated above `max_degree`.
    pub fn taylor(name: impl Into<String>, max_degree: u32) -> Self {
        VarSpec {
            name: name.into(),
            max_pole: 0,
            max_degree,
        }
    }

    /// A Laurent variable allowing poles up to `max_pole`.
    pub fn laurent(name: impl Into<String>, max_pole: u32, max_degree: u32) -> Self {
        VarSpec {
            name: name.into(),
            max_pole,
            max_degree,
        }
    }
}

/// Optional weighted total-degree truncation `sum_i weights[i]*e_i <= max`,
/// applied on top of the per-variable windows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeCap {
    pub weights: Vec<u32>,
    pub max: u32,
}

#[derive(Clone, Copy, Debug)]
struct Field {
    shift: u32,
    mask: u128,
    pole: i64,
    span: i64,
}

/// The shape of a series ring: variables, windows and the packed key layout.
///
/// Exponent vectors are packed into a `u128` with the first variable in the
/// most significant bits, so numeric key order is lexicographic order.
#[derive(Debug)]
pub struct Window {
    vars: Vec<VarSpec>,
    cap: Option<DegreeCap>,
    fields: Vec<Field>,
}

impl PartialEq for Window {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.cap == other.cap
    }
}

impl Eq for Window {}

impl Window {
    pub fn new(vars: Vec<VarSpec>) -> Result<Arc<Window>> {
        Self::build(vars, None)
    }

    pub fn with_cap(vars: Vec<VarSpec>, cap: DegreeCap) -> Result<Arc<Window>> {
        Self::build(vars, Some(cap))
    }

    pub fn build(vars: Vec<VarSpec>, cap: Option<DegreeCap>) -> Result<Arc<Window>> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::Structural(format!("duplicate variable {}", v.name)));
            }
        }
        if let Some(c) = &cap {
            if c.weights.len() != vars.len() {
                return Err(Error::Structural(
                    "degree cap weights do not match variables".into(),
                ));
            }
        }
        let mut fields = vec![
            Field {
                shift: 0,
                mask: 0,
                pole: 0,
                span: 0
            };
            vars.len()
        ];
        let mut shift = 0u32;
        for (i, v) in vars.iter().enumerate().rev() {
            let span = v.max_pole as u64 + v.max_degree as u64;
            let bits = 64 - span.leading_zeros();
            if shift + bits > 128 {
                return Err(Error::Window(
                    "exponent windows exceed the 128-bit key layout".into(),
                ));
            }
            fields[i] = Field {
                shift,
                mask: if bits == 0 { 0 } else { (1u128 << bits) - 1 },
                pole: v.max_pole as i64,
                span: span as i64,
            };
            shift += bits;
        }
        Ok(Arc::new(Window { vars, cap, fields }))
    }

    pub fn vars(&self) -> &[VarSpec] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn cap(&self) -> Option<&DegreeCap> {
        self.cap.as_ref()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::Structural(format!("unknown variable {name}")))
    }

    pub fn var(&self, name: &str) -> Result<&VarSpec> {
        Ok(&self.vars[self.index_of(name)?])
    }

    /// Packs an exponent vector, or `None` if some exponent leaves its window.
    /// The degree cap is not consulted.
    pub fn encode(&self, exps: &[i32]) -> Option<u128> {
        debug_assert_eq!(exps.len(), self.fields.len());
        let mut key = 0u128;
        for (f, &e) in self.fields.iter().zip(exps) {
            let off = e as i64 + f.pole;
            if off < 0 || off > f.span {
                return None;
            }
            key |= (off as u128) << f.shift;
        }
        Some(key)
    }

    pub fn decode(&self, key: u128) -> Vec<i32> {
        self.fields
            .iter()
            .map(|f| (((key >> f.shift) & f.mask) as i64 - f.pole) as i32)
            .collect()
    }

    pub(crate) fn offsets_into(&self, key: u128, out: &mut Vec<i64>) {
        out.extend(
            self.fields
                .iter()
                .map(|f| ((key >> f.shift) & f.mask) as i64),
        );
    }

    pub(crate) fn field_bounds(&self) -> impl Iterator<Item = (u32, i64, i64)> + '_ {
        self.fields.iter().map(|f| (f.shift, f.pole, f.span))
    }

    /// Weighted degree under the cap (0 when there is no cap).
    pub fn weighted_degree(&self, exps: &[i32]) -> i64 {
        match &self.cap {
            None => 0,
            Some(c) => c
                .weights
                .iter()
                .zip(exps)
                .map(|(&w, &e)| w as i64 * e as i64)
                .sum(),
        }
    }

    pub(crate) fn cap_max(&self) -> Option<i64> {
        self.cap.as_ref().map(|c| c.max as i64)
    }

    /// Whether an exponent vector lies in the window, including the cap.
    pub fn admits(&self, exps: &[i32]) -> bool {
        self.encode(exps).is_some()
            && self
                .cap_max()
                .map_or(true, |m| self.weighted_degree(exps) <= m)
    }

    /// The same variables with every window and the cap raised by `extra`
    /// degrees. Used to compute with guard digits before truncating back.
    pub fn widened(&self, extra: u32) -> Result<Arc<Window>> {
        let vars = self
            .vars
            .iter()
            .map(|v| VarSpec {
                max_degree: v.max_degree + extra,
                ..v.clone()
            })
            .collect();
        let cap = self.cap.clone().map(|c| DegreeCap {
            max: c.max + extra,
            ..c
        });
        Window::build(vars, cap)
    }

    /// A copy with some variables' specs replaced.
    pub fn map_vars(&self, f: impl Fn(&VarSpec) -> VarSpec) -> Result<Arc<Window>> {
        Window::build(self.vars.iter().map(f).collect(), self.cap.clone())
    }

    /// Whether every variable in this window is a power-series variable.
    pub fn is_taylor(&self) -> bool {
        self.vars.iter().all(|v| v.max_pole == 0)
    }
}
