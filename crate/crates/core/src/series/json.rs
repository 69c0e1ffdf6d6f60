use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{DegreeCap, Series, VarSpec, Window};
use crate::rational::Rational;

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<i32>,
    coef: Rational,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    vars: Vec<VarSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cap: Option<DegreeCap>,
    terms: Vec<TermJson>,
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesJson {
            vars: self.vars().to_vec(),
            cap: self.window().cap().cloned(),
            terms: self
                .terms()
                .map(|(exp, c)| TermJson {
                    exp,
                    coef: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Series {
    /// Rejects terms outside the declared windows rather than truncating them.
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        let w = Window::build(j.vars, j.cap).map_err(D::Error::custom)?;
        for t in &j.terms {
            if t.exp.len() != w.nvars() || !w.admits(&t.exp) {
                return Err(D::Error::custom(format!(
                    "term {:?} outside the window",
                    t.exp
                )));
            }
        }
        Series::from_terms(&w, j.terms.into_iter().map(|t| (t.exp, t.coef)))
            .map_err(D::Error::custom)
    }
}

impl Series {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serialization is infallible")
    }

    pub fn from_json(s: &str) -> crate::error::Result<Series> {
        serde_json::from_str(s).map_err(|e| crate::error::Error::Parse(e.to_string()))
    }
}
