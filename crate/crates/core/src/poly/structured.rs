//! JSON form: `{"n": 2, "monomials": [{"coeff": "1/2", "exp": [2, 1]}]}`.
//!
//! `coeff` is a rational string `p` or `p/q`, or `inf` for the tropical zero.

use serde::{Deserialize, Serialize};

use super::{ExponentMode, RawMonomial, TropicalPolynomial};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructuredMonomial {
    pub coeff: String,
    pub exp: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructuredPolynomial {
    pub n: usize,
    pub monomials: Vec<StructuredMonomial>,
}

impl StructuredPolynomial {
    pub fn to_polynomial(&self, mode: ExponentMode) -> Result<TropicalPolynomial> {
        let raw = self
            .monomials
            .iter()
            .map(|m| {
                let coefficient = if m.coeff.trim() == "inf" {
                    None
                } else {
                    Some(parse_rational(&m.coeff).ok_or_else(|| {
                        Error::Format(format!("bad rational coefficient {:?}", m.coeff))
                    })?)
                };
                Ok(RawMonomial {
                    exponents: m.exp.iter().copied().map(Some).collect(),
                    coefficient,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        TropicalPolynomial::canonicalize(self.n, &raw, mode)
    }
}

impl From<&TropicalPolynomial> for StructuredPolynomial {
    fn from(f: &TropicalPolynomial) -> Self {
        Self {
            n: f.n(),
            monomials: f
                .monomials()
                .iter()
                .map(|m| StructuredMonomial {
                    coeff: format_rational(m.coefficient()),
                    exp: m.exponents().to_vec(),
                })
                .collect(),
        }
    }
}

impl TropicalPolynomial {
    pub fn from_json(text: &str, mode: ExponentMode) -> Result<Self> {
        let s: StructuredPolynomial =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        s.to_polynomial(mode)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&StructuredPolynomial::from(self))
            .expect("structured polynomials always serialize")
    }
}
