//! Min-plus polynomials: data model, canonical form, exact evaluation.
//!
//! A polynomial `min_i (<a_i, x> + c_i)` is stored as a list of
//! [`Monomial`]s sorted by exponent vector with no repeated exponents. Any
//! monomial carrying an infinite entry is the tropical zero and never
//! reaches the canonical form.

mod structured;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

pub use structured::{StructuredMonomial, StructuredPolynomial};
pub use text::max_variable_index;

/// Which exponent vectors are admissible.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ExponentMode {
    /// Exponents must be nonnegative integers.
    #[default]
    Natural,
    /// Any integer exponent is accepted.
    Integer,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<i64>,
    coefficient: Rational,
}

impl Monomial {
    pub fn new(exponents: Vec<i64>, coefficient: Rational) -> Self {
        Self {
            exponents,
            coefficient,
        }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn coefficient(&self) -> &Rational {
        &self.coefficient
    }

    /// `<exponents, x> + coefficient`.
    pub fn value_at(&self, x: &SlopePoint) -> Rational {
        self.exponents
            .iter()
            .zip(x.coords())
            .fold(self.coefficient.clone(), |acc, (&e, xi)| {
                if e == 0 {
                    acc
                } else {
                    acc + xi * Rational::from_integer(e.into())
                }
            })
    }

    /// Apex `(exponents, coefficient)` in the lifted space.
    pub fn lifted(&self) -> Vec<Rational> {
        self.exponents
            .iter()
            .map(|&e| Rational::from_integer(e.into()))
            .chain(std::iter::once(self.coefficient.clone()))
            .collect()
    }
}

/// A monomial before canonicalization. `None` stands for `+inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawMonomial {
    pub exponents: Vec<Option<i64>>,
    pub coefficient: Option<Rational>,
}

impl RawMonomial {
    pub fn finite(exponents: &[i64], coefficient: Rational) -> Self {
        Self {
            exponents: exponents.iter().copied().map(Some).collect(),
            coefficient: Some(coefficient),
        }
    }

    pub fn infinite(n: usize) -> Self {
        Self {
            exponents: vec![Some(0); n],
            coefficient: None,
        }
    }
}

/// A point of `R^n`, read either as an argument of a polynomial or as the
/// slope of the non-vertical hyperplane `{(z, <x, z>)}` in `R^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlopePoint(Vec<Rational>);

impl SlopePoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }
}

impl From<Vec<Rational>> for SlopePoint {
    fn from(v: Vec<Rational>) -> Self {
        Self(v)
    }
}

impl fmt::Display for SlopePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: Rational,
    /// Indices (into the canonical monomial list) attaining the minimum, ascending.
    pub argmin: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalPolynomial {
    n: usize,
    monomials: Vec<Monomial>,
}

impl TropicalPolynomial {
    /// Drops every monomial with an infinite entry, merges repeated exponent
    /// vectors keeping the smallest coefficient and sorts by exponents.
    pub fn canonicalize(n: usize, raw: &[RawMonomial], mode: ExponentMode) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroVariables);
        }
        let mut merged: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
        for term in raw {
            if term.exponents.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: term.exponents.len(),
                });
            }
            let Some(coefficient) = &term.coefficient else {
                continue;
            };
            let Some(exponents) = term.exponents.iter().copied().collect::<Option<Vec<_>>>() else {
                continue;
            };
            if mode == ExponentMode::Natural {
                if let Some((var, &exponent)) = exponents.iter().enumerate().find(|(_, e)| **e < 0)
                {
                    return Err(Error::NegativeExponent {
                        var: var + 1,
                        exponent,
                    });
                }
            }
            merged
                .entry(exponents)
                .and_modify(|c| {
                    if coefficient < c {
                        *c = coefficient.clone();
                    }
                })
                .or_insert_with(|| coefficient.clone());
        }
        if merged.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        Ok(Self {
            n,
            monomials: merged
                .into_iter()
                .map(|(e, c)| Monomial::new(e, c))
                .collect(),
        })
    }

    pub fn from_monomials(n: usize, monomials: Vec<Monomial>) -> Result<Self> {
        Self::from_monomials_with_mode(n, monomials, ExponentMode::Natural)
    }

    pub fn from_monomials_with_mode(
        n: usize,
        monomials: Vec<Monomial>,
        mode: ExponentMode,
    ) -> Result<Self> {
        let raw: Vec<_> = monomials
            .into_iter()
            .map(|m| RawMonomial::finite(&m.exponents, m.coefficient))
            .collect();
        Self::canonicalize(n, &raw, mode)
    }

    /// Parses the `min(term, ...)` grammar in `n` variables.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        Self::parse_with_mode(text, n, ExponentMode::Natural)
    }

    pub fn parse_with_mode(text: &str, n: usize, mode: ExponentMode) -> Result<Self> {
        let raw = text::parse_raw(text, n)?;
        Self::canonicalize(n, &raw, mode)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    fn check_dim(&self, x: &SlopePoint) -> Result<()> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.dim(),
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &SlopePoint) -> Result<Evaluation> {
        self.check_dim(x)?;
        let mut value: Option<Rational> = None;
        let mut argmin = Vec::new();
        for (i, m) in self.monomials.iter().enumerate() {
            let v = m.value_at(x);
            match &value {
                Some(best) if v > *best => {}
                Some(best) if v == *best => argmin.push(i),
                _ => {
                    value = Some(v);
                    argmin.clear();
                    argmin.push(i);
                }
            }
        }
        Ok(Evaluation {
            value: value.expect("canonical polynomials are nonempty"),
            argmin,
        })
    }

    /// Whether the minimum is attained by at least two monomials at `x`.
    pub fn on_hypersurface(&self, x: &SlopePoint) -> Result<bool> {
        Ok(self.evaluate(x)?.argmin.len() >= 2)
    }

    /// Tropical product with a single monomial. The hypersurface is unchanged
    /// and the Newton polyhedron is translated by the lifted monomial.
    pub fn translate_by_monomial(&self, m: &Monomial) -> Result<Self> {
        if m.exponents.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: m.exponents.len(),
            });
        }
        let monomials = self
            .monomials
            .iter()
            .map(|t| {
                Monomial::new(
                    t.exponents
                        .iter()
                        .zip(&m.exponents)
                        .map(|(a, b)| a + b)
                        .collect(),
                    &t.coefficient + &m.coefficient,
                )
            })
            .collect();
        Self::from_monomials_with_mode(self.n, monomials, ExponentMode::Integer)
    }

    /// Lifted apexes `(a_i, c_i)` in canonical monomial order.
    pub fn apexes(&self) -> Vec<Vec<Rational>> {
        self.monomials.iter().map(Monomial::lifted).collect()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut parts = Vec::new();
    let vars: Vec<_> = m
        .exponents
        .iter()
        .enumerate()
        .filter(|(_, e)| **e != 0)
        .collect();
    if !m.coefficient.is_zero() || vars.is_empty() {
        parts.push(format_rational(&m.coefficient));
    }
    for (j, &e) in vars {
        if e == 1 {
            parts.push(format!("x{}", j + 1));
        } else {
            parts.push(format!("{e}*x{}", j + 1));
        }
    }
    write!(f, "{}", parts.join(" + "))
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, self)
    }
}

impl fmt::Display for TropicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "min(")?;
        for (i, m) in self.monomials.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write_monomial(f, m)?;
        }
        write!(f, ")")
    }
}
