//! Hand-written recursive-descent parser for the `min(term, ...)` syntax.
//!
//! ```text
//! poly  := "min" "(" term ("," term)* ")" | term
//! term  := item (("+" | "-") item)*
//! item  := sign? ( rational ("*" var)? | var | "inf" )
//! var   := "x" index        (1-based)
//! ```
//!
//! A coefficient in front of a variable is its exponent and must be an
//! integer. Repeated constants and repeated variables within a term add up.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::RawMonomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Default)]
struct Term {
    infinite: bool,
    constant: Rational,
    exponents: BTreeMap<usize, i64>,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        if rest.starts_with(kw)
            && !rest[kw.len()..]
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let len = self
            .rest()
            .bytes()
            .take_while(|b| b.is_ascii_digit())
            .count();
        if len == 0 {
            return None;
        }
        let value = self.rest()[..len].parse().ok();
        self.pos += len;
        value
    }

    fn polynomial(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        if self.eat_keyword("min") {
            self.expect('(')?;
            loop {
                terms.push(self.term()?);
                if self.eat(',') {
                    continue;
                }
                self.expect(')')?;
                break;
            }
        } else {
            terms.push(self.term()?);
        }
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term> {
        let mut term = Term::default();
        self.item(&mut term, false)?;
        loop {
            if self.eat('+') {
                self.item(&mut term, false)?;
            } else if self.eat('-') {
                self.item(&mut term, true)?;
            } else {
                return Ok(term);
            }
        }
    }

    fn item(&mut self, term: &mut Term, mut negate: bool) -> Result<()> {
        loop {
            if self.eat('-') {
                negate = !negate;
            } else if !self.eat('+') {
                break;
            }
        }
        let start = self.pos;
        if self.eat_keyword("inf") {
            if negate {
                self.pos = start;
                return self.err("-inf is not a min-plus coefficient");
            }
            term.infinite = true;
            return Ok(());
        }
        if self.peek() == Some('x') {
            let (var, _) = self.variable()?;
            return self.add_exponent(term, var, if negate { -1 } else { 1 });
        }
        let Some(num) = self.digits() else {
            return self.err("expected a number, a variable or 'inf'");
        };
        let mut value = Rational::from_integer(num);
        if self.eat('/') {
            let Some(den) = self.digits() else {
                return self.err("expected a denominator");
            };
            if den.is_zero() {
                return self.err("zero denominator");
            }
            value /= Rational::from_integer(den);
        }
        if negate {
            value = -value;
        }
        if self.eat('*') {
            if !value.denom().is_one() {
                self.pos = start;
                return self.err("exponents must be integers");
            }
            let Some(e) = value.numer().to_i64() else {
                self.pos = start;
                return self.err("exponent out of range");
            };
            let (var, _) = self.variable()?;
            return self.add_exponent(term, var, e);
        }
        term.constant += value;
        Ok(())
    }

    fn variable(&mut self) -> Result<(usize, usize)> {
        self.skip_ws();
        let start = self.pos;
        if !self.eat('x') {
            return self.err("expected a variable");
        }
        let index = match self.rest().bytes().next() {
            Some(b) if b.is_ascii_digit() => self.digits().and_then(|d| d.to_usize()),
            _ => None,
        };
        match index {
            Some(i) if i >= 1 => Ok((i, start)),
            _ => {
                self.pos = start;
                self.err("variables are written x1, x2, ...")
            }
        }
    }

    fn add_exponent(&self, term: &mut Term, var: usize, e: i64) -> Result<()> {
        let slot = term.exponents.entry(var).or_insert(0);
        match slot.checked_add(e) {
            Some(v) => {
                *slot = v;
                Ok(())
            }
            None => self.err("exponent out of range"),
        }
    }
}

fn parse_terms(text: &str) -> Result<Vec<Term>> {
    Parser::new(text).polynomial()
}

/// Largest variable index mentioned in `text` (0 when no variable occurs).
pub fn max_variable_index(text: &str) -> Result<usize> {
    Ok(parse_terms(text)?
        .iter()
        .filter_map(|t| t.exponents.keys().next_back().copied())
        .max()
        .unwrap_or(0))
}

pub(super) fn parse_raw(text: &str, n: usize) -> Result<Vec<RawMonomial>> {
    if n == 0 {
        return Err(Error::ZeroVariables);
    }
    parse_terms(text)?
        .into_iter()
        .map(|t| {
            if let Some((&var, _)) = t.exponents.iter().next_back().filter(|(v, _)| **v > n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: var,
                });
            }
            let mut exponents = vec![Some(0); n];
            for (var, e) in t.exponents {
                exponents[var - 1] = Some(e);
            }
            Ok(RawMonomial {
                exponents,
                coefficient: (!t.infinite).then_some(t.constant),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn syntax_errors_report_position() {
        match parse_raw("min(0, x1", 1) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("unexpected {other:?}"),
        }
        match parse_raw("min(0, y)", 1) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_raw("min()", 1), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_raw("min(1/2*x1)", 1),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(parse_raw("min(x0)", 1), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_raw("min(0) junk", 1),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn variable_beyond_n_is_a_dimension_error() {
        assert_eq!(
            parse_raw("min(0, x3)", 2),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn sums_and_signs() {
        let raw = parse_raw("min(x1 - 1 + x1 + 1/2, -x2, inf)", 2).unwrap();
        assert_eq!(raw[0].exponents, vec![Some(2), Some(0)]);
        assert_eq!(raw[0].coefficient, Some(ratio(-1, 2)));
        assert_eq!(raw[1].exponents, vec![Some(0), Some(-1)]);
        assert_eq!(raw[1].coefficient, Some(rat(0)));
        assert_eq!(raw[2].coefficient, None);
    }

    #[test]
    fn bare_term_and_whitespace() {
        let raw = parse_raw("  3 *  x1 + 2 ", 1).unwrap();
        assert_eq!(raw.len(), 1);
        assert_eq!(raw[0].exponents, vec![Some(3)]);
        assert_eq!(max_variable_index("min(0, x1, 4*x7)").unwrap(), 7);
        assert_eq!(max_variable_index("min(1, 2)").unwrap(), 0);
    }
}
