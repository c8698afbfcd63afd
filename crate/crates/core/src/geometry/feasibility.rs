//! Exact Fourier-Motzkin elimination with strict and non-strict bounds.
//!
//! Variables are eliminated from the last to the first. Equalities are
//! used for substitution whenever one mentions the variable being removed;
//! otherwise every lower bound is paired with every upper bound, the
//! combination being strict when either side is. Back-substitution then
//! picks one value per variable inside its (possibly open) interval:
//! the midpoint of a bounded interval, `floor(lo) + 1` or `ceil(hi) - 1`
//! for a half-line, and `0` for a free variable.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::rational::{ceil, dot, floor, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `<coeffs, x> >= offset`
    Ge,
    /// `<coeffs, x> > offset`
    Gt,
    /// `<coeffs, x> = offset`
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rational>,
    pub offset: Rational,
    pub relation: Relation,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, offset: Rational) -> Self {
        Self {
            coeffs,
            offset,
            relation,
        }
    }

    pub fn holds_at(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Ge => lhs >= self.offset,
            Relation::Gt => lhs > self.offset,
            Relation::Eq => lhs == self.offset,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    dim: usize,
    constraints: Vec<LinearConstraint>,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn push(&mut self, c: LinearConstraint) {
        assert_eq!(c.coeffs.len(), self.dim, "constraint dimension");
        self.constraints.push(c);
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, offset: Rational) {
        self.push(LinearConstraint::new(coeffs, relation, offset));
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.dim && self.constraints.iter().all(|c| c.holds_at(x))
    }

    /// One exact solution, or `None` when the system is infeasible.
    pub fn solve(&self) -> Option<Vec<Rational>> {
        solve_feasibility(self)
    }
}

/// A one-sided bound on the eliminated variable `x_k`:
/// `x_k (>= | >) <coeffs, x_{<k}> + constant` for lower bounds and the
/// mirrored relation for upper bounds.
#[derive(Clone, Debug)]
struct Bound {
    coeffs: Vec<Rational>,
    constant: Rational,
    strict: bool,
}

impl Bound {
    fn value(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x) + &self.constant
    }
}

#[derive(Clone, Debug)]
enum Stage {
    /// `x_k = <coeffs, x_{<k}> + constant`
    Substitute(Vec<Rational>, Rational),
    Bounds {
        lower: Vec<Bound>,
        upper: Vec<Bound>,
    },
}

/// Row form used during elimination: `<coeffs, x> rel offset`, with
/// `coeffs` truncated to the variables still present.
type Row = LinearConstraint;

pub fn solve_feasibility(system: &LinearSystem) -> Option<Vec<Rational>> {
    let d = system.dim;
    let mut rows = normalize(system.constraints.clone())?;
    let mut stages: Vec<Stage> = Vec::with_capacity(d);

    for k in (0..d).rev() {
        let eq = rows
            .iter()
            .position(|r| r.relation == Relation::Eq && !r.coeffs[k].is_zero());
        let stage;
        let mut next: Vec<Row> = Vec::with_capacity(rows.len());
        if let Some(pos) = eq {
            let pivot = rows.swap_remove(pos);
            let a = pivot.coeffs[k].clone();
            let coeffs: Vec<Rational> = pivot.coeffs[..k].iter().map(|c| -(c / &a)).collect();
            let constant = &pivot.offset / &a;
            for mut r in rows {
                let ck = r.coeffs.pop().expect("row has variable k");
                if !ck.is_zero() {
                    for (ri, ci) in r.coeffs.iter_mut().zip(&coeffs) {
                        *ri += &ck * ci;
                    }
                    r.offset -= &ck * &constant;
                }
                next.push(r);
            }
            stage = Stage::Substitute(coeffs, constant);
        } else {
            let mut lower = Vec::new();
            let mut upper = Vec::new();
            for mut r in rows {
                let ck = r.coeffs.pop().expect("row has variable k");
                if ck.is_zero() {
                    next.push(r);
                    continue;
                }
                // ck * x_k + <c, x> rel b  =>  x_k rel' (b - <c, x>) / ck
                let coeffs: Vec<Rational> = r.coeffs.iter().map(|c| -(c / &ck)).collect();
                let bound = Bound {
                    coeffs,
                    constant: &r.offset / &ck,
                    strict: r.relation == Relation::Gt,
                };
                if ck.is_positive() {
                    lower.push(bound);
                } else {
                    upper.push(bound);
                }
            }
            for lo in &lower {
                for hi in &upper {
                    // hi(x) - lo(x) (>= | >) 0
                    let coeffs = hi
                        .coeffs
                        .iter()
                        .zip(&lo.coeffs)
                        .map(|(h, l)| h - l)
                        .collect();
                    let relation = if lo.strict || hi.strict {
                        Relation::Gt
                    } else {
                        Relation::Ge
                    };
                    next.push(Row::new(coeffs, relation, &lo.constant - &hi.constant));
                }
            }
            stage = Stage::Bounds { lower, upper };
        }
        stages.push(stage);
        rows = normalize(next)?;
    }
    debug_assert!(rows.is_empty());

    let mut x: Vec<Rational> = Vec::with_capacity(d);
    for stage in stages.iter().rev() {
        let value = match stage {
            Stage::Substitute(coeffs, constant) => dot(coeffs, &x) + constant,
            Stage::Bounds { lower, upper } => pick(&x, lower, upper),
        };
        x.push(value);
    }
    debug_assert!(system.is_satisfied_by(&x));
    Some(x)
}

fn tightest(
    x: &[Rational],
    bounds: &[Bound],
    better: impl Fn(&Rational, &Rational) -> bool,
) -> Option<(Rational, bool)> {
    let mut best: Option<(Rational, bool)> = None;
    for b in bounds {
        let v = b.value(x);
        best = match best {
            None => Some((v, b.strict)),
            Some((cur, strict)) if v == cur => Some((cur, strict || b.strict)),
            Some((cur, _)) if better(&v, &cur) => Some((v, b.strict)),
            keep => keep,
        };
    }
    best
}

fn pick(x: &[Rational], lower: &[Bound], upper: &[Bound]) -> Rational {
    let lo = tightest(x, lower, |a, b| a > b);
    let hi = tightest(x, upper, |a, b| a < b);
    match (lo, hi) {
        (Some((l, _)), Some((h, _))) => {
            if l == h {
                l
            } else {
                (l + h) / Rational::from_integer(2.into())
            }
        }
        (Some((l, _)), None) => Rational::from_integer(floor(&l) + 1),
        (None, Some((h, _))) => Rational::from_integer(ceil(&h) - 1),
        (None, None) => Rational::zero(),
    }
}

/// Drops trivial rows (failing on a false one), scales each row so its
/// last nonzero coefficient has absolute value one, and keeps only the
/// tightest row per coefficient vector. `None` means infeasible.
fn normalize(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut ineq: BTreeMap<Vec<Rational>, (Rational, bool)> = BTreeMap::new();
    let mut eqs: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
    for r in rows {
        let Some(lead) = r.coeffs.iter().rev().find(|c| !c.is_zero()).cloned() else {
            let ok = match r.relation {
                Relation::Ge => !r.offset.is_positive(),
                Relation::Gt => r.offset.is_negative(),
                Relation::Eq => r.offset.is_zero(),
            };
            if !ok {
                return None;
            }
            continue;
        };
        let mut scale = lead.abs().recip();
        if r.relation == Relation::Eq && lead.is_negative() {
            scale = -scale;
        }
        let coeffs: Vec<Rational> = r.coeffs.iter().map(|c| c * &scale).collect();
        let offset = &r.offset * &scale;
        match r.relation {
            Relation::Eq => {
                if let Some(prev) = eqs.get(&coeffs) {
                    if *prev != offset {
                        return None;
                    }
                } else {
                    eqs.insert(coeffs, offset);
                }
            }
            rel => {
                let strict = rel == Relation::Gt;
                ineq.entry(coeffs)
                    .and_modify(|(o, s)| {
                        if offset > *o || (offset == *o && strict) {
                            *o = offset.clone();
                            *s = strict;
                        }
                    })
                    .or_insert((offset, strict));
            }
        }
    }
    let mut out: Vec<Row> = eqs
        .into_iter()
        .map(|(c, o)| Row::new(c, Relation::Eq, o))
        .collect();
    out.extend(
        ineq.into_iter()
            .map(|(c, (o, s))| Row::new(c, if s { Relation::Gt } else { Relation::Ge }, o)),
    );
    Some(out)
}
