//! Criterion-free checks of containment verdicts.
//!
//! In one variable `Trop(f)` is a finite set of breakpoints and inclusion
//! is decided exactly. In more variables the oracle samples points of
//! `Trop(f)` (one per nonempty tie cell, plus seeded random points snapped
//! onto the hypersurface along random lines) and tests them against `g`.
//! It can refute containment but never proves it.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{solve_feasibility, LinearSystem, Relation};
use crate::poly::{SlopePoint, TropicalPolynomial};
use crate::rational::{dot, Rational};

/// Strictly increasing breakpoints of a univariate min-plus polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BreakpointSet(Vec<Rational>);

impl BreakpointSet {
    pub fn points(&self) -> &[Rational] {
        &self.0
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.0.binary_search(x).is_ok()
    }

    pub fn is_subset_of(&self, other: &BreakpointSet) -> bool {
        self.0.iter().all(|x| other.contains(x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSample {
    /// Canonical monomial indices, `pair.0 < pair.1`.
    pub pair: (usize, usize),
    pub point: SlopePoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    AgreesContained,
    Counterexample(SlopePoint),
}

/// Points where the lower envelope of the lines `slope·x + intercept`
/// is attained by two lines of different slopes.
fn envelope_breakpoints(lines: &[(Rational, Rational)]) -> Vec<Rational> {
    let min_at = |x: &Rational| {
        lines
            .iter()
            .map(|(a, b)| a * x + b)
            .min()
            .expect("at least one line")
    };
    let mut out = Vec::new();
    for (i, (ai, bi)) in lines.iter().enumerate() {
        for (aj, bj) in &lines[i + 1..] {
            if ai == aj {
                continue;
            }
            let x = (bj - bi) / (ai - aj);
            if ai * &x + bi == min_at(&x) {
                out.push(x);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn breakpoints_1d(f: &TropicalPolynomial) -> Result<BreakpointSet> {
    if f.n() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: f.n(),
        });
    }
    let lines: Vec<_> = f
        .monomials()
        .iter()
        .map(|m| {
            (
                Rational::from_integer(m.exponents()[0].into()),
                m.coefficient().clone(),
            )
        })
        .collect();
    Ok(BreakpointSet(envelope_breakpoints(&lines)))
}

/// `M_i(x) - M_j(x)` as `(coeffs, constant)`.
fn difference(f: &TropicalPolynomial, i: usize, j: usize) -> (Vec<Rational>, Rational) {
    let (mi, mj) = (&f.monomials()[i], &f.monomials()[j]);
    let coeffs = mi
        .exponents()
        .iter()
        .zip(mj.exponents())
        .map(|(a, b)| Rational::from_integer((a - b).into()))
        .collect();
    (coeffs, mi.coefficient() - mj.coefficient())
}

fn cell_system(f: &TropicalPolynomial, i: usize, k: usize, strict: bool) -> LinearSystem {
    let mut s = LinearSystem::new(f.n());
    // M_i - M_k = 0  <=>  <a_i - a_k, x> = c_k - c_i
    let (coeffs, c) = difference(f, i, k);
    s.add(coeffs, Relation::Eq, -c);
    for j in (0..f.len()).filter(|&j| j != i && j != k) {
        // M_j - M_i (> | >=) 0
        let (coeffs, c) = difference(f, j, i);
        let rel = if strict { Relation::Gt } else { Relation::Ge };
        s.add(coeffs, rel, -c);
    }
    s
}

/// One point per nonempty tie cell `{M_i = M_k <= M_j}`, preferring the
/// relative interior (`M_i < M_j` for `j` outside the pair).
pub fn cell_points(f: &TropicalPolynomial) -> Vec<CellSample> {
    let mut out = Vec::new();
    for i in 0..f.len() {
        for k in i + 1..f.len() {
            let x = solve_feasibility(&cell_system(f, i, k, true))
                .or_else(|| solve_feasibility(&cell_system(f, i, k, false)));
            if let Some(x) = x {
                let point = SlopePoint::new(x);
                debug_assert!(f.on_hypersurface(&point).unwrap_or(false));
                out.push(CellSample {
                    pair: (i, k),
                    point,
                });
            }
        }
    }
    out
}

fn small_rational(rng: &mut ChaCha8Rng, range: i64, max_den: i64) -> Rational {
    Rational::new(
        rng.random_range(-range..=range).into(),
        rng.random_range(1..=max_den).into(),
    )
}

/// Up to `count` seeded points of `Trop(f)`: pick a random base point and
/// direction, restrict `f` to that line and take one of its breakpoints.
pub fn random_hypersurface_points(
    f: &TropicalPolynomial,
    count: usize,
    seed: u64,
) -> Vec<SlopePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = f.n();
    let mut out = Vec::with_capacity(count);
    if f.len() < 2 {
        return out;
    }
    let max_attempts = count.saturating_mul(20).max(20);
    for _ in 0..max_attempts {
        if out.len() == count {
            break;
        }
        let base: Vec<Rational> = (0..n).map(|_| small_rational(&mut rng, 12, 4)).collect();
        let dir: Vec<Rational> = (0..n).map(|_| small_rational(&mut rng, 3, 2)).collect();
        if dir.iter().all(Zero::is_zero) {
            continue;
        }
        let base_pt = SlopePoint::new(base.clone());
        let lines: Vec<(Rational, Rational)> = f
            .monomials()
            .iter()
            .map(|m| {
                let e: Vec<Rational> = m
                    .exponents()
                    .iter()
                    .map(|&e| Rational::from_integer(e.into()))
                    .collect();
                (dot(&e, &dir), m.value_at(&base_pt))
            })
            .collect();
        let bps = envelope_breakpoints(&lines);
        if bps.is_empty() {
            continue;
        }
        let lambda = &bps[rng.random_range(0..bps.len())];
        let x = SlopePoint::new(base.iter().zip(&dir).map(|(b, d)| b + lambda * d).collect());
        if f.on_hypersurface(&x).unwrap_or(false) {
            out.push(x);
        }
    }
    out
}

/// Exact for one variable; for more variables a counterexample is
/// conclusive and agreement is only evidence.
pub fn oracle_check(
    f: &TropicalPolynomial,
    g: &TropicalPolynomial,
    extra_samples: usize,
    seed: u64,
) -> Result<OracleVerdict> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: g.n(),
        });
    }
    if f.n() == 1 {
        let (bf, bg) = (breakpoints_1d(f)?, breakpoints_1d(g)?);
        return Ok(match bf.points().iter().find(|x| !bg.contains(x)) {
            Some(x) => OracleVerdict::Counterexample(SlopePoint::new(vec![x.clone()])),
            None => OracleVerdict::AgreesContained,
        });
    }
    let samples = cell_points(f)
        .into_iter()
        .map(|s| s.point)
        .chain(random_hypersurface_points(f, extra_samples, seed));
    for x in samples {
        if !g.on_hypersurface(&x)? {
            return Ok(OracleVerdict::Counterexample(x));
        }
    }
    Ok(OracleVerdict::AgreesContained)
}
