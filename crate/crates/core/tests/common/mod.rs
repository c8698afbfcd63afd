//! Seeded random polynomials shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropcon::{Monomial, Rational, TropicalPolynomial};

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub n: usize,
    pub max_terms: usize,
    pub max_exp: i64,
    pub max_den: i64,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coefficient(rng: &mut ChaCha8Rng, max_den: i64) -> Rational {
    let den = rng.random_range(1..=max_den);
    Rational::new(rng.random_range(-4 * den..=4 * den).into(), den.into())
}

/// Between `min_terms` and `shape.max_terms` monomials with distinct
/// exponent vectors in `[0, max_exp]^n`.
pub fn polynomial_with(rng: &mut ChaCha8Rng, shape: Shape, min_terms: usize) -> TropicalPolynomial {
    let available = (shape.max_exp + 1).pow(shape.n as u32) as usize;
    let k = rng.random_range(min_terms..=shape.max_terms).min(available);
    let mut exps = BTreeSet::new();
    while exps.len() < k {
        let e: Vec<i64> = (0..shape.n)
            .map(|_| rng.random_range(0..=shape.max_exp))
            .collect();
        exps.insert(e);
    }
    let monomials = exps
        .into_iter()
        .map(|e| Monomial::new(e, coefficient(rng, shape.max_den)))
        .collect();
    TropicalPolynomial::from_monomials(shape.n, monomials).unwrap()
}

pub fn polynomial(rng: &mut ChaCha8Rng, shape: Shape) -> TropicalPolynomial {
    polynomial_with(rng, shape, 1)
}

/// Tropical product: its hypersurface is the union of the two factors'.
pub fn product(f: &TropicalPolynomial, h: &TropicalPolynomial) -> TropicalPolynomial {
    let mut monomials = Vec::new();
    for a in f.monomials() {
        for b in h.monomials() {
            let e = a
                .exponents()
                .iter()
                .zip(b.exponents())
                .map(|(x, y)| x + y)
                .collect();
            monomials.push(Monomial::new(e, a.coefficient() + b.coefficient()));
        }
    }
    TropicalPolynomial::from_monomials(f.n(), monomials).unwrap()
}

/// A pair mixing independent draws, products `g = f h` (always contained)
/// and `g = f` with a few extra monomials.
pub fn pair(rng: &mut ChaCha8Rng, shape: Shape) -> (TropicalPolynomial, TropicalPolynomial) {
    match rng.random_range(0..3) {
        0 => (polynomial_with(rng, shape, 2), polynomial(rng, shape)),
        1 => {
            let half = Shape {
                max_terms: (shape.max_terms / 2).max(2),
                max_exp: (shape.max_exp / 2).max(1),
                ..shape
            };
            let f = polynomial_with(rng, half, 2);
            let small = Shape {
                max_terms: (shape.max_terms / f.len()).max(1),
                ..half
            };
            let h = polynomial(rng, small);
            let g = product(&f, &h);
            (f, g)
        }
        _ => {
            let f = polynomial_with(
                rng,
                Shape {
                    max_terms: shape.max_terms - 1,
                    ..shape
                },
                2,
            );
            let extra = polynomial(
                rng,
                Shape {
                    max_terms: shape.max_terms - f.len(),
                    ..shape
                }
                .at_least_one(),
            );
            let mut monomials = f.monomials().to_vec();
            monomials.extend(extra.monomials().iter().cloned());
            let g = TropicalPolynomial::from_monomials(shape.n, monomials).unwrap();
            (f, g)
        }
    }
}

impl Shape {
    fn at_least_one(self) -> Self {
        Shape {
            max_terms: self.max_terms.max(1),
            ..self
        }
    }
}
