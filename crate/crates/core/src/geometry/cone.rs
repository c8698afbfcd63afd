//! Double description for the dual of a finitely generated cone.
//!
//! Given generators `g_1, ..., g_m` of a cone `C` in `Z^d`, computes the
//! polar cone `{y : <y, g_i> >= 0}` as a minimal set of extreme rays plus
//! a basis of its lineality space. Extreme rays are the facet normals of
//! `C`; lineality vectors are the equations of its linear hull.
//!
//! Constraints are added one at a time starting from the whole space
//! (empty ray set, lineality = identity). Adjacency is decided with the
//! combinatorial zero-set test, which is exact because every intermediate
//! ray set is minimal.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg::{int_dot, make_primitive};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn insert(&mut self, i: usize) {
        let w = i / 64;
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (i % 64);
    }

    fn full(len: usize) -> Self {
        let mut s = Self::default();
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    fn intersect(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset_of(&self, other: &Self) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.0.get(i).copied().unwrap_or(0) == 0)
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<BigInt>,
    zeros: ZeroSet,
}

#[derive(Clone, Debug, Default)]
pub struct PolarCone {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

/// `w = alpha * a - beta * b`, made primitive.
fn combine(alpha: &BigInt, a: &[BigInt], beta: &BigInt, b: &[BigInt]) -> Vec<BigInt> {
    let mut w: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| alpha * x - beta * y).collect();
    make_primitive(&mut w);
    w
}

pub fn polar(dim: usize, generators: &[Vec<BigInt>]) -> PolarCone {
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (idx, a) in generators.iter().enumerate() {
        debug_assert_eq!(a.len(), dim);
        if let Some(pos) = lineality.iter().position(|l| !int_dot(a, l).is_zero()) {
            let mut l0 = lineality.remove(pos);
            let mut al0 = int_dot(a, &l0);
            if al0.is_negative() {
                l0.iter_mut().for_each(|x| *x = -&*x);
                al0 = -al0;
            }
            for l in lineality.iter_mut() {
                let al = int_dot(a, l);
                if !al.is_zero() {
                    *l = combine(&al0, l, &al, &l0);
                }
            }
            for r in rays.iter_mut() {
                let ar = int_dot(a, &r.v);
                if !ar.is_zero() {
                    r.v = combine(&al0, &r.v, &ar, &l0);
                }
                r.zeros.insert(idx);
            }
            rays.push(Ray {
                v: l0,
                zeros: ZeroSet::full(idx),
            });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| int_dot(a, &r.v)).collect();
        let pointed_dim = dim - lineality.len();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        for (r, s) in rays.iter().zip(&values) {
            if s.is_zero() {
                let mut r = r.clone();
                r.zeros.insert(idx);
                next.push(r);
            } else if s.is_positive() {
                next.push(r.clone());
            }
        }
        for (i, (p, sp)) in rays.iter().zip(&values).enumerate() {
            if !sp.is_positive() {
                continue;
            }
            for (j, (q, sq)) in rays.iter().zip(&values).enumerate() {
                if !sq.is_negative() {
                    continue;
                }
                let common = p.zeros.intersect(&q.zeros);
                if common.count() + 2 < pointed_dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == i || k == j || !common.is_subset_of(&r.zeros));
                if !adjacent {
                    continue;
                }
                // sp > 0 > sq, so both multipliers are positive.
                let v = combine(sp, &q.v, sq, &p.v);
                let mut zeros = common;
                zeros.insert(idx);
                next.push(Ray { v, zeros });
            }
        }
        rays = next;
    }

    PolarCone {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality,
    }
}
