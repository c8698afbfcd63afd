use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::cone;
use super::linalg::{primitive_direction, rank, rref, to_rational};
use crate::error::{Error, Result};
use crate::poly::TropicalPolynomial;
use crate::rational::{dot, Rational};

/// A point of `R^{n+1}`: exponent coordinates followed by the vertical one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiftedPoint(Vec<Rational>);

impl LiftedPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn vertical(&self) -> &Rational {
        self.0
            .last()
            .expect("lifted points have at least one coordinate")
    }

    pub fn translated(&self, by: &[Rational]) -> Self {
        Self(self.0.iter().zip(by).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for LiftedPoint {
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

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FacetKind {
    /// `<normal, x> = offset`
    Equality,
    /// `<normal, x> >= offset`
    Inequality,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    normal: Vec<BigInt>,
    normal_q: Vec<Rational>,
    offset: Rational,
    kind: FacetKind,
}

impl Facet {
    fn new(normal: Vec<BigInt>, offset: Rational, kind: FacetKind) -> Self {
        let normal_q = to_rational(&normal);
        Self {
            normal,
            normal_q,
            offset,
            kind,
        }
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn normal_rational(&self) -> &[Rational] {
        &self.normal_q
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn kind(&self) -> FacetKind {
        self.kind
    }

    pub fn is_equality(&self) -> bool {
        self.kind == FacetKind::Equality
    }

    /// `<normal, p> - offset`.
    pub fn slack(&self, p: &[Rational]) -> Rational {
        dot(&self.normal_q, p) - &self.offset
    }

    pub fn satisfied_by(&self, p: &[Rational]) -> bool {
        let s = self.slack(p);
        match self.kind {
            FacetKind::Equality => s.is_zero(),
            FacetKind::Inequality => !s.is_negative(),
        }
    }

    pub fn is_tight_at(&self, p: &[Rational]) -> bool {
        self.slack(p).is_zero()
    }

    fn sort_key(&self) -> (FacetKind, &[BigInt], &Rational) {
        (self.kind, &self.normal, &self.offset)
    }
}

impl PartialOrd for Facet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Facet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// Value of a linear functional minimized over a polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportValue {
    Finite(Rational),
    NegativeInfinity,
}

/// The convex hull of the upward vertical rays at the lifted monomials of a
/// polynomial, held in both descriptions.
///
/// Constraints are canonical: equalities first, then inequalities, each
/// sorted by (normal, offset); normals are primitive integer vectors and
/// inequality normals are reduced modulo the equalities. Vertices are sorted
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    n: usize,
    apexes: Vec<LiftedPoint>,
    vertices: Vec<LiftedPoint>,
    constraints: Vec<Facet>,
}

impl NewtonPolyhedron {
    pub fn new(f: &TropicalPolynomial) -> Self {
        let n = f.n();
        let apexes: Vec<LiftedPoint> = f.apexes().into_iter().map(LiftedPoint::new).collect();
        let constraints = facet_description(n, &apexes);
        let mut poly = Self {
            n,
            apexes,
            vertices: Vec::new(),
            constraints,
        };
        let mut vertices: Vec<LiftedPoint> = poly
            .apexes
            .iter()
            .filter(|a| poly.tight_rank(a.coords()) == n + 1)
            .cloned()
            .collect();
        vertices.sort();
        poly.vertices = vertices;
        poly
    }

    /// Number of variables of the polynomial; the lifted dimension is `n + 1`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lifted_dim(&self) -> usize {
        self.n + 1
    }

    pub fn apexes(&self) -> &[LiftedPoint] {
        &self.apexes
    }

    pub fn vertices(&self) -> &[LiftedPoint] {
        &self.vertices
    }

    pub fn constraints(&self) -> &[Facet] {
        &self.constraints
    }

    pub fn equalities(&self) -> impl Iterator<Item = &Facet> {
        self.constraints.iter().filter(|c| c.is_equality())
    }

    pub fn inequalities(&self) -> impl Iterator<Item = &Facet> {
        self.constraints.iter().filter(|c| !c.is_equality())
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equalities().next().is_none()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.constraints.iter().all(|c| c.satisfied_by(p))
    }

    pub fn vertex_index(&self, v: &LiftedPoint) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn tight_constraints(&self, p: &[Rational]) -> Vec<usize> {
        self.constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_tight_at(p))
            .map(|(i, _)| i)
            .collect()
    }

    /// Rank of the normals of the constraints tight at `p`.
    pub fn tight_rank(&self, p: &[Rational]) -> usize {
        let rows: Vec<Vec<Rational>> = self
            .tight_constraints(p)
            .into_iter()
            .map(|i| self.constraints[i].normal_q.clone())
            .collect();
        rank(&rows)
    }

    /// Indices of the equalities and of the inequalities tight at vertex `v`.
    pub fn active_constraints(&self, v: &LiftedPoint) -> Result<Vec<usize>> {
        if self.vertex_index(v).is_none() {
            return Err(Error::NotAVertex);
        }
        Ok(self.tight_constraints(v.coords()))
    }

    /// `min <c, p>` over the polyhedron.
    pub fn support_min(&self, c: &[Rational]) -> SupportValue {
        debug_assert_eq!(c.len(), self.lifted_dim());
        if c[self.n].is_negative() {
            return SupportValue::NegativeInfinity;
        }
        let best = self
            .vertices
            .iter()
            .map(|v| dot(c, v.coords()))
            .min()
            .expect("Newton polyhedra have at least one vertex");
        SupportValue::Finite(best)
    }

    /// Pairs `(i, j)`, `i < j`, of vertex indices spanning a bounded edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let tight: Vec<Vec<usize>> = self
            .vertices
            .iter()
            .map(|v| self.tight_constraints(v.coords()))
            .collect();
        let mut out = Vec::new();
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                if self.spans_edge(&tight[i], &tight[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Vertex indices adjacent to vertex `i` along a bounded edge.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let ti = self.tight_constraints(self.vertices[i].coords());
        (0..self.vertices.len())
            .filter(|&j| {
                j != i && self.spans_edge(&ti, &self.tight_constraints(self.vertices[j].coords()))
            })
            .collect()
    }

    fn spans_edge(&self, a: &[usize], b: &[usize]) -> bool {
        let rows: Vec<Vec<Rational>> = a
            .iter()
            .filter(|k| b.contains(k))
            .map(|&k| self.constraints[k].normal_q.clone())
            .collect();
        rows.len() >= self.n && rank(&rows) == self.n
    }
}

/// Builds the canonical constraint list of `conv(apexes) + R_{>=0} e_vertical`.
fn facet_description(n: usize, apexes: &[LiftedPoint]) -> Vec<Facet> {
    let d = n + 2;
    // homogenized generators (1, apex) scaled to integers, plus (0, e_vertical)
    let mut generators: Vec<Vec<BigInt>> = Vec::with_capacity(apexes.len() + 1);
    let mut up = vec![BigInt::zero(); d];
    up[d - 1] = BigInt::from(1);
    generators.push(up);
    for a in apexes {
        let homog: Vec<Rational> = std::iter::once(Rational::from_integer(1.into()))
            .chain(a.coords().iter().cloned())
            .collect();
        generators.push(primitive_direction(&homog).0);
    }
    let polar = cone::polar(d, &generators);

    // A polar vector (y0, c) encodes <c, x> >= -y0. Rows are kept as
    // (c, -y0) so that row reduction acts on (normal | offset).
    let as_row = |y: &Vec<BigInt>| -> Vec<Rational> {
        y[1..]
            .iter()
            .cloned()
            .map(Rational::from_integer)
            .chain(std::iter::once(Rational::from_integer(-&y[0])))
            .collect()
    };

    let (eq_rows, pivots) = rref(polar.lineality.iter().map(as_row).collect());
    let mut out = Vec::new();
    for row in &eq_rows {
        out.push(row_to_facet(row, n, FacetKind::Equality));
    }
    for y in &polar.rays {
        let mut row = as_row(y);
        for (e, &p) in eq_rows.iter().zip(&pivots) {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, ex) in row.iter_mut().zip(e) {
                *x -= &factor * ex;
            }
        }
        if row[..=n].iter().all(Zero::is_zero) {
            // the face at infinity, 1 >= 0
            continue;
        }
        out.push(row_to_facet(&row, n, FacetKind::Inequality));
    }
    out.sort();
    out.dedup();
    out
}

fn row_to_facet(row: &[Rational], n: usize, kind: FacetKind) -> Facet {
    let (mut normal, mut scale) = primitive_direction(&row[..=n]);
    if kind == FacetKind::Equality {
        if let Some(lead) = normal.iter().find(|x| !x.is_zero()) {
            if lead.is_negative() {
                normal.iter_mut().for_each(|x| *x = -&*x);
                scale = -scale;
            }
        }
    }
    let offset = &row[n + 1] / &scale;
    Facet::new(normal, offset, kind)
}
