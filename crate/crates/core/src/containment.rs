//! Containment of tropical hypersurfaces through inscribed Newton polyhedra.
//!
//! For each vertex `v` of `N(g)` we look for a vertex `u` of `N(f)` and a
//! scale `t > 0` such that `v + t·(N(f) - u)` lies in `N(g)`. Because the
//! recession ray of both polyhedra is the vertical one, only the images of
//! the vertices of `N(f)` need checking. Every constraint `<c, x> >= b` of
//! `N(g)` then reads
//!
//! ```text
//! (<c, v> - b) + t·(<c, u'> - <c, u>) >= 0      for every vertex u' of N(f)
//! ```
//!
//! which is affine in `t` and holds at `t -> 0+`, so the feasible scales
//! form an interval `(0, t_max]`. The pair is infeasible exactly when a
//! constraint tight at `v` strictly decreases along some `u' - u`, or an
//! equality of `N(g)` is not constant on the vertices of `N(f)`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{
    newton_polyhedron, solve_feasibility, FacetKind, LiftedPoint, LinearSystem, NewtonPolyhedron,
    Relation,
};
use crate::poly::{SlopePoint, TropicalPolynomial};
use crate::rational::{dot, Rational};

/// Supremum of the feasible homothety coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scale {
    Finite(Rational),
    Infinite,
}

impl Scale {
    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Scale::Finite(t) => Some(t),
            Scale::Infinite => None,
        }
    }

    /// `min(self, 1)`.
    pub fn clamped(&self) -> Rational {
        match self {
            Scale::Finite(t) if *t < Rational::one() => t.clone(),
            _ => Rational::one(),
        }
    }

    pub fn at_least(&self, t: &Rational) -> bool {
        match self {
            Scale::Finite(s) => s >= t,
            Scale::Infinite => true,
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scale::Finite(t) => write!(f, "{t}"),
            Scale::Infinite => write!(f, "inf"),
        }
    }
}

/// `v ∈ s(t·N(f)) ⊆ N(g)` for every `0 < t <= t_max`, with shift
/// `s = v - t·anchor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCertificate {
    pub vertex: LiftedPoint,
    pub anchor: LiftedPoint,
    pub t_max: Scale,
}

impl VertexCertificate {
    pub fn shift(&self, t: &Rational) -> Vec<Rational> {
        self.vertex
            .coords()
            .iter()
            .zip(self.anchor.coords())
            .map(|(v, u)| v - t * u)
            .collect()
    }

    /// Image of `p` under `x -> s + t·x`.
    pub fn image(&self, p: &LiftedPoint, t: &Rational) -> Vec<Rational> {
        self.shift(t)
            .into_iter()
            .zip(p.coords())
            .map(|(s, x)| s + t * x)
            .collect()
    }

    /// Re-checks the certificate by substitution at `t_max` (when finite)
    /// and at `min(t_max, 1) / 2`.
    pub fn verify(&self, f_vertices: &[LiftedPoint], g: &NewtonPolyhedron) -> bool {
        if g.vertex_index(&self.vertex).is_none() || !f_vertices.contains(&self.anchor) {
            return false;
        }
        let half = self.t_max.clamped() / Rational::from_integer(2.into());
        let mut scales = vec![half];
        if let Some(t) = self.t_max.as_finite() {
            if !t.is_positive() {
                return false;
            }
            scales.push(t.clone());
        }
        scales.iter().all(|t| {
            self.image(&self.anchor, t) == self.vertex.coords()
                && f_vertices.iter().all(|u| g.contains(&self.image(u, t)))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Contained,
    NotContained,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Contained => "contained",
            Verdict::NotContained => "not_contained",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSearch {
    Found(SlopePoint),
    NotFound,
    /// The search was not requested, or the verdict is `Contained`.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inscription {
    /// One certificate per vertex of `N(g)`, in canonical vertex order.
    Total(Vec<VertexCertificate>),
    /// The first vertex of `N(g)` with no feasible anchor.
    Fails(LiftedPoint),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentReport {
    pub n: usize,
    pub verdict: Verdict,
    pub certificates: Vec<VertexCertificate>,
    pub failing_vertex: Option<LiftedPoint>,
    /// Every failing vertex, filled only when requested.
    pub failing_vertices: Vec<LiftedPoint>,
    pub witness: WitnessSearch,
    pub t0: Option<Rational>,
}

impl ContainmentReport {
    pub fn is_contained(&self) -> bool {
        self.verdict == Verdict::Contained
    }

    pub fn witness_point(&self) -> Option<&SlopePoint> {
        match &self.witness {
            WitnessSearch::Found(x) => Some(x),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub witness: bool,
    pub all_failing: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            witness: true,
            all_failing: false,
        }
    }
}

/// Facet values of `N(g)` on the vertices of `N(f)`, precomputed once per
/// pair of polyhedra.
struct Inscriber<'a> {
    f_vertices: &'a [LiftedPoint],
    g: &'a NewtonPolyhedron,
    /// `values[c][j] = <normal_c, u_j>`
    values: Vec<Vec<Rational>>,
    min_value: Vec<Rational>,
    /// Some equality of `N(g)` is not constant on the vertices of `N(f)`.
    off_affine_hull: bool,
}

impl<'a> Inscriber<'a> {
    fn new(f_vertices: &'a [LiftedPoint], g: &'a NewtonPolyhedron) -> Self {
        let values: Vec<Vec<Rational>> = g
            .constraints()
            .iter()
            .map(|c| {
                f_vertices
                    .iter()
                    .map(|u| dot(c.normal_rational(), u.coords()))
                    .collect()
            })
            .collect();
        let min_value: Vec<Rational> = values
            .iter()
            .map(|row| row.iter().min().cloned().unwrap_or_else(Rational::zero))
            .collect();
        let off_affine_hull =
            g.constraints().iter().zip(&values).any(|(c, row)| {
                c.kind() == FacetKind::Equality && row.iter().any(|x| *x != row[0])
            });
        Self {
            f_vertices,
            g,
            values,
            min_value,
            off_affine_hull,
        }
    }

    fn feasible(&self, v: &LiftedPoint, u: usize) -> Option<Scale> {
        if self.off_affine_hull {
            return None;
        }
        let mut t_max = Scale::Infinite;
        for (ci, c) in self.g.constraints().iter().enumerate() {
            if c.kind() == FacetKind::Equality {
                continue;
            }
            // most negative rate of change over the images of N(f)'s vertices
            let slope = &self.min_value[ci] - &self.values[ci][u];
            if !slope.is_negative() {
                continue;
            }
            let slack = c.slack(v.coords());
            if slack.is_zero() {
                return None;
            }
            let bound = slack / -slope;
            if t_max.as_finite().is_none_or(|t| bound < *t) {
                t_max = Scale::Finite(bound);
            }
        }
        Some(t_max)
    }

    fn certificate(&self, v: &LiftedPoint) -> Option<VertexCertificate> {
        (0..self.f_vertices.len()).find_map(|u| {
            self.feasible(v, u).map(|t_max| VertexCertificate {
                vertex: v.clone(),
                anchor: self.f_vertices[u].clone(),
                t_max,
            })
        })
    }
}

fn check_same_dim(f: &NewtonPolyhedron, g: &NewtonPolyhedron) -> Result<()> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: f.n(),
        });
    }
    Ok(())
}

/// Largest feasible scale for anchoring vertex `u` of `N(f)` at vertex `v`
/// of `N(g)`, or `None` when no positive scale works.
pub fn anchor_feasible(
    f_vertices: &[LiftedPoint],
    g: &NewtonPolyhedron,
    v: &LiftedPoint,
    u: &LiftedPoint,
) -> Result<Option<Scale>> {
    if g.vertex_index(v).is_none() {
        return Err(Error::NotAVertex);
    }
    let Some(ui) = f_vertices.iter().position(|x| x == u) else {
        return Err(Error::NotAVertex);
    };
    if u.dim() != g.lifted_dim() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: u.dim().saturating_sub(1),
        });
    }
    Ok(Inscriber::new(f_vertices, g).feasible(v, ui))
}

/// First feasible anchor for `v`, trying the vertices of `N(f)` in
/// canonical order.
pub fn inscribe_at_vertex(
    f: &NewtonPolyhedron,
    g: &NewtonPolyhedron,
    v: &LiftedPoint,
) -> Result<Option<VertexCertificate>> {
    check_same_dim(f, g)?;
    if g.vertex_index(v).is_none() {
        return Err(Error::NotAVertex);
    }
    Ok(Inscriber::new(f.vertices(), g).certificate(v))
}

/// Every feasible `(anchor, t_max)` pair at `v`, by exhaustive search.
pub fn feasible_anchors(
    f: &NewtonPolyhedron,
    g: &NewtonPolyhedron,
    v: &LiftedPoint,
) -> Result<Vec<(LiftedPoint, Scale)>> {
    check_same_dim(f, g)?;
    if g.vertex_index(v).is_none() {
        return Err(Error::NotAVertex);
    }
    let ins = Inscriber::new(f.vertices(), g);
    Ok((0..f.vertices().len())
        .filter_map(|u| ins.feasible(v, u).map(|t| (f.vertices()[u].clone(), t)))
        .collect())
}

pub fn totally_inscribable(f: &NewtonPolyhedron, g: &NewtonPolyhedron) -> Result<Inscription> {
    check_same_dim(f, g)?;
    let ins = Inscriber::new(f.vertices(), g);
    let mut certs = Vec::with_capacity(g.vertices().len());
    for v in g.vertices() {
        match ins.certificate(v) {
            Some(c) => certs.push(c),
            None => return Ok(Inscription::Fails(v.clone())),
        }
    }
    Ok(Inscription::Total(certs))
}

/// A single scale feasible at every vertex: the smallest `min(t_max, 1)`.
/// Returns 1 for an empty list.
pub fn global_scale(certs: &[VertexCertificate]) -> Rational {
    certs
        .iter()
        .map(|c| c.t_max.clamped())
        .min()
        .unwrap_or_else(Rational::one)
}

/// Searches for `x ∈ Trop(f) \ Trop(g)` with `(x, 1)` minimized over `N(g)`
/// only at the failing vertex `v`.
///
/// Each bounded edge `(u1, u2)` of `N(f)` is tried in canonical order: the
/// functional `(x, 1)` must be strictly increasing along every edge of
/// `N(g)` leaving `v`, constant on `u1 u2` and nondecreasing along every
/// edge leaving `u1`. Local optimality along edges is global optimality on
/// these polyhedra, and any tie between two vertices of `N(f)` extends to a
/// tie along an edge of the minimizing face, so restricting to edges loses
/// no solutions. Every candidate is re-verified on the polynomials.
pub fn find_witness(
    f: &TropicalPolynomial,
    g: &TropicalPolynomial,
    v: &LiftedPoint,
) -> Result<WitnessSearch> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: f.n(),
        });
    }
    let nf = newton_polyhedron(f);
    let ng = newton_polyhedron(g);
    witness_with(f, g, &nf, &ng, v)
}

fn edge_functional(from: &LiftedPoint, to: &LiftedPoint, n: usize) -> (Vec<Rational>, Rational) {
    // <(x, 1), to - from> = <x, d> + d_vertical
    let d: Vec<Rational> = to
        .coords()
        .iter()
        .zip(from.coords())
        .map(|(a, b)| a - b)
        .collect();
    let coeffs = d[..n].to_vec();
    (coeffs, -d[n].clone())
}

fn witness_with(
    f: &TropicalPolynomial,
    g: &TropicalPolynomial,
    nf: &NewtonPolyhedron,
    ng: &NewtonPolyhedron,
    v: &LiftedPoint,
) -> Result<WitnessSearch> {
    let n = f.n();
    let Some(vi) = ng.vertex_index(v) else {
        return Err(Error::NotAVertex);
    };
    let mut base = LinearSystem::new(n);
    for w in ng.neighbors(vi) {
        let (coeffs, offset) = edge_functional(v, &ng.vertices()[w], n);
        base.add(coeffs, Relation::Gt, offset);
    }
    let fv = nf.vertices();
    let edges = nf.edges();
    let mut neighbors = vec![Vec::new(); fv.len()];
    for &(a, b) in &edges {
        neighbors[a].push(b);
        neighbors[b].push(a);
    }
    for &(a, b) in &edges {
        let mut system = base.clone();
        let (coeffs, offset) = edge_functional(&fv[a], &fv[b], n);
        system.add(coeffs, Relation::Eq, offset);
        for &w in &neighbors[a] {
            if w != b {
                let (coeffs, offset) = edge_functional(&fv[a], &fv[w], n);
                system.add(coeffs, Relation::Ge, offset);
            }
        }
        if let Some(x) = solve_feasibility(&system) {
            let x = SlopePoint::new(x);
            if f.on_hypersurface(&x)? && !g.on_hypersurface(&x)? {
                return Ok(WitnessSearch::Found(x));
            }
        }
    }
    Ok(WitnessSearch::NotFound)
}

pub fn check_containment(
    f: &TropicalPolynomial,
    g: &TropicalPolynomial,
) -> Result<ContainmentReport> {
    check_containment_with(f, g, CheckOptions::default())
}

pub fn check_containment_with(
    f: &TropicalPolynomial,
    g: &TropicalPolynomial,
    options: CheckOptions,
) -> Result<ContainmentReport> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: g.n(),
        });
    }
    let nf = newton_polyhedron(f);
    let ng = newton_polyhedron(g);
    let ins = Inscriber::new(nf.vertices(), &ng);

    let mut certificates = Vec::with_capacity(ng.vertices().len());
    let mut failing_vertices = Vec::new();
    for v in ng.vertices() {
        match ins.certificate(v) {
            Some(c) => certificates.push(c),
            None => {
                failing_vertices.push(v.clone());
                if !options.all_failing {
                    break;
                }
            }
        }
    }

    let mut report = ContainmentReport {
        n: f.n(),
        verdict: Verdict::Contained,
        certificates: Vec::new(),
        failing_vertex: None,
        failing_vertices: Vec::new(),
        witness: WitnessSearch::Skipped,
        t0: None,
    };
    match failing_vertices.first() {
        None => {
            report.t0 = Some(global_scale(&certificates));
            report.certificates = certificates;
        }
        Some(v) => {
            report.verdict = Verdict::NotContained;
            report.failing_vertex = Some(v.clone());
            if options.witness {
                report.witness = witness_with(f, g, &nf, &ng, v)?;
            }
            if options.all_failing {
                report.failing_vertices = failing_vertices;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn poly(src: &str, n: usize) -> TropicalPolynomial {
        TropicalPolynomial::parse(src, n).unwrap()
    }

    fn lp(xs: &[i64]) -> LiftedPoint {
        LiftedPoint::new(xs.iter().map(|&x| rat(x)).collect())
    }

    fn pair(f: &str, g: &str, n: usize) -> (NewtonPolyhedron, NewtonPolyhedron) {
        (
            newton_polyhedron(&poly(f, n)),
            newton_polyhedron(&poly(g, n)),
        )
    }

    const F1: &str = "min(0, x1)";
    const G1: &str = "min(0, x1, 1 + 2*x1)";

    #[test]
    fn anchor_feasible_examples() {
        let (nf, ng) = pair(F1, G1, 1);
        let t = |v: &[i64], u: &[i64]| anchor_feasible(nf.vertices(), &ng, &lp(v), &lp(u)).unwrap();
        assert_eq!(t(&[1, 0], &[1, 0]), Some(Scale::Finite(rat(1))));
        assert_eq!(t(&[1, 0], &[0, 0]), None);
        assert_eq!(t(&[2, 1], &[1, 0]), Some(Scale::Finite(rat(2))));
        assert_eq!(
            anchor_feasible(nf.vertices(), &ng, &lp(&[1, 1]), &lp(&[0, 0])),
            Err(Error::NotAVertex)
        );
        assert_eq!(
            anchor_feasible(nf.vertices(), &ng, &lp(&[1, 0]), &lp(&[2, 1])),
            Err(Error::NotAVertex)
        );
    }

    #[test]
    fn inscribe_at_vertex_examples() {
        let (nf, ng) = pair(F1, G1, 1);
        let c = inscribe_at_vertex(&nf, &ng, &lp(&[0, 0])).unwrap().unwrap();
        assert_eq!(c.anchor, lp(&[0, 0]));
        assert_eq!(c.t_max, Scale::Finite(rat(1)));
        assert!(c.verify(nf.vertices(), &ng));

        let (nf, ng) = pair("min(0, 1 + x1)", "min(0, x1)", 1);
        assert_eq!(inscribe_at_vertex(&nf, &ng, &lp(&[1, 0])).unwrap(), None);

        let (ng2, _) = pair(G1, G1, 1);
        for v in ng2.vertices() {
            let c = inscribe_at_vertex(&ng2, &ng2, v).unwrap().unwrap();
            assert_eq!(&c.anchor, v);
            assert!(c.t_max.at_least(&rat(1)));
        }
    }

    #[test]
    fn totally_inscribable_examples() {
        let (nf, ng) = pair(F1, G1, 1);
        let Inscription::Total(certs) = totally_inscribable(&nf, &ng).unwrap() else {
            panic!("expected inscription");
        };
        let vs: Vec<_> = certs.iter().map(|c| c.vertex.clone()).collect();
        assert_eq!(vs, vec![lp(&[0, 0]), lp(&[1, 0]), lp(&[2, 1])]);
        let ts: Vec<_> = certs.iter().map(|c| c.t_max.clone()).collect();
        assert_eq!(
            ts,
            vec![
                Scale::Finite(rat(1)),
                Scale::Finite(rat(1)),
                Scale::Finite(rat(2))
            ]
        );
        assert_eq!(global_scale(&certs), rat(1));

        let (nf, ng) = pair("min(0, 1 + x1)", "min(0, x1)", 1);
        assert_eq!(
            totally_inscribable(&nf, &ng).unwrap(),
            Inscription::Fails(lp(&[1, 0]))
        );

        let (nf, ng) = pair("min(0, x1, x2)", "min(0, x1, x2, x1 + x2)", 2);
        assert_eq!(
            totally_inscribable(&nf, &ng).unwrap(),
            Inscription::Fails(lp(&[1, 1, 0]))
        );
    }

    #[test]
    fn witness_examples() {
        let f = poly("min(0, 1 + x1)", 1);
        let g = poly("min(0, x1)", 1);
        assert_eq!(
            find_witness(&f, &g, &lp(&[1, 0])).unwrap(),
            WitnessSearch::Found(SlopePoint::new(vec![rat(-1)]))
        );
        let f = poly("min(0, x1, x2)", 2);
        let g = poly("min(0, x1, x2, x1 + x2)", 2);
        assert_eq!(
            find_witness(&f, &g, &lp(&[1, 1, 0])).unwrap(),
            WitnessSearch::Found(SlopePoint::new(vec![rat(-1), rat(-1)]))
        );
    }

    #[test]
    fn check_containment_examples() {
        let r = check_containment(&poly(F1, 1), &poly(G1, 1)).unwrap();
        assert!(r.is_contained());
        assert_eq!(r.t0, Some(rat(1)));

        let r = check_containment(&poly("min(0, 1 + x1)", 1), &poly(F1, 1)).unwrap();
        assert_eq!(r.verdict, Verdict::NotContained);
        assert_eq!(r.failing_vertex, Some(lp(&[1, 0])));
        assert_eq!(r.witness_point(), Some(&SlopePoint::new(vec![rat(-1)])));

        let g = poly(G1, 1);
        let r = check_containment(&g, &g).unwrap();
        assert!(r.is_contained());
        assert_eq!(r.t0, Some(rat(1)));

        assert!(matches!(
            check_containment(&poly(F1, 1), &poly(F1, 2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn single_monomial_cases() {
        let single = poly("min(3 + x1)", 1);
        let line = poly(F1, 1);
        // Trop(single) is empty
        let r = check_containment(&single, &line).unwrap();
        assert!(r.is_contained());
        let r = check_containment(&line, &single).unwrap();
        assert!(!r.is_contained());
        assert_eq!(r.witness_point(), Some(&SlopePoint::new(vec![rat(0)])));
        let r = check_containment(&single, &single).unwrap();
        assert_eq!(r.certificates[0].t_max, Scale::Infinite);
        assert_eq!(r.t0, Some(rat(1)));
    }

    #[test]
    fn all_failing_lists_every_vertex() {
        let f = poly("min(0, x1, x2)", 2);
        let g = poly("min(0, x1, x2, x1 + x2)", 2);
        let r = check_containment_with(
            &f,
            &g,
            CheckOptions {
                witness: false,
                all_failing: true,
            },
        )
        .unwrap();
        assert_eq!(r.witness, WitnessSearch::Skipped);
        assert!(!r.failing_vertices.is_empty());
        assert_eq!(r.failing_vertices.first(), r.failing_vertex.as_ref());
    }
}
