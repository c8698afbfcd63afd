mod common;

use num_traits::{One, Zero};
use proptest::prelude::*;
use tropcon::{
    breakpoints_1d, check_containment, newton_polyhedron, oracle_check, solve_feasibility,
    ExponentMode, LinearSystem, Monomial, NewtonPolyhedron, Rational, RawMonomial, Relation,
    SlopePoint, TropicalPolynomial,
};

type Term = (Vec<i64>, i64, i64);

fn terms(n: usize, max_k: usize, max_exp: i64) -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n), -24i64..=24, 1i64..=6),
        1..=max_k,
    )
}

fn build(n: usize, terms: &[Term]) -> TropicalPolynomial {
    let raw: Vec<RawMonomial> = terms
        .iter()
        .map(|(e, p, q)| RawMonomial::finite(e, Rational::new((*p).into(), (*q).into())))
        .collect();
    TropicalPolynomial::canonicalize(n, &raw, ExponentMode::Natural).unwrap()
}

fn poly(n: usize, max_k: usize, max_exp: i64) -> impl Strategy<Value = TropicalPolynomial> {
    terms(n, max_k, max_exp).prop_map(move |t| build(n, &t))
}

fn point(n: usize) -> impl Strategy<Value = SlopePoint> {
    prop::collection::vec((-12i64..=12, 1i64..=4), n).prop_map(|v| {
        SlopePoint::new(
            v.into_iter()
                .map(|(p, q)| Rational::new(p.into(), q.into()))
                .collect(),
        )
    })
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Tie among the vertices of `N(f)` under the functional `(x, 1)`.
fn vertex_tie(p: &NewtonPolyhedron, x: &SlopePoint) -> bool {
    let values: Vec<Rational> = p
        .vertices()
        .iter()
        .map(|v| {
            let c = v.coords();
            x.coords()
                .iter()
                .zip(c)
                .map(|(a, b)| a * b)
                .sum::<Rational>()
                + c.last().unwrap()
        })
        .collect();
    let min = values.iter().min().unwrap();
    values.iter().filter(|v| *v == min).count() >= 2
}

/// Is `target` in the convex hull of `points` plus the upward vertical ray?
fn in_hull(points: &[&[Rational]], target: &[Rational]) -> bool {
    let d = target.len();
    let k = points.len();
    // variables: lambda_1..lambda_k, mu
    let mut s = LinearSystem::new(k + 1);
    for j in 0..d {
        let mut row: Vec<Rational> = points.iter().map(|p| p[j].clone()).collect();
        row.push(if j + 1 == d {
            Rational::one()
        } else {
            Rational::zero()
        });
        s.add(row, Relation::Eq, target[j].clone());
    }
    let mut sum = vec![Rational::one(); k];
    sum.push(Rational::zero());
    s.add(sum, Relation::Eq, Rational::one());
    for i in 0..=k {
        let mut e = vec![Rational::zero(); k + 1];
        e[i] = Rational::one();
        s.add(e, Relation::Ge, Rational::zero());
    }
    solve_feasibility(&s).is_some()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 96,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn canonical_form_round_trips(f in poly(2, 6, 4)) {
        let again = TropicalPolynomial::parse(&f.to_string(), 2).unwrap();
        prop_assert_eq!(&again, &f);
        let json = f.to_json();
        prop_assert_eq!(TropicalPolynomial::from_json(&json, ExponentMode::Natural).unwrap(), f);
    }

    #[test]
    fn canonical_form_ignores_input_order(t in terms(3, 7, 2).prop_shuffle(), u in terms(3, 7, 2)) {
        let mut reversed = t.clone();
        reversed.reverse();
        prop_assert_eq!(build(3, &t), build(3, &reversed));
        let mut joined = t.clone();
        joined.extend(u.iter().cloned());
        let mut rejoined = u;
        rejoined.extend(t);
        prop_assert_eq!(build(3, &joined), build(3, &rejoined));
    }

    #[test]
    fn monomial_tie_equals_vertex_tie(f in poly(2, 7, 3), x in point(2)) {
        let p = newton_polyhedron(&f);
        prop_assert_eq!(f.on_hypersurface(&x).unwrap(), vertex_tie(&p, &x));
    }

    #[test]
    fn hypersurface_is_translation_invariant(
        f in poly(2, 6, 3),
        x in point(2),
        e in prop::collection::vec(0i64..=3, 2),
        c in -10i64..=10,
    ) {
        let g = f.translate_by_monomial(&Monomial::new(e, int(c))).unwrap();
        prop_assert_eq!(f.on_hypersurface(&x).unwrap(), g.on_hypersurface(&x).unwrap());
    }

    #[test]
    fn feasibility_is_sound_and_complete_on_a_grid(
        rows in prop::collection::vec(
            (prop::collection::vec(-3i64..=3, 2), 0usize..3, -6i64..=6),
            1..6,
        )
    ) {
        let mut s = LinearSystem::new(2);
        for (coeffs, rel, offset) in &rows {
            let rel = [Relation::Ge, Relation::Gt, Relation::Eq][*rel];
            s.add(coeffs.iter().map(|&a| int(a)).collect(), rel, int(*offset));
        }
        match solve_feasibility(&s) {
            Some(x) => prop_assert!(s.is_satisfied_by(&x)),
            None => {
                for a in -48..=48 {
                    for b in -48..=48 {
                        let x = [Rational::new(a.into(), 4.into()), Rational::new(b.into(), 4.into())];
                        prop_assert!(!s.is_satisfied_by(&x), "missed {:?}", x);
                    }
                }
            }
        }
    }

    #[test]
    fn certificates_verify_on_products(f in poly(2, 4, 2), h in poly(2, 2, 2)) {
        let g = common::product(&f, &h);
        let report = check_containment(&f, &g).unwrap();
        prop_assert!(report.is_contained());
        let nf = newton_polyhedron(&f);
        let ng = newton_polyhedron(&g);
        prop_assert_eq!(report.certificates.len(), ng.vertices().len());
        for cert in &report.certificates {
            prop_assert!(cert.verify(nf.vertices(), &ng));
            prop_assert_eq!(cert.image(&cert.anchor, &Rational::one()), cert.vertex.coords().to_vec());
        }
    }

    #[test]
    fn one_variable_verdict_matches_breakpoints(f in poly(1, 6, 8), g in poly(1, 6, 8)) {
        let report = check_containment(&f, &g).unwrap();
        let exact = breakpoints_1d(&f).unwrap().is_subset_of(&breakpoints_1d(&g).unwrap());
        prop_assert_eq!(report.is_contained(), exact);
        if let Some(x) = report.witness_point() {
            prop_assert!(f.on_hypersurface(x).unwrap());
            prop_assert!(!g.on_hypersurface(x).unwrap());
        }
    }

    #[test]
    fn oracle_counterexample_implies_not_contained(f in poly(2, 5, 3), g in poly(2, 5, 3), seed in any::<u64>()) {
        let first = oracle_check(&f, &g, 20, seed).unwrap();
        prop_assert_eq!(&first, &oracle_check(&f, &g, 20, seed).unwrap());
        if let tropcon::OracleVerdict::Counterexample(x) = first {
            prop_assert!(f.on_hypersurface(&x).unwrap() && !g.on_hypersurface(&x).unwrap());
            prop_assert!(!check_containment(&f, &g).unwrap().is_contained());
        }
    }

    #[test]
    fn vertices_are_exactly_the_extreme_apexes(f in poly(2, 6, 3)) {
        let p = newton_polyhedron(&f);
        let apexes = p.apexes();
        for (i, a) in apexes.iter().enumerate() {
            let others: Vec<&[Rational]> = apexes
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, b)| b.coords())
                .collect();
            let redundant = !others.is_empty() && in_hull(&others, a.coords());
            prop_assert_eq!(p.vertex_index(a).is_some(), !redundant);
        }
    }
}

/// The scale `t0` is claimed to inscribe a copy of `N(f)` at every point of
/// `N(g)`, not only at vertices. Discrepancies are printed, not failed.
#[test]
fn exploratory_scale_at_arbitrary_points() {
    use rand::Rng;
    let mut rng = common::rng(0x7e57);
    let shape = common::Shape {
        n: 2,
        max_terms: 4,
        max_exp: 2,
        max_den: 4,
    };
    let (mut tried, mut discrepancies) = (0, 0);
    for _ in 0..60 {
        let f = common::polynomial_with(&mut rng, shape, 2);
        let h = common::polynomial(
            &mut rng,
            common::Shape {
                max_terms: 2,
                ..shape
            },
        );
        let g = common::product(&f, &h);
        let report = check_containment(&f, &g).unwrap();
        let Some(t0) = report.t0.clone() else {
            continue;
        };
        let nf = newton_polyhedron(&f);
        let ng = newton_polyhedron(&g);
        let gv = ng.vertices();
        let d = ng.lifted_dim();

        let weights: Vec<Rational> = gv.iter().map(|_| int(rng.random_range(0..=4))).collect();
        let total: Rational = weights.iter().sum();
        if total.is_zero() {
            continue;
        }
        let mut p: Vec<Rational> = (0..d)
            .map(|j| {
                gv.iter()
                    .zip(&weights)
                    .map(|(v, w)| &v.coords()[j] * w)
                    .sum::<Rational>()
                    / &total
            })
            .collect();
        p[d - 1] += int(rng.random_range(0..=2));
        tried += 1;

        // find q in N(f) with p + t0 (u - q) in N(g) for every vertex u of N(f)
        let fv = nf.vertices();
        let k = fv.len();
        let mut s = LinearSystem::new(k + 1);
        for c in ng.constraints() {
            let normal = c.normal_rational();
            let dot = |x: &[Rational]| x.iter().zip(normal).map(|(a, b)| a * b).sum::<Rational>();
            let mut row: Vec<Rational> = fv.iter().map(|u| -(&t0 * dot(u.coords()))).collect();
            row.push(-(&t0 * &normal[d - 1]));
            for u in fv {
                let constant = dot(&p) + &t0 * dot(u.coords());
                let rel = if c.is_equality() {
                    Relation::Eq
                } else {
                    Relation::Ge
                };
                s.add(row.clone(), rel, c.offset() - constant);
            }
        }
        let mut sum = vec![Rational::one(); k];
        sum.push(Rational::zero());
        s.add(sum, Relation::Eq, Rational::one());
        for i in 0..=k {
            let mut e = vec![Rational::zero(); k + 1];
            e[i] = Rational::one();
            s.add(e, Relation::Ge, Rational::zero());
        }
        if solve_feasibility(&s).is_none() {
            discrepancies += 1;
            println!(
                "no inscription at t0 = {} for f = {}, g = {}, p = {:?}",
                t0, f, g, p
            );
        }
    }
    println!(
        "arbitrary-point inscription: {} points, {} discrepancies",
        tried, discrepancies
    );
}
