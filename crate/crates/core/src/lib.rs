//! Exact containment test for tropical hypersurfaces.
//!
//! For min-plus polynomials `f`, `g` in `n` variables, `Trop(f) ⊆ Trop(g)`
//! holds exactly when the Newton polyhedron of `f` is totally inscribable
//! in that of `g`: for every vertex `v` of `N(g)` some shifted, scaled copy
//! `s + t·N(f)` sits inside `N(g)` and passes through `v`. This crate
//! decides that condition in exact rational arithmetic, returns per-vertex
//! certificates when it holds and a point of `Trop(f) \ Trop(g)` when it
//! does not.
//!
//! ```
//! use tropcon::{check_containment, TropicalPolynomial, Verdict};
//!
//! let f = TropicalPolynomial::parse("min(0, x1)", 1).unwrap();
//! let g = TropicalPolynomial::parse("min(0, x1, 1 + 2*x1)", 1).unwrap();
//! let report = check_containment(&f, &g).unwrap();
//! assert_eq!(report.verdict, Verdict::Contained);
//! ```

pub mod cli;
pub mod containment;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod poly;
pub mod rational;

pub use containment::{
    anchor_feasible, check_containment, check_containment_with, find_witness, global_scale,
    inscribe_at_vertex, totally_inscribable, CheckOptions, ContainmentReport, Inscription, Scale,
    Verdict, VertexCertificate, WitnessSearch,
};
pub use error::{Error, Result};
pub use geometry::{
    newton_polyhedron, solve_feasibility, Facet, FacetKind, LiftedPoint, LinearSystem,
    NewtonPolyhedron, Relation, SupportValue,
};
pub use oracle::{
    breakpoints_1d, cell_points, oracle_check, BreakpointSet, CellSample, OracleVerdict,
};
pub use poly::{ExponentMode, Monomial, RawMonomial, SlopePoint, TropicalPolynomial};
pub use rational::Rational;
