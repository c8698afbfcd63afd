//! Exact polyhedral kernel: Newton polyhedra in double description and a
//! small linear feasibility solver.

mod cone;
mod feasibility;
pub mod linalg;
mod newton;

pub use feasibility::{solve_feasibility, LinearConstraint, LinearSystem, Relation};
pub use newton::{Facet, FacetKind, LiftedPoint, NewtonPolyhedron, SupportValue};

use crate::poly::TropicalPolynomial;

pub fn newton_polyhedron(f: &TropicalPolynomial) -> NewtonPolyhedron {
    NewtonPolyhedron::new(f)
}
