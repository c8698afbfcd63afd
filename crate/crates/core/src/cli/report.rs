//! JSON shapes written by the command-line tool. Rationals are strings
//! (`"p"` or `"p/q"`), unbounded scales are `"inf"`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::containment::{ContainmentReport, WitnessSearch};
use crate::geometry::{FacetKind, LiftedPoint, NewtonPolyhedron};
use crate::oracle::OracleVerdict;
use crate::poly::SlopePoint;
use crate::rational::{format_rational, Rational};

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(format_rational).collect()
}

fn point(p: &LiftedPoint) -> Vec<String> {
    strings(p.coords())
}

fn slope(x: &SlopePoint) -> Vec<String> {
    strings(x.coords())
}

#[derive(Debug, Serialize)]
pub struct CertificateJson {
    pub vertex: Vec<String>,
    pub anchor: Vec<String>,
    pub t_max: String,
}

#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub verdict: String,
    pub n: usize,
    pub certificates: Vec<CertificateJson>,
    pub t0: Option<String>,
    pub failing_vertex: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_vertices: Option<Vec<Vec<String>>>,
    pub witness: Option<Vec<String>>,
    pub witness_status: &'static str,
}

impl ReportJson {
    pub fn new(r: &ContainmentReport, list_all: bool) -> Self {
        let (witness, witness_status) = match &r.witness {
            WitnessSearch::Found(x) => (Some(slope(x)), "found"),
            WitnessSearch::NotFound => (None, "not_found"),
            WitnessSearch::Skipped => (None, "skipped"),
        };
        Self {
            verdict: r.verdict.to_string(),
            n: r.n,
            certificates: r
                .certificates
                .iter()
                .map(|c| CertificateJson {
                    vertex: point(&c.vertex),
                    anchor: point(&c.anchor),
                    t_max: c.t_max.to_string(),
                })
                .collect(),
            t0: r.t0.as_ref().map(format_rational),
            failing_vertex: r.failing_vertex.as_ref().map(point),
            failing_vertices: list_all.then(|| r.failing_vertices.iter().map(point).collect()),
            witness,
            witness_status,
        }
    }
}

fn integer_value(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => v.into(),
        None => x.to_string().into(),
    }
}

#[derive(Debug, Serialize)]
pub struct FacetJson {
    pub normal: Vec<serde_json::Value>,
    pub offset: String,
    pub kind: &'static str,
}

#[derive(Debug, Serialize)]
pub struct NewtonJson {
    pub n: usize,
    pub vertices: Vec<Vec<String>>,
    pub facets: Vec<FacetJson>,
}

impl NewtonJson {
    pub fn new(p: &NewtonPolyhedron) -> Self {
        Self {
            n: p.n(),
            vertices: p.vertices().iter().map(point).collect(),
            facets: p
                .constraints()
                .iter()
                .map(|c| FacetJson {
                    normal: c.normal().iter().map(integer_value).collect(),
                    offset: format_rational(c.offset()),
                    kind: match c.kind() {
                        FacetKind::Equality => "eq",
                        FacetKind::Inequality => "ineq",
                    },
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OracleJson {
    pub verdict: &'static str,
    pub exact: bool,
    pub counterexample: Option<Vec<String>>,
    pub samples: usize,
    pub seed: u64,
}

impl OracleJson {
    pub fn new(v: &OracleVerdict, n: usize, samples: usize, seed: u64) -> Self {
        let (verdict, counterexample) = match v {
            OracleVerdict::AgreesContained => ("agrees_contained", None),
            OracleVerdict::Counterexample(x) => ("counterexample", Some(slope(x))),
        };
        Self {
            verdict,
            exact: n == 1,
            counterexample,
            samples,
            seed,
        }
    }
}
