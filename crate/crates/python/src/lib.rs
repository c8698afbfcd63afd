//! Python bindings: polynomials, Newton polyhedra, containment reports and
//! the sampling oracle. Rationals cross the boundary as `fractions.Fraction`.

use pyo3::create_exception;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyFloat, PyTuple};

use tropcon::cli::parse_input;
use tropcon::rational::{format_rational, parse_rational};
use tropcon::{
    ContainmentReport, ExponentMode, FacetKind, LiftedPoint, Monomial, OracleVerdict, Rational,
    Scale, SlopePoint, TropicalPolynomial, WitnessSearch,
};

create_exception!(tropcon, TropconError, PyValueError);

fn to_py(err: tropcon::Error) -> PyErr {
    TropconError::new_err(err.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((format_rational(q),))
}

fn fractions<'py>(py: Python<'py>, qs: &[Rational]) -> PyResult<Bound<'py, PyTuple>> {
    let items = qs
        .iter()
        .map(|q| fraction(py, q))
        .collect::<PyResult<Vec<_>>>()?;
    PyTuple::new(py, items)
}

/// Accepts `int`, `fractions.Fraction` or a string such as `"-3/4"`.
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if obj.is_instance_of::<PyFloat>() {
        return Err(PyTypeError::new_err(
            "floats are not exact; pass an int, Fraction or string",
        ));
    }
    let text = obj.str()?.to_string();
    parse_rational(&text).ok_or_else(|| PyValueError::new_err(format!("not a rational: {text}")))
}

fn point(coords: Vec<Bound<'_, PyAny>>) -> PyResult<SlopePoint> {
    Ok(SlopePoint::new(
        coords.iter().map(rational).collect::<PyResult<_>>()?,
    ))
}

fn mode(relaxed: bool) -> ExponentMode {
    if relaxed {
        ExponentMode::Integer
    } else {
        ExponentMode::Natural
    }
}

#[pyclass(
    name = "Polynomial",
    module = "tropcon",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
pub struct PyPolynomial {
    inner: TropicalPolynomial,
}

#[pymethods]
impl PyPolynomial {
    /// Parses the text grammar or, when the text starts with `{`, the
    /// structured JSON format.
    #[new]
    #[pyo3(signature = (text, n=None, relaxed=false))]
    fn new(text: &str, n: Option<usize>, relaxed: bool) -> PyResult<Self> {
        let inner = parse_input(text, n, mode(relaxed)).map_err(to_py)?;
        Ok(Self { inner })
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs.
    #[staticmethod]
    #[pyo3(signature = (n, terms, relaxed=false))]
    fn from_terms(
        n: usize,
        terms: Vec<(Bound<'_, PyAny>, Vec<i64>)>,
        relaxed: bool,
    ) -> PyResult<Self> {
        let monomials = terms
            .into_iter()
            .map(|(c, e)| Ok(Monomial::new(e, rational(&c)?)))
            .collect::<PyResult<Vec<_>>>()?;
        let inner = TropicalPolynomial::from_monomials_with_mode(n, monomials, mode(relaxed))
            .map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    /// Canonical `(coefficient, exponents)` pairs.
    #[getter]
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Bound<'py, PyAny>, Vec<i64>)>> {
        self.inner
            .monomials()
            .iter()
            .map(|m| Ok((fraction(py, m.coefficient())?, m.exponents().to_vec())))
            .collect()
    }

    fn evaluate<'py>(
        &self,
        py: Python<'py>,
        x: Vec<Bound<'py, PyAny>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let value = self.inner.evaluate(&point(x)?).map_err(to_py)?.value;
        fraction(py, &value)
    }

    fn on_hypersurface(&self, x: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
        self.inner.on_hypersurface(&point(x)?).map_err(to_py)
    }

    /// Multiplies by the monomial `coefficient + <exponents, x>`.
    fn translate(&self, coefficient: Bound<'_, PyAny>, exponents: Vec<i64>) -> PyResult<Self> {
        let m = Monomial::new(exponents, rational(&coefficient)?);
        let inner = self.inner.translate_by_monomial(&m).map_err(to_py)?;
        Ok(Self { inner })
    }

    fn newton(&self) -> PyNewton {
        PyNewton::from(&self.inner)
    }

    fn breakpoints<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyTuple>> {
        let set = tropcon::breakpoints_1d(&self.inner).map_err(to_py)?;
        fractions(py, set.points())
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Polynomial({:?}, n={})",
            self.inner.to_string(),
            self.inner.n()
        )
    }
}

#[pyclass(name = "Facet", module = "tropcon", frozen, get_all)]
pub struct PyFacet {
    normal: Vec<i64>,
    offset: Py<PyAny>,
    /// `"eq"` or `"ineq"`
    kind: &'static str,
}

#[pymethods]
impl PyFacet {
    fn __repr__(&self, py: Python<'_>) -> String {
        format!(
            "Facet(normal={:?}, offset={}, kind={:?})",
            self.normal,
            self.offset.bind(py),
            self.kind
        )
    }
}

#[pyclass(name = "NewtonPolyhedron", module = "tropcon", frozen)]
pub struct PyNewton {
    inner: tropcon::NewtonPolyhedron,
}

impl From<&TropicalPolynomial> for PyNewton {
    fn from(f: &TropicalPolynomial) -> Self {
        Self {
            inner: tropcon::newton_polyhedron(f),
        }
    }
}

fn lifted<'py>(py: Python<'py>, p: &LiftedPoint) -> PyResult<Bound<'py, PyTuple>> {
    fractions(py, p.coords())
}

#[pymethods]
impl PyNewton {
    #[getter]
    fn vertices<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyTuple>>> {
        self.inner
            .vertices()
            .iter()
            .map(|v| lifted(py, v))
            .collect()
    }

    #[getter]
    fn facets(&self, py: Python<'_>) -> PyResult<Vec<PyFacet>> {
        self.inner
            .constraints()
            .iter()
            .map(|c| {
                let normal = c
                    .normal()
                    .iter()
                    .map(|a| {
                        i64::try_from(a)
                            .map_err(|_| PyValueError::new_err("normal entry overflows i64"))
                    })
                    .collect::<PyResult<_>>()?;
                Ok(PyFacet {
                    normal,
                    offset: fraction(py, c.offset())?.unbind(),
                    kind: match c.kind() {
                        FacetKind::Equality => "eq",
                        FacetKind::Inequality => "ineq",
                    },
                })
            })
            .collect()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn is_full_dimensional(&self) -> bool {
        self.inner.is_full_dimensional()
    }

    fn contains(&self, p: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
        let p: Vec<Rational> = p.iter().map(rational).collect::<PyResult<_>>()?;
        if p.len() != self.inner.lifted_dim() {
            return Err(PyValueError::new_err(format!(
                "expected {} coordinates",
                self.inner.lifted_dim()
            )));
        }
        Ok(self.inner.contains(&p))
    }
}

#[pyclass(name = "Certificate", module = "tropcon", frozen, get_all)]
pub struct PyCertificate {
    vertex: Py<PyTuple>,
    anchor: Py<PyTuple>,
    /// `None` when every positive scale works.
    t_max: Option<Py<PyAny>>,
}

#[pyclass(name = "ContainmentReport", module = "tropcon", frozen, get_all)]
pub struct PyReport {
    verdict: String,
    contained: bool,
    certificates: Vec<Py<PyCertificate>>,
    t0: Option<Py<PyAny>>,
    failing_vertex: Option<Py<PyTuple>>,
    failing_vertices: Vec<Py<PyTuple>>,
    witness: Option<Py<PyTuple>>,
    /// `"found"`, `"not_found"` or `"skipped"`
    witness_status: &'static str,
}

impl PyReport {
    fn build(py: Python<'_>, r: &ContainmentReport) -> PyResult<Self> {
        let certificates = r
            .certificates
            .iter()
            .map(|c| {
                let t_max = match &c.t_max {
                    Scale::Finite(t) => Some(fraction(py, t)?.unbind()),
                    Scale::Infinite => None,
                };
                Py::new(
                    py,
                    PyCertificate {
                        vertex: lifted(py, &c.vertex)?.unbind(),
                        anchor: lifted(py, &c.anchor)?.unbind(),
                        t_max,
                    },
                )
            })
            .collect::<PyResult<_>>()?;
        let (witness, witness_status) = match &r.witness {
            WitnessSearch::Found(x) => (Some(fractions(py, x.coords())?.unbind()), "found"),
            WitnessSearch::NotFound => (None, "not_found"),
            WitnessSearch::Skipped => (None, "skipped"),
        };
        Ok(Self {
            verdict: r.verdict.to_string(),
            contained: r.is_contained(),
            certificates,
            t0: r
                .t0
                .as_ref()
                .map(|t| fraction(py, t).map(Bound::unbind))
                .transpose()?,
            failing_vertex: r
                .failing_vertex
                .as_ref()
                .map(|v| lifted(py, v).map(Bound::unbind))
                .transpose()?,
            failing_vertices: r
                .failing_vertices
                .iter()
                .map(|v| lifted(py, v).map(Bound::unbind))
                .collect::<PyResult<_>>()?,
            witness,
            witness_status,
        })
    }
}

#[pymethods]
impl PyReport {
    fn __bool__(&self) -> bool {
        self.contained
    }

    fn __repr__(&self) -> String {
        format!("ContainmentReport(verdict={:?})", self.verdict)
    }
}

/// Decides whether `Trop(f)` is contained in `Trop(g)`.
#[pyfunction]
#[pyo3(signature = (f, g, witness=true, all_failing=false))]
fn check_containment(
    py: Python<'_>,
    f: &PyPolynomial,
    g: &PyPolynomial,
    witness: bool,
    all_failing: bool,
) -> PyResult<PyReport> {
    let options = tropcon::CheckOptions {
        witness,
        all_failing,
    };
    let report = py
        .detach(|| tropcon::check_containment_with(&f.inner, &g.inner, options))
        .map_err(to_py)?;
    PyReport::build(py, &report)
}

/// Returns `None` when the sampled points of `Trop(f)` all lie on
/// `Trop(g)`, otherwise a counterexample.
#[pyfunction]
#[pyo3(signature = (f, g, samples=100, seed=0))]
fn oracle_check<'py>(
    py: Python<'py>,
    f: &PyPolynomial,
    g: &PyPolynomial,
    samples: usize,
    seed: u64,
) -> PyResult<Option<Bound<'py, PyTuple>>> {
    match tropcon::oracle_check(&f.inner, &g.inner, samples, seed).map_err(to_py)? {
        OracleVerdict::AgreesContained => Ok(None),
        OracleVerdict::Counterexample(x) => Ok(Some(fractions(py, x.coords())?)),
    }
}

#[pymodule(name = "tropcon")]
fn tropcon_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TropconError", m.py().get_type::<TropconError>())?;
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyNewton>()?;
    m.add_class::<PyFacet>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(check_containment, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_check, m)?)?;
    Ok(())
}
