//! Python bindings. Series and ring presentations are classes; reports
//! (maps, verdicts, checks) come back as plain dicts.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use mtcalc_core::charclass::{self, NuClass};
use mtcalc_core::classifying::{self as cls, Coefficient, Family, ShiftSign};
use mtcalc_core::loopspace::{self, HomologyInput};
use mtcalc_core::splitting::{self, HomogeneousSpace, S0Family, SplitPair};
use mtcalc_core::thom;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr>(s: &str) -> PyResult<T>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(value_err)
}

/// Round-trip through JSON so reports arrive as dicts and lists.
fn to_py<T: serde::Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (s,))?.unbind())
}

#[pyclass(name = "PoincareSeries", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySeries(mtcalc_core::PoincareSeries);

#[pymethods]
impl PySeries {
    #[new]
    fn new(min_degree: i64, coefficients: Vec<i64>) -> PyResult<Self> {
        mtcalc_core::PoincareSeries::from_i64s(min_degree, &coefficients)
            .map(PySeries)
            .map_err(value_err)
    }

    #[getter]
    fn min_degree(&self) -> i64 {
        self.0.min_degree()
    }

    #[getter]
    fn trunc_degree(&self) -> i64 {
        self.0.trunc_degree()
    }

    /// Coefficients from `min_degree` to `trunc_degree`, as Python ints.
    #[getter]
    fn coefficients(&self) -> Vec<num_bigint::BigInt> {
        self.0.coefficients().to_vec()
    }

    fn coeff(&self, degree: i64) -> num_bigint::BigInt {
        self.0.coeff(degree)
    }

    fn shift(&self, k: i64) -> Self {
        PySeries(self.0.shift(k))
    }

    fn __add__(&self, other: &Self) -> Self {
        PySeries(self.0.add(&other.0))
    }

    fn __sub__(&self, other: &Self) -> Self {
        PySeries(self.0.sub(&other.0))
    }

    fn __mul__(&self, other: &Self) -> Self {
        PySeries(self.0.mul(&other.0))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PoincareSeries({})", self.0)
    }
}

#[pyclass(name = "RingPresentation", frozen)]
struct PyRing(cls::RingPresentation);

#[pymethods]
impl PyRing {
    #[getter]
    fn label(&self) -> String {
        self.0.label()
    }

    /// `(name, degree)` pairs.
    #[getter]
    fn generators(&self) -> Vec<(String, u32)> {
        self.0.generators().iter().map(|v| (v.name.clone(), v.degree)).collect()
    }

    #[getter]
    fn relations(&self) -> Vec<String> {
        self.0.relations().iter().map(|r| r.to_string()).collect()
    }

    #[getter]
    fn note(&self) -> Option<&'static str> {
        self.0.note()
    }

    #[pyo3(signature = (max_degree = mtcalc_core::DEFAULT_MAX_DEGREE))]
    fn series(&self, max_degree: i64) -> PyResult<PySeries> {
        self.0.poincare_series(max_degree).map(PySeries).map_err(value_err)
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RingPresentation({})", self.0)
    }
}

#[pyfunction]
#[pyo3(signature = (family, n, coeff = "f2"))]
fn cohomology_ring(family: &str, n: u32, coeff: &str) -> PyResult<PyRing> {
    cls::cohomology_presentation(parse::<Family>(family)?, n, parse::<Coefficient>(coeff)?)
        .map(PyRing)
        .map_err(value_err)
}

/// A restriction map as a dict with `name`, `source`, `target`, `images`.
/// `kind` is one of `standard`, `detect`, `j`, `su`, `u-selfmap`.
#[pyfunction]
#[pyo3(signature = (kind, n, family = "O", coeff = "f2", prime = 3, minus = false))]
fn restriction(
    py: Python<'_>,
    kind: &str,
    n: u32,
    family: &str,
    coeff: &str,
    prime: u64,
    minus: bool,
) -> PyResult<Py<PyAny>> {
    let family = parse::<Family>(family)?;
    let coeff = parse::<Coefficient>(coeff)?;
    let map = match kind {
        "standard" => cls::standard_restriction(family, n, coeff),
        "detect" => cls::detection_map(family, n, coeff),
        "j" => cls::j_restriction(n),
        "su" => cls::su_restriction(n, coeff),
        "u-selfmap" => {
            let sign = if minus { ShiftSign::Minus } else { ShiftSign::Plus };
            let r = cls::u_selfmap(n, prime, sign).map_err(value_err)?;
            let d = to_py(py, &r.map)?;
            let b = d.bind(py);
            b.set_item("prime", r.prime)?;
            b.set_item("c1_coefficient", r.c1_coefficient)?;
            b.set_item("triangular", r.triangular)?;
            b.set_item("invertible", r.invertible)?;
            return Ok(d);
        }
        other => return Err(PyValueError::new_err(format!("unknown map kind {other}"))),
    }
    .map_err(value_err)?;
    to_py(py, &map)
}

#[pyfunction]
fn pin_structures(py: Python<'_>, n: u32) -> PyResult<Py<PyAny>> {
    to_py(py, &cls::pin_structures(n).map_err(value_err)?)
}

#[pyfunction]
#[pyo3(signature = (family, n, coeff = "f2", max_degree = mtcalc_core::DEFAULT_MAX_DEGREE))]
fn thom_series(family: &str, n: u32, coeff: &str, max_degree: i64) -> PyResult<PySeries> {
    thom::mt_poincare_series(parse(family)?, n, parse(coeff)?, max_degree)
        .map(PySeries)
        .map_err(value_err)
}

/// `{"ses": bool, "direct_sum": bool, "ses_violations": [...], ...}`.
#[pyfunction]
#[pyo3(signature = (family, n, coeff = "f2", max_degree = mtcalc_core::DEFAULT_MAX_DEGREE))]
fn thom_checks(py: Python<'_>, family: &str, n: u32, coeff: &str, max_degree: i64) -> PyResult<Py<PyAny>> {
    let (f, c) = (parse::<Family>(family)?, parse::<Coefficient>(coeff)?);
    let ses = thom::verify_ses_dimensions(f, n, c, max_degree).map_err(value_err)?;
    let sum = thom::mt_direct_sum_check(f, n, c, max_degree).map_err(value_err)?;
    let report = serde_json::json!({
        "ses": ses.passed(),
        "ses_violations": ses.violations,
        "direct_sum": sum.passed(),
        "direct_sum_violations": sum.violations,
    });
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (generators, max_degree = mtcalc_core::DEFAULT_MAX_DEGREE, plus = false))]
fn q_homology_series(generators: Vec<i64>, max_degree: i64, plus: bool) -> PyResult<PySeries> {
    let input = HomologyInput::from_degrees(&generators);
    let s = if plus {
        loopspace::q0_plus_series(&input, max_degree)
    } else {
        loopspace::q_homology_series(&input, max_degree)
    };
    s.map(PySeries).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (max_degree = mtcalc_core::DEFAULT_MAX_DEGREE))]
fn q0s0_series(max_degree: i64) -> PyResult<PySeries> {
    loopspace::q0s0_series(max_degree).map(PySeries).map_err(value_err)
}

/// Admissible words of positive excess as index lists.
#[pyfunction]
fn admissible_words(generator_degree: u32, max_degree: i64) -> Vec<Vec<u32>> {
    loopspace::admissible_words(generator_degree, max_degree)
        .into_iter()
        .map(|w| w.indices)
        .collect()
}

#[pyfunction]
fn euler_char(space: &str) -> PyResult<i64> {
    Ok(parse::<HomogeneousSpace>(space)?.euler_char())
}

#[pyfunction]
fn splitting_verdict(py: Python<'_>, pair: &str, n: u32, prime: u64) -> PyResult<Py<PyAny>> {
    let v = splitting::splitting_verdict(parse::<SplitPair>(pair)?, n, prime).map_err(value_err)?;
    to_py(py, &v)
}

#[pyfunction]
fn s0_split_verdict(py: Python<'_>, family: &str, n: u32, prime: u64) -> PyResult<Py<PyAny>> {
    let v = splitting::s0_split_verdict(parse::<S0Family>(family)?, n, prime).map_err(value_err)?;
    to_py(py, &v)
}

#[pyfunction]
#[pyo3(signature = (n, prime, max_degree = mtcalc_core::DEFAULT_MAX_DEGREE))]
fn odd_p_consistency(n: u32, prime: u64, max_degree: i64) -> PyResult<bool> {
    Ok(splitting::odd_p_consistency(n, prime, max_degree).map_err(value_err)?.passed())
}

/// μ-expansion of `ν_{exponents}` as a string such as `μ_{0,1}+μ_{1,0}^2`.
#[pyfunction]
fn nu_to_mu(m: u32, exponents: Vec<u32>) -> PyResult<String> {
    charclass::nu_to_mu(m, &exponents).map(|e| e.to_string()).map_err(value_err)
}

#[pyfunction]
fn nu_classes(m: u32, degree: u64) -> PyResult<Vec<String>> {
    let classes = charclass::nu_classes(m, degree).map_err(value_err)?;
    Ok(classes.iter().map(NuClass::to_string).collect())
}

#[pyfunction]
fn count_independent_nu(m: u32, degree: u64) -> PyResult<usize> {
    charclass::count_independent_nu(m, degree).map_err(value_err)
}

#[pyfunction]
fn reproduce_table(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &charclass::reproduce_table().map_err(value_err)?)
}

#[pymodule]
fn mtcalc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeries>()?;
    m.add_class::<PyRing>()?;
    m.add_function(wrap_pyfunction!(cohomology_ring, m)?)?;
    m.add_function(wrap_pyfunction!(restriction, m)?)?;
    m.add_function(wrap_pyfunction!(pin_structures, m)?)?;
    m.add_function(wrap_pyfunction!(thom_series, m)?)?;
    m.add_function(wrap_pyfunction!(thom_checks, m)?)?;
    m.add_function(wrap_pyfunction!(q_homology_series, m)?)?;
    m.add_function(wrap_pyfunction!(q0s0_series, m)?)?;
    m.add_function(wrap_pyfunction!(admissible_words, m)?)?;
    m.add_function(wrap_pyfunction!(euler_char, m)?)?;
    m.add_function(wrap_pyfunction!(splitting_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(s0_split_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(odd_p_consistency, m)?)?;
    m.add_function(wrap_pyfunction!(nu_to_mu, m)?)?;
    m.add_function(wrap_pyfunction!(nu_classes, m)?)?;
    m.add_function(wrap_pyfunction!(count_independent_nu, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_table, m)?)?;
    m.add("DEFAULT_MAX_DEGREE", mtcalc_core::DEFAULT_MAX_DEGREE)?;
    Ok(())
}
