use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use ftkcenter_core::numeric::parse_rational;
use ftkcenter_core::oracle::{self, OracleLimits};
use ftkcenter_core::report::{self, Algorithm, SolveOptions, SolveResult, DEFAULT_ALPHA_BOUND};
use ftkcenter_core::{Length, MetricInstance, Rational, Variant};

fn err(e: ftkcenter_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn variant_of(name: &str) -> PyResult<Variant> {
    match name {
        "ft" => Ok(Variant::FaultTolerant),
        "conservative" => Ok(Variant::Conservative),
        other => Err(PyValueError::new_err(format!("unknown variant {other:?}, expected \"ft\" or \"conservative\""))),
    }
}

fn rationals(values: &[String]) -> PyResult<Vec<Rational>> {
    values.iter().map(|v| parse_rational(v).map_err(err)).collect()
}

/// Round-trips through JSON so callers get plain dicts and lists.
fn to_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyDict>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let obj = py.import("json")?.call_method1("loads", (text,))?;
    Ok(obj.cast_into::<PyDict>()?)
}

/// A metric instance. Distances are exact; coordinates and matrix entries
/// are given as strings such as "3", "0.25" or "1/3".
#[pyclass(name = "Instance", module = "ftkcenter", frozen)]
struct PyInstance {
    inner: MetricInstance,
}

#[pymethods]
impl PyInstance {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyInstance { inner: MetricInstance::from_json(text).map_err(err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (points, k, alpha, capacities, variant = "ft", name = "instance"))]
    fn from_points(points: Vec<(String, String)>, k: usize, alpha: usize, capacities: Vec<u64>, variant: &str, name: &str) -> PyResult<Self> {
        let pts = points
            .iter()
            .map(|(x, y)| Ok((parse_rational(x).map_err(err)?, parse_rational(y).map_err(err)?)))
            .collect::<PyResult<Vec<_>>>()?;
        let inner = MetricInstance::from_points(name, &pts, k, alpha, capacities, variant_of(variant)?).map_err(err)?;
        Ok(PyInstance { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (dist, k, alpha, capacities, variant = "ft", name = "instance"))]
    fn from_matrix(dist: Vec<Vec<String>>, k: usize, alpha: usize, capacities: Vec<u64>, variant: &str, name: &str) -> PyResult<Self> {
        let rows = dist.iter().map(|r| rationals(r)).collect::<PyResult<Vec<_>>>()?;
        let inner = MetricInstance::from_matrix(name, &rows, k, alpha, capacities, variant_of(variant)?).map_err(err)?;
        Ok(PyInstance { inner })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn name(&self) -> &str {
        &self.inner.name
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k
    }

    #[getter]
    fn alpha(&self) -> usize {
        self.inner.alpha
    }

    #[getter]
    fn capacities(&self) -> Vec<u64> {
        self.inner.capacities.clone()
    }

    #[getter]
    fn variant(&self) -> &'static str {
        match self.inner.variant {
            Variant::FaultTolerant => "ft",
            Variant::Conservative => "conservative",
        }
    }

    /// Exact distance between two vertices, e.g. "2" or "sqrt(2)".
    fn distance(&self, u: usize, v: usize) -> PyResult<String> {
        let n = self.inner.n();
        if u >= n || v >= n {
            return Err(PyValueError::new_err(format!("vertex out of range for n = {n}")));
        }
        Ok(self.inner.distance(u, v).to_exact_string())
    }

    fn distinct_distances(&self) -> Vec<String> {
        self.inner.distinct_distances().iter().map(Length::to_exact_string).collect()
    }

    fn __repr__(&self) -> String {
        format!("Instance(name={:?}, n={}, k={}, alpha={}, variant={:?})", self.inner.name, self.inner.n(), self.inner.k, self.inner.alpha, self.variant())
    }
}

/// Runs one of "cons-0l", "cons-general", "ft-general", "ft-0l". Returns the
/// report with `outcome == "solved"`, or the infeasibility certificate with
/// `outcome == "infeasible"`.
#[pyfunction]
#[pyo3(signature = (instance, alg, alpha_bound = DEFAULT_ALPHA_BOUND, with_oracle = false, exact_inner = false))]
fn solve<'py>(
    py: Python<'py>,
    instance: &PyInstance,
    alg: &str,
    alpha_bound: usize,
    with_oracle: bool,
    exact_inner: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let alg: Algorithm = alg.parse().map_err(err)?;
    let opts = SolveOptions { alpha_bound, with_oracle, exact_inner };
    let result = py.detach(|| report::solve_instance(&instance.inner, alg, &opts)).map_err(err)?;
    let (dict, outcome) = match result {
        SolveResult::Solved(r) => (to_dict(py, &r)?, "solved"),
        SolveResult::Infeasible(c) => (to_dict(py, &c)?, "infeasible"),
    };
    dict.set_item("outcome", outcome)?;
    Ok(dict)
}

/// Checks `centers` at `radius` against every failure scenario. Conservative
/// instances also need the initial assignment.
#[pyfunction]
#[pyo3(signature = (instance, centers, radius, initial_assignment = None))]
fn verify<'py>(
    py: Python<'py>,
    instance: &PyInstance,
    centers: Vec<usize>,
    radius: &str,
    initial_assignment: Option<Vec<usize>>,
) -> PyResult<Bound<'py, PyDict>> {
    let inst = &instance.inner;
    let n = inst.n();
    if centers.iter().chain(initial_assignment.iter().flatten()).any(|&v| v >= n) {
        return Err(PyValueError::new_err(format!("vertex out of range for n = {n}")));
    }
    let radius = Length::parse(radius).map_err(err)?;
    let report = match (inst.variant, initial_assignment) {
        (Variant::Conservative, Some(phi0)) => oracle::verify_conservative(inst, &centers, &phi0, &radius),
        (Variant::Conservative, None) => return Err(PyValueError::new_err("conservative instances need initial_assignment")),
        (Variant::FaultTolerant, _) => oracle::verify_ft(inst, &centers, &radius),
    };
    to_dict(py, &report)
}

/// The optimum by exhaustive search, or None when no center set works.
#[pyfunction]
#[pyo3(signature = (instance, max_n = None))]
fn exact_opt<'py>(py: Python<'py>, instance: &PyInstance, max_n: Option<usize>) -> PyResult<Option<Bound<'py, PyDict>>> {
    let inst = &instance.inner;
    let dict = PyDict::new(py);
    match inst.variant {
        Variant::FaultTolerant => {
            let limits = max_n.map_or(OracleLimits::FAULT_TOLERANT, |m| OracleLimits::FAULT_TOLERANT.with_max_n(m));
            let Some(found) = py.detach(|| oracle::exact_opt_ft(inst, limits)).map_err(err)? else { return Ok(None) };
            dict.set_item("opt", found.opt.to_exact_string())?;
            dict.set_item("centers", found.centers)?;
        }
        Variant::Conservative => {
            let limits = max_n.map_or(OracleLimits::CONSERVATIVE, |m| OracleLimits::CONSERVATIVE.with_max_n(m));
            let Some(found) = py.detach(|| oracle::exact_opt_conservative(inst, limits)).map_err(err)? else { return Ok(None) };
            dict.set_item("opt", found.opt.to_exact_string())?;
            dict.set_item("centers", found.centers)?;
            dict.set_item("initial_assignment", found.phi0)?;
        }
    }
    Ok(Some(dict))
}

#[pyfunction]
fn gap_instance(s: usize) -> PyResult<PyInstance> {
    Ok(PyInstance { inner: oracle::gap_instance(s).map_err(err)? })
}

#[pymodule]
fn ftkcenter(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(exact_opt, m)?)?;
    m.add_function(wrap_pyfunction!(gap_instance, m)?)?;
    m.add("ALGORITHMS", Algorithm::ALL.iter().map(|a| a.name()).collect::<Vec<_>>())?;
    Ok(())
}
