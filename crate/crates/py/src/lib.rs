use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use automation_race::analysis;
use automation_race::scenario_runner::{self as runner, check, output};
use automation_race::static_economy as st;
use automation_race::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Solver(_) | Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(name = "EconomyParams", frozen)]
#[derive(Clone, Copy)]
struct PyEconomy(st::EconomyParams);

#[pymethods]
impl PyEconomy {
    #[new]
    #[pyo3(signature = (a=0.5, sigma=0.5, l=1.0))]
    fn new(a: f64, sigma: f64, l: f64) -> PyResult<Self> {
        st::EconomyParams::new(a, sigma, l).map(PyEconomy).map_err(py_err)
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.a
    }

    #[getter]
    fn sigma(&self) -> f64 {
        self.0.sigma
    }

    #[getter]
    fn l(&self) -> f64 {
        self.0.l
    }

    fn equilibrium(&self, k: f64, phi: f64) -> PyResult<PyEquilibrium> {
        st::static_equilibrium(&self.0, k, phi).map(PyEquilibrium).map_err(py_err)
    }

    fn fpf_wage(&self, phi: f64, r: f64) -> PyResult<f64> {
        st::fpf_wage(&self.0, phi, r).map_err(py_err)
    }

    fn limit_wage(&self, phi: f64) -> PyResult<f64> {
        st::limit_wage(&self.0, phi).map_err(py_err)
    }

    fn wage_response(&self, k: f64, phi: f64) -> PyResult<f64> {
        st::wage_response(&self.0, k, phi).map_err(py_err)
    }

    fn unit_cost(&self, phi: f64, w: f64, r: f64) -> f64 {
        st::unit_cost(&self.0, phi, w, r)
    }

    fn __repr__(&self) -> String {
        format!("EconomyParams(a={}, sigma={}, l={})", self.0.a, self.0.sigma, self.0.l)
    }
}

#[pyclass(name = "StaticEquilibrium", frozen)]
struct PyEquilibrium(st::StaticEquilibrium);

#[pymethods]
impl PyEquilibrium {
    #[getter]
    fn region(&self) -> u8 {
        self.0.region.code()
    }

    #[getter]
    fn y(&self) -> f64 {
        self.0.y
    }

    #[getter]
    fn w(&self) -> f64 {
        self.0.w
    }

    #[getter]
    fn r(&self) -> f64 {
        self.0.r
    }

    #[getter]
    fn labor_share(&self) -> f64 {
        self.0.labor_share
    }

    fn __repr__(&self) -> String {
        let e = &self.0;
        format!("StaticEquilibrium(region={}, y={}, w={}, r={}, labor_share={})", e.region.code(), e.y, e.w, e.r, e.labor_share)
    }
}

/// A scenario: preset or config text, with per-key overrides.
#[pyclass(name = "Scenario")]
#[derive(Clone)]
struct PyScenario(runner::ScenarioSpec);

#[pymethods]
impl PyScenario {
    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        runner::preset(name).map(PyScenario).map_err(py_err)
    }

    #[staticmethod]
    fn from_config(text: &str) -> PyResult<Self> {
        runner::parse_config(text).map(PyScenario).map_err(py_err)
    }

    fn set(&mut self, key: &str, value: &str) -> PyResult<()> {
        self.0.set(key, value).and_then(|_| self.0.validate()).map_err(py_err)
    }

    fn to_config(&self) -> String {
        self.0.to_config_string()
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name.clone()
    }

    /// Releases the GIL while the solver runs.
    fn run(&self, py: Python<'_>) -> PyResult<PyRun> {
        let spec = self.0.clone();
        py.allow_threads(move || runner::run(&spec)).map(PyRun).map_err(py_err)
    }
}

#[pyclass(name = "RunResult", frozen)]
struct PyRun(runner::RunResult);

#[pymethods]
impl PyRun {
    /// Column name to list of values, in CSV column order.
    fn columns<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new_bound(py);
        let pts = &self.0.trajectory.points;
        let col = |f: &dyn Fn(&automation_race::dynamics::TrajectoryPoint) -> f64| pts.iter().map(f).collect::<Vec<f64>>();
        d.set_item("t", col(&|p| p.t))?;
        d.set_item("I", col(&|p| p.index))?;
        d.set_item("phi", col(&|p| p.phi))?;
        d.set_item("region", pts.iter().map(|p| p.region.code()).collect::<Vec<u8>>())?;
        d.set_item("K", col(&|p| p.k))?;
        d.set_item("C", col(&|p| p.c))?;
        d.set_item("Y", col(&|p| p.y))?;
        d.set_item("w", col(&|p| p.w))?;
        d.set_item("R", col(&|p| p.r))?;
        d.set_item("labor_share", col(&|p| p.labor_share))?;
        d.set_item("savings_rate", col(&|p| p.savings_rate))?;
        Ok(d)
    }

    fn events(&self) -> Vec<(&'static str, f64)> {
        self.0.trajectory.events.iter().map(|e| (e.kind.name(), e.t)).collect()
    }

    fn summary<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let s = &self.0.summary;
        let d = PyDict::new_bound(py);
        d.set_item("collapse_time", s.collapse_time)?;
        d.set_item("reentry_time", s.reentry_time)?;
        d.set_item("full_automation_time", s.full_automation_time)?;
        d.set_item("peak_wage_time", s.peak_wage_time)?;
        d.set_item("terminal_output_growth", s.terminal_output_growth)?;
        d.set_item("terminal_wage_growth", s.terminal_wage_growth)?;
        if let Some(r) = &self.0.regime {
            d.set_item("regime", r.regime.name())?;
            d.set_item("predicted_wage_growth", r.asymptotic_wage_growth)?;
        }
        Ok(d)
    }

    /// Writes the CSV and its sidecars; returns the paths written.
    fn write_csv(&self, path: std::path::PathBuf) -> PyResult<Vec<String>> {
        output::emit_csv(&self.0, &path)
            .map(|v| v.into_iter().map(|p| p.display().to_string()).collect())
            .map_err(py_err)
    }
}

#[pyfunction]
#[pyo3(signature = (lambda_g, economy=None, rho=0.04, eta=2.0, delta=0.1))]
fn classify_long_run<'py>(
    py: Python<'py>,
    lambda_g: f64,
    economy: Option<PyEconomy>,
    rho: f64,
    eta: f64,
    delta: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let p = economy.map(|e| e.0).unwrap_or(st::EconomyParams { a: 0.5, sigma: 0.5, l: 1.0 });
    let pr = automation_race::dynamics::PreferenceParams::new(rho, eta, delta).map_err(py_err)?;
    let r = analysis::classify_long_run(&p, &pr, lambda_g).map_err(py_err)?;
    let d = PyDict::new_bound(py);
    d.set_item("regime", r.regime.name())?;
    d.set_item("wage_growth", r.asymptotic_wage_growth)?;
    d.set_item("labor_share", r.asymptotic_labor_share)?;
    d.set_item("lambda_g_hi", r.lambda_g_hi)?;
    d.set_item("lambda_g_lo", r.lambda_g_lo)?;
    Ok(d)
}

/// Runs acceptance criteria; returns `(id, tag, passed, detail)` tuples.
#[pyfunction]
#[pyo3(signature = (only=None))]
fn run_checks(py: Python<'_>, only: Option<String>) -> PyResult<Vec<(u8, &'static str, bool, String)>> {
    let ids = check::select(only.as_deref()).map_err(py_err)?;
    let res = py.allow_threads(|| check::run_checks(&ids, &[]));
    Ok(res.into_iter().map(|r| (r.id, r.tag, r.passed, r.detail)).collect())
}

#[pyfunction]
fn presets() -> Vec<&'static str> {
    runner::SCENARIOS.iter().chain(runner::EXTENSION_PRESETS.iter()).copied().collect()
}

#[pymodule]
#[pyo3(name = "automation_race")]
fn automation_race_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEconomy>()?;
    m.add_class::<PyEquilibrium>()?;
    m.add_class::<PyScenario>()?;
    m.add_class::<PyRun>()?;
    m.add_function(wrap_pyfunction!(classify_long_run, m)?)?;
    m.add_function(wrap_pyfunction!(run_checks, m)?)?;
    m.add_function(wrap_pyfunction!(presets, m)?)?;
    Ok(())
}
