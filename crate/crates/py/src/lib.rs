//! Python bindings for the cgkit optimization toolkit.
//!
//! Exposes the solver over registry problems and user-supplied Python
//! callables, the CG coefficient formulas, and the gradient checker.

use std::str::FromStr;
use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

use cgkit::directions::{self, BetaInputs, HybridParams};
use cgkit::solver::{Method, SolverConfig};
use cgkit::vecops::sub;
use cgkit::{benchsuite, ObjectiveProblem};

fn to_py_err(e: cgkit::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Terminal state of one solve.
#[pyclass(name = "SolveSummary")]
struct PySolveSummary {
    #[pyo3(get)]
    status: String,
    #[pyo3(get)]
    x_final: Vec<f64>,
    #[pyo3(get)]
    f_final: f64,
    #[pyo3(get)]
    g_norm_final: f64,
    #[pyo3(get)]
    iterations: usize,
    #[pyo3(get)]
    f_evals: u64,
    #[pyo3(get)]
    g_evals: u64,
    #[pyo3(get)]
    wall_time_ms: f64,
}

#[pymethods]
impl PySolveSummary {
    fn __repr__(&self) -> String {
        format!(
            "SolveSummary(status='{}', f_final={:.6e}, g_norm_final={:.3e}, iterations={})",
            self.status, self.f_final, self.g_norm_final, self.iterations
        )
    }
}

#[allow(clippy::too_many_arguments)]
fn build_config(
    method: &str,
    epsilon: Option<f64>,
    max_iter: Option<usize>,
    delta: Option<f64>,
    sigma: Option<f64>,
    tau: Option<f64>,
    u: Option<f64>,
    t: Option<f64>,
    nu: Option<f64>,
) -> PyResult<SolverConfig> {
    let mut cfg = SolverConfig::new(Method::from_str(method).map_err(to_py_err)?);
    if let Some(v) = epsilon {
        cfg.epsilon = v;
    }
    if let Some(v) = max_iter {
        cfg.max_iter = v;
    }
    if let Some(v) = delta {
        cfg.ls.delta = v;
    }
    if let Some(v) = sigma {
        cfg.ls.sigma = v;
    }
    if let Some(v) = tau {
        cfg.hybrid.tau = v;
    }
    if let Some(v) = u {
        cfg.hybrid.u = v;
    }
    if let Some(v) = t {
        cfg.hybrid.t = v;
    }
    if let Some(v) = nu {
        cfg.nu = v;
    }
    cfg.validate().map_err(to_py_err)?;
    Ok(cfg)
}

fn run_solve(problem: &ObjectiveProblem, cfg: &SolverConfig) -> PyResult<PySolveSummary> {
    let r = cgkit::solve(problem, cfg, None).map_err(to_py_err)?;
    Ok(PySolveSummary {
        status: r.status.as_str().to_string(),
        x_final: r.x_final,
        f_final: r.f_final,
        g_norm_final: r.g_norm_final,
        iterations: r.iterations,
        f_evals: r.counters.f_evals,
        g_evals: r.counters.g_evals,
        wall_time_ms: r.wall_time.as_secs_f64() * 1e3,
    })
}

/// Sorted (id, supported-dimensions) listing of the benchmark registry.
#[pyfunction]
fn list_functions() -> Vec<(String, String)> {
    benchsuite::list_functions()
        .into_iter()
        .map(|(id, rule)| (id.to_string(), rule.describe()))
        .collect()
}

/// Solve a registry problem from its standard start point.
#[pyfunction]
#[pyo3(signature = (function, n, method="awhm", epsilon=None, max_iter=None, delta=None, sigma=None, tau=None, u=None, t=None, nu=None))]
#[allow(clippy::too_many_arguments)]
fn solve(
    function: &str,
    n: usize,
    method: &str,
    epsilon: Option<f64>,
    max_iter: Option<usize>,
    delta: Option<f64>,
    sigma: Option<f64>,
    tau: Option<f64>,
    u: Option<f64>,
    t: Option<f64>,
    nu: Option<f64>,
) -> PyResult<PySolveSummary> {
    let cfg = build_config(method, epsilon, max_iter, delta, sigma, tau, u, t, nu)?;
    let inst = benchsuite::instantiate(function, n).map_err(to_py_err)?;
    run_solve(inst.problem(), &cfg)
}

/// Minimize a user-supplied objective. `f(x) -> float` and
/// `grad(x) -> sequence[float]` are called with plain lists.
#[pyfunction]
#[pyo3(signature = (f, grad, x0, method="awhm", epsilon=None, max_iter=None, delta=None, sigma=None, tau=None, u=None, t=None, nu=None))]
#[allow(clippy::too_many_arguments)]
fn solve_custom(
    f: Py<PyAny>,
    grad: Py<PyAny>,
    x0: Vec<f64>,
    method: &str,
    epsilon: Option<f64>,
    max_iter: Option<usize>,
    delta: Option<f64>,
    sigma: Option<f64>,
    tau: Option<f64>,
    u: Option<f64>,
    t: Option<f64>,
    nu: Option<f64>,
) -> PyResult<PySolveSummary> {
    let cfg = build_config(method, epsilon, max_iter, delta, sigma, tau, u, t, nu)?;
    let n = x0.len();
    if n == 0 {
        return Err(PyValueError::new_err("x0 must be non-empty"));
    }
    // Exceptions inside the callbacks surface as non-finite values, which
    // the solver reports as a NonFinite status.
    let eval_f = Arc::new(move |x: &[f64]| -> f64 {
        Python::attach(|py| {
            f.call1(py, (x.to_vec(),))
                .and_then(|v| v.extract::<f64>(py))
                .unwrap_or(f64::NAN)
        })
    });
    let eval_g = Arc::new(move |x: &[f64]| -> Vec<f64> {
        Python::attach(|py| {
            grad.call1(py, (x.to_vec(),))
                .and_then(|v| v.extract::<Vec<f64>>(py))
                .unwrap_or_else(|_| vec![f64::NAN; x.len()])
        })
    });
    let problem = ObjectiveProblem::new("custom", n, x0, eval_f, eval_g);
    run_solve(&problem, &cfg)
}

/// Worst relative error of the registry function's analytic gradient against
/// central differences (10 seeded points plus the standard start).
#[pyfunction]
#[pyo3(signature = (function, n, h=1e-6))]
fn check_gradient(function: &str, n: usize, h: f64) -> PyResult<f64> {
    let inst = benchsuite::instantiate(function, n).map_err(to_py_err)?;
    benchsuite::gradient_check_worst(&inst, h).map_err(to_py_err)
}

fn diff_y(g_new: &[f64], g_old: &[f64], d_old: &[f64], s: &[f64]) -> PyResult<Vec<f64>> {
    let n = g_new.len();
    if g_old.len() != n || d_old.len() != n || s.len() != n {
        return Err(PyValueError::new_err(
            "g_new, g_old, d_old and s must share one dimension",
        ));
    }
    Ok(sub(g_new, g_old))
}

macro_rules! simple_beta {
    ($pyname:ident, $fun:path, $doc:literal) => {
        #[pyfunction]
        #[doc = $doc]
        fn $pyname(g_new: Vec<f64>, g_old: Vec<f64>, d_old: Vec<f64>) -> PyResult<f64> {
            let s = vec![0.0; g_new.len()];
            let y = diff_y(&g_new, &g_old, &d_old, &s)?;
            let inp = BetaInputs::new(&g_new, &g_old, &d_old, &s, &y);
            $fun(&inp).map_err(to_py_err)
        }
    };
}

simple_beta!(beta_fr, directions::beta_fr, "Fletcher-Reeves coefficient.");
simple_beta!(beta_prp, directions::beta_prp, "Polak-Ribiere-Polyak coefficient.");
simple_beta!(beta_hs, directions::beta_hs, "Hestenes-Stiefel coefficient.");

/// HRM coefficient.
#[pyfunction]
#[pyo3(signature = (g_new, g_old, d_old, tau=0.4))]
fn beta_hrm(g_new: Vec<f64>, g_old: Vec<f64>, d_old: Vec<f64>, tau: f64) -> PyResult<f64> {
    let s = vec![0.0; g_new.len()];
    let y = diff_y(&g_new, &g_old, &d_old, &s)?;
    let inp = BetaInputs::new(&g_new, &g_old, &d_old, &s, &y);
    let p = HybridParams {
        tau,
        ..HybridParams::default()
    };
    p.validate().map_err(to_py_err)?;
    directions::beta_hrm(&inp, &p).map_err(to_py_err)
}

/// NHS coefficient (nonnegative by construction).
#[pyfunction]
#[pyo3(signature = (g_new, g_old, d_old, u=1.1))]
fn beta_nhs(g_new: Vec<f64>, g_old: Vec<f64>, d_old: Vec<f64>, u: f64) -> PyResult<f64> {
    let s = vec![0.0; g_new.len()];
    let y = diff_y(&g_new, &g_old, &d_old, &s)?;
    let inp = BetaInputs::new(&g_new, &g_old, &d_old, &s, &y);
    let p = HybridParams {
        u,
        ..HybridParams::default()
    };
    p.validate().map_err(to_py_err)?;
    directions::beta_nhs(&inp, &p).map_err(to_py_err)
}

/// Hybrid coefficient: returns (beta, theta, branch).
#[pyfunction]
#[pyo3(signature = (g_new, g_old, d_old, s, tau=0.4, u=1.1, t=1.0))]
#[allow(clippy::too_many_arguments)]
fn beta_awhm(
    g_new: Vec<f64>,
    g_old: Vec<f64>,
    d_old: Vec<f64>,
    s: Vec<f64>,
    tau: f64,
    u: f64,
    t: f64,
) -> PyResult<(f64, f64, String)> {
    let y = diff_y(&g_new, &g_old, &d_old, &s)?;
    let inp = BetaInputs::new(&g_new, &g_old, &d_old, &s, &y);
    let p = HybridParams {
        tau,
        u,
        t,
        ..HybridParams::default()
    };
    p.validate().map_err(to_py_err)?;
    let out = directions::beta_awhm(&inp, &p);
    let branch = match out.branch {
        directions::BetaBranch::ThetaZeroNhs => "theta_zero_nhs",
        directions::BetaBranch::InteriorAwhm => "interior_awhm",
        directions::BetaBranch::ThetaOneHrm => "theta_one_hrm",
        directions::BetaBranch::DegenerateFallback => "degenerate_fallback",
    };
    Ok((out.beta, out.theta, branch.to_string()))
}

/// Run the synthetic tagging demo; returns (macro_f1, iterations, f_evals).
#[pyfunction]
#[pyo3(signature = (seed=7, method="awhm", sentences=200, l2=1e-4))]
fn ner_demo(seed: u64, method: &str, sentences: usize, l2: f64) -> PyResult<(f64, usize, u64)> {
    let cfg = build_config(method, None, None, None, None, None, None, None, None)?;
    let data = cgkit::mlapp::generate_synthetic(seed, sentences);
    let out = cgkit::mlapp::train(&data, &cfg, l2)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let metrics = cgkit::mlapp::evaluate(&out.model, &data.test_sentences());
    Ok((
        metrics.macro_f1,
        out.result.iterations,
        out.result.counters.f_evals,
    ))
}

#[pymodule]
fn cgkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySolveSummary>()?;
    m.add_function(wrap_pyfunction!(list_functions, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(solve_custom, m)?)?;
    m.add_function(wrap_pyfunction!(check_gradient, m)?)?;
    m.add_function(wrap_pyfunction!(beta_fr, m)?)?;
    m.add_function(wrap_pyfunction!(beta_prp, m)?)?;
    m.add_function(wrap_pyfunction!(beta_hs, m)?)?;
    m.add_function(wrap_pyfunction!(beta_hrm, m)?)?;
    m.add_function(wrap_pyfunction!(beta_nhs, m)?)?;
    m.add_function(wrap_pyfunction!(beta_awhm, m)?)?;
    m.add_function(wrap_pyfunction!(ner_demo, m)?)?;
    Ok(())
}
