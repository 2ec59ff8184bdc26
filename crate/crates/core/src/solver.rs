//! The iterative method: initialization, line search, coefficient and
//! direction updates, restart, step-size recurrence, termination and trace
//! recording.
//!
//! One iteration takes the step `x_new = x + alpha * d` with `alpha` from the
//! strong Wolfe search (seeded with the trial step `lambda`), then builds the
//! next direction from the configured coefficient formula, applies the
//! restart test `|g_new'g| >= nu ||g_new||^2`, and carries the trial step
//! forward through `lambda_next = alpha * ||d|| / ||d_next||`. The first
//! direction is `-g0` with trial step `1 / ||g0||`.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::directions::{
    beta_awhm, beta_fr, beta_hrm, beta_hs, beta_nhs, beta_prp, restart_check, BetaInputs,
    HybridParams,
};
use crate::error::{Error, Result};
use crate::linesearch::{strong_wolfe_search, LineSearchResult, LineSearchStatus, WolfeParams};
use crate::objective::{EvalCounters, Evaluator, ObjectiveProblem};
use crate::vecops::{add_scaled, dot, norm, sub};

/// Which coefficient formula drives the direction update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fr,
    Prp,
    Hs,
    Hrm,
    Nhs,
    Awhm,
    SteepestDescent,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Fr,
        Method::Prp,
        Method::Hs,
        Method::Hrm,
        Method::Nhs,
        Method::Awhm,
        Method::SteepestDescent,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Fr => "fr",
            Method::Prp => "prp",
            Method::Hs => "hs",
            Method::Hrm => "hrm",
            Method::Nhs => "nhs",
            Method::Awhm => "awhm",
            Method::SteepestDescent => "sd",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fr" => Ok(Method::Fr),
            "prp" => Ok(Method::Prp),
            "hs" => Ok(Method::Hs),
            "hrm" => Ok(Method::Hrm),
            "nhs" => Ok(Method::Nhs),
            "awhm" => Ok(Method::Awhm),
            "sd" | "steepest_descent" => Ok(Method::SteepestDescent),
            other => Err(Error::InvalidConfig(format!("unknown method `{other}`"))),
        }
    }
}

/// Method selector plus every tunable of one solve.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub method: Method,
    /// Gradient tolerance: stop once `||g|| <= epsilon`.
    pub epsilon: f64,
    pub max_iter: usize,
    /// Restart threshold on `|g_new'g_old| / ||g_new||^2`.
    pub nu: f64,
    pub hybrid: HybridParams,
    /// Wolfe coefficients (`delta`, `sigma`) and search budget.
    pub ls: WolfeParams,
    /// Re-evaluate both Wolfe inequalities at every accepted step and track
    /// descent diagnostics (extra raw evaluations, not counted).
    pub audit: bool,
    /// Record the full iterate path in the result (memory-hungry; meant for
    /// equality checks on small problems).
    pub keep_iterates: bool,
}

impl SolverConfig {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            epsilon: 1e-6,
            max_iter: 10_000,
            nu: 0.2,
            hybrid: HybridParams::default(),
            ls: WolfeParams::default(),
            audit: false,
            keep_iterates: false,
        }
    }

    pub fn delta(&self) -> f64 {
        self.ls.delta
    }

    pub fn sigma(&self) -> f64 {
        self.ls.sigma
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidConfig("epsilon must be positive".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        if !(self.nu > 0.0) {
            return Err(Error::InvalidConfig("nu must be positive".into()));
        }
        self.hybrid.validate()?;
        self.ls.validate()
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self::new(Method::Awhm)
    }
}

/// One row of the per-iteration trace. Fields describe iteration `k`: the
/// state at its start (`f`, `g_norm`, `g_dot_d`, `d_norm`), the step taken
/// (`alpha` accepted, `alpha_trial` fed to the search), and the direction
/// update that produced `d_{k+1}` (`beta`, `theta`, `restarted`).
#[derive(Debug, Clone, Serialize)]
pub struct IterationRecord {
    pub k: usize,
    pub f: f64,
    pub g_norm: f64,
    pub alpha: f64,
    pub alpha_trial: f64,
    pub beta: f64,
    pub theta: f64,
    pub g_dot_d: f64,
    pub d_norm: f64,
    pub restarted: bool,
    /// Cumulative evaluation counts at the end of this iteration.
    pub f_evals_cum: u64,
    pub g_evals_cum: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    GradientConverged,
    MaxIterations,
    LineSearchFailed,
    NonFinite,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::GradientConverged => "gradient_converged",
            SolveStatus::MaxIterations => "max_iterations",
            SolveStatus::LineSearchFailed => "line_search_failed",
            SolveStatus::NonFinite => "non_finite",
        }
    }
}

/// Diagnostics gathered when `config.audit` is on.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AuditReport {
    /// Accepted steps where the re-evaluated sufficient-decrease inequality
    /// failed. Zero on a healthy run.
    pub decrease_violations: u64,
    /// Accepted steps where the re-evaluated curvature inequality failed.
    pub curvature_violations: u64,
    /// Minimum of `-g'd / ||g||^2` over all iterations.
    pub min_descent_ratio: f64,
    /// Largest gradient norm seen (boundedness diagnostic).
    pub max_g_norm: f64,
}

impl Default for AuditReport {
    fn default() -> Self {
        Self {
            decrease_violations: 0,
            curvature_violations: 0,
            min_descent_ratio: f64::INFINITY,
            max_g_norm: 0.0,
        }
    }
}

/// Terminal state of one solve.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub x_final: Vec<f64>,
    pub f_final: f64,
    pub g_norm_final: f64,
    pub iterations: usize,
    pub counters: EvalCounters,
    pub wall_time: Duration,
    pub trace: Option<Vec<IterationRecord>>,
    pub audit: Option<AuditReport>,
    /// Iterate path (x after each iteration), when `keep_iterates` is set.
    pub iterates: Option<Vec<Vec<f64>>>,
}

/// Minimize `problem` from `x_start` (or its standard start point).
pub fn solve(
    problem: &ObjectiveProblem,
    config: &SolverConfig,
    x_start: Option<&[f64]>,
) -> Result<SolveResult> {
    run(problem, config, x_start, false)
}

/// As [`solve`], with the full per-iteration trace populated. Tracing is
/// observation-only: the iterates are identical to an untraced run.
pub fn solve_traced(
    problem: &ObjectiveProblem,
    config: &SolverConfig,
    x_start: Option<&[f64]>,
) -> Result<SolveResult> {
    run(problem, config, x_start, true)
}

fn run(
    problem: &ObjectiveProblem,
    config: &SolverConfig,
    x_start: Option<&[f64]>,
    record_trace: bool,
) -> Result<SolveResult> {
    config.validate()?;
    let started = Instant::now();
    let mut x = match x_start {
        Some(x) => {
            if x.len() != problem.dim() {
                return Err(Error::DimensionMismatch {
                    expected: problem.dim(),
                    got: x.len(),
                });
            }
            x.to_vec()
        }
        None => problem.x0().to_vec(),
    };

    let mut ev = Evaluator::new(problem);
    let mut trace = record_trace.then(Vec::new);
    let mut iterates = config.keep_iterates.then(Vec::new);
    let mut audit = config.audit.then(AuditReport::default);

    let finish = |status: SolveStatus,
                  x: Vec<f64>,
                  f: f64,
                  g_norm: f64,
                  iterations: usize,
                  ev: &Evaluator,
                  trace: Option<Vec<IterationRecord>>,
                  audit: Option<AuditReport>,
                  iterates: Option<Vec<Vec<f64>>>| {
        Ok(SolveResult {
            status,
            x_final: x,
            f_final: f,
            g_norm_final: g_norm,
            iterations,
            counters: ev.counters(),
            wall_time: started.elapsed(),
            trace,
            audit,
            iterates,
        })
    };

    // Step 0: g0, d0 = -g0, trial step 1/||g0||.
    let mut f = match ev.evaluate(&x) {
        Ok(v) => v,
        Err(Error::NonFiniteValue) => {
            let xf = x.clone();
            return finish(SolveStatus::NonFinite, xf, f64::NAN, f64::NAN, 0, &ev, trace, audit, iterates);
        }
        Err(e) => return Err(e),
    };
    let mut g = match ev.gradient(&x) {
        Ok(v) => v,
        Err(Error::NonFiniteValue) => {
            let xf = x.clone();
            return finish(SolveStatus::NonFinite, xf, f, f64::NAN, 0, &ev, trace, audit, iterates);
        }
        Err(e) => return Err(e),
    };
    let mut g_norm = norm(&g);
    if let Some(a) = audit.as_mut() {
        a.max_g_norm = g_norm;
    }
    if g_norm <= config.epsilon {
        return finish(SolveStatus::GradientConverged, x, f, g_norm, 0, &ev, trace, audit, iterates);
    }
    let mut d: Vec<f64> = g.iter().map(|v| -v).collect();
    let mut g_dot_d = -dot(&g, &g);
    let mut lambda = 1.0 / g_norm;

    for k in 0..config.max_iter {
        // Line search from the carried trial step, with the failure policy:
        // NonFinite -> shrink the trial once; MaxEvals/NonDescent -> restart
        // from -g once; a second failure terminates.
        let mut trial = lambda;
        let mut ls = strong_wolfe_search(&mut ev, &x, &d, f, &g, trial, &config.ls)?;
        if ls.status != LineSearchStatus::Converged {
            match ls.status {
                LineSearchStatus::NonFinite => {
                    trial = lambda * 1e-2;
                    ls = strong_wolfe_search(&mut ev, &x, &d, f, &g, trial, &config.ls)?;
                    if ls.status != LineSearchStatus::Converged {
                        return finish(SolveStatus::NonFinite, x, f, g_norm, k, &ev, trace, audit, iterates);
                    }
                }
                _ => {
                    d = g.iter().map(|v| -v).collect();
                    g_dot_d = -dot(&g, &g);
                    trial = 1.0 / g_norm;
                    ls = strong_wolfe_search(&mut ev, &x, &d, f, &g, trial, &config.ls)?;
                    if ls.status != LineSearchStatus::Converged {
                        let status = if ls.status == LineSearchStatus::NonFinite {
                            SolveStatus::NonFinite
                        } else {
                            SolveStatus::LineSearchFailed
                        };
                        return finish(status, x, f, g_norm, k, &ev, trace, audit, iterates);
                    }
                }
            }
        }
        let LineSearchResult {
            alpha,
            f_new,
            g_new,
            ..
        } = ls;

        let x_new = add_scaled(&x, alpha, &d);
        let g_norm_new = norm(&g_new);

        if let Some(a) = audit.as_mut() {
            // Independent re-evaluation of both Wolfe inequalities at the
            // accepted step, straight from the problem definition.
            let f_chk = problem.eval_f(&x_new)?;
            let g_chk = problem.eval_g(&x_new)?;
            if !(f_chk <= f + config.ls.delta * alpha * g_dot_d) {
                a.decrease_violations += 1;
            }
            if !(dot(&g_chk, &d).abs() <= config.ls.sigma * g_dot_d.abs()) {
                a.curvature_violations += 1;
            }
            a.min_descent_ratio = a.min_descent_ratio.min(-g_dot_d / (g_norm * g_norm));
            a.max_g_norm = a.max_g_norm.max(g_norm_new);
        }

        // Steps 3-7: s, y, coefficient, candidate direction.
        let s = sub(&x_new, &x);
        let y = sub(&g_new, &g);
        let inputs = BetaInputs::new(&g_new, &g, &d, &s, &y);
        let (beta, theta) = match config.method {
            Method::SteepestDescent => (0.0, 0.0),
            Method::Fr => (beta_fr(&inputs).unwrap_or(0.0), 0.0),
            Method::Prp => (beta_prp(&inputs).unwrap_or(0.0), 0.0),
            Method::Hs => (beta_hs(&inputs).unwrap_or(0.0), 0.0),
            Method::Hrm => (beta_hrm(&inputs, &config.hybrid).unwrap_or(0.0), 0.0),
            Method::Nhs => (beta_nhs(&inputs, &config.hybrid).unwrap_or(0.0), 0.0),
            Method::Awhm => {
                let out = beta_awhm(&inputs, &config.hybrid);
                (out.beta, out.theta)
            }
        };

        // Step 8: restart test, then the trial-step recurrence on the
        // accepted step.
        let restarted = restart_check(&g_new, &g, config.nu);
        let d_next: Vec<f64> = if restarted || config.method == Method::SteepestDescent {
            g_new.iter().map(|v| -v).collect()
        } else {
            g_new.iter().zip(&d).map(|(gn, dc)| -gn + beta * dc).collect()
        };

        if let Some(t) = trace.as_mut() {
            let c = ev.counters();
            t.push(IterationRecord {
                k,
                f,
                g_norm,
                alpha,
                alpha_trial: trial,
                beta,
                theta,
                g_dot_d,
                d_norm: norm(&d),
                restarted,
                f_evals_cum: c.f_evals,
                g_evals_cum: c.g_evals,
            });
        }
        if let Some(it) = iterates.as_mut() {
            it.push(x_new.clone());
        }

        if g_norm_new <= config.epsilon {
            return finish(
                SolveStatus::GradientConverged,
                x_new,
                f_new,
                g_norm_new,
                k + 1,
                &ev,
                trace,
                audit,
                iterates,
            );
        }

        let d_next_norm = norm(&d_next);
        lambda = alpha * norm(&d) / d_next_norm;
        x = x_new;
        f = f_new;
        g = g_new;
        g_norm = g_norm_new;
        g_dot_d = dot(&g, &d_next);
        d = d_next;
    }

    finish(
        SolveStatus::MaxIterations,
        x,
        f,
        g_norm,
        config.max_iter,
        &ev,
        trace,
        audit,
        iterates,
    )
}

/// Render a trace as CSV with the columns
/// `k,f,g_norm,alpha,beta,theta,gTd,restarted`.
pub fn trace_to_csv(trace: &[IterationRecord]) -> String {
    let mut out = String::from("k,f,g_norm,alpha,beta,theta,gTd,restarted\n");
    for r in trace {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.k, r.f, r.g_norm, r.alpha, r.beta, r.theta, r.g_dot_d, r.restarted
        ));
    }
    out
}

/// JSON summary of a result (trace and iterates omitted).
pub fn result_to_json(r: &SolveResult) -> serde_json::Value {
    serde_json::json!({
        "status": r.status.as_str(),
        "f_final": r.f_final,
        "g_norm_final": r.g_norm_final,
        "iterations": r.iterations,
        "f_evals": r.counters.f_evals,
        "g_evals": r.counters.g_evals,
        "wall_time_ms": r.wall_time.as_secs_f64() * 1e3,
        "x_final": r.x_final,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn half_norm_sq(n: usize, x0: Vec<f64>) -> ObjectiveProblem {
        ObjectiveProblem::new(
            "half_norm_sq",
            n,
            x0,
            Arc::new(|x: &[f64]| 0.5 * x.iter().map(|v| v * v).sum::<f64>()),
            Arc::new(|x: &[f64]| x.to_vec()),
        )
    }

    /// f(x) = 1/2 x'Ax - b'x with A = diag(1..n).
    fn diag_quadratic(n: usize, b: Vec<f64>) -> ObjectiveProblem {
        let b2 = b.clone();
        ObjectiveProblem::new(
            "diag_quadratic",
            n,
            vec![0.0; n],
            Arc::new(move |x: &[f64]| {
                x.iter()
                    .enumerate()
                    .map(|(i, v)| 0.5 * (i + 1) as f64 * v * v - b[i] * v)
                    .sum()
            }),
            Arc::new(move |x: &[f64]| {
                x.iter()
                    .enumerate()
                    .map(|(i, v)| (i + 1) as f64 * v - b2[i])
                    .collect()
            }),
        )
    }

    #[test]
    fn simple_quadratic_converges_fast() {
        // From (3,4): d0 = (-3,-4), trial 1/5. The closed-form line function
        // phi(a) = 12.5 (1-a)^2 accepts each trial, and the trial-step
        // recurrence walks 0.2, 0.25, 1/3, 0.5, 1.0 to the exact minimum.
        let p = half_norm_sq(2, vec![3.0, 4.0]);
        let cfg = SolverConfig::new(Method::Awhm);
        let r = solve_traced(&p, &cfg, None).unwrap();
        assert_eq!(r.status, SolveStatus::GradientConverged);
        assert!(r.g_norm_final <= 1e-6);
        assert!(r.iterations <= 6, "iterations {}", r.iterations);
        let t = r.trace.as_ref().unwrap();
        assert_eq!(t[0].alpha_trial, 0.2);
        assert_eq!(t[0].d_norm, 5.0);
        assert_eq!(t[0].g_dot_d, -25.0);
    }

    #[test]
    fn start_at_minimum_exits_immediately() {
        let p = half_norm_sq(3, vec![0.0, 0.0, 0.0]);
        let r = solve(&p, &SolverConfig::new(Method::Awhm), None).unwrap();
        assert_eq!(r.status, SolveStatus::GradientConverged);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn diag_quadratic_reaches_analytic_minimum() {
        use rand::{Rng, SeedableRng};
        let n = 10;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let b: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        // Minimizer x* = A^-1 b by direct solve; f* = -1/2 b'A^-1 b.
        let f_star: f64 = -0.5
            * b.iter()
                .enumerate()
                .map(|(i, bi)| bi * bi / (i + 1) as f64)
                .sum::<f64>();
        let p = diag_quadratic(n, b);
        for method in Method::ALL {
            let mut cfg = SolverConfig::new(method);
            cfg.epsilon = 1e-8;
            let r = solve(&p, &cfg, None).unwrap();
            assert_eq!(r.status, SolveStatus::GradientConverged, "{method}");
            assert!(
                (r.f_final - f_star).abs() <= 1e-10,
                "{method}: f {} vs {}",
                r.f_final,
                f_star
            );
        }
    }

    #[test]
    fn trace_shape_and_descent() {
        let p = diag_quadratic(6, vec![1.0, -1.0, 2.0, 0.5, -0.25, 1.5]);
        let mut cfg = SolverConfig::new(Method::Awhm);
        cfg.audit = true;
        let r = solve_traced(&p, &cfg, None).unwrap();
        let t = r.trace.as_ref().unwrap();
        assert_eq!(t.len(), r.iterations);
        for rec in t {
            assert!(rec.g_dot_d < 0.0, "descent violated at k={}", rec.k);
        }
        let a = r.audit.unwrap();
        assert_eq!(a.decrease_violations, 0);
        assert_eq!(a.curvature_violations, 0);
        assert!(a.min_descent_ratio > 1e-12);
    }

    #[test]
    fn trace_matches_trial_step_recurrence() {
        let p = diag_quadratic(6, vec![1.0, -1.0, 2.0, 0.5, -0.25, 1.5]);
        let r = solve_traced(&p, &SolverConfig::new(Method::Awhm), None).unwrap();
        let t = r.trace.as_ref().unwrap();
        for w in t.windows(2) {
            let expect = w[0].alpha * w[0].d_norm / w[1].d_norm;
            assert_eq!(w[1].alpha_trial, expect, "recurrence broken at k={}", w[1].k);
        }
    }

    #[test]
    fn restart_rows_use_steepest_descent() {
        let p = diag_quadratic(6, vec![1.0, -1.0, 2.0, 0.5, -0.25, 1.5]);
        let r = solve_traced(&p, &SolverConfig::new(Method::Awhm), None).unwrap();
        let t = r.trace.as_ref().unwrap();
        for w in t.windows(2) {
            if w[0].restarted {
                // d_{k+1} = -g_{k+1}, so g'd at k+1 equals -||g||^2 there.
                let rel = (w[1].g_dot_d + w[1].g_norm * w[1].g_norm).abs()
                    / w[1].g_norm.powi(2).max(1e-300);
                assert!(rel <= 1e-12, "restart semantics broken at k={}", w[1].k);
            }
        }
    }

    #[test]
    fn monotone_decrease_along_trace() {
        let p = diag_quadratic(8, vec![2.0; 8]);
        let r = solve_traced(&p, &SolverConfig::new(Method::Awhm), None).unwrap();
        let t = r.trace.as_ref().unwrap();
        for w in t.windows(2) {
            assert!(w[1].f < w[0].f);
        }
        assert!(r.f_final < t.last().unwrap().f);
    }

    #[test]
    fn max_iterations_status() {
        let p = half_norm_sq(2, vec![3.0, 4.0]);
        let mut cfg = SolverConfig::new(Method::Awhm);
        cfg.max_iter = 1;
        cfg.epsilon = 1e-14;
        let r = solve(&p, &cfg, None).unwrap();
        assert_eq!(r.status, SolveStatus::MaxIterations);
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn unbounded_ray_fails_line_search() {
        // f(x) = x: no curvature-satisfying step exists.
        let p = ObjectiveProblem::new(
            "linear",
            1,
            vec![1.0],
            Arc::new(|x: &[f64]| x[0]),
            Arc::new(|_: &[f64]| vec![1.0]),
        );
        let r = solve(&p, &SolverConfig::new(Method::Awhm), None).unwrap();
        assert_eq!(r.status, SolveStatus::LineSearchFailed);
    }

    #[test]
    fn pole_blocks_descent_with_nonfinite() {
        // Minimum sits behind a NaN region: the solver walks to the boundary
        // and then reports NonFinite.
        let p = ObjectiveProblem::new(
            "guarded",
            1,
            vec![2.0],
            Arc::new(|x: &[f64]| {
                if x[0] < 0.0 {
                    f64::NAN
                } else {
                    0.5 * (x[0] + 2.0) * (x[0] + 2.0)
                }
            }),
            Arc::new(|x: &[f64]| {
                if x[0] < 0.0 {
                    vec![f64::NAN]
                } else {
                    vec![x[0] + 2.0]
                }
            }),
        );
        let r = solve(&p, &SolverConfig::new(Method::Awhm), None).unwrap();
        assert_eq!(r.status, SolveStatus::NonFinite);
    }

    #[test]
    fn x_start_overrides_default() {
        let p = half_norm_sq(2, vec![3.0, 4.0]);
        let r = solve(&p, &SolverConfig::new(Method::Prp), Some(&[0.0, 0.0])).unwrap();
        assert_eq!(r.iterations, 0);
        assert!(matches!(
            solve(&p, &SolverConfig::new(Method::Prp), Some(&[1.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn forced_theta_matches_pure_methods() {
        let p = diag_quadratic(5, vec![1.0, 2.0, -1.0, 0.5, 1.5]);
        let mut awhm0 = SolverConfig::new(Method::Awhm);
        awhm0.hybrid.theta_min = 0.0;
        awhm0.hybrid.theta_max = 0.0;
        awhm0.keep_iterates = true;
        let mut nhs = SolverConfig::new(Method::Nhs);
        nhs.keep_iterates = true;
        let ra = solve_traced(&p, &awhm0, None).unwrap();
        let rn = solve_traced(&p, &nhs, None).unwrap();
        assert_eq!(ra.iterations, rn.iterations);
        let (ia, ib) = (ra.iterates.unwrap(), rn.iterates.unwrap());
        for (xa, xb) in ia.iter().zip(&ib) {
            for (a, b) in xa.iter().zip(xb) {
                assert!((a - b).abs() <= 1e-12);
            }
        }
    }
}
