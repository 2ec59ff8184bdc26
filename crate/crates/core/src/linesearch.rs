//! Strong Wolfe-Powell step-size selection.
//!
//! Acceptance requires both
//!
//! ```text
//! f(x + a*d) <= f(x) + delta * a * g'd        (sufficient decrease)
//! |g(x + a*d)' d| <= sigma * |g'd|            (strong curvature)
//! ```
//!
//! with `0 < delta < sigma < 1`. The search itself is the conventional
//! bracket-and-zoom scheme: grow the trial step by a factor of two until an
//! interval around an acceptable point is bracketed, then shrink it with
//! safeguarded cubic interpolation (bisection fallback, minimizer clamped to
//! the interior 10%-90% of the bracket).

use crate::error::{Error, Result};
use crate::objective::Evaluator;
use crate::vecops::{add_scaled, dot};

/// Wolfe acceptance coefficients and search budget.
#[derive(Debug, Clone, Copy)]
pub struct WolfeParams {
    /// Sufficient-decrease coefficient, in (0, 0.5).
    pub delta: f64,
    /// Curvature coefficient, in (delta, 1).
    pub sigma: f64,
    /// Budget of f/g evaluation pairs for one search.
    pub max_evals: usize,
    /// Upper bound on trial steps.
    pub alpha_max: f64,
}

impl Default for WolfeParams {
    fn default() -> Self {
        Self {
            delta: 1e-4,
            sigma: 0.9,
            max_evals: 60,
            alpha_max: 1e6,
        }
    }
}

impl WolfeParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "delta must lie in (0, 0.5), got {}",
                self.delta
            )));
        }
        if !(self.sigma > self.delta && self.sigma < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "sigma must lie in (delta, 1), got {}",
                self.sigma
            )));
        }
        if self.max_evals == 0 {
            return Err(Error::InvalidConfig("max_evals must be positive".into()));
        }
        if !(self.alpha_max > 0.0) {
            return Err(Error::InvalidConfig("alpha_max must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineSearchStatus {
    /// Both Wolfe inequalities hold at the returned step.
    Converged,
    /// Budget exhausted without an acceptable step.
    MaxEvals,
    /// The supplied direction was not a descent direction.
    NonDescent,
    /// The objective blew up along the ray and no finite trial survived.
    NonFinite,
}

/// Outcome of one search. On anything but `Converged`, `alpha` is 0 and
/// `f_new`/`g_new` echo the starting point.
#[derive(Debug, Clone)]
pub struct LineSearchResult {
    pub alpha: f64,
    pub f_new: f64,
    pub g_new: Vec<f64>,
    pub evals_used: usize,
    pub status: LineSearchStatus,
}

struct Ray<'a, 'b> {
    ev: &'a mut Evaluator<'b>,
    x: &'a [f64],
    d: &'a [f64],
    evals: usize,
}

enum Trial {
    Ok { f: f64, g: Vec<f64>, gtd: f64 },
    NonFinite,
}

impl Ray<'_, '_> {
    /// Evaluate f and g at `x + alpha d`, spending one budget unit.
    fn probe(&mut self, alpha: f64) -> Result<Trial> {
        self.evals += 1;
        let xt = add_scaled(self.x, alpha, self.d);
        let f = match self.ev.evaluate(&xt) {
            Ok(v) => v,
            Err(Error::NonFiniteValue) => return Ok(Trial::NonFinite),
            Err(e) => return Err(e),
        };
        let g = match self.ev.gradient(&xt) {
            Ok(v) => v,
            Err(Error::NonFiniteValue) => return Ok(Trial::NonFinite),
            Err(e) => return Err(e),
        };
        let gtd = dot(&g, self.d);
        Ok(Trial::Ok { f, g, gtd })
    }
}

/// Find a step along `d` from `x` satisfying both strong Wolfe inequalities.
///
/// `f0` and `g0` are the objective value and gradient at `x`; `alpha_init` is
/// the first trial step. The search is a pure function of its inputs:
/// identical inputs yield identical steps.
pub fn strong_wolfe_search(
    ev: &mut Evaluator,
    x: &[f64],
    d: &[f64],
    f0: f64,
    g0: &[f64],
    alpha_init: f64,
    params: &WolfeParams,
) -> Result<LineSearchResult> {
    let gtd0 = dot(g0, d);
    let fail = |status: LineSearchStatus, evals: usize| LineSearchResult {
        alpha: 0.0,
        f_new: f0,
        g_new: g0.to_vec(),
        evals_used: evals,
        status,
    };
    if gtd0 >= 0.0 {
        return Ok(fail(LineSearchStatus::NonDescent, 0));
    }
    assert!(alpha_init > 0.0, "alpha_init must be positive");

    let mut ray = Ray { ev, x, d, evals: 0 };
    let mut alpha_prev = 0.0f64;
    let mut f_prev = f0;
    let mut gtd_prev = gtd0;
    let mut alpha = alpha_init.min(params.alpha_max);
    let mut saw_finite = false;
    let mut saw_nonfinite = false;
    let mut first_trial = true;

    let finish = |mut r: LineSearchResult| {
        if r.status != LineSearchStatus::Converged {
            r.alpha = 0.0;
            r.f_new = f0;
            r.g_new = g0.to_vec();
        }
        Ok(r)
    };

    while ray.evals < params.max_evals {
        match ray.probe(alpha)? {
            Trial::NonFinite => {
                // Shrink toward the last finite point on the ray.
                saw_nonfinite = true;
                let next = 0.5 * (alpha_prev + alpha);
                if !(next > alpha_prev) || next == alpha {
                    return Ok(fail(LineSearchStatus::NonFinite, ray.evals));
                }
                alpha = next;
                continue;
            }
            Trial::Ok { f, g, gtd } => {
                saw_finite = true;
                // Strictly-greater comparison against the previous value:
                // near a minimum, f values one ulp apart round equal, and
                // treating equality as "worse" would collapse the zoom
                // instead of letting the curvature test finish the job.
                if f > f0 + params.delta * alpha * gtd0 || (!first_trial && f > f_prev) {
                    return finish(zoom(
                        &mut ray, f0, gtd0, params, alpha_prev, f_prev, gtd_prev, alpha, f, gtd,
                    )?);
                }
                if gtd.abs() <= params.sigma * gtd0.abs() {
                    return Ok(LineSearchResult {
                        alpha,
                        f_new: f,
                        g_new: g,
                        evals_used: ray.evals,
                        status: LineSearchStatus::Converged,
                    });
                }
                if gtd >= 0.0 {
                    // Slope turned positive: minimum lies between alpha and
                    // the previous trial; current point is the low end.
                    return finish(zoom(
                        &mut ray, f0, gtd0, params, alpha, f, gtd, alpha_prev, f_prev, gtd_prev,
                    )?);
                }
                if alpha >= params.alpha_max {
                    break;
                }
                alpha_prev = alpha;
                f_prev = f;
                gtd_prev = gtd;
                first_trial = false;
                alpha = (2.0 * alpha).min(params.alpha_max);
            }
        }
    }
    let status = if saw_nonfinite && !saw_finite {
        LineSearchStatus::NonFinite
    } else {
        LineSearchStatus::MaxEvals
    };
    Ok(fail(status, ray.evals))
}

/// Shrink a bracketing interval until both inequalities hold.
///
/// `lo` always carries the smallest Armijo-feasible value seen so far, `hi`
/// the opposite end; the endpoints need not be ordered.
#[allow(clippy::too_many_arguments)]
fn zoom(
    ray: &mut Ray,
    f0: f64,
    gtd0: f64,
    params: &WolfeParams,
    mut alpha_lo: f64,
    mut f_lo: f64,
    mut gtd_lo: f64,
    mut alpha_hi: f64,
    mut f_hi: f64,
    mut gtd_hi: f64,
) -> Result<LineSearchResult> {
    // Failure results are normalized by the caller (alpha, f, g reset to the
    // starting point); only the status and eval count matter here.
    let fail = |status: LineSearchStatus, ray: &Ray| LineSearchResult {
        alpha: 0.0,
        f_new: f0,
        g_new: Vec::new(),
        evals_used: ray.evals,
        status,
    };

    while ray.evals < params.max_evals {
        let width = (alpha_hi - alpha_lo).abs();
        if width <= f64::EPSILON * alpha_lo.abs().max(1.0) {
            // Interval collapsed without acceptance.
            return Ok(fail(LineSearchStatus::MaxEvals, ray));
        }
        let alpha = interp_trial(alpha_lo, f_lo, gtd_lo, alpha_hi, f_hi, gtd_hi);

        match ray.probe(alpha)? {
            Trial::NonFinite => {
                // Treat a blow-up like a too-high value: pull the interval in.
                alpha_hi = alpha;
                f_hi = f64::INFINITY;
                gtd_hi = f64::NAN;
            }
            Trial::Ok { f, g, gtd } => {
                // Strict comparison with f_lo for the same reason as in the
                // bracket phase: float-equal values must not shrink the
                // bracket away from a curvature-acceptable point.
                if f > f0 + params.delta * alpha * gtd0 || f > f_lo {
                    alpha_hi = alpha;
                    f_hi = f;
                    gtd_hi = gtd;
                } else {
                    if gtd.abs() <= params.sigma * gtd0.abs() {
                        return Ok(LineSearchResult {
                            alpha,
                            f_new: f,
                            g_new: g,
                            evals_used: ray.evals,
                            status: LineSearchStatus::Converged,
                        });
                    }
                    if gtd * (alpha_hi - alpha_lo) >= 0.0 {
                        alpha_hi = alpha_lo;
                        f_hi = f_lo;
                        gtd_hi = gtd_lo;
                    }
                    alpha_lo = alpha;
                    f_lo = f;
                    gtd_lo = gtd;
                }
            }
        }
    }
    Ok(fail(LineSearchStatus::MaxEvals, ray))
}

/// Cubic-interpolation minimizer over a bracket, clamped to its interior
/// 10%-90% so every zoom step makes progress; bisection when the cubic is
/// unusable.
fn interp_trial(a: f64, fa: f64, ga: f64, b: f64, fb: f64, gb: f64) -> f64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let width = hi - lo;
    let guard_lo = lo + 0.1 * width;
    let guard_hi = lo + 0.9 * width;
    let bisect = 0.5 * (a + b);
    if !(fa.is_finite() && fb.is_finite() && ga.is_finite() && gb.is_finite()) {
        return bisect.clamp(guard_lo, guard_hi);
    }
    let d1 = ga + gb - 3.0 * (fa - fb) / (a - b);
    let d2_sq = d1 * d1 - ga * gb;
    let trial = if d2_sq >= 0.0 {
        let d2 = d2_sq.sqrt() * (b - a).signum();
        b - (b - a) * (gb + d2 - d1) / (gb - ga + 2.0 * d2)
    } else {
        bisect
    };
    if trial.is_finite() {
        trial.clamp(guard_lo, guard_hi)
    } else {
        bisect.clamp(guard_lo, guard_hi)
    }
}
