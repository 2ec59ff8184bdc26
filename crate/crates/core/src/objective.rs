//! Smooth unconstrained objectives with analytic gradients.
//!
//! A problem is an immutable bundle of `f`, its gradient and a standard start
//! point. Evaluation counting is kept out of the problem itself: an
//! [`Evaluator`] wraps a problem for the duration of one solve and owns the
//! counters, so problems can be shared freely across threads while counts
//! stay per-solve.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Objective value callback: `x -> f(x)`.
pub type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
/// Gradient callback: `x -> grad f(x)`.
pub type GradientFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// A smooth unconstrained minimization problem over dense `f64` vectors.
#[derive(Clone)]
pub struct ObjectiveProblem {
    name: String,
    n: usize,
    x0: Vec<f64>,
    f: ScalarFn,
    g: GradientFn,
}

impl ObjectiveProblem {
    /// Build a problem. Panics if `n == 0` or `x0` does not have `n` entries.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        x0: Vec<f64>,
        f: ScalarFn,
        g: GradientFn,
    ) -> Self {
        assert!(n >= 1, "problem dimension must be positive");
        assert_eq!(x0.len(), n, "start point must have dimension n");
        Self {
            name: name.into(),
            n,
            x0,
            f,
            g,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn x0(&self) -> &[f64] {
        &self.x0
    }

    /// Raw objective value, without counting. `x` is never mutated.
    ///
    /// A NaN or infinite value is reported as [`Error::NonFiniteValue`]; the
    /// solver treats that as a line-search rejection signal rather than a
    /// silent number.
    pub fn eval_f(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        let v = (self.f)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteValue)
        }
    }

    /// Raw gradient, without counting.
    pub fn eval_g(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        let g = (self.g)(x);
        if g.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: g.len(),
            });
        }
        if g.iter().all(|v| v.is_finite()) {
            Ok(g)
        } else {
            Err(Error::NonFiniteValue)
        }
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            })
        }
    }
}

impl std::fmt::Debug for ObjectiveProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ObjectiveProblem")
            .field("name", &self.name)
            .field("n", &self.n)
            .finish()
    }
}

/// Monotone per-solve evaluation counts.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct EvalCounters {
    pub f_evals: u64,
    pub g_evals: u64,
}

/// Counting wrapper around a problem; one per solve.
pub struct Evaluator<'a> {
    problem: &'a ObjectiveProblem,
    counters: EvalCounters,
}

impl<'a> Evaluator<'a> {
    pub fn new(problem: &'a ObjectiveProblem) -> Self {
        Self {
            problem,
            counters: EvalCounters::default(),
        }
    }

    pub fn problem(&self) -> &ObjectiveProblem {
        self.problem
    }

    /// `f(x)`, ticking the f-counter exactly once per call.
    pub fn evaluate(&mut self, x: &[f64]) -> Result<f64> {
        self.counters.f_evals += 1;
        self.problem.eval_f(x)
    }

    /// `grad f(x)`, ticking the g-counter exactly once per call.
    pub fn gradient(&mut self, x: &[f64]) -> Result<Vec<f64>> {
        self.counters.g_evals += 1;
        self.problem.eval_g(x)
    }

    pub fn counters(&self) -> EvalCounters {
        self.counters
    }
}

/// Maximum relative disagreement between the analytic gradient and central
/// differences with step `h`, over all coordinates.
///
/// The relative error at coordinate `i` is
/// `|cd_i - g_i| / (1 + |g_i|)`; the `1 +` keeps the measure finite where the
/// gradient vanishes. Central differences (rather than forward) balance
/// truncation against cancellation at double precision.
pub fn check_gradient(problem: &ObjectiveProblem, x: &[f64], h: f64) -> Result<f64> {
    assert!(h > 0.0, "step must be positive");
    let analytic = problem.eval_g(x)?;
    let mut probe = x.to_vec();
    let mut worst = 0.0f64;
    for i in 0..x.len() {
        probe[i] = x[i] + h;
        let fp = problem.eval_f(&probe)?;
        probe[i] = x[i] - h;
        let fm = problem.eval_f(&probe)?;
        probe[i] = x[i];
        let cd = (fp - fm) / (2.0 * h);
        let err = (cd - analytic[i]).abs() / (1.0 + analytic[i].abs());
        if !err.is_finite() {
            return Err(Error::NonFiniteValue);
        }
        worst = worst.max(err);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn half_norm_sq(n: usize) -> ObjectiveProblem {
        ObjectiveProblem::new(
            "half_norm_sq",
            n,
            vec![1.0; n],
            Arc::new(|x: &[f64]| 0.5 * x.iter().map(|v| v * v).sum::<f64>()),
            Arc::new(|x: &[f64]| x.to_vec()),
        )
    }

    fn sum_squares(n: usize) -> ObjectiveProblem {
        ObjectiveProblem::new(
            "sum_squares",
            n,
            vec![1.0; n],
            Arc::new(|x: &[f64]| {
                x.iter()
                    .enumerate()
                    .map(|(i, v)| (i + 1) as f64 * v * v)
                    .sum()
            }),
            Arc::new(|x: &[f64]| {
                x.iter()
                    .enumerate()
                    .map(|(i, v)| 2.0 * (i + 1) as f64 * v)
                    .collect()
            }),
        )
    }

    fn rosenbrock2() -> ObjectiveProblem {
        ObjectiveProblem::new(
            "rosenbrock2",
            2,
            vec![-1.2, 1.0],
            Arc::new(|x: &[f64]| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2)),
            Arc::new(|x: &[f64]| {
                let t = x[1] - x[0] * x[0];
                vec![-400.0 * x[0] * t - 2.0 * (1.0 - x[0]), 200.0 * t]
            }),
        )
    }

    #[test]
    fn evaluate_known_values() {
        let p = sum_squares(3);
        let mut ev = Evaluator::new(&p);
        assert_eq!(ev.evaluate(&[0.0, 0.0, 0.0]).unwrap(), 0.0);

        // Direct hand evaluation of 100(x2 - x1^2)^2 + (1 - x1)^2 at (-1.2, 1).
        let rb = rosenbrock2();
        assert!((rb.eval_f(&[-1.2, 1.0]).unwrap() - 24.2).abs() < 1e-12);
    }

    #[test]
    fn wrong_length_is_dimension_mismatch() {
        let p = sum_squares(3);
        assert!(matches!(
            p.eval_f(&[1.0, 2.0]),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
        assert!(matches!(
            p.eval_g(&[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn gradient_known_values() {
        let p = half_norm_sq(2);
        assert_eq!(p.eval_g(&[3.0, 4.0]).unwrap(), vec![3.0, 4.0]);

        let rb = rosenbrock2();
        assert_eq!(rb.eval_g(&[1.0, 1.0]).unwrap(), vec![0.0, 0.0]);

        // Differentiate sum_i i*x_i^2 by hand.
        let ss = sum_squares(3);
        assert_eq!(ss.eval_g(&[1.0, 1.0, 1.0]).unwrap(), vec![2.0, 4.0, 6.0]);
    }

    #[test]
    fn counters_tick_once_per_call() {
        let p = sum_squares(3);
        let mut ev = Evaluator::new(&p);
        let x = vec![1.0, 2.0, 3.0];
        ev.evaluate(&x).unwrap();
        ev.evaluate(&x).unwrap();
        ev.gradient(&x).unwrap();
        assert_eq!(
            ev.counters(),
            EvalCounters {
                f_evals: 2,
                g_evals: 1
            }
        );
        // Errors still count as calls.
        let _ = ev.evaluate(&[1.0]);
        assert_eq!(ev.counters().f_evals, 3);
    }

    #[test]
    fn non_finite_is_an_error() {
        let p = ObjectiveProblem::new(
            "log",
            1,
            vec![1.0],
            Arc::new(|x: &[f64]| x[0].ln()),
            Arc::new(|x: &[f64]| vec![1.0 / x[0]]),
        );
        assert!(matches!(p.eval_f(&[-1.0]), Err(Error::NonFiniteValue)));
    }

    #[test]
    fn check_gradient_quadratic_is_exact() {
        // A quadratic has exact central differences up to round-off.
        let p = half_norm_sq(4);
        let err = check_gradient(&p, &[0.3, -1.7, 2.0, 0.0], 1e-6).unwrap();
        assert!(err <= 1e-9, "error {err}");
    }

    #[test]
    fn check_gradient_detects_planted_bug() {
        // Gradient off by a factor of two: error lands on the 0.5 scale.
        let p = ObjectiveProblem::new(
            "bugged",
            2,
            vec![1.0, 1.0],
            Arc::new(|x: &[f64]| 0.5 * x.iter().map(|v| v * v).sum::<f64>()),
            Arc::new(|x: &[f64]| x.iter().map(|v| 2.0 * v).collect()),
        );
        let err = check_gradient(&p, &[1.0, 2.0], 1e-6).unwrap();
        assert!(err > 1e-2, "error {err}");
    }

    #[test]
    fn check_gradient_rosenbrock_seeded_points() {
        use rand::{Rng, SeedableRng};
        let p = rosenbrock2();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let x: Vec<f64> = (0..2).map(|_| rng.random_range(-2.0..2.0)).collect();
            let err = check_gradient(&p, &x, 1e-6).unwrap();
            assert!(err <= 1e-5, "error {err} at {x:?}");
        }
    }
}
