//! Registry of standard unconstrained test functions with analytic
//! gradients, scalable dimensions and literature-standard start points.
//!
//! Each entry instantiates at any supported dimension; the desk-scale grid
//! crosses the registry with dims {2, 10, 100, 1000}. Start points follow
//! the usual collection conventions and are documented on each function in
//! [`functions`].

mod functions;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::objective::{check_gradient, ObjectiveProblem};

use functions as fx;

/// Which dimensions a registry entry supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimRule {
    /// Any n >= 1 (n >= 2 for the tridiagonal chain).
    Any,
    /// Even n (pairwise-extended functions).
    Even,
    /// Multiples of four (quadruple-extended functions).
    MultipleOf4,
    /// A single fixed dimension.
    Fixed(usize),
}

impl DimRule {
    pub fn supports(&self, n: usize) -> bool {
        match self {
            DimRule::Any => n >= 2,
            DimRule::Even => n >= 2 && n.is_multiple_of(2),
            DimRule::MultipleOf4 => n >= 4 && n.is_multiple_of(4),
            DimRule::Fixed(m) => n == *m,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            DimRule::Any => "any n >= 2".into(),
            DimRule::Even => "even n".into(),
            DimRule::MultipleOf4 => "n divisible by 4".into(),
            DimRule::Fixed(m) => format!("n = {m}"),
        }
    }
}

struct FunctionDef {
    id: &'static str,
    rule: DimRule,
    start: fn(usize) -> Vec<f64>,
    f_star: fn(usize) -> Option<f64>,
    f: fn(&[f64]) -> f64,
    g: fn(&[f64]) -> Vec<f64>,
}

fn repeat_pair(a: f64, b: f64) -> impl Fn(usize) -> Vec<f64> {
    move |n| (0..n).map(|i| if i % 2 == 0 { a } else { b }).collect()
}

fn constant(c: f64) -> impl Fn(usize) -> Vec<f64> {
    move |n| vec![c; n]
}

// Global minimum of the six-hump camel function, at
// (+-0.08984201368301331, -+0.7126564032704135).
const CAMEL6_MIN: f64 = -1.0316284534898774;

fn registry() -> &'static [FunctionDef] {
    // Kept sorted by id; `list_functions` relies on it.
    static DEFS: &[FunctionDef] = &[
        FunctionDef {
            id: "booth",
            rule: DimRule::Fixed(2),
            start: |_| vec![0.0, 0.0],
            f_star: |_| Some(0.0),
            f: fx::booth_f,
            g: fx::booth_g,
        },
        FunctionDef {
            id: "camel6",
            rule: DimRule::Fixed(2),
            start: |_| vec![0.5, 0.5],
            f_star: |_| Some(CAMEL6_MIN),
            f: fx::camel6_f,
            g: fx::camel6_g,
        },
        FunctionDef {
            id: "diagonal1",
            rule: DimRule::Any,
            start: |n| vec![1.0 / n as f64; n],
            f_star: |n| {
                Some(
                    (1..=n)
                        .map(|i| i as f64 - i as f64 * (i as f64).ln())
                        .sum(),
                )
            },
            f: fx::diagonal1_f,
            g: fx::diagonal1_g,
        },
        FunctionDef {
            id: "diagonal2",
            rule: DimRule::Any,
            start: |n| (1..=n).map(|i| 1.0 / i as f64).collect(),
            f_star: |n| {
                Some(
                    (1..=n)
                        .map(|i| (1.0 + (i as f64).ln()) / i as f64)
                        .sum(),
                )
            },
            f: fx::diagonal2_f,
            g: fx::diagonal2_g,
        },
        FunctionDef {
            id: "ext_beale",
            rule: DimRule::Even,
            start: |n| repeat_pair(1.0, 0.8)(n),
            f_star: |_| Some(0.0),
            f: fx::ext_beale_f,
            g: fx::ext_beale_g,
        },
        FunctionDef {
            id: "ext_denschnb",
            rule: DimRule::Even,
            start: |n| constant(1.0)(n),
            f_star: |_| Some(0.0),
            f: fx::ext_denschnb_f,
            g: fx::ext_denschnb_g,
        },
        FunctionDef {
            id: "ext_himmelblau",
            rule: DimRule::Even,
            start: |n| constant(1.0)(n),
            f_star: |_| Some(0.0),
            f: fx::ext_himmelblau_f,
            g: fx::ext_himmelblau_g,
        },
        FunctionDef {
            id: "ext_penalty",
            rule: DimRule::Any,
            start: |n| (1..=n).map(|i| i as f64).collect(),
            f_star: |_| None,
            f: fx::ext_penalty_f,
            g: fx::ext_penalty_g,
        },
        FunctionDef {
            id: "ext_powell",
            rule: DimRule::MultipleOf4,
            start: |n| {
                (0..n)
                    .map(|i| match i % 4 {
                        0 => 3.0,
                        1 => -1.0,
                        2 => 0.0,
                        _ => 1.0,
                    })
                    .collect()
            },
            f_star: |_| Some(0.0),
            f: fx::ext_powell_f,
            g: fx::ext_powell_g,
        },
        FunctionDef {
            id: "ext_rosenbrock",
            rule: DimRule::Even,
            start: |n| repeat_pair(-1.2, 1.0)(n),
            f_star: |_| Some(0.0),
            f: fx::ext_rosenbrock_f,
            g: fx::ext_rosenbrock_g,
        },
        FunctionDef {
            id: "ext_tridiagonal1",
            rule: DimRule::Even,
            start: |n| constant(2.0)(n),
            f_star: |_| Some(0.0),
            f: fx::ext_tridiagonal1_f,
            g: fx::ext_tridiagonal1_g,
        },
        FunctionDef {
            id: "ext_white_holst",
            rule: DimRule::Even,
            start: |n| repeat_pair(-1.2, 1.0)(n),
            f_star: |_| Some(0.0),
            f: fx::ext_white_holst_f,
            g: fx::ext_white_holst_g,
        },
        FunctionDef {
            id: "gen_tridiagonal1",
            rule: DimRule::Any,
            start: |n| constant(2.0)(n),
            f_star: |_| None,
            f: fx::gen_tridiagonal1_f,
            g: fx::gen_tridiagonal1_g,
        },
        FunctionDef {
            id: "hager",
            rule: DimRule::Any,
            start: |n| constant(1.0)(n),
            f_star: |n| {
                Some(
                    (1..=n)
                        .map(|i| {
                            let si = (i as f64).sqrt();
                            si * (1.0 - 0.5 * (i as f64).ln())
                        })
                        .sum(),
                )
            },
            f: fx::hager_f,
            g: fx::hager_g,
        },
        FunctionDef {
            id: "perturbed_quadratic",
            rule: DimRule::Any,
            start: |n| constant(0.5)(n),
            f_star: |_| Some(0.0),
            f: fx::perturbed_quadratic_f,
            g: fx::perturbed_quadratic_g,
        },
        FunctionDef {
            id: "qf1",
            rule: DimRule::Any,
            start: |n| constant(0.5)(n),
            f_star: |n| Some(-0.5 / n as f64),
            f: fx::qf1_f,
            g: fx::qf1_g,
        },
        FunctionDef {
            id: "qp1",
            rule: DimRule::Any,
            start: |n| constant(1.0)(n),
            f_star: |_| None,
            f: fx::qp1_f,
            g: fx::qp1_g,
        },
        FunctionDef {
            id: "raydan1",
            rule: DimRule::Any,
            start: |n| constant(1.0)(n),
            f_star: |n| Some(n as f64 * (n as f64 + 1.0) / 20.0),
            f: fx::raydan1_f,
            g: fx::raydan1_g,
        },
        FunctionDef {
            id: "raydan2",
            rule: DimRule::Any,
            start: |n| constant(1.0)(n),
            f_star: |n| Some(n as f64),
            f: fx::raydan2_f,
            g: fx::raydan2_g,
        },
        FunctionDef {
            id: "sum_squares",
            rule: DimRule::Any,
            start: |n| constant(1.0)(n),
            f_star: |_| Some(0.0),
            f: fx::sum_squares_f,
            g: fx::sum_squares_g,
        },
    ];
    DEFS
}

/// One (function, dimension) pairing ready to solve.
#[derive(Debug, Clone)]
pub struct ProblemInstance {
    pub id: String,
    pub n: usize,
    pub f_star: Option<f64>,
    problem: ObjectiveProblem,
}

impl ProblemInstance {
    pub fn problem(&self) -> &ObjectiveProblem {
        &self.problem
    }

    /// Stable instance key, e.g. `ext_rosenbrock_n100`.
    pub fn key(&self) -> String {
        format!("{}_n{}", self.id, self.n)
    }
}

/// Default grid dimensions for the desk-scale sweep.
pub const DEFAULT_DIMS: [usize; 4] = [2, 10, 100, 1000];

/// Stable, sorted listing of every registered function and its dimension
/// rule.
pub fn list_functions() -> Vec<(&'static str, DimRule)> {
    registry().iter().map(|d| (d.id, d.rule)).collect()
}

/// Build the problem for `(function_id, n)` with its standard start point.
pub fn instantiate(function_id: &str, n: usize) -> Result<ProblemInstance> {
    let def = registry()
        .iter()
        .find(|d| d.id == function_id)
        .ok_or_else(|| Error::UnknownFunction(function_id.to_string()))?;
    if !def.rule.supports(n) {
        return Err(Error::UnsupportedDimension {
            id: function_id.to_string(),
            n,
        });
    }
    let (f, g) = (def.f, def.g);
    let problem = ObjectiveProblem::new(
        format!("{}_n{}", def.id, n),
        n,
        (def.start)(n),
        Arc::new(f),
        Arc::new(g),
    );
    Ok(ProblemInstance {
        id: def.id.to_string(),
        n,
        f_star: (def.f_star)(n),
        problem,
    })
}

/// Cross product of the registry with `dims`, filtered to supported
/// combinations, in (id, n) order.
pub fn full_grid(dims: &[usize]) -> Vec<ProblemInstance> {
    let mut out = Vec::new();
    for def in registry() {
        for &n in dims {
            if def.rule.supports(n) {
                out.push(instantiate(def.id, n).expect("registry entry must instantiate"));
            }
        }
    }
    out
}

/// Seeded probe points for gradient checking: 10 draws from the box
/// [-0.5, 0.5]^n, seeded per (id, n) so reruns see the same points. The box
/// keeps objective values moderate, which central differences at a fixed
/// step need in order to resolve small gradient components.
pub fn seeded_check_points(function_id: &str, n: usize, count: usize) -> Vec<Vec<f64>> {
    let seed = function_id
        .bytes()
        .fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(b as u64))
        .wrapping_add(n as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..n).map(|_| rng.random_range(-0.5..0.5)).collect())
        .collect()
}

/// Worst relative gradient error for an instance: the 10 seeded points with
/// step `h`, plus the standard start with the step scaled to its magnitude
/// (starts like (1, 2, ..., n) need a coarser step to stay above the
/// cancellation floor).
pub fn gradient_check_worst(inst: &ProblemInstance, h: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x in seeded_check_points(&inst.id, inst.n, 10) {
        worst = worst.max(check_gradient(&inst.problem, &x, h)?);
    }
    let x0 = inst.problem.x0();
    let scale = 1.0 + x0.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    worst = worst.max(check_gradient(&inst.problem, x0, h * scale)?);
    Ok(worst)
}

/// Registry manifest: id, dimension rule, start rule and minimum value per
/// default dimension, as JSON.
pub fn manifest_json() -> serde_json::Value {
    let entries: Vec<serde_json::Value> = registry()
        .iter()
        .map(|d| {
            let dims: Vec<usize> = DEFAULT_DIMS
                .iter()
                .copied()
                .filter(|&n| d.rule.supports(n))
                .collect();
            let f_star: Vec<serde_json::Value> = dims
                .iter()
                .map(|&n| match (d.f_star)(n) {
                    Some(v) => serde_json::json!({ "n": n, "f_star": v }),
                    None => serde_json::json!({ "n": n, "f_star": null }),
                })
                .collect();
            serde_json::json!({
                "id": d.id,
                "dims": d.rule.describe(),
                "default_dims": dims,
                "start": (d.start)(if d.rule.supports(2) { 2 } else { 4 }),
                "f_star": f_star,
            })
        })
        .collect();
    serde_json::json!({ "functions": entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_is_stable_and_complete() {
        let l1 = list_functions();
        let l2 = list_functions();
        assert_eq!(l1, l2);
        assert!(l1.len() >= 18, "registry has {} entries", l1.len());
        assert!(l1.iter().any(|(id, _)| *id == "ext_rosenbrock"));
        let mut ids: Vec<&str> = l1.iter().map(|(id, _)| *id).collect();
        let sorted = {
            let mut s = ids.clone();
            s.sort_unstable();
            s
        };
        assert_eq!(ids, sorted, "listing must be sorted");
        ids.dedup();
        assert_eq!(ids.len(), l1.len());
    }

    #[test]
    fn every_entry_supports_a_default_dim() {
        for (id, rule) in list_functions() {
            assert!(
                DEFAULT_DIMS.iter().any(|&n| rule.supports(n)),
                "{id} supports no default dimension"
            );
        }
    }

    #[test]
    fn rosenbrock_instance_matches_convention() {
        let inst = instantiate("ext_rosenbrock", 2).unwrap();
        assert_eq!(inst.problem().x0(), &[-1.2, 1.0]);
        assert!((inst.problem().eval_f(&[-1.2, 1.0]).unwrap() - 24.2).abs() < 1e-12);
        assert_eq!(inst.f_star, Some(0.0));
        assert_eq!(inst.problem().eval_g(&[1.0, 1.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn sum_squares_minimum_is_zero() {
        let inst = instantiate("sum_squares", 4).unwrap();
        assert_eq!(inst.f_star, Some(0.0));
        assert_eq!(inst.problem().eval_f(&[0.0; 4]).unwrap(), 0.0);
    }

    #[test]
    fn unsupported_and_unknown() {
        assert!(matches!(
            instantiate("ext_rosenbrock", 3),
            Err(Error::UnsupportedDimension { .. })
        ));
        assert!(matches!(
            instantiate("no_such_function", 2),
            Err(Error::UnknownFunction(_))
        ));
    }

    #[test]
    fn grid_dimensions() {
        let g2 = full_grid(&[2]);
        // Every function except the quadruple-extended one supports n = 2.
        assert_eq!(g2.len(), list_functions().len() - 1);
        // Frozen size of the default desk-scale grid.
        let grid = full_grid(&DEFAULT_DIMS);
        assert_eq!(grid.len(), 72);
        assert!(grid.len() >= 60);
    }

    #[test]
    fn instantiation_is_pure() {
        let a = instantiate("hager", 10).unwrap();
        let b = instantiate("hager", 10).unwrap();
        assert_eq!(a.problem().x0(), b.problem().x0());
        let x = seeded_check_points("hager", 10, 1).remove(0);
        assert_eq!(
            a.problem().eval_f(&x).unwrap(),
            b.problem().eval_f(&x).unwrap()
        );
    }

    #[test]
    fn gradients_match_central_differences_small_dims() {
        for inst in full_grid(&[2, 10]) {
            let worst = gradient_check_worst(&inst, 1e-6).unwrap();
            assert!(worst <= 1e-5, "{} n={}: error {worst}", inst.id, inst.n);
        }
    }

    #[test]
    fn analytic_minima_are_attained_by_formula() {
        // Where the minimizer is known in closed form, f at it must equal the
        // registered f_star.
        let inst = instantiate("diagonal1", 5).unwrap();
        let xstar: Vec<f64> = (1..=5).map(|i| (i as f64).ln()).collect();
        assert!((inst.problem().eval_f(&xstar).unwrap() - inst.f_star.unwrap()).abs() < 1e-12);

        let inst = instantiate("diagonal2", 5).unwrap();
        let xstar: Vec<f64> = (1..=5).map(|i| -(i as f64).ln()).collect();
        assert!((inst.problem().eval_f(&xstar).unwrap() - inst.f_star.unwrap()).abs() < 1e-12);

        let inst = instantiate("hager", 5).unwrap();
        let xstar: Vec<f64> = (1..=5).map(|i| 0.5 * (i as f64).ln()).collect();
        assert!((inst.problem().eval_f(&xstar).unwrap() - inst.f_star.unwrap()).abs() < 1e-12);

        let inst = instantiate("qf1", 5).unwrap();
        let mut xstar = vec![0.0; 5];
        xstar[4] = 1.0 / 5.0;
        assert!((inst.problem().eval_f(&xstar).unwrap() - inst.f_star.unwrap()).abs() < 1e-15);

        let inst = instantiate("camel6", 2).unwrap();
        let xstar = [0.08984201368301331, -0.7126564032704135];
        let v = inst.problem().eval_f(&xstar).unwrap();
        assert!((v - CAMEL6_MIN).abs() < 1e-12, "camel6 min {v}");
    }

    #[test]
    fn booth_minimum() {
        let inst = instantiate("booth", 2).unwrap();
        assert_eq!(inst.problem().eval_f(&[1.0, 3.0]).unwrap(), 0.0);
        assert_eq!(inst.problem().eval_g(&[1.0, 3.0]).unwrap(), vec![0.0, 0.0]);
    }
}
