//! Performance profiles over a (problem x solver) cost table.
//!
//! For each solver s and factor tau >= 1, the profile value is the fraction
//! of problems whose cost is within tau of the best solver's cost on that
//! problem:
//!
//! ```text
//! r(p, s)    = cost(p, s) / min_s' cost(p, s')      (solved cells)
//! rho_s(tau) = |{p : r(p, s) <= tau}| / |P|
//! ```
//!
//! Unsolved cells carry an infinite ratio and never count; problems solved
//! by no solver are dropped from `|P|`. Ties at the per-problem minimum give
//! ratio 1 to every tied solver.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One (problem, solver) outcome.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CellRecord {
    pub problem: String,
    pub solver: String,
    pub solved: bool,
    pub iterations: u64,
    pub f_evals: u64,
    pub g_evals: u64,
    pub wall_time_ms: f64,
}

/// Rectangular cost table: every (problem, solver) pair appears exactly once.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunTable {
    pub problems: Vec<String>,
    pub solvers: Vec<String>,
    pub cells: Vec<CellRecord>,
}

impl RunTable {
    /// Assemble a table from cells, sorting rows into (problem, solver)
    /// lexicographic order and verifying rectangularity.
    pub fn from_cells(
        problems: Vec<String>,
        solvers: Vec<String>,
        mut cells: Vec<CellRecord>,
    ) -> Result<Self> {
        cells.sort_by(|a, b| (a.problem.as_str(), a.solver.as_str()).cmp(&(b.problem.as_str(), b.solver.as_str())));
        let table = Self {
            problems,
            solvers,
            cells,
        };
        table.validate()?;
        Ok(table)
    }

    pub fn validate(&self) -> Result<()> {
        if self.problems.is_empty() || self.solvers.is_empty() || self.cells.is_empty() {
            return Err(Error::EmptyTable);
        }
        if self.cells.len() != self.problems.len() * self.solvers.len() {
            return Err(Error::InvalidTable(format!(
                "expected {} cells, found {}",
                self.problems.len() * self.solvers.len(),
                self.cells.len()
            )));
        }
        for p in &self.problems {
            for s in &self.solvers {
                let found = self
                    .cells
                    .iter()
                    .filter(|c| &c.problem == p && &c.solver == s)
                    .count();
                if found != 1 {
                    return Err(Error::InvalidTable(format!(
                        "cell ({p}, {s}) appears {found} times"
                    )));
                }
            }
        }
        for c in &self.cells {
            if c.solved && !(c.wall_time_ms.is_finite() && c.wall_time_ms >= 0.0) {
                return Err(Error::InvalidTable(format!(
                    "solved cell ({}, {}) has invalid wall time",
                    c.problem, c.solver
                )));
            }
        }
        Ok(())
    }

    pub fn cell(&self, problem: &str, solver: &str) -> Option<&CellRecord> {
        self.cells
            .iter()
            .find(|c| c.problem == problem && c.solver == solver)
    }
}

/// Cost dimension to profile on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Iterations,
    FEvals,
    WallTime,
}

impl Metric {
    pub fn as_str(&self) -> &'static str {
        match self {
            Metric::Iterations => "iterations",
            Metric::FEvals => "fevals",
            Metric::WallTime => "walltime",
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "iterations" | "iters" => Ok(Metric::Iterations),
            "fevals" | "f_evals" => Ok(Metric::FEvals),
            "walltime" | "wall_time" | "time" => Ok(Metric::WallTime),
            other => Err(Error::InvalidConfig(format!("unknown metric `{other}`"))),
        }
    }
}

fn cell_cost(c: &CellRecord, metric: Metric) -> f64 {
    match metric {
        // Zero-cost cells (converged at the start point) are floored to one
        // unit so ratios stay positive and finite.
        Metric::Iterations => (c.iterations.max(1)) as f64,
        Metric::FEvals => (c.f_evals.max(1)) as f64,
        // Floor at 1 ms so timer noise cannot blow up ratios.
        Metric::WallTime => c.wall_time_ms.max(1.0),
    }
}

/// Ratios-to-best per solver and problem; unsolved cells are +inf.
#[derive(Debug, Clone)]
pub struct RatioTable {
    pub solvers: Vec<String>,
    pub problems: Vec<String>,
    /// `ratios[solver_idx][problem_idx]`.
    pub ratios: Vec<Vec<f64>>,
    /// Problems no solver solved, excluded from the profile.
    pub dropped: Vec<String>,
}

/// Compute ratios-to-best for one cost metric. Problems solved by no solver
/// are dropped (reported in `dropped`); an empty or degenerate table is an
/// error.
pub fn performance_ratios(table: &RunTable, metric: Metric) -> Result<RatioTable> {
    table.validate()?;
    let mut problems = Vec::new();
    let mut dropped = Vec::new();
    let mut ratios: Vec<Vec<f64>> = vec![Vec::new(); table.solvers.len()];

    for p in &table.problems {
        let costs: Vec<Option<f64>> = table
            .solvers
            .iter()
            .map(|s| {
                let c = table.cell(p, s).expect("validated table");
                c.solved.then(|| cell_cost(c, metric))
            })
            .collect();
        let best = costs
            .iter()
            .flatten()
            .fold(f64::INFINITY, |m, &v| m.min(v));
        if !best.is_finite() {
            dropped.push(p.clone());
            continue;
        }
        problems.push(p.clone());
        for (s_idx, cost) in costs.iter().enumerate() {
            ratios[s_idx].push(match cost {
                Some(c) => c / best,
                None => f64::INFINITY,
            });
        }
    }
    if problems.is_empty() {
        return Err(Error::EmptyTable);
    }
    Ok(RatioTable {
        solvers: table.solvers.clone(),
        problems,
        ratios,
        dropped,
    })
}

/// One solver's step curve over a tau grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    pub solver: String,
    /// (tau, rho) pairs; rho is nondecreasing in tau with values in [0, 1].
    pub points: Vec<(f64, f64)>,
}

/// Default grid: 256 log-spaced points on [1, 2^10].
pub fn default_tau_grid() -> Vec<f64> {
    (0..256)
        .map(|i| 2f64.powf(10.0 * i as f64 / 255.0))
        .collect()
}

/// rho_s(tau) over the grid for one solver (by index into the ratio table).
pub fn profile_curve(ratios: &RatioTable, solver_idx: usize, tau_grid: &[f64]) -> ProfileCurve {
    assert!(!tau_grid.is_empty() && tau_grid[0] >= 1.0, "grid must start at tau >= 1");
    debug_assert!(tau_grid.windows(2).all(|w| w[0] <= w[1]), "grid must be sorted");
    let rs = &ratios.ratios[solver_idx];
    let total = ratios.problems.len() as f64;
    let points = tau_grid
        .iter()
        .map(|&tau| {
            let hit = rs.iter().filter(|&&r| r <= tau).count();
            (tau, hit as f64 / total)
        })
        .collect();
    ProfileCurve {
        solver: ratios.solvers[solver_idx].clone(),
        points,
    }
}

/// Curves for every solver in the table.
pub fn profile_curves(ratios: &RatioTable, tau_grid: &[f64]) -> Vec<ProfileCurve> {
    (0..ratios.solvers.len())
        .map(|i| profile_curve(ratios, i, tau_grid))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Csv,
    Svg,
}

impl std::str::FromStr for EmitFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(EmitFormat::Csv),
            "svg" => Ok(EmitFormat::Svg),
            other => Err(Error::InvalidConfig(format!("unknown format `{other}`"))),
        }
    }
}

/// Render curves as a document: CSV (`tau` column plus one column per
/// solver) or an SVG step plot with legend and log2 tau axis. Emission is a
/// pure function of the curves, so identical curves give byte-identical
/// documents.
pub fn emit(curves: &[ProfileCurve], format: EmitFormat) -> Result<String> {
    if curves.is_empty() {
        return Err(Error::EmptyTable);
    }
    let grid_len = curves[0].points.len();
    for c in curves {
        if c.points.len() != grid_len {
            return Err(Error::InvalidTable(
                "curves must share one tau grid".into(),
            ));
        }
    }
    Ok(match format {
        EmitFormat::Csv => emit_csv(curves),
        EmitFormat::Svg => emit_svg(curves),
    })
}

fn emit_csv(curves: &[ProfileCurve]) -> String {
    let mut out = String::from("tau");
    for c in curves {
        out.push(',');
        out.push_str(&c.solver);
    }
    out.push('\n');
    for i in 0..curves[0].points.len() {
        out.push_str(&format!("{}", curves[0].points[i].0));
        for c in curves {
            out.push_str(&format!(",{}", c.points[i].1));
        }
        out.push('\n');
    }
    out
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

fn emit_svg(curves: &[ProfileCurve]) -> String {
    let (w, h) = (800.0, 520.0);
    let (left, right, top, bottom) = (70.0, 170.0, 30.0, 60.0);
    let pw = w - left - right;
    let ph = h - top - bottom;
    let tau_max = curves[0].points.last().unwrap().0;
    let log_max = tau_max.log2().max(1e-9);
    let xmap = |tau: f64| left + pw * (tau.log2() / log_max).clamp(0.0, 1.0);
    let ymap = |rho: f64| top + ph * (1.0 - rho);

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    ));
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    // Axes.
    s.push_str(&format!(
        "<line x1=\"{left}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        top + ph,
        left + pw,
        top + ph
    ));
    s.push_str(&format!(
        "<line x1=\"{left}\" y1=\"{top}\" x2=\"{left}\" y2=\"{}\" stroke=\"black\"/>\n",
        top + ph
    ));
    // y ticks at 0, 0.2, ..., 1.
    for i in 0..=5 {
        let rho = i as f64 / 5.0;
        let y = ymap(rho);
        s.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y:.2}\" x2=\"{left}\" y2=\"{y:.2}\" stroke=\"black\"/>\n",
            left - 5.0
        ));
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{:.1}</text>\n",
            left - 9.0,
            y + 4.0,
            rho
        ));
        if i > 0 {
            s.push_str(&format!(
                "<line x1=\"{left}\" y1=\"{y:.2}\" x2=\"{}\" y2=\"{y:.2}\" stroke=\"#dddddd\"/>\n",
                left + pw
            ));
        }
    }
    // x ticks at integer powers of two.
    let max_pow = log_max.round() as i32;
    for pow in 0..=max_pow {
        let tau = 2f64.powi(pow);
        if tau > tau_max * 1.0001 {
            break;
        }
        let x = xmap(tau);
        s.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{}\" x2=\"{x:.2}\" y2=\"{}\" stroke=\"black\"/>\n",
            top + ph,
            top + ph + 5.0
        ));
        s.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
            top + ph + 20.0,
            tau
        ));
    }
    s.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">performance ratio tau (log2 scale)</text>\n",
        left + pw / 2.0,
        top + ph + 45.0
    ));
    s.push_str(&format!(
        "<text x=\"18\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">fraction of problems rho(tau)</text>\n",
        top + ph / 2.0,
        top + ph / 2.0
    ));
    // Step curves.
    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut path = String::new();
        for (j, &(tau, rho)) in c.points.iter().enumerate() {
            let (x, y) = (xmap(tau), ymap(rho));
            if j == 0 {
                path.push_str(&format!("M {x:.2} {y:.2}"));
            } else {
                // Horizontal-then-vertical: rho is right-continuous in tau.
                path.push_str(&format!(" H {x:.2} V {y:.2}"));
            }
        }
        s.push_str(&format!(
            "<path d=\"{path}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.8\"/>\n"
        ));
    }
    // Legend.
    let lx = left + pw + 18.0;
    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = top + 14.0 + 22.0 * i as f64;
        s.push_str(&format!(
            "<line x1=\"{lx}\" y1=\"{y:.2}\" x2=\"{}\" y2=\"{y:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            lx + 26.0
        ));
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{:.2}\" font-size=\"13\">{}</text>\n",
            lx + 32.0,
            y + 4.0,
            c.solver
        ));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(p: &str, s: &str, solved: bool, iters: u64) -> CellRecord {
        CellRecord {
            problem: p.into(),
            solver: s.into(),
            solved,
            iterations: iters,
            f_evals: iters * 2,
            g_evals: iters,
            wall_time_ms: iters as f64,
        }
    }

    fn two_by_two() -> RunTable {
        RunTable::from_cells(
            vec!["p1".into(), "p2".into()],
            vec!["a".into(), "b".into()],
            vec![
                cell("p1", "a", true, 1),
                cell("p1", "b", true, 2),
                cell("p2", "a", true, 4),
                cell("p2", "b", true, 2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn single_solver_all_solved_ratios_are_one() {
        let t = RunTable::from_cells(
            vec!["p1".into(), "p2".into()],
            vec!["a".into()],
            vec![cell("p1", "a", true, 3), cell("p2", "a", true, 7)],
        )
        .unwrap();
        let r = performance_ratios(&t, Metric::Iterations).unwrap();
        assert_eq!(r.ratios[0], vec![1.0, 1.0]);
    }

    #[test]
    fn hand_divided_ratios() {
        // Costs [[1,2],[4,2]] over (problem, solver): a -> (1, 2), b -> (2, 1).
        let r = performance_ratios(&two_by_two(), Metric::Iterations).unwrap();
        assert_eq!(r.ratios[0], vec![1.0, 2.0]);
        assert_eq!(r.ratios[1], vec![2.0, 1.0]);
    }

    #[test]
    fn unsolved_cell_gets_infinite_ratio() {
        let t = RunTable::from_cells(
            vec!["p1".into()],
            vec!["a".into(), "b".into()],
            vec![cell("p1", "a", true, 1), cell("p1", "b", false, 0)],
        )
        .unwrap();
        let r = performance_ratios(&t, Metric::Iterations).unwrap();
        assert_eq!(r.ratios[1][0], f64::INFINITY);
    }

    #[test]
    fn problems_unsolved_by_all_are_dropped() {
        let t = RunTable::from_cells(
            vec!["p1".into(), "p2".into()],
            vec!["a".into(), "b".into()],
            vec![
                cell("p1", "a", true, 1),
                cell("p1", "b", true, 2),
                cell("p2", "a", false, 0),
                cell("p2", "b", false, 0),
            ],
        )
        .unwrap();
        let r = performance_ratios(&t, Metric::Iterations).unwrap();
        assert_eq!(r.problems, vec!["p1".to_string()]);
        assert_eq!(r.dropped, vec!["p2".to_string()]);
    }

    #[test]
    fn curve_hand_counts() {
        let r = performance_ratios(&two_by_two(), Metric::Iterations).unwrap();
        // Solver a has ratios (1, 2): rho(1) = 0.5, rho(2) = 1.
        let c = profile_curve(&r, 0, &[1.0, 2.0]);
        assert_eq!(c.points, vec![(1.0, 0.5), (2.0, 1.0)]);

        // All-ratios-one gives rho(1) = 1.
        let t = RunTable::from_cells(
            vec!["p".into()],
            vec!["a".into()],
            vec![cell("p", "a", true, 5)],
        )
        .unwrap();
        let r1 = performance_ratios(&t, Metric::Iterations).unwrap();
        assert_eq!(profile_curve(&r1, 0, &[1.0]).points, vec![(1.0, 1.0)]);
    }

    #[test]
    fn failed_everything_curve_is_zero() {
        let t = RunTable::from_cells(
            vec!["p1".into(), "p2".into()],
            vec!["a".into(), "b".into()],
            vec![
                cell("p1", "a", true, 1),
                cell("p1", "b", false, 0),
                cell("p2", "a", true, 3),
                cell("p2", "b", false, 0),
            ],
        )
        .unwrap();
        let r = performance_ratios(&t, Metric::Iterations).unwrap();
        let c = profile_curve(&r, 1, &default_tau_grid());
        assert!(c.points.iter().all(|&(_, rho)| rho == 0.0));
    }

    #[test]
    fn csv_shape_and_determinism() {
        let r = performance_ratios(&two_by_two(), Metric::Iterations).unwrap();
        let curves = vec![profile_curve(&r, 0, &[1.0, 2.0])];
        let doc = emit(&curves, EmitFormat::Csv).unwrap();
        let lines: Vec<&str> = doc.lines().collect();
        assert_eq!(lines.len(), 3); // header + 2 grid rows
        assert_eq!(lines[0], "tau,a");
        assert_eq!(lines[1].split(',').count(), 2);

        let again = emit(&curves, EmitFormat::Csv).unwrap();
        assert_eq!(doc, again);
        let svg = emit(&profile_curves(&r, &default_tau_grid()), EmitFormat::Svg).unwrap();
        let svg2 = emit(&profile_curves(&r, &default_tau_grid()), EmitFormat::Svg).unwrap();
        assert_eq!(svg, svg2);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("</svg>"));
    }

    #[test]
    fn wall_time_floor() {
        let mut c1 = cell("p", "a", true, 1);
        c1.wall_time_ms = 0.0001;
        let mut c2 = cell("p", "b", true, 1);
        c2.wall_time_ms = 0.5;
        let t = RunTable::from_cells(
            vec!["p".into()],
            vec!["a".into(), "b".into()],
            vec![c1, c2],
        )
        .unwrap();
        let r = performance_ratios(&t, Metric::WallTime).unwrap();
        // Both floor to 1 ms: a tie.
        assert_eq!(r.ratios[0][0], 1.0);
        assert_eq!(r.ratios[1][0], 1.0);
    }

    #[test]
    fn empty_and_malformed_tables_error() {
        let t = RunTable {
            problems: vec![],
            solvers: vec![],
            cells: vec![],
        };
        assert!(matches!(
            performance_ratios(&t, Metric::Iterations),
            Err(Error::EmptyTable)
        ));
        let t = RunTable {
            problems: vec!["p".into()],
            solvers: vec!["a".into(), "b".into()],
            cells: vec![cell("p", "a", true, 1)],
        };
        assert!(t.validate().is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn curves_are_monotone_in_unit_range(
                costs in proptest::collection::vec(
                    proptest::collection::vec((1u64..500, proptest::bool::ANY), 3),
                    1..12
                )
            ) {
                let problems: Vec<String> = (0..costs.len()).map(|i| format!("p{i}")).collect();
                let solvers: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
                let mut cells = Vec::new();
                let mut any_solved = false;
                for (pi, row) in costs.iter().enumerate() {
                    for (si, &(c, solved)) in row.iter().enumerate() {
                        any_solved |= solved;
                        cells.push(CellRecord {
                            problem: problems[pi].clone(),
                            solver: solvers[si].clone(),
                            solved,
                            iterations: c,
                            f_evals: c,
                            g_evals: c,
                            wall_time_ms: c as f64,
                        });
                    }
                }
                prop_assume!(any_solved);
                let t = RunTable::from_cells(problems, solvers, cells).unwrap();
                let r = performance_ratios(&t, Metric::Iterations).unwrap();
                for curve in profile_curves(&r, &default_tau_grid()) {
                    let mut prev = -1.0;
                    for (_, rho) in curve.points {
                        prop_assert!((0.0..=1.0).contains(&rho));
                        prop_assert!(rho >= prev);
                        prev = rho;
                    }
                }
                // Every counted problem credits at least one solver at tau = 1.
                let rho1_sum: f64 = profile_curves(&r, &[1.0])
                    .iter()
                    .map(|c| c.points[0].1)
                    .sum();
                prop_assert!(rho1_sum >= 1.0 - 1e-12);
            }
        }
    }
}
