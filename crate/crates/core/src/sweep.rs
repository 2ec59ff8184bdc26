//! Parallel benchmark runner: every grid instance crossed with a set of
//! methods, collected into a [`RunTable`].
//!
//! Individual solves are sequential and share nothing mutable, so they run
//! freely in parallel; results are merged in (problem, solver) lexicographic
//! order, which keeps every output deterministic regardless of scheduling
//! (wall times excepted).

use rayon::prelude::*;

use crate::benchsuite::ProblemInstance;
use crate::profiles::{CellRecord, RunTable};
use crate::solver::{solve_traced, AuditReport, IterationRecord, Method, SolveStatus, SolverConfig};
use crate::Result;

/// Everything recorded about one (instance, method) run.
pub struct RunOutcome {
    pub problem: String,
    pub solver: String,
    pub status: SolveStatus,
    pub cell: CellRecord,
    pub trace: Vec<IterationRecord>,
    pub audit: Option<AuditReport>,
    pub f_final: f64,
    pub g_norm_final: f64,
}

pub struct SweepOutcome {
    pub table: RunTable,
    pub runs: Vec<RunOutcome>,
}

/// Run `methods` over `instances` with the shared base configuration (its
/// `method` field is overridden per run).
pub fn run_sweep(
    instances: &[ProblemInstance],
    methods: &[Method],
    base: &SolverConfig,
) -> Result<SweepOutcome> {
    let mut tasks: Vec<(&ProblemInstance, Method)> = Vec::new();
    for inst in instances {
        for &m in methods {
            tasks.push((inst, m));
        }
    }

    let mut runs: Vec<RunOutcome> = tasks
        .par_iter()
        .map(|(inst, method)| -> Result<RunOutcome> {
            let mut cfg = *base;
            cfg.method = *method;
            let r = solve_traced(inst.problem(), &cfg, None)?;
            let solved = r.status == SolveStatus::GradientConverged;
            Ok(RunOutcome {
                problem: inst.key(),
                solver: method.to_string(),
                status: r.status,
                cell: CellRecord {
                    problem: inst.key(),
                    solver: method.to_string(),
                    solved,
                    iterations: r.iterations as u64,
                    f_evals: r.counters.f_evals,
                    g_evals: r.counters.g_evals,
                    wall_time_ms: r.wall_time.as_secs_f64() * 1e3,
                },
                trace: r.trace.unwrap_or_default(),
                audit: r.audit,
                f_final: r.f_final,
                g_norm_final: r.g_norm_final,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    runs.sort_by(|a, b| (a.problem.as_str(), a.solver.as_str()).cmp(&(b.problem.as_str(), b.solver.as_str())));

    let problems: Vec<String> = {
        let mut p: Vec<String> = instances.iter().map(|i| i.key()).collect();
        p.sort_unstable();
        p
    };
    let solvers: Vec<String> = {
        let mut s: Vec<String> = methods.iter().map(|m| m.to_string()).collect();
        s.sort_unstable();
        s
    };
    let cells: Vec<CellRecord> = runs.iter().map(|r| r.cell.clone()).collect();
    let table = RunTable::from_cells(problems, solvers, cells)?;
    Ok(SweepOutcome { table, runs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchsuite::full_grid;

    #[test]
    fn tiny_sweep_is_rectangular_and_deterministic() {
        let instances = full_grid(&[2]);
        let methods = [Method::Awhm, Method::Hrm];
        let base = SolverConfig::default();
        let a = run_sweep(&instances, &methods, &base).unwrap();
        assert_eq!(a.table.solvers.len(), 2);
        assert_eq!(a.table.cells.len(), instances.len() * 2);
        a.table.validate().unwrap();

        let b = run_sweep(&instances, &methods, &base).unwrap();
        for (ca, cb) in a.table.cells.iter().zip(&b.table.cells) {
            assert_eq!(ca.problem, cb.problem);
            assert_eq!(ca.solver, cb.solver);
            assert_eq!(ca.solved, cb.solved);
            assert_eq!(ca.iterations, cb.iterations);
            assert_eq!(ca.f_evals, cb.f_evals);
        }
    }
}
