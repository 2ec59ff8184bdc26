//! Command-line entry point: single solves, benchmark sweeps, profile
//! generation, gradient checks and the synthetic tagging demo.
//!
//! Exit codes for `solve`: 0 converged, 2 iteration limit, 3 line-search
//! failure, 4 non-finite objective; 1 for usage errors everywhere.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use cgkit::benchsuite::{self, DEFAULT_DIMS};
use cgkit::manifest::{apply_overrides, parse_config_file, RunManifest};
use cgkit::mlapp::{self, AdamParams};
use cgkit::profiles::{
    default_tau_grid, emit, performance_ratios, profile_curves, EmitFormat, Metric, RunTable,
};
use cgkit::solver::{result_to_json, trace_to_csv, Method, SolveStatus, SolverConfig};
use cgkit::sweep::run_sweep;
use cgkit::{Error, Result};

#[derive(Parser)]
#[command(
    name = "cgkit",
    version,
    about = "Nonlinear conjugate gradient toolkit: solves, benchmarks, profiles, gradient checks and a tagging demo",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Solver tunables shared by `solve` and `bench`. Precedence: defaults,
/// then `--config` file, then these flags.
#[derive(Args, Debug, Clone)]
struct ConfigArgs {
    /// Flat key=value config file mirroring the solver fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sufficient-decrease coefficient.
    #[arg(long)]
    delta: Option<f64>,
    /// Curvature coefficient.
    #[arg(long)]
    sigma: Option<f64>,
    /// Gradient tolerance.
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    /// Restart threshold.
    #[arg(long)]
    nu: Option<f64>,
    /// HRM mixing weight.
    #[arg(long)]
    tau: Option<f64>,
    /// NHS parameter.
    #[arg(long)]
    u: Option<f64>,
    /// Conjugacy scale of the hybrid weight.
    #[arg(long)]
    t: Option<f64>,
    /// Line-search evaluation budget.
    #[arg(long)]
    ls_max_evals: Option<usize>,
    /// Line-search step cap.
    #[arg(long)]
    ls_alpha_max: Option<f64>,
}

impl ConfigArgs {
    fn build(&self, method: Option<&str>) -> Result<SolverConfig> {
        let mut cfg = SolverConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)?;
            apply_overrides(&mut cfg, &parse_config_file(&text)?)?;
        }
        let mut flags: BTreeMap<String, String> = BTreeMap::new();
        if let Some(m) = method {
            flags.insert("method".into(), m.to_string());
        }
        macro_rules! put {
            ($key:literal, $field:expr) => {
                if let Some(v) = $field {
                    flags.insert($key.into(), v.to_string());
                }
            };
        }
        put!("delta", self.delta);
        put!("sigma", self.sigma);
        put!("epsilon", self.epsilon);
        put!("max_iter", self.max_iter);
        put!("nu", self.nu);
        put!("tau", self.tau);
        put!("u", self.u);
        put!("t", self.t);
        put!("ls_max_evals", self.ls_max_evals);
        put!("ls_alpha_max", self.ls_alpha_max);
        apply_overrides(&mut cfg, &flags)?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one registry problem and print the result as JSON.
    Solve {
        /// Registry function id (see `checkgrad --function all` for the list).
        #[arg(long)]
        function: String,
        /// Problem dimension.
        #[arg(long)]
        n: usize,
        /// fr | prp | hs | hrm | nhs | awhm | sd.
        #[arg(long, default_value = "awhm")]
        method: String,
        /// Write the per-iteration trace CSV here.
        #[arg(long)]
        trace_csv: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Run methods x dims over the whole registry; write runtable.json,
    /// per-run trace CSVs and a manifest.
    Bench {
        /// Comma-separated method list.
        #[arg(long, value_delimiter = ',', default_value = "awhm,hrm,nhs")]
        methods: Vec<String>,
        /// Comma-separated dimensions.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_DIMS.to_vec())]
        dims: Vec<usize>,
        #[arg(long)]
        out_dir: PathBuf,
        /// Re-evaluate Wolfe conditions at every accepted step.
        #[arg(long)]
        audit: bool,
        /// Replay the configuration recorded in an earlier manifest.
        #[arg(long)]
        from_manifest: Option<PathBuf>,
        /// Allow writing into a directory that already holds a run.
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Turn a runtable into a Dolan-More profile document.
    Profile {
        #[arg(long)]
        runtable: PathBuf,
        /// iterations | fevals | walltime.
        #[arg(long, default_value = "iterations")]
        metric: String,
        /// csv | svg.
        #[arg(long, default_value = "svg")]
        format: String,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check analytic gradients against central differences.
    Checkgrad {
        /// Registry id, or "all".
        #[arg(long, default_value = "all")]
        function: String,
        /// Dimension; when omitted, every default dim is checked.
        #[arg(long)]
        n: Option<usize>,
        /// Central-difference step.
        #[arg(long, default_value_t = 1e-6)]
        h: f64,
    },
    /// Generate synthetic BIO data, train with the chosen method and the
    /// adaptive-moment baseline, and write both metric reports.
    Mlapp {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value = "awhm")]
        method: String,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 200)]
        sentences: usize,
        #[arg(long, default_value_t = 1e-4)]
        l2: f64,
        #[arg(long, default_value_t = 300)]
        adam_steps: usize,
        #[arg(long, default_value_t = 0.3)]
        adam_lr: f64,
        #[arg(long)]
        from_manifest: Option<PathBuf>,
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Solve {
            function,
            n,
            method,
            trace_csv,
            config,
        } => cmd_solve(&function, n, &method, trace_csv.as_deref(), &config),
        Cmd::Bench {
            methods,
            dims,
            out_dir,
            audit,
            from_manifest,
            force,
            config,
        } => cmd_bench(methods, dims, &out_dir, audit, from_manifest.as_deref(), force, &config),
        Cmd::Profile {
            runtable,
            metric,
            format,
            out,
        } => cmd_profile(&runtable, &metric, &format, out.as_deref()),
        Cmd::Checkgrad { function, n, h } => cmd_checkgrad(&function, n, h),
        Cmd::Mlapp {
            seed,
            method,
            out_dir,
            sentences,
            l2,
            adam_steps,
            adam_lr,
            from_manifest,
            force,
            config,
        } => cmd_mlapp(
            seed,
            &method,
            &out_dir,
            sentences,
            l2,
            adam_steps,
            adam_lr,
            from_manifest.as_deref(),
            force,
            &config,
        ),
    }
}

fn status_code(status: SolveStatus) -> ExitCode {
    match status {
        SolveStatus::GradientConverged => ExitCode::SUCCESS,
        SolveStatus::MaxIterations => ExitCode::from(2),
        SolveStatus::LineSearchFailed => ExitCode::from(3),
        SolveStatus::NonFinite => ExitCode::from(4),
    }
}

fn cmd_solve(
    function: &str,
    n: usize,
    method: &str,
    trace_csv: Option<&Path>,
    config: &ConfigArgs,
) -> Result<ExitCode> {
    let cfg = config.build(Some(method))?;
    let inst = benchsuite::instantiate(function, n)?;
    let r = cgkit::solve_traced(inst.problem(), &cfg, None)?;
    if let Some(path) = trace_csv {
        std::fs::write(path, trace_to_csv(r.trace.as_deref().unwrap_or(&[])))?;
    }
    let mut doc = result_to_json(&r);
    doc["function"] = serde_json::json!(inst.id);
    doc["n"] = serde_json::json!(inst.n);
    doc["method"] = serde_json::json!(cfg.method.to_string());
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(status_code(r.status))
}

fn prepare_out_dir(dir: &Path, force: bool) -> Result<()> {
    if dir.join("manifest.json").exists() && !force {
        return Err(Error::InvalidConfig(format!(
            "{} already holds a run (pass --force to overwrite)",
            dir.display()
        )));
    }
    std::fs::create_dir_all(dir)?;
    Ok(())
}

fn parse_methods(methods: &[String]) -> Result<Vec<Method>> {
    if methods.is_empty() {
        return Err(Error::InvalidConfig("need at least one method".into()));
    }
    let mut out = Vec::new();
    for m in methods {
        let parsed = Method::from_str(m)?;
        if !out.contains(&parsed) {
            out.push(parsed);
        }
    }
    Ok(out)
}

fn cmd_bench(
    methods: Vec<String>,
    dims: Vec<usize>,
    out_dir: &Path,
    audit: bool,
    from_manifest: Option<&Path>,
    force: bool,
    config: &ConfigArgs,
) -> Result<ExitCode> {
    // A manifest replay reuses the recorded config and suite selection.
    let (mut cfg, methods, dims) = match from_manifest {
        Some(path) => {
            let m = RunManifest::read(path)?;
            let methods: Vec<Method> = m.suite["methods"]
                .as_array()
                .map(|a| {
                    a.iter()
                        .filter_map(|v| v.as_str())
                        .map(Method::from_str)
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?
                .ok_or_else(|| Error::InvalidConfig("manifest lacks suite.methods".into()))?;
            let dims: Vec<usize> = m.suite["dims"]
                .as_array()
                .map(|a| a.iter().filter_map(|v| v.as_u64()).map(|v| v as usize).collect())
                .ok_or_else(|| Error::InvalidConfig("manifest lacks suite.dims".into()))?;
            (m.solver_config()?, methods, dims)
        }
        None => (config.build(None)?, parse_methods(&methods)?, dims),
    };
    cfg.audit = audit;
    prepare_out_dir(out_dir, force)?;

    if let Ok(threads) = std::env::var("CGKIT_THREADS") {
        let threads: usize = threads
            .parse()
            .map_err(|_| Error::InvalidConfig("CGKIT_THREADS must be an integer".into()))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
    }

    let instances = benchsuite::full_grid(&dims);
    if instances.is_empty() {
        return Err(Error::InvalidConfig("no instances match the dims".into()));
    }
    let outcome = run_sweep(&instances, &methods, &cfg)?;

    let manifest = RunManifest::new(
        None,
        serde_json::json!({
            "command": "bench",
            "methods": methods.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "dims": dims,
            "audit": audit,
        }),
        &cfg,
    );
    manifest.write(&out_dir.join("manifest.json"))?;
    std::fs::write(
        out_dir.join("runtable.json"),
        serde_json::to_string_pretty(&outcome.table)? + "\n",
    )?;
    let traces = out_dir.join("traces");
    std::fs::create_dir_all(&traces)?;
    for run in &outcome.runs {
        std::fs::write(
            traces.join(format!("{}__{}.csv", run.problem, run.solver)),
            trace_to_csv(&run.trace),
        )?;
    }
    std::fs::write(
        out_dir.join("registry.json"),
        serde_json::to_string_pretty(&benchsuite::manifest_json())? + "\n",
    )?;

    let solved = outcome.table.cells.iter().filter(|c| c.solved).count();
    println!(
        "bench: {} runs, {} solved, outputs in {}",
        outcome.table.cells.len(),
        solved,
        out_dir.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_profile(
    runtable: &Path,
    metric: &str,
    format: &str,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let metric = Metric::from_str(metric)?;
    let format = EmitFormat::from_str(format)?;
    let table: RunTable = serde_json::from_str(&std::fs::read_to_string(runtable)?)?;
    let ratios = performance_ratios(&table, metric)?;
    for p in &ratios.dropped {
        eprintln!("warning: {p} solved by no solver; dropped from the profile");
    }
    let curves = profile_curves(&ratios, &default_tau_grid());
    let doc = emit(&curves, format)?;
    match out {
        Some(path) => std::fs::write(path, doc)?,
        None => print!("{doc}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_checkgrad(function: &str, n: Option<usize>, h: f64) -> Result<ExitCode> {
    let ids: Vec<String> = if function == "all" {
        benchsuite::list_functions()
            .iter()
            .map(|(id, _)| id.to_string())
            .collect()
    } else {
        vec![function.to_string()]
    };
    let mut failures = 0usize;
    for id in &ids {
        let rule = benchsuite::list_functions()
            .iter()
            .find(|(fid, _)| fid == id)
            .map(|(_, r)| *r)
            .ok_or_else(|| Error::UnknownFunction(id.clone()))?;
        let dims: Vec<usize> = match n {
            Some(n) => vec![n],
            None => DEFAULT_DIMS.iter().copied().filter(|&d| rule.supports(d)).collect(),
        };
        for d in dims {
            let inst = benchsuite::instantiate(id, d)?;
            let worst = benchsuite::gradient_check_worst(&inst, h)?;
            let ok = worst <= 1e-5;
            if !ok {
                failures += 1;
            }
            println!(
                "{:<20} n={:<5} max_rel_err={:.3e} {}",
                id,
                d,
                worst,
                if ok { "ok" } else { "FAIL" }
            );
        }
    }
    if failures > 0 {
        eprintln!("{failures} gradient check(s) failed");
        Ok(ExitCode::from(2))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_mlapp(
    seed: u64,
    method: &str,
    out_dir: &Path,
    sentences: usize,
    l2: f64,
    adam_steps: usize,
    adam_lr: f64,
    from_manifest: Option<&Path>,
    force: bool,
    config: &ConfigArgs,
) -> Result<ExitCode> {
    let (cfg, seed, sentences, l2, adam) = match from_manifest {
        Some(path) => {
            let m = RunManifest::read(path)?;
            let suite = &m.suite;
            (
                m.solver_config()?,
                m.seed
                    .ok_or_else(|| Error::InvalidConfig("manifest lacks a seed".into()))?,
                suite["sentences"].as_u64().unwrap_or(200) as usize,
                suite["l2"].as_f64().unwrap_or(1e-4),
                AdamParams {
                    steps: suite["adam_steps"].as_u64().unwrap_or(300) as usize,
                    lr: suite["adam_lr"].as_f64().unwrap_or(0.3),
                    ..AdamParams::default()
                },
            )
        }
        None => (
            config.build(Some(method))?,
            seed,
            sentences,
            l2,
            AdamParams {
                steps: adam_steps,
                lr: adam_lr,
                ..AdamParams::default()
            },
        ),
    };

    prepare_out_dir(out_dir, force)?;
    let data = mlapp::generate_synthetic(seed, sentences);
    data.validate_bio()?;
    std::fs::write(out_dir.join("train.tsv"), mlapp::to_tsv(&data.train_sentences()))?;
    std::fs::write(out_dir.join("test.tsv"), mlapp::to_tsv(&data.test_sentences()))?;

    let trained = mlapp::train(&data, &cfg, l2)?;
    let test = data.test_sentences();
    let trained_metrics = mlapp::evaluate(&trained.model, &test);
    let (adam_model, adam_time) = mlapp::baseline_adam(&data, l2, &adam);
    let adam_metrics = mlapp::evaluate(&adam_model, &test);

    let method_key = cfg.method.to_string();
    let report = serde_json::json!({
        method_key.clone(): {
            "per_class": trained_metrics.per_class,
            "macro_f1": trained_metrics.macro_f1,
            "wall_time_seconds": trained.result.wall_time.as_secs_f64(),
            "f_evals": trained.result.counters.f_evals,
            "g_evals": trained.result.counters.g_evals,
            "iterations": trained.result.iterations,
            "status": trained.result.status.as_str(),
        },
        "adam_baseline": {
            "per_class": adam_metrics.per_class,
            "macro_f1": adam_metrics.macro_f1,
            "wall_time_seconds": adam_time.as_secs_f64(),
            "steps": adam.steps,
        },
    });
    std::fs::write(
        out_dir.join("metrics.json"),
        serde_json::to_string_pretty(&report)? + "\n",
    )?;

    let manifest = RunManifest::new(
        Some(seed),
        serde_json::json!({
            "command": "mlapp",
            "sentences": sentences,
            "l2": l2,
            "adam_steps": adam.steps,
            "adam_lr": adam.lr,
        }),
        &cfg,
    );
    manifest.write(&out_dir.join("manifest.json"))?;

    println!(
        "mlapp: {} macro_f1={:.4}, adam_baseline macro_f1={:.4}, outputs in {}",
        method_key,
        trained_metrics.macro_f1,
        adam_metrics.macro_f1,
        out_dir.display()
    );
    Ok(ExitCode::SUCCESS)
}
