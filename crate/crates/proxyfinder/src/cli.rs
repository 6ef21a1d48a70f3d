//! Command-line entry point: `proxyfinder (solve|compare|gen-vc|scenario|estimate|bench)`.
//!
//! Exit codes: 0 success (feasible, for solve modes), 1 usage/validation
//! errors, 2 estimator/size errors, 3 infeasible. Reports are written as
//! versioned JSON to `--out` (or stdout) and are byte-identical for equal
//! configurations; the human summary goes to stdout.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::estimation::{EstimatorMode, DEFAULT_EMPIRICAL_SAMPLES};
use crate::model::ProxyInstance;
use crate::reductions::{self, encode_vertex_cover};
use crate::report::{self, CompareReport, EstimateReport, SolveReport, FORMAT_VERSION};
use crate::scenario_io::{self, EstimatorSpec, ScenarioFile};
use crate::scenarios;
use crate::solvers::{self, RandomInstanceConfig, SolveResult, SolverOptions};

#[derive(Debug, Parser)]
#[command(
    name = "proxyfinder",
    version,
    about = "Finds function subsets that reduce the uncertainty of a target attribute below a threshold"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a scenario exactly, greedily, or as a bounded decision problem.
    Solve(SolveArgs),
    /// Run greedy vs. exact over a batch and report size ratios.
    Compare(CompareArgs),
    /// Encode a vertex-cover question as a scenario file.
    #[command(name = "gen-vc")]
    GenVc(GenVcArgs),
    /// Inspect or export the built-in scenario catalog.
    Scenario(ScenarioArgs),
    /// Score one fixed function subset.
    Estimate(EstimateArgs),
    /// Time the solvers on the built-in workloads.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMode {
    Exact,
    Greedy,
    Decision,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EstimatorChoice {
    Exact,
    Empirical,
}

/// Instance source and overrides shared by solve/estimate.
#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Scenario JSON file.
    #[arg(long, group = "source")]
    pub scenario: Option<PathBuf>,
    /// Built-in catalog scenario name.
    #[arg(long, group = "source")]
    pub catalog: Option<String>,
    /// Override the instance threshold, in bits.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Override the decision bound.
    #[arg(long)]
    pub k: Option<usize>,
    /// Override the estimation mode.
    #[arg(long, value_enum)]
    pub estimator: Option<EstimatorChoice>,
    /// Sample count for empirical estimation.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Seed for empirical estimation.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub mode: SolveMode,
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Evaluate candidate subsets in parallel (results are identical).
    #[arg(long)]
    pub parallel: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the greedy trace and other details.
    #[arg(short, long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Directory of scenario JSON files.
    #[arg(long, group = "batch")]
    pub scenarios: Option<PathBuf>,
    /// Number of random instances to generate.
    #[arg(long, group = "batch")]
    pub random: Option<usize>,
    /// Seed for random instance generation.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub parallel: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(short, long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct GenVcArgs {
    /// Edge list file: one `u v` pair per line, 0-based.
    #[arg(long)]
    pub edges: PathBuf,
    /// Cover size bound.
    #[arg(long)]
    pub k: usize,
    /// Vertex count override (default: highest index + 1).
    #[arg(long)]
    pub vertices: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ScenarioCommand {
    /// Write a catalog scenario as a scenario JSON file.
    Export(ScenarioExportArgs),
    /// List catalog scenarios.
    List,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    #[command(subcommand)]
    pub command: ScenarioCommand,
}

#[derive(Debug, Args)]
pub struct ScenarioExportArgs {
    /// Catalog scenario name.
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Builder seed (default: the catalog seed).
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Function indices, comma-separated (empty for the empty subset).
    #[arg(long, default_value = "")]
    pub subset: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random instances in the comparison workload.
    #[arg(long, default_value_t = 20)]
    pub random: usize,
}

/// Parses `argv`, runs the selected operation, and returns the process exit
/// code.
pub fn main_entry<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(argv) {
        Ok(config) => config,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::UnsupportedExact(_) | Error::SizeLimit(_) | Error::Estimation(_) => 2,
        _ => 1,
    }
}

pub fn execute(config: RunConfig) -> Result<i32> {
    match config.command {
        Command::Solve(args) => run_solve(args),
        Command::Compare(args) => run_compare(args),
        Command::GenVc(args) => run_gen_vc(args),
        Command::Scenario(args) => match args.command {
            ScenarioCommand::Export(args) => run_scenario_export(args),
            ScenarioCommand::List => run_scenario_list(),
        },
        Command::Estimate(args) => run_estimate(args),
        Command::Bench(args) => run_bench(args),
    }
}

/// Resolves the instance source and applies the CLI overrides.
fn load_instance(args: &InstanceArgs) -> Result<(ProxyInstance, String)> {
    let (inst, source) = match (&args.scenario, &args.catalog) {
        (Some(path), None) => (scenario_io::load(path)?, path.display().to_string()),
        (None, Some(name)) => {
            let seed = scenarios::default_seed(name)?;
            (
                scenarios::build_scenario(name, seed)?,
                format!("catalog:{name}"),
            )
        }
        _ => {
            return Err(Error::Input(
                "exactly one input source is required: --scenario FILE or --catalog NAME".into(),
            ))
        }
    };
    let mut inst = inst;
    if let Some(alpha) = args.alpha {
        inst = inst.with_alpha(alpha)?;
    }
    if let Some(k) = args.k {
        inst = inst.with_k(Some(k))?;
    }
    let mut estimator = *inst.estimator();
    match args.estimator {
        Some(EstimatorChoice::Exact) => estimator.mode = EstimatorMode::Exact,
        Some(EstimatorChoice::Empirical) => {
            estimator.mode = EstimatorMode::Empirical {
                samples: args.samples.unwrap_or(DEFAULT_EMPIRICAL_SAMPLES),
                seed: args.seed.unwrap_or(0),
            };
        }
        None => {
            // Refine an already-empirical instance in place.
            if let EstimatorMode::Empirical { samples, seed } = estimator.mode {
                estimator.mode = EstimatorMode::Empirical {
                    samples: args.samples.unwrap_or(samples),
                    seed: args.seed.unwrap_or(seed),
                };
            }
        }
    }
    inst = inst.with_estimator(estimator);
    Ok((inst, source))
}

fn write_report(out: &Option<PathBuf>, json: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, json)?,
        None => print!("{json}"),
    }
    Ok(())
}

fn subset_names(inst: &ProxyInstance, subset: &[usize]) -> Vec<String> {
    subset
        .iter()
        .map(|&i| inst.function(i).name().to_string())
        .collect()
}

fn run_solve(args: SolveArgs) -> Result<i32> {
    let (inst, source) = load_instance(&args.instance)?;
    let opts = SolverOptions {
        parallel: args.parallel,
        ..Default::default()
    };
    let (result, mode_str) = match args.mode {
        SolveMode::Exact => (solvers::solve_exact_min(&inst, &opts)?, "exact"),
        SolveMode::Greedy => (solvers::solve_greedy(&inst, &opts)?, "greedy"),
        SolveMode::Decision => (solvers::solve_decision(&inst, &opts)?, "decision"),
    };

    print_solve_summary(&inst, &source, &result, args.verbose);
    let report = SolveReport {
        format_version: FORMAT_VERSION,
        command: "solve".to_string(),
        mode: mode_str.to_string(),
        source,
        alpha: inst.alpha(),
        k: inst.k(),
        estimator: EstimatorSpec::from_config(inst.estimator()),
        subset_names: subset_names(&inst, &result.subset),
        result: result.clone(),
    };
    write_report(&args.out, &report::to_json_string(&report)?)?;
    Ok(if result.feasible { 0 } else { 3 })
}

fn print_solve_summary(inst: &ProxyInstance, source: &str, result: &SolveResult, verbose: bool) {
    println!(
        "{} | target `{}` | {} functions | alpha {} bits",
        source,
        inst.target_name(),
        inst.num_functions(),
        inst.alpha()
    );
    if result.feasible {
        let names = subset_names(inst, &result.subset);
        println!(
            "feasible: subset {:?} {:?} | uncertainty {:.6} bits | {} estimator calls",
            result.subset, names, result.achieved_uncertainty_bits, result.estimator_calls
        );
    } else {
        println!(
            "infeasible: best achievable {:.6} bits > alpha {} | {} estimator calls",
            result.achieved_uncertainty_bits,
            inst.alpha(),
            result.estimator_calls
        );
    }
    if verbose {
        for step in &result.trace {
            println!(
                "  + f{} `{}` | mi gain {:.6} | uncertainty {:.6}",
                step.chosen,
                inst.function(step.chosen).name(),
                step.mi_gain,
                step.uncertainty_after
            );
        }
    }
}

fn run_compare(args: CompareArgs) -> Result<i32> {
    let (instances, sources) = match (&args.scenarios, args.random) {
        (Some(dir), None) => load_scenario_dir(dir)?,
        (None, Some(n)) => {
            if n == 0 {
                return Err(Error::Input("--random needs at least 1 instance".into()));
            }
            let instances = solvers::random_batch(&RandomInstanceConfig::default(), n, args.seed)?;
            let sources = (0..n)
                .map(|i| format!("random:seed={}:{i}", args.seed))
                .collect();
            (instances, sources)
        }
        _ => {
            return Err(Error::Input(
                "exactly one batch source is required: --scenarios DIR or --random N".into(),
            ))
        }
    };

    let opts = SolverOptions {
        parallel: args.parallel,
        ..Default::default()
    };
    let comparison = solvers::compare(&instances, &opts)?;
    let mismatch = comparison.rows.iter().any(|r| r.feasibility_mismatch);

    println!(
        "compared {} instances (greedy vs exact)",
        comparison.rows.len()
    );
    if args.verbose {
        for row in &comparison.rows {
            println!(
                "  [{}] {} | greedy {} | exact {} | ratio {} | calls {}/{}",
                row.index,
                if row.feasible {
                    "feasible"
                } else {
                    "infeasible"
                },
                row.greedy_size,
                row.exact_size,
                row.ratio.map_or("-".to_string(), |r| format!("{r:.3}")),
                row.greedy_calls,
                row.exact_calls
            );
        }
    }
    match (comparison.max_ratio, comparison.mean_ratio) {
        (Some(max), Some(mean)) => println!("size ratio: max {max:.4}, mean {mean:.4}"),
        _ => println!("no feasible instances in the batch"),
    }

    let report = CompareReport {
        format_version: FORMAT_VERSION,
        command: "compare".to_string(),
        sources,
        comparison,
    };
    write_report(&args.out, &report::to_json_string(&report)?)?;
    if mismatch {
        return Err(Error::Estimation(
            "greedy and exact disagreed on feasibility for at least one instance".into(),
        ));
    }
    Ok(0)
}

fn load_scenario_dir(dir: &Path) -> Result<(Vec<ProxyInstance>, Vec<String>)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::Input(format!(
            "no .json scenarios in {}",
            dir.display()
        )));
    }
    let mut instances = Vec::with_capacity(paths.len());
    let mut sources = Vec::with_capacity(paths.len());
    for path in paths {
        instances.push(scenario_io::load(&path)?);
        sources.push(path.display().to_string());
    }
    Ok((instances, sources))
}

fn run_gen_vc(args: GenVcArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&args.edges)?;
    let graph = reductions::parse_edge_list(&text, args.vertices)?;
    let encoded = encode_vertex_cover(&graph, args.k)?;
    let file = ScenarioFile::from_instance(encoded.instance())?;
    let json = scenario_io::to_json_string(&file)?;
    match &args.out {
        Some(path) => {
            std::fs::write(path, &json)?;
            println!(
                "wrote vc_reduction scenario: {} vertices, {} edges, k = {} -> {}",
                graph.num_vertices(),
                graph.edges().len(),
                args.k,
                path.display()
            );
        }
        None => print!("{json}"),
    }
    Ok(0)
}

fn run_scenario_export(args: ScenarioExportArgs) -> Result<i32> {
    let seed = match args.seed {
        Some(seed) => seed,
        None => scenarios::default_seed(&args.name)?,
    };
    let inst = scenarios::build_scenario(&args.name, seed)?;
    let file = ScenarioFile::from_instance(&inst)?;
    let json = scenario_io::to_json_string(&file)?;
    match &args.out {
        Some(path) => {
            std::fs::write(path, &json)?;
            println!(
                "wrote scenario `{}` (seed {seed}) -> {}",
                args.name,
                path.display()
            );
        }
        None => print!("{json}"),
    }
    Ok(0)
}

fn run_scenario_list() -> Result<i32> {
    for entry in scenarios::catalog() {
        println!(
            "{:<14} seed {:<6} {}",
            entry.name, entry.default_seed, entry.summary
        );
    }
    Ok(0)
}

fn parse_subset(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::Input(format!("bad subset element `{part}`")))
        })
        .collect()
}

fn run_estimate(args: EstimateArgs) -> Result<i32> {
    let (inst, source) = load_instance(&args.instance)?;
    let subset = parse_subset(&args.subset)?;
    let r = inst.uncertainty(&subset)?;
    let names = subset_names(&inst, &subset);
    println!(
        "{} | target `{}` | subset {:?} {:?}",
        source,
        inst.target_name(),
        subset,
        names
    );
    println!(
        "uncertainty {:.6} bits | base entropy {:.6} bits | mutual information {:.6} bits ({} mode, {} samples)",
        r.value_bits,
        r.base_entropy_bits,
        r.mutual_information_bits,
        if r.mode.is_exact() { "exact" } else { "empirical" },
        r.sample_count
    );
    let report = EstimateReport::new(source, subset, names, &r);
    write_report(&args.out, &report::to_json_string(&report)?)?;
    Ok(0)
}

fn run_bench(args: BenchArgs) -> Result<i32> {
    let opts = SolverOptions::default();
    println!(
        "{:<28} {:>10} {:>12} {:>8}",
        "workload", "result", "time", "calls"
    );

    type Solver = fn(&ProxyInstance, &SolverOptions) -> Result<SolveResult>;
    let solvers: [(&str, Solver); 2] = [
        ("exact", solvers::solve_exact_min),
        ("greedy", solvers::solve_greedy),
    ];
    for entry in scenarios::catalog() {
        let inst = scenarios::build_scenario(entry.name, entry.default_seed)?;
        for (label, run) in solvers {
            let start = Instant::now();
            let result = run(&inst, &opts)?;
            let elapsed = start.elapsed();
            println!(
                "{:<28} {:>10} {:>12} {:>8}",
                format!("{}/{label}", entry.name),
                if result.feasible {
                    format!("size {}", result.subset.len())
                } else {
                    "infeasible".into()
                },
                format!("{:.2?}", elapsed),
                result.estimator_calls
            );
        }
    }

    let graph = crate::reductions::Graph::new(
        7,
        vec![
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 0),
            (0, 3),
        ],
    )?;
    for k in [2usize, 3, 4] {
        let inst = encode_vertex_cover(&graph, k)?.into_instance();
        let start = Instant::now();
        let result = solvers::solve_decision(&inst, &opts)?;
        println!(
            "{:<28} {:>10} {:>12} {:>8}",
            format!("vc-cycle7/k={k}"),
            if result.feasible {
                "yes".to_string()
            } else {
                "no".to_string()
            },
            format!("{:.2?}", start.elapsed()),
            result.estimator_calls
        );
    }

    let instances =
        solvers::random_batch(&RandomInstanceConfig::default(), args.random, args.seed)?;
    let start = Instant::now();
    let comparison = solvers::compare(&instances, &opts)?;
    println!(
        "{:<28} {:>10} {:>12} {:>8}",
        format!("compare/random={}", args.random),
        comparison
            .mean_ratio
            .map_or("-".to_string(), |m| format!("mean {m:.2}")),
        format!("{:.2?}", start.elapsed()),
        comparison
            .rows
            .iter()
            .map(|r| r.greedy_calls + r.exact_calls)
            .sum::<usize>()
    );
    Ok(0)
}
