//! Command-line front end: dataset/graph ingestion, subcommand dispatch,
//! and report rendering.

mod error;
mod render;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::engine::{
    entner_rules, exogenous_falsification, faithfulness_probe, negative_control_check,
    pearl_stability_test, run_test, EntnerMode, TestConfig, ENTNER_SUBSET_CAP,
};
use crate::graph::{
    check_assumptions, classify_biasing_paths, is_valid_backdoor_set, certification_oracle, Dag,
    GraphError,
};
use crate::sim::{run_power, run_scenarios, PowerSpec, ScenarioSpec};
use crate::stats::Dataset;

pub use error::CliError;

/// Environment variable supplying a default seed.
pub const SEED_ENV: &str = "UCHECK_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

/// A validated command-line invocation.
#[derive(Debug, Parser)]
#[command(
    name = "ucheck",
    about = "Empirical validity checks for covariate adjustment sets",
    version
)]
pub struct Invocation {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the adjustment-set test on a CSV dataset
    Test(TestArgs),
    /// Faithfulness probe: refit with a restricted covariate set
    Probe(ProbeArgs),
    /// Structural checks and certification oracle on a graph file
    Oracle(OracleArgs),
    /// Enumerate and classify open biasing paths in a graph file
    Paths(PathsArgs),
    /// Monte Carlo operating characteristics of the test
    Simulate(SimulateArgs),
    /// Power calculation for the two-covariate design
    Power(PowerArgs),
    /// Comparator methods: stability test or subset-search rules
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct CommonDataArgs {
    /// CSV file: header row, numeric cells, empty or NA for missing
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub exposure: String,
    #[arg(long)]
    pub outcome: String,
    /// Comma-separated candidate covariates
    #[arg(long, value_delimiter = ',', required = true)]
    pub covariates: Vec<String>,
    /// p-value threshold below which dependence is inferred
    #[arg(long, default_value_t = 0.05)]
    pub alpha_dep: f64,
    /// p-value threshold at or above which independence is inferred
    #[arg(long, default_value_t = 0.05)]
    pub alpha_indep: f64,
    #[arg(long, default_value_t = 0.95)]
    pub ci_level: f64,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

impl CommonDataArgs {
    fn config(&self) -> TestConfig {
        TestConfig {
            alpha_dep: self.alpha_dep,
            alpha_indep: self.alpha_indep,
            ci_level: self.ci_level,
        }
    }
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[command(flatten)]
    pub common: CommonDataArgs,
    /// Also contrast the exposure across this negative control outcome
    #[arg(long)]
    pub negative_control: Option<String>,
    /// Also run the falsification test with this exogenous covariate
    #[arg(long)]
    pub exogenous_z: Option<String>,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[command(flatten)]
    pub common: CommonDataArgs,
    /// Covariates to exclude in the restricted model
    #[arg(long, value_delimiter = ',', required = true)]
    pub drop: Vec<String>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Graph file: `A -> B` edges, `latent U`, `select S`, `#` comments
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub exposure: String,
    #[arg(long)]
    pub outcome: String,
    /// Comma-separated candidate adjustment set
    #[arg(long, value_delimiter = ',', required = true)]
    pub adjust: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PathsArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub exposure: String,
    #[arg(long)]
    pub outcome: String,
    /// The covariate whose open paths are classified
    #[arg(long)]
    pub covariate: String,
    /// The reduced conditioning set (may be empty)
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub adjust: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Scenario: 1 (instruments, hidden confounder) or 2 (confounders)
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub scenario: u8,
    #[arg(long)]
    pub n: usize,
    /// Accepted replicates
    #[arg(long, default_value_t = 1000)]
    pub iters: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 0.2)]
    pub bias_cutoff: f64,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.05)]
    pub corr_cap: f64,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    #[arg(long, default_value_t = 2562)]
    pub n: usize,
    #[arg(long)]
    pub beta1: f64,
    #[arg(long)]
    pub beta2: f64,
    #[arg(long)]
    pub gamma1: f64,
    /// Covariate correlation(s); comma-separate to sweep
    #[arg(long, value_delimiter = ',', required = true)]
    pub rho: Vec<f64>,
    #[arg(long, default_value_t = 20_000)]
    pub iters: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 0.95)]
    pub ci_level: f64,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompareMethod {
    /// Marginal stability test with a single probe variable
    Pearl,
    /// Subset-search rules over a candidate pool
    Entner,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, value_enum)]
    pub method: CompareMethod,
    /// CSV dataset (data mode)
    #[arg(long, conflicts_with = "graph")]
    pub data: Option<PathBuf>,
    /// Graph file (oracle mode, subset-search rules only)
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub exposure: String,
    #[arg(long)]
    pub outcome: String,
    /// Probe variable for the stability test
    #[arg(long)]
    pub probe: Option<String>,
    /// Candidate pool for the subset-search rules
    #[arg(long, value_delimiter = ',')]
    pub pool: Vec<String>,
    /// Assert that the probe variable is not a barren proxy
    #[arg(long, default_value_t = false)]
    pub assume_not_barren_proxy: bool,
    #[arg(long, default_value_t = ENTNER_SUBSET_CAP)]
    pub subset_cap: usize,
    #[arg(long, default_value_t = 0.05)]
    pub alpha_dep: f64,
    #[arg(long, default_value_t = 0.05)]
    pub alpha_indep: f64,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

/// Parses an argument vector into a validated invocation. The first element
/// is the program name.
pub fn parse_invocation<I, T>(argv: I) -> Result<Invocation, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Invocation::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))
}

/// Combined output of the `test` subcommand.
#[derive(Debug, Serialize)]
struct TestCliReport {
    test: crate::engine::TestReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    negative_control: Option<crate::engine::NegativeControlReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    falsification: Option<crate::engine::FalsificationReport>,
}

/// Combined output of the `oracle` subcommand.
#[derive(Debug, Serialize)]
struct OracleCliReport {
    assumptions: Vec<crate::graph::AssumptionFinding>,
    backdoor_valid: bool,
    /// Present when the checkable assumptions hold; otherwise the violation
    /// messages are listed instead.
    oracle: Option<crate::graph::OracleReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    violations: Vec<String>,
}

/// Executes a validated invocation and returns the rendered report.
/// Verdicts never alter the exit code; only operational failures do.
pub fn execute(invocation: &Invocation) -> Result<String, CliError> {
    match &invocation.command {
        Command::Test(args) => run_test_command(args),
        Command::Probe(args) => run_probe_command(args),
        Command::Oracle(args) => run_oracle_command(args),
        Command::Paths(args) => run_paths_command(args),
        Command::Simulate(args) => run_simulate_command(args),
        Command::Power(args) => run_power_command(args),
        Command::Compare(args) => run_compare_command(args),
    }
}

fn resolve_seed(explicit: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "{SEED_ENV} must be an unsigned integer, got `{text}`"
            ))
        }),
        Err(_) => Ok(0),
    }
}

fn load_dataset(path: &std::path::Path) -> Result<Dataset, CliError> {
    Ok(Dataset::from_csv_path(path)?)
}

fn load_graph(path: &std::path::Path) -> Result<Dag, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    Ok(Dag::from_text(&text)?)
}

fn refs(names: &[String]) -> Vec<&str> {
    names.iter().map(String::as_str).collect()
}

fn run_test_command(args: &TestArgs) -> Result<String, CliError> {
    let data = load_dataset(&args.common.data)?;
    let config = args.common.config();
    let covariates = refs(&args.common.covariates);
    let test = run_test(
        &data,
        &args.common.exposure,
        &args.common.outcome,
        &covariates,
        &config,
    )?;
    let negative_control = match &args.negative_control {
        Some(nco) => Some(negative_control_check(
            &data,
            &args.common.exposure,
            nco,
            &covariates,
            &config,
        )?),
        None => None,
    };
    let falsification = match &args.exogenous_z {
        Some(z) => Some(exogenous_falsification(
            &data,
            &args.common.exposure,
            &args.common.outcome,
            z,
            &covariates,
            &config,
        )?),
        None => None,
    };
    let report = TestCliReport {
        test,
        negative_control,
        falsification,
    };
    Ok(match args.common.format {
        Format::Json => render::to_canonical_json(&report),
        Format::Tsv => {
            let mut out = render::test_report_tsv(&report.test);
            if let Some(nco) = &report.negative_control {
                out.push('\n');
                out.push_str(&render::negative_control_tsv(nco));
            }
            if let Some(f) = &report.falsification {
                out.push('\n');
                out.push_str(&render::falsification_tsv(f));
            }
            out
        }
    })
}

fn run_probe_command(args: &ProbeArgs) -> Result<String, CliError> {
    let data = load_dataset(&args.common.data)?;
    let report = faithfulness_probe(
        &data,
        &args.common.exposure,
        &args.common.outcome,
        &refs(&args.common.covariates),
        &refs(&args.drop),
        &args.common.config(),
    )?;
    Ok(match args.common.format {
        Format::Json => render::to_canonical_json(&report),
        Format::Tsv => render::probe_report_tsv(&report),
    })
}

fn run_oracle_command(args: &OracleArgs) -> Result<String, CliError> {
    let dag = load_graph(&args.graph)?;
    let adjust = refs(&args.adjust);
    let assumptions = check_assumptions(&dag, &args.exposure, &args.outcome, &adjust)?;
    let backdoor_valid = is_valid_backdoor_set(&dag, &args.exposure, &args.outcome, &adjust)?;
    let (oracle, violations) = match certification_oracle(&dag, &args.exposure, &args.outcome, &adjust)
    {
        Ok(report) => (Some(report), Vec::new()),
        Err(GraphError::AssumptionViolated(v)) => {
            (None, v.iter().map(|f| f.to_string()).collect())
        }
        Err(other) => return Err(other.into()),
    };
    let report = OracleCliReport {
        assumptions,
        backdoor_valid,
        oracle,
        violations,
    };
    Ok(match args.format {
        Format::Json => render::to_canonical_json(&report),
        Format::Tsv => {
            let mut out = render::assumptions_tsv(&report.assumptions);
            out.push('\n');
            match &report.oracle {
                Some(oracle) => out.push_str(&render::oracle_report_tsv(oracle, backdoor_valid)),
                None => {
                    for v in &report.violations {
                        out.push_str(&format!("violation\t{v}\n"));
                    }
                }
            }
            out
        }
    })
}

fn run_paths_command(args: &PathsArgs) -> Result<String, CliError> {
    let dag = load_graph(&args.graph)?;
    let adjust: Vec<&str> = args
        .adjust
        .iter()
        .filter(|s| !s.is_empty())
        .map(String::as_str)
        .collect();
    let records = classify_biasing_paths(
        &dag,
        &args.exposure,
        &args.outcome,
        &args.covariate,
        &adjust,
    )?;
    Ok(match args.format {
        Format::Json => render::to_canonical_json(&records),
        Format::Tsv => render::path_records_tsv(&records),
    })
}

fn run_simulate_command(args: &SimulateArgs) -> Result<String, CliError> {
    let mut spec = ScenarioSpec::new(args.scenario, args.n, args.iters, resolve_seed(args.seed)?);
    spec.bias_cutoff = args.bias_cutoff;
    spec.alpha = args.alpha;
    spec.corr_cap = args.corr_cap;
    let table = run_scenarios(&spec)?;
    Ok(match args.format {
        Format::Json => render::to_canonical_json(&table),
        Format::Tsv => render::scenario_table_tsv(&table),
    })
}

fn run_power_command(args: &PowerArgs) -> Result<String, CliError> {
    let seed = resolve_seed(args.seed)?;
    let mut results = Vec::new();
    for &rho in &args.rho {
        let mut spec = PowerSpec::new(args.beta1, args.beta2, args.gamma1, rho, seed);
        spec.n = args.n;
        spec.n_iter = args.iters;
        spec.ci_level = args.ci_level;
        results.push(run_power(&spec)?);
    }
    Ok(match args.format {
        Format::Json => render::to_canonical_json(&results),
        Format::Tsv => {
            let mut out = String::new();
            for (i, r) in results.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&render::power_tsv(r));
            }
            out
        }
    })
}

fn run_compare_command(args: &CompareArgs) -> Result<String, CliError> {
    let config = TestConfig {
        alpha_dep: args.alpha_dep,
        alpha_indep: args.alpha_indep,
        ci_level: 0.95,
    };
    match args.method {
        CompareMethod::Pearl => {
            let probe = args.probe.as_ref().ok_or_else(|| {
                CliError::Usage("--probe is required for the stability test".into())
            })?;
            let data_path = args.data.as_ref().ok_or_else(|| {
                CliError::Usage("--data is required for the stability test".into())
            })?;
            let data = load_dataset(data_path)?;
            let report = pearl_stability_test(
                &data,
                &args.exposure,
                &args.outcome,
                probe,
                &config,
                args.assume_not_barren_proxy,
            )?;
            Ok(match args.format {
                Format::Json => render::to_canonical_json(&report),
                Format::Tsv => render::stability_tsv(&report),
            })
        }
        CompareMethod::Entner => {
            if args.pool.is_empty() {
                return Err(CliError::Usage(
                    "--pool is required for the subset-search rules".into(),
                ));
            }
            let pool = refs(&args.pool);
            let report = match (&args.graph, &args.data) {
                (Some(path), None) => {
                    let dag = load_graph(path)?;
                    entner_rules(
                        EntnerMode::Oracle(&dag),
                        &args.exposure,
                        &args.outcome,
                        &pool,
                        &config,
                        args.subset_cap,
                    )?
                }
                (None, Some(path)) => {
                    let data = load_dataset(path)?;
                    entner_rules(
                        EntnerMode::Data(&data),
                        &args.exposure,
                        &args.outcome,
                        &pool,
                        &config,
                        args.subset_cap,
                    )?
                }
                _ => {
                    return Err(CliError::Usage(
                        "provide exactly one of --graph (oracle mode) or --data (data mode)"
                            .into(),
                    ))
                }
            };
            Ok(match args.format {
                Format::Json => render::to_canonical_json(&report),
                Format::Tsv => render::entner_tsv(&report),
            })
        }
    }
}

/// Entry point used by the binary: parse, execute, print, map exit codes.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let invocation = match parse_invocation(argv) {
        Ok(inv) => inv,
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    match execute(&invocation) {
        Ok(rendered) => {
            print!("{rendered}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
