use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use tiltlab::alcove::{
    build_root_system, dot_orbit, is_negligible_weight, is_p_regular, separating_hyperplane_count,
    steinberg_decompose, RootType,
};
use tiltlab::cache::CACHE_ENV;
use tiltlab::cmin::CminSummary;
use tiltlab::config::RunConfig;
use tiltlab::ideals::{enumerate_tilt_ideals, generate_tilt_ideal, TensorTable, TiltIdeal};
use tiltlab::sampling::parse_module_spec;
use tiltlab::suites::run_suite;
use tiltlab::{Error, Workbench};

#[derive(Parser)]
#[command(name = "tiltlab", version, about = "Minimal tilting complexes and tensor ideals for quantum sl2")]
struct Cli {
    /// key = value file with defaults for ell, window, suite, budget, seed, cache, output
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// on-disk cache directory (also read from TILTLAB_CACHE)
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    #[arg(long, global = true)]
    ell: Option<u32>,
    #[arg(long, global = true)]
    window: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Print C_min of a standard module as degree → labels
    Cmin {
        #[command(flatten)]
        common: Common,
        /// L:n, delta:n, nabla:n or T:n
        #[arg(long)]
        module: String,
    },
    /// Thick tensor ideals of tilting modules in the window
    Ideals {
        #[command(flatten)]
        common: Common,
        #[command(subcommand)]
        action: IdealsAction,
    },
    /// Run a verification suite and print its JSON report
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// also write the report here
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Alcove combinatorics for a root system
    Alcove {
        #[command(subcommand)]
        query: AlcoveQuery,
        #[arg(long = "type", global = true, default_value = "A1")]
        kind: String,
        #[arg(long, global = true, default_value_t = 3)]
        p: i64,
        /// comma-separated fundamental weight coordinates
        #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
        lambda: Vec<i64>,
    },
}

#[derive(Subcommand)]
enum IdealsAction {
    Enumerate,
    /// The ideal generated by T(g) for the given labels
    Generate {
        #[arg(value_delimiter = ',')]
        generators: Vec<u32>,
    },
}

#[derive(Subcommand)]
enum AlcoveQuery {
    /// Number of walls separating λ from the fundamental alcove
    D,
    Regular,
    /// λ = λ0 + p λ1 with λ0 restricted
    Steinberg,
    Negligible,
    /// Dominant weights linked to λ with ⟨μ, α0∨⟩ ≤ bound (default 3p)
    Orbit {
        #[arg(long)]
        bound: Option<i64>,
    },
}

fn config(cli: &Cli, common: Option<&Common>) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    if let Some(c) = common {
        cfg.ell = c.ell.unwrap_or(cfg.ell);
        cfg.window = c.window.unwrap_or(cfg.window);
    }
    if let Some(dir) = &cli.cache {
        cfg.cache_dir = Some(dir.clone());
    }
    if let Some(dir) = &cfg.cache_dir {
        std::env::set_var(CACHE_ENV, dir);
    }
    Ok(cfg)
}

fn ideal_json(i: &TiltIdeal, table: &TensorTable) -> Value {
    json!({
        "members": i.members,
        "set": i.describe(),
        "prime": i.is_prime_on_window(table),
        "full": i.is_full(),
    })
}

fn run(cli: &Cli) -> Result<bool, Error> {
    match &cli.command {
        Command::Cmin { common, module } => {
            let cfg = config(cli, Some(common))?;
            let wb = Workbench::shared(cfg.ell)?;
            let m = parse_module_spec(&wb, module)?;
            let c = wb.minimal_tilting_complex(&m.module)?;
            if common.window.is_some() {
                if let Some(&l) = c.complex.all_labels().iter().find(|&&l| l > cfg.window) {
                    return Err(Error::WindowOverflow { label: l, window: cfg.window });
                }
            }
            println!("{}", serde_json::to_string(&CminSummary::new(module, &c.complex).degrees)?);
            Ok(true)
        }
        Command::Ideals { common, action } => {
            let cfg = config(cli, Some(common))?;
            cfg.validate()?;
            let wb = Workbench::shared(cfg.ell)?;
            let table = TensorTable::new(&wb, 2 * cfg.window)?;
            let out = match action {
                IdealsAction::Enumerate => {
                    let ideals = enumerate_tilt_ideals(&table, cfg.window)?;
                    json!({
                        "ell": cfg.ell,
                        "window": cfg.window,
                        "count": ideals.len(),
                        "ideals": ideals.iter().map(|i| ideal_json(i, &table)).collect::<Vec<_>>(),
                    })
                }
                IdealsAction::Generate { generators } => {
                    let i = generate_tilt_ideal(&table, generators, cfg.window)?;
                    let mut v = ideal_json(&i, &table);
                    v["ell"] = json!(cfg.ell);
                    v["window"] = json!(cfg.window);
                    v["generators"] = json!(generators);
                    v
                }
            };
            println!("{out}");
            Ok(true)
        }
        Command::Verify { common, suite, budget, seed, output } => {
            let mut cfg = config(cli, Some(common))?;
            cfg.suite = suite.clone().or(cfg.suite);
            cfg.budget = budget.unwrap_or(cfg.budget);
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.output = output.clone().or(cfg.output);
            cfg.validate()?;
            let name = cfg.suite.clone().ok_or_else(|| Error::InvalidArgument("no suite selected".into()))?;
            let wb = Workbench::shared(cfg.ell)?;
            let report = run_suite(&name, &wb, cfg.window, cfg.budget, cfg.seed)?;
            let mut v = serde_json::to_value(&report)?;
            v["config"] = serde_json::to_value(&cfg)?;
            v["passed"] = json!(report.passed());
            let text = v.to_string();
            if let Some(path) = &cfg.output {
                std::fs::write(path, format!("{text}\n"))?;
            }
            println!("{text}");
            Ok(report.passed())
        }
        Command::Alcove { query, kind, p, lambda } => {
            let kind: RootType = kind.parse()?;
            let rs = build_root_system(kind);
            if lambda.len() != rs.rank {
                return Err(Error::InvalidArgument(format!(
                    "{kind} has rank {} but λ has {} coordinates",
                    rs.rank,
                    lambda.len()
                )));
            }
            let out = match query {
                AlcoveQuery::D => json!(separating_hyperplane_count(&rs, lambda, *p)?),
                AlcoveQuery::Regular => json!(is_p_regular(&rs, lambda, *p)),
                AlcoveQuery::Steinberg => json!(steinberg_decompose(lambda, *p)),
                AlcoveQuery::Negligible => json!(is_negligible_weight(&rs, lambda, *p)),
                AlcoveQuery::Orbit { bound } => json!(dot_orbit(&rs, lambda, *p, bound.unwrap_or(3 * p))?),
            };
            println!("{out}");
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
