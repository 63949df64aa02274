//! `gaussmix`: exact oracles, spectral and Brownian estimators, and the
//! reproduction suite.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gaussmix::brownian::estimate_bm_stats;
use gaussmix::experiment::{
    config_from_value, run_experiment, ExperimentConfig, PathParams, BM_CDF_ALLOWANCE, BM_MAX_ALLOWANCE,
};
use gaussmix::mixed::{exact_mixed_volume, steiner_fit, BallApprox, Method};
use gaussmix::montecarlo::ExperimentReport;
use gaussmix::suite::{reproduce_all, SuiteOptions};
use gaussmix::support::{cauchy_area, cauchy_length, support_profile};
use gaussmix::{Error, Polytope, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(name = "gaussmix", version, about = "Intrinsic and mixed volumes: exact routes, Gaussian spectra, Wiener spirals")]
struct Cli {
    /// Root seed of all random streams.
    #[arg(long, global = true, env = "GAUSSMIX_SEED")]
    seed: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Gaussian projections per spectral estimate.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(100..))]
    n_samples: u64,
    /// Grid steps per Brownian path.
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(2..))]
    n_steps: u64,
    /// Brownian paths (or path pairs) per estimate.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(2..))]
    n_paths: u64,
    /// Angles in a support profile.
    #[arg(long = "grid", global = true, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(8..))]
    grid: u64,
    /// Resolution of the polytopal ball surrogate.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(3..))]
    ball_n: Option<u64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Deterministic mixed volume or Steiner coefficients of polytope fixtures.
    Exact {
        #[arg(long, value_enum, default_value_t = ExactMode::Polarization)]
        mode: ExactMode,
        /// Ambient dimension to embed the bodies into (default: theirs).
        #[arg(long)]
        dim: Option<usize>,
        #[arg(required = true)]
        fixtures: Vec<PathBuf>,
    },
    /// Monte-Carlo estimates compared with their registered targets.
    Estimate {
        #[command(subcommand)]
        what: Estimate,
    },
    /// Run the reproduction suite.
    Reproduce {
        /// Reduced sample sizes and widened allowances.
        #[arg(long)]
        quick: bool,
    },
    /// Run experiment descriptors from a JSON file (object or array).
    Run { config: PathBuf },
    /// Support profile of a planar fixture as CSV.
    Profile { fixture: PathBuf },
}

#[derive(Subcommand, Debug)]
enum Estimate {
    /// V_k of a polytope from Gaussian projections.
    Intrinsic {
        #[arg(long)]
        k: usize,
        fixture: PathBuf,
    },
    /// Normalized mixed volume of polytopes, or of two Wiener spirals.
    Mixed {
        #[arg(long)]
        spirals: bool,
        #[arg(required_unless_present = "spirals")]
        fixtures: Vec<PathBuf>,
    },
    /// V_k of the Wiener spiral.
    Spiral {
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Maximum, argmax value and CDF at 1 of planar Brownian motion.
    BmStats,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExactMode {
    Polarization,
    Interpolation,
    Steiner,
}

/// Exit status 2: usage, configuration or input problems.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

struct Output {
    text: String,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: cannot start {n} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match dispatch(&cli) {
        Ok(o) => o,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &out.text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if out.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn seed(cli: &Cli) -> u64 {
    cli.seed.unwrap_or(DEFAULT_SEED)
}

fn path_params(cli: &Cli) -> PathParams {
    PathParams {
        n_steps: cli.n_steps as usize,
        n_paths: cli.n_paths,
        seed: seed(cli),
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Exact { mode, dim, fixtures } => cmd_exact(cli, *mode, *dim, fixtures),
        Command::Estimate { what } => cmd_estimate(cli, what),
        Command::Reproduce { quick } => cmd_reproduce(cli, *quick),
        Command::Run { config } => cmd_run(cli, config),
        Command::Profile { fixture } => cmd_profile(cli, fixture),
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(format!("input error: cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure(format!(
            "input error: malformed JSON in {} at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn load_polytope(path: &Path) -> Result<Polytope, Failure> {
    serde_json::from_value(read_json(path)?)
        .map_err(|e| Failure(format!("input error: {} is not a polytope: {e}", path.display())))
}

fn cmd_exact(cli: &Cli, mode: ExactMode, dim: Option<usize>, fixtures: &[PathBuf]) -> Result<Output, Failure> {
    let bodies = fixtures.iter().map(|p| load_polytope(p)).collect::<Result<Vec<_>, _>>()?;
    let d = dim.unwrap_or_else(|| bodies.iter().map(Polytope::dim_ambient).max().unwrap_or(1));
    let value = match mode {
        ExactMode::Steiner => {
            let [body] = bodies.as_slice() else {
                return Err(Failure("usage error: steiner takes exactly one fixture".into()));
            };
            let body = body.zero_padded(d)?;
            let n = cli.ball_n.unwrap_or(512) as usize;
            let lambdas = [0.5, 1.0, 1.5, 2.0];
            let lo = steiner_fit(&body, BallApprox::inscribed(n), &lambdas)?;
            let hi = steiner_fit(&body, BallApprox::circumscribed(n), &lambdas)?;
            let mid = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect::<Vec<_>>();
            json!({
                "method": "steiner",
                "coefficients": mid(&lo.coeffs, &hi.coeffs),
                "intrinsic_volumes": mid(&lo.intrinsic_volumes(), &hi.intrinsic_volumes()),
                "bracket": [lo.coeffs, hi.coeffs],
                "residual": lo.residual.max(hi.residual),
            })
        }
        ExactMode::Polarization | ExactMode::Interpolation => {
            let method = match mode {
                ExactMode::Polarization => Method::Polarization,
                _ => Method::Interpolation,
            };
            let n = cli.ball_n.unwrap_or(if d == 2 { 256 } else { 162 }) as usize;
            serde_json::to_value(exact_mixed_volume(&bodies, d, n, method)?).expect("serializable")
        }
    };
    let text = if cli.json {
        format!("{value}\n")
    } else {
        match mode {
            ExactMode::Steiner => format!(
                "steiner coefficients {}\nintrinsic volumes {}\nresidual {}\n",
                value["coefficients"], value["intrinsic_volumes"], value["residual"]
            ),
            _ => format!(
                "{} {}  bracket {}  residual {}\n",
                value["method"].as_str().unwrap_or_default(),
                value["value"],
                value["bracket"],
                value["residual"]
            ),
        }
    };
    Ok(Output { text, pass: true })
}

fn report_text(reports: &[ExperimentReport], as_json: bool) -> Output {
    let mut text = String::new();
    for r in reports {
        if as_json {
            text.push_str(&serde_json::to_string(r).expect("serializable"));
        } else {
            let target = r.target.map_or("none".to_string(), |t| t.to_string());
            text.push_str(&format!(
                "{} {}: {} ± {} (n = {}, seed {}, target {target}, allowance {})",
                if r.pass { "PASS" } else { "FAIL" },
                r.name,
                r.value,
                r.stderr,
                r.n,
                r.seed,
                r.allowance
            ));
        }
        text.push('\n');
    }
    Output {
        text,
        pass: reports.iter().all(|r| r.pass),
    }
}

fn cmd_estimate(cli: &Cli, what: &Estimate) -> Result<Output, Failure> {
    let ball_n = cli.ball_n.map_or(gaussmix::experiment::DEFAULT_BALL_N, |n| n as usize);
    let config = match what {
        Estimate::Intrinsic { k, fixture } => ExperimentConfig::IntrinsicVolume {
            body: load_polytope(fixture)?,
            k: *k,
            n_samples: cli.n_samples,
            seed: seed(cli),
            target: None,
            ball_n,
        },
        Estimate::Mixed { spirals: true, .. } => ExperimentConfig::SpiralMixed { paths: path_params(cli) },
        Estimate::Mixed { fixtures, .. } => ExperimentConfig::MixedVolume {
            bodies: fixtures.iter().map(|p| load_polytope(p)).collect::<Result<_, _>>()?,
            n_samples: cli.n_samples,
            seed: seed(cli),
            target: None,
            ball_n,
        },
        Estimate::Spiral { k } => ExperimentConfig::SpiralIntrinsic { k: *k, paths: path_params(cli) },
        Estimate::BmStats => {
            let p = path_params(cli);
            let [m, h, below] = estimate_bm_stats(p.n_steps, p.n_paths, p.seed, 1.0)?;
            let with = |r: ExperimentReport| r.with_param("n_steps", p.n_steps).with_param("n_paths", p.n_paths);
            let reports = [
                with(ExperimentReport::new("bm_max", &m, Some(std::f64::consts::FRAC_2_PI.sqrt()), BM_MAX_ALLOWANCE)),
                with(ExperimentReport::new("bm_argmax_value", &h, Some(0.0), 0.0)),
                with(ExperimentReport::new(
                    "bm_cdf",
                    &below,
                    Some(erf_one_over_root_two()),
                    BM_CDF_ALLOWANCE,
                ))
                .with_param("level", 1.0),
            ];
            return Ok(report_text(&reports, cli.json));
        }
    };
    Ok(report_text(&[run_experiment(&config)?], cli.json))
}

fn erf_one_over_root_two() -> f64 {
    gaussmix::experiment::registered_target("bm_cdf", None).expect("registered")
}

fn cmd_reproduce(cli: &Cli, quick: bool) -> Result<Output, Failure> {
    let report = reproduce_all(SuiteOptions { seed: seed(cli), quick })?;
    let text = if cli.json {
        format!("{}\n", serde_json::to_string(&report).expect("serializable"))
    } else {
        let mut t = format!("seed {}{}\n", report.seed, if quick { " (quick)" } else { "" });
        for c in &report.criteria {
            t.push_str(&c.summary_line());
            t.push('\n');
        }
        t.push_str(if report.pass { "all criteria passed\n" } else { "some criteria failed\n" });
        t
    };
    Ok(Output { text, pass: report.pass })
}

fn cmd_run(cli: &Cli, path: &Path) -> Result<Output, Failure> {
    let descriptors = match read_json(path)? {
        Value::Array(items) => items,
        other => vec![other],
    };
    let mut reports = Vec::with_capacity(descriptors.len());
    for d in descriptors {
        let mut config = config_from_value(d)?;
        if let Some(s) = cli.seed {
            config = config.with_seed(s);
        }
        reports.push(run_experiment(&config)?);
    }
    Ok(report_text(&reports, cli.json))
}

fn cmd_profile(cli: &Cli, fixture: &Path) -> Result<Output, Failure> {
    let body = load_polytope(fixture)?;
    let profile = support_profile(&body, cli.grid as usize)?;
    let text = if cli.json {
        let area = cauchy_area(&profile).ok();
        format!(
            "{}\n",
            json!({
                "angles": profile.angles().collect::<Vec<_>>(),
                "values": profile.values(),
                "length": cauchy_length(&profile),
                "area": area,
            })
        )
    } else {
        profile.to_csv()
    };
    Ok(Output { text, pass: true })
}
