use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use monohazard::data::{format_values, read_values};
use monohazard::exec::{pool, RayonExecutor};
use monohazard::{emit_results, run_power_study, Format, Preset, StudyFile};
use monohazard_core::models::perturbation_scale;
use monohazard_core::{
    run_test_with, Error, HazardModel, ModelA, ModelB, Perturbed, Region, Sample, TestConfig,
};

#[derive(Parser)]
#[command(name = "monohazard", version, about = "Test for a monotone nondecreasing hazard rate")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test a data file (one value per line) and print the result as JSON.
    Test(TestArgs),
    /// Run a Monte Carlo power study from a study file or a preset.
    Power(PowerArgs),
    /// Draw a sample from a simulation model.
    Sample(SampleArgs),
}

#[derive(Args, Clone, Default)]
struct TuningArgs {
    #[arg(long)]
    alpha: Option<f64>,
    /// Exponent on the positive part of the second difference.
    #[arg(long)]
    r: Option<f64>,
    /// Bootstrap resamples.
    #[arg(long)]
    bootstrap: Option<usize>,
    /// Quadrature cells per axis.
    #[arg(long)]
    grid: Option<usize>,
    /// Points per interval in the curvature sign scan.
    #[arg(long)]
    sign_grid: Option<usize>,
    #[arg(long)]
    ladder_factor: Option<f64>,
}

impl TuningArgs {
    fn apply(&self, cfg: &mut TestConfig) {
        if let Some(v) = self.alpha {
            cfg.alpha = v;
        }
        if let Some(v) = self.r {
            cfg.r = v;
        }
        if let Some(v) = self.bootstrap {
            cfg.bootstrap_b = v;
        }
        if let Some(v) = self.grid {
            cfg.grid_points = v;
        }
        if let Some(v) = self.sign_grid {
            cfg.sign_grid_m = v;
        }
        if let Some(v) = self.ladder_factor {
            cfg.ladder_factor = v;
        }
    }
}

#[derive(Args)]
struct TestArgs {
    data: PathBuf,
    #[command(flatten)]
    tuning: TuningArgs,
    /// Test region as lo:hi[,lo:hi...]; defaults to [0, 0.95 quantile].
    #[arg(long)]
    region: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads, 0 = one per core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct PowerArgs {
    /// Study file (TOML); see the README for the format.
    #[arg(conflicts_with = "preset", required_unless_present = "preset")]
    spec: Option<PathBuf>,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Monte Carlo replications per experiment (overrides the study).
    #[arg(long)]
    mc: Option<usize>,
    #[command(flatten)]
    tuning: TuningArgs,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct SampleArgs {
    #[command(subcommand)]
    model: SampleModel,
    #[arg(short = 'n', long, global = true, default_value_t = 50)]
    n: usize,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SampleModel {
    /// Hazard a{(x-b)^3 + b^3} + c + d x^2.
    ModelA {
        #[arg(long, default_value_t = 2.5)]
        a: f64,
        #[arg(long, default_value_t = 0.75)]
        b: f64,
        #[arg(long, default_value_t = 0.5)]
        c: f64,
        #[arg(long, allow_hyphen_values = true)]
        d: f64,
    },
    /// Hazard x^gamma exp(beta phi_sigma(x - mu)).
    ModelB {
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        #[arg(long, default_value_t = 0.1)]
        sigma: f64,
    },
    /// Model A with d = 0 plus a local bump centred on its flat point x = b.
    PerturbedA {
        #[arg(long, default_value_t = 2.5)]
        a: f64,
        #[arg(long, default_value_t = 0.75)]
        b: f64,
        #[arg(long, default_value_t = 0.5)]
        c: f64,
        #[arg(long)]
        height: f64,
        /// Bump half-width; defaults to n^(-1/7).
        #[arg(long)]
        eps: Option<f64>,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn seed_or_entropy(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s: u64 = rand::random();
        eprintln!("seed: {s}");
        s
    })
}

fn open_out(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Failure::Input(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn cmd_test(args: TestArgs) -> Result<(), Failure> {
    let values = read_values(&args.data).map_err(input)?;
    let sample = Sample::new(values)?;
    let mut config = TestConfig::default();
    args.tuning.apply(&mut config);
    config.seed = seed_or_entropy(args.seed);
    config.validate()?;
    let region = args.region.as_deref().map(Region::parse).transpose()?;
    let result = pool(args.threads)
        .install(|| run_test_with(&RayonExecutor, &sample, &config, region.as_ref()))?;
    let json = serde_json::to_string_pretty(&result).map_err(input)?;
    println!("{json}");
    Ok(())
}

fn cmd_power(args: PowerArgs) -> Result<(), Failure> {
    let study = match (&args.spec, args.preset) {
        (Some(path), _) => StudyFile::read(path).map_err(input)?,
        (None, Some(p)) => p.study(),
        (None, None) => return Err(Failure::Input("give a study file or --preset".into())),
    };
    let mut specs = study.specs();
    for s in &mut specs {
        args.tuning.apply(&mut s.config);
        if let Some(mc) = args.mc {
            s.mc_reps = mc;
        }
    }
    let seed = seed_or_entropy(args.seed.or(study.seed));
    let results = run_power_study(&specs, seed, args.threads)?;
    for r in &results {
        eprintln!(
            "{} [{}]: rate {:.3} (se {:.3}) in {:.1?}",
            r.label, r.test_name, r.reject_rate, r.mc_se, r.wall_time
        );
    }
    let out = open_out(args.out.as_ref())?;
    emit_results(&results, args.format, out).map_err(input)
}

fn cmd_sample(args: SampleArgs) -> Result<(), Failure> {
    let model = match args.model {
        SampleModel::ModelA { a, b, c, d } => HazardModel::ModelA(ModelA::new(a, b, c, d)?),
        SampleModel::ModelB { gamma, beta, mu, sigma } => {
            HazardModel::ModelB(ModelB::new(gamma, beta, mu, sigma)?)
        }
        SampleModel::PerturbedA { a, b, c, height, eps } => {
            let base = HazardModel::ModelA(ModelA::new(a, b, c, 0.0)?);
            let eps = eps.unwrap_or_else(|| perturbation_scale(args.n));
            HazardModel::Perturbed(Perturbed::new(base, height, eps, b)?)
        }
    };
    let mut rng = monohazard_core::seed::stream(seed_or_entropy(args.seed), &[]);
    let sample = model.sample(args.n, &mut rng)?;
    let mut out = open_out(args.out.as_ref())?;
    out.write_all(format_values(sample.values()).as_bytes())
        .and_then(|_| out.flush())
        .map_err(input)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Test(a) => cmd_test(a),
        Command::Power(a) => cmd_power(a),
        Command::Sample(a) => cmd_sample(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
