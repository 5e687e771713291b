//! Command-line front end: `simulate`, `estimate` and `ktrace`.
//!
//! Exit codes: 0 success, 1 runtime error, 2 configuration error,
//! 3 at least one simulation cell failed entirely.

use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use censored_mean::harness::{run_grid_with_threads, write_tables, GridConfig, TableFormat};
use censored_mean::tail::k_trace;
use censored_mean::{
    bootstrap_mu, mu_hat, BootstrapConfig, CensoredSample, CiMethod, Error, Family, KChoice,
    KPolicy, KSelection,
};

#[derive(Parser)]
#[command(name = "censored-mean", version, about = "Heavy-tailed mean estimation under random right censoring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum BootPolicyArg {
    Fixed,
    Reauto,
}

#[derive(Clone, Copy, ValueEnum)]
enum CiArg {
    Normal,
    Percentile,
}

#[derive(clap::Args)]
struct SelectionArgs {
    /// Weight exponent of the stability criterion, in [0, 0.5].
    #[arg(long, default_value_t = 0.3)]
    theta: f64,
    /// Smallest candidate k (default max(10, n/100)).
    #[arg(long)]
    kmin: Option<usize>,
    /// Largest candidate k (default n/4).
    #[arg(long)]
    kmax: Option<usize>,
}

impl SelectionArgs {
    fn selection(&self) -> KSelection {
        KSelection {
            theta: self.theta,
            k_min: self.kmin,
            k_max: self.kmax,
            ..KSelection::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte-Carlo grid and write summary tables.
    Simulate {
        /// TOML grid configuration.
        #[arg(long, required_unless_present = "full")]
        config: Option<PathBuf>,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Run the complete design (both families, 1000 replicates per cell).
        #[arg(long)]
        full: bool,
    },
    /// Estimate the mean from a `z,delta` CSV file.
    Estimate {
        #[arg(long)]
        input: PathBuf,
        /// Number of top order statistics, or `auto`.
        #[arg(long, default_value = "auto")]
        k: String,
        #[command(flatten)]
        selection: SelectionArgs,
        /// Add a bootstrap confidence interval.
        #[arg(long)]
        ci: bool,
        #[arg(long, default_value_t = 500)]
        boot_b: usize,
        #[arg(long, value_enum, default_value_t = BootPolicyArg::Fixed)]
        boot_policy: BootPolicyArg,
        #[arg(long, value_enum, default_value_t = CiArg::Normal)]
        ci_method: CiArg,
        #[arg(long, default_value_t = 0.95)]
        level: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also print a JSON-lines record.
        #[arg(long)]
        json: bool,
    },
    /// Per-k diagnostics of the tail-index estimators and the selection criterion.
    Ktrace {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        selection: SelectionArgs,
    },
}

fn read_sample(path: &Path) -> Result<CensoredSample, Error> {
    CensoredSample::read_csv(BufReader::new(File::open(path)?))
}

fn simulate(
    config: Option<PathBuf>,
    out: PathBuf,
    format: Format,
    threads: Option<usize>,
    full: bool,
) -> Result<bool, Error> {
    let configs = if full {
        let base = match &config {
            Some(path) => GridConfig::from_toml_str(&fs::read_to_string(path)?)?,
            None => GridConfig::default(),
        };
        [Family::Frechet, Family::Burr]
            .into_iter()
            .map(|family| GridConfig {
                seed: base.seed,
                theta: base.theta,
                k_min_frac: base.k_min_frac,
                k_max_frac: base.k_max_frac,
                boot_b: base.boot_b,
                level: base.level,
                boot_policy: base.boot_policy,
                ci_method: base.ci_method,
                ..GridConfig::full_design(family)
            })
            .collect()
    } else {
        let path = config.expect("clap enforces --config without --full");
        vec![GridConfig::from_toml_str(&fs::read_to_string(path)?)?]
    };
    let threads = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let format = match format {
        Format::Csv => TableFormat::Csv,
        Format::Markdown => TableFormat::Markdown,
    };
    fs::create_dir_all(&out)?;
    let mut any_failed = false;
    for cfg in &configs {
        let summaries = run_grid_with_threads(cfg, threads)?;
        any_failed |= summaries.iter().any(|s| s.is_failed());
        let path = out.join(format!("{}.{}", cfg.family, format.extension()));
        write_tables(&summaries, format, &path)?;
        log::info!("wrote {}", path.display());
    }
    Ok(any_failed)
}

#[allow(clippy::too_many_arguments)]
fn estimate(
    input: PathBuf,
    k: String,
    selection: KSelection,
    ci: bool,
    boot_b: usize,
    boot_policy: BootPolicyArg,
    ci_method: CiArg,
    level: f64,
    seed: u64,
    json: bool,
) -> Result<(), Error> {
    let sample = read_sample(&input)?;
    let choice = if k == "auto" {
        KChoice::Auto(selection)
    } else {
        let k = k
            .parse()
            .map_err(|_| Error::Config(format!("--k must be an integer or `auto`, got `{k}`")))?;
        KChoice::Fixed(k)
    };
    let est = mu_hat(&sample, &choice)?;
    println!("n = {}", sample.len());
    println!("k_star = {}", est.tail.k);
    println!("mu_hat = {}", est.mu_hat);
    println!("mu1_hat = {}", est.mu1_hat);
    println!("mu2_hat = {}", est.mu2_hat);
    println!("gamma1_hat = {}", est.tail.gamma1_hat);
    println!("gamma_hill = {}", est.tail.gamma_hill);
    println!("p_hat = {}", est.tail.p_hat);
    println!("km_mean = {}", est.km_baseline);

    let boot = if ci {
        let cfg = BootstrapConfig {
            b: boot_b,
            policy: match boot_policy {
                BootPolicyArg::Fixed => KPolicy::Fixed(Some(est.tail.k)),
                BootPolicyArg::Reauto => KPolicy::Reauto,
            },
            level,
            method: match ci_method {
                CiArg::Normal => CiMethod::Normal,
                CiArg::Percentile => CiMethod::Percentile,
            },
            selection,
        };
        let boot = bootstrap_mu(&sample, &cfg, &mut censored_mean::rng::stream(seed, 0, 0))?;
        println!("boot_mean = {}", boot.boot_mean);
        println!("boot_sd = {}", boot.boot_sd);
        println!("ci_lower = {}", boot.ci_lower);
        println!("ci_upper = {}", boot.ci_upper);
        println!("level = {}", boot.level);
        println!("boot_failures = {}", boot.failures);
        Some(boot)
    } else {
        None
    };

    if json {
        let mut record = serde_json::json!({
            "n": sample.len(),
            "k_star": est.tail.k,
            "mu_hat": est.mu_hat,
            "mu1_hat": est.mu1_hat,
            "mu2_hat": est.mu2_hat,
            "gamma1_hat": est.tail.gamma1_hat,
            "gamma_hill": est.tail.gamma_hill,
            "p_hat": est.tail.p_hat,
            "km_mean": est.km_baseline,
        });
        if let Some(b) = boot {
            record["boot_mean"] = b.boot_mean.into();
            record["boot_sd"] = b.boot_sd.into();
            record["ci_lower"] = b.ci_lower.into();
            record["ci_upper"] = b.ci_upper.into();
            record["level"] = b.level.into();
            record["boot_failures"] = b.failures.into();
        }
        println!("{record}");
    }
    Ok(())
}

fn ktrace(input: PathBuf, out: PathBuf, selection: KSelection) -> Result<(), Error> {
    let sample = read_sample(&input)?;
    let rows = k_trace(&sample, &selection)?;
    let mut wtr = csv::Writer::from_path(&out)?;
    for row in &rows {
        wtr.serialize(row)?;
    }
    wtr.flush()?;
    Ok(())
}

fn exit_code(err: &Error) -> ExitCode {
    match err {
        Error::Config(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate {
            config,
            out,
            format,
            threads,
            full,
        } => simulate(config, out, format, threads, full).map(|failed| {
            if failed {
                log::warn!("some cells failed in every replicate");
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }),
        Command::Estimate {
            input,
            k,
            selection,
            ci,
            boot_b,
            boot_policy,
            ci_method,
            level,
            seed,
            json,
        } => estimate(
            input,
            k,
            selection.selection(),
            ci,
            boot_b,
            boot_policy,
            ci_method,
            level,
            seed,
            json,
        )
        .map(|_| ExitCode::SUCCESS),
        Command::Ktrace {
            input,
            out,
            selection,
        } => ktrace(input, out, selection.selection()).map(|_| ExitCode::SUCCESS),
    };
    result.unwrap_or_else(|err| {
        eprintln!("error: {err}");
        exit_code(&err)
    })
}
