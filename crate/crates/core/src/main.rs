use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use critwave::cli::{self, ExperimentConfig, ReportKind};
use critwave::coefficients::CoefficientForm;
use critwave::stability::StabilityProblem;
use critwave::{Complex64, Error, Result};

#[derive(Parser, Debug)]
#[command(name = "critwave", version, about = "Critical-wave experiments for 1/zeta expansions")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

/// Experiment settings; each overrides the same key from `--config`.
#[derive(Args, Debug)]
struct Common {
    /// key = value file with experiment settings
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    alpha: Option<String>,
    #[arg(long, global = true)]
    beta: Option<String>,
    #[arg(long, global = true)]
    rho: Option<String>,
    /// Möbius truncation N
    #[arg(long, global = true)]
    truncation: Option<String>,
    #[arg(long, global = true)]
    x_min: Option<String>,
    #[arg(long, global = true)]
    x_max: Option<String>,
    #[arg(long, global = true)]
    step: Option<String>,
    /// number of nontrivial zero pairs in decompositions
    #[arg(long, global = true)]
    zero_count: Option<String>,
    #[arg(long, global = true)]
    output_dir: Option<String>,
    /// csv, svg or both
    #[arg(long, global = true)]
    format: Option<String>,
    /// double or validated
    #[arg(long, global = true)]
    precision: Option<String>,
}

impl Common {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut c = ExperimentConfig::default();
        if let Some(path) = &self.config {
            c.apply_file(path)?;
        }
        let flags = [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("rho", &self.rho),
            ("truncation", &self.truncation),
            ("x_min", &self.x_min),
            ("x_max", &self.x_max),
            ("step", &self.step),
            ("zero_count", &self.zero_count),
            ("output_dir", &self.output_dir),
            ("format", &self.format),
            ("precision", &self.precision),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                c.set(key, v)?;
            }
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sieve mu(n) and write the binary cache
    Sieve {
        #[arg(long)]
        limit: u64,
    },
    /// Data for figure 1 to 5
    Figure {
        #[arg(long, short)]
        n: u8,
    },
    /// psi_rho on the configured grid
    Wave,
    /// c_k values and the fluctuation decay table
    Ck {
        #[arg(long, num_args = 1.., required = true)]
        k: Vec<f64>,
        /// exact or exponential
        #[arg(long, default_value = "exact")]
        form: String,
    },
    /// Truncation-stability thresholds
    Stability {
        #[arg(long, default_value_t = 1_000_000)]
        n_high: u64,
        #[arg(long, default_value_t = 2000)]
        n_low: u64,
        #[arg(long, default_value_t = 0.015)]
        amplitude: f64,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        /// truncations for the amplitude-halving thresholds
        #[arg(long, num_args = 1.., default_values_t = [2000u64, 1_000_000_000])]
        halving: Vec<u64>,
    },
    /// Partial sums of the 1/zeta(s) expansion
    Reciprocal {
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        /// imaginary part of s
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = critwave::reciprocal::DEFAULT_K_MAX)]
        k_max: u64,
    },
    /// Extrema and envelope of psi_rho
    Oscillations,
}

fn run(cli: Cli) -> Result<()> {
    let config = cli.common.config()?;
    let rho_flag = cli.common.rho.is_some();
    let report = |kind: ReportKind| -> Result<()> {
        let (r, files) = cli::run_report(&kind, &config)?;
        print!("{}", r.text);
        for f in files {
            println!("wrote {}", f.display());
        }
        Ok(())
    };
    match cli.command {
        Command::Sieve { limit } => {
            let (path, summary) = cli::run_sieve(limit, &config)?;
            println!("{summary}");
            println!("wrote {}", path.display());
        }
        Command::Figure { n } => {
            for f in cli::run_figure(n, &config)? {
                println!("wrote {}", f.display());
            }
        }
        Command::Wave => {
            for f in cli::run_wave(&config)? {
                println!("wrote {}", f.display());
            }
        }
        Command::Ck { k, form } => {
            let form: CoefficientForm = form.parse()?;
            report(ReportKind::Coefficients { ks: k, form })?;
        }
        Command::Stability {
            n_high,
            n_low,
            amplitude,
            tolerance,
            halving,
        } => {
            let problem = StabilityProblem {
                alpha: config.params.alpha,
                beta: config.params.beta,
                // the wave under study is psi_{3/4} unless --rho says otherwise
                rho: if rho_flag { config.params.rho } else { 0.75 },
                n_low,
                n_high,
                amplitude,
                relative_tolerance: tolerance,
            };
            problem.validate()?;
            report(ReportKind::Stability { problem, halving })?;
        }
        Command::Reciprocal { s, t, k_max } => {
            report(ReportKind::Reciprocal {
                s: Complex64::new(s, t),
                k_max,
            })?;
        }
        Command::Oscillations => report(ReportKind::Oscillations)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}

fn exit_status(e: &Error) -> u8 {
    e.exit_code() as u8
}
