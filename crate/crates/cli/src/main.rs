use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use mtensor::{
    classify_m_tensor, largest_eigenvalue, procedure1, test_positive_definite_with, GenSpec, IterateNorm,
    IterationSettings,
};
use mtensor_cli::report::{classify_exit_code, posdef_exit_code, BenchReport, ClassifyReport, EigReport, PosdefReport};
use mtensor_cli::{read_tensor, run_bench, write_tensor, BenchConfig, Storage};

/// Exit code for any failure (bad input, I/O, usage).
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "mtensor", version, about = "Spectral tools for dense higher-order tensors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random Z-tensor and write it to a file.
    Gen {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        dim: usize,
        /// Diagonal offset added to the diagonal noise.
        #[arg(long = "ad")]
        a_d: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = StorageArg::Dense)]
        storage: StorageArg,
    },
    /// Largest eigenvalue of a nonnegative tensor.
    Eig {
        input: PathBuf,
        #[command(flatten)]
        iter: IterArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide whether a Z-tensor is an M-tensor (exit 0 yes, 1 no, 2 indeterminate).
    Classify {
        input: PathBuf,
        #[command(flatten)]
        iter: IterArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Test positive definiteness of the form with the given coefficients.
    Posdef {
        input: PathBuf,
        #[command(flatten)]
        iter: IterArgs,
        /// Random samples used to look for a witness.
        #[arg(long, default_value_t = mtensor::posdef::DEFAULT_WITNESS_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify batches of random Z-tensors; one row per (dim, ad) pair.
    Bench {
        #[arg(long)]
        order: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        dim: Vec<usize>,
        #[arg(long = "ad", value_delimiter = ',', required = true)]
        a_d: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        iter: IterArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Clone)]
struct IterArgs {
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long = "max-iter", default_value_t = 10_000)]
    max_iter: usize,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
    /// Do not retry with a small perturbation when the iteration stalls.
    #[arg(long)]
    no_fallback: bool,
}

impl IterArgs {
    fn settings(&self, seed: u64) -> IterationSettings {
        IterationSettings {
            tol: self.tol,
            max_iter: self.max_iter,
            sigma: self.sigma,
            epsilon: self.epsilon,
            norm: IterateNorm::L1,
            epsilon_fallback: !self.no_fallback,
            seed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum StorageArg {
    Dense,
    Coo,
}

fn emit<T: serde::Serialize>(format: Format, report: &T, text: impl FnOnce(&T) -> String) -> anyhow::Result<()> {
    match format {
        Format::Text => print!("{}", text(report)),
        Format::Json => println!("{}", serde_json::to_string_pretty(report)?),
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Gen {
            order,
            dim,
            a_d,
            seed,
            out,
            storage,
        } => {
            let t = procedure1(&GenSpec::new(order, dim, a_d, seed)?)?;
            let storage = match storage {
                StorageArg::Dense => Storage::Dense,
                StorageArg::Coo => Storage::Coo,
            };
            write_tensor(&out, &t, storage).with_context(|| format!("writing {}", out.display()))?;
            Ok(0)
        }
        Command::Eig { input, iter, format } => {
            let t = read_tensor(&input).with_context(|| format!("reading {}", input.display()))?;
            let out = largest_eigenvalue(&t, &iter.settings(0))?;
            emit(format, &EigReport::new(t.order(), t.dim(), &out), EigReport::to_text)?;
            Ok(0)
        }
        Command::Classify { input, iter, format } => {
            let t = read_tensor(&input).with_context(|| format!("reading {}", input.display()))?;
            let v = classify_m_tensor(&t, &iter.settings(0))?;
            emit(
                format,
                &ClassifyReport::new(t.order(), t.dim(), &v),
                ClassifyReport::to_text,
            )?;
            Ok(classify_exit_code(v.status))
        }
        Command::Posdef {
            input,
            iter,
            samples,
            seed,
            format,
        } => {
            let t = read_tensor(&input).with_context(|| format!("reading {}", input.display()))?;
            let v = test_positive_definite_with(&t, &iter.settings(seed), samples)?;
            let witness_value = match &v.witness {
                Some(w) => Some(t.symmetrize().form(w)?),
                None => None,
            };
            let report = PosdefReport::new(t.order(), t.dim(), &v, witness_value);
            emit(format, &report, PosdefReport::to_text)?;
            Ok(posdef_exit_code(v.status))
        }
        Command::Bench {
            order,
            dim,
            a_d,
            trials,
            seed,
            workers,
            iter,
            format,
        } => {
            let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let mut rows = Vec::new();
            for &n in &dim {
                for &ad in &a_d {
                    let config = BenchConfig {
                        order,
                        dim: n,
                        a_d: ad,
                        trials,
                        seed,
                        settings: iter.settings(seed),
                        workers,
                    };
                    rows.push(run_bench(&config)?.row);
                }
            }
            let report = BenchReport {
                command: "bench",
                workers,
                rows,
            };
            emit(format, &report, BenchReport::to_text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
