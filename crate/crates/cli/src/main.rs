mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "quasidom",
    version,
    about = "Bounded dominating sets for multidigraphs covered by k quasi-orders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Random tournament, random colors, each color transitively closed.
    Tournament,
    /// k independent random total orders.
    Linear,
    /// Color 0 a total order, other colors random sub-orders (see --density).
    Poset,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Build and verify a dominating set certificate.
    Solve {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        delta: f64,
        #[arg(long, default_value_t = 1000)]
        max_iterations: usize,
        /// Embed the partition tree in the report.
        #[arg(long)]
        dump_tree: bool,
        /// Include wall-clock timings (makes the report non-reproducible).
        #[arg(long)]
        timings: bool,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Independently check a certificate against an instance.
    Verify {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(short = 'c', long = "certificate")]
        certificate: PathBuf,
    },
    /// Exact domination number by enumeration.
    Gamma {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        /// Refuse instances with more vertices than this.
        #[arg(long, default_value_t = quasidom::DEFAULT_VERTEX_CAP)]
        cap: usize,
        /// Largest set size to search (default: n).
        #[arg(long)]
        size_cap: Option<usize>,
    },
    /// Tabulate g(1/2k) and k^(k+1)·g(1/2k).
    Gtable {
        #[arg(long)]
        k_max: usize,
    },
    /// Batch generate-and-solve with summary statistics.
    Bench {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        reps: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 1e-6)]
        delta: f64,
        /// Run the exact baseline on instances with at most this many vertices.
        #[arg(long, default_value_t = 18)]
        exact_max_n: usize,
        #[arg(long)]
        timings: bool,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let echo = report::command_echo(&argv);
    let result = match cli.command {
        Command::Gen {
            model,
            n,
            k,
            seed,
            density,
            output,
        } => commands::gen(echo, model, n, k, seed, density, &output),
        Command::Solve {
            input,
            delta,
            max_iterations,
            dump_tree,
            timings,
            output,
        } => commands::solve(
            echo,
            &input,
            delta,
            max_iterations,
            dump_tree,
            timings,
            &output,
        ),
        Command::Verify { input, certificate } => commands::verify(echo, &input, &certificate),
        Command::Gamma {
            input,
            cap,
            size_cap,
        } => commands::gamma(echo, &input, cap, size_cap),
        Command::Gtable { k_max } => commands::gtable(echo, k_max),
        Command::Bench {
            model,
            reps,
            seed,
            n,
            k,
            density,
            delta,
            exact_max_n,
            timings,
        } => commands::bench(
            echo,
            model,
            reps,
            seed,
            n,
            k,
            density,
            delta,
            exact_max_n,
            timings,
        ),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
