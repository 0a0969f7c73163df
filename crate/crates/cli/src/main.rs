//! `matx`: command-line front end for the matroid engine.
//!
//! Exit codes: 0 check passed or answer produced, 1 check failed (a
//! counterexample is reported), 2 usage or input error, 3 cap exceeded.

mod commands;
mod input;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matx_core::Error;

#[derive(Parser, Debug)]
#[command(name = "matx", version, about = "Matroid basis-exchange computations")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Print the canonical JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Vertex / fiber-state cap.
    #[arg(long, env = "MATX_CAP", default_value_t = 1_000_000, global = true)]
    pub cap: usize,
    /// Worker threads for parallel commands.
    #[arg(long, env = "MATX_WORKERS", default_value_t = 1, global = true)]
    pub workers: usize,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate a matroid file.
    Validate {
        #[arg(long)]
        file: String,
    },
    /// Rank of a subset.
    Rank {
        #[arg(long)]
        file: String,
        /// One-based elements, e.g. `1,2,3`.
        #[arg(long)]
        set: String,
    },
    /// Partition the ground set into k bases.
    Kpart {
        #[arg(long)]
        file: String,
        #[arg(short)]
        k: usize,
    },
    /// Complementary bases: test one basis, or check the complementary graph.
    Complementary {
        #[arg(long)]
        file: String,
        #[arg(short)]
        k: usize,
        /// Test only this basis.
        #[arg(long)]
        set: Option<String>,
        /// Also join each basis to its complement (k = 2).
        #[arg(long)]
        modified: bool,
    },
    /// Build an exchange graph and summarise it.
    Graph {
        #[arg(long)]
        file: String,
        #[arg(long, value_enum)]
        kind: GraphKindArg,
        #[arg(short, default_value_t = 2)]
        k: usize,
        /// Allow the k-base graph for k = 2.
        #[arg(long)]
        allow_k2: bool,
        /// Skip the diameter when the largest component is bigger.
        #[arg(long, default_value_t = 20_000)]
        diameter_threshold: usize,
    },
    /// Check connectivity of every degree-d fiber.
    Fibers {
        #[arg(long)]
        file: String,
        #[arg(short)]
        d: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::W2)]
        variant: VariantArg,
        /// With w3: exchanged pairs keep their positions.
        #[arg(long)]
        strict_order: bool,
        /// Write counterexamples (matroid file plus states) into this directory.
        #[arg(long)]
        dump: Option<String>,
    },
    /// Shortest move sequence between two states, e.g. `--from 12|34 --to 13|24`.
    Path {
        #[arg(long)]
        file: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value_t = VariantArg::W2)]
        variant: VariantArg,
        #[arg(long)]
        strict_order: bool,
    },
    /// Per-instance checkers.
    Conjecture {
        #[arg(long)]
        file: String,
        #[arg(long, value_enum)]
        check: CheckArg,
        #[arg(short, default_value_t = 2)]
        k: usize,
        #[arg(short)]
        x: Option<usize>,
        #[arg(short)]
        y: Option<usize>,
        /// Number of missing bases for the audit.
        #[arg(short, default_value_t = 0)]
        s: usize,
        /// Bases as a state, e.g. `12|34|56`.
        #[arg(long)]
        bases: Option<String>,
        /// Untouched set (blow-up) or padding basis (saturation).
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
    },
    /// Graph and fiber checks over a catalog or a single file.
    Scan {
        /// Scan one matroid instead of a catalog.
        #[arg(long)]
        file: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        #[arg(short, default_value_t = 2)]
        r: usize,
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        /// Comma-separated k values.
        #[arg(long, default_value = "2,3")]
        k_range: String,
        /// Comma-separated fiber degrees.
        #[arg(long, default_value = "2")]
        d_range: String,
        /// Comma-separated variants.
        #[arg(long, default_value = "w2")]
        variants: String,
        #[arg(long, default_value_t = 20_000)]
        diameter_threshold: usize,
    },
    /// Generate a matroid catalog.
    Catalog {
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        #[arg(short)]
        r: usize,
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long)]
        n_max: usize,
        /// Keep isomorphic duplicates in constructed mode.
        #[arg(long)]
        no_dedup: bool,
        /// Write each entry as `<name>.mat` into this directory.
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum GraphKindArg {
    Basis,
    Complementary,
    Kbase,
    KbaseModified,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum VariantArg {
    W1,
    W2,
    W3,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum CheckArg {
    /// Complementary basis graph connectivity.
    Complementary,
    /// Shared block of partitions of E\x and E\y (|E| = kr + 1).
    Shared,
    /// Count non-complementary bases among disjoint bases.
    Audit,
    /// Blow-up containment labeling.
    Blowup,
    /// Padding a binomial with copies of a basis.
    Saturation,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ModeArg {
    Exhaustive,
    Constructed,
}

/// What a command produced: the report plus whether its check passed.
pub struct Outcome {
    pub report: matx_core::Report,
    pub text: String,
    pub passed: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    run(cli.command, cli.common)
}

fn run(command: Command, common: Common) -> ExitCode {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(common.workers.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    let started = Instant::now();
    let result = pool.install(|| commands::execute(&command, &common));
    match result {
        Ok(mut outcome) => {
            if common.timing {
                outcome.report.timing_ms = Some(started.elapsed().as_millis() as u64);
            }
            if common.json {
                print!("{}", outcome.report.to_canonical_json());
            } else {
                print!("{}", outcome.text);
                if common.timing {
                    println!("time: {} ms", started.elapsed().as_millis());
                }
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    if e.is_cap() {
        3
    } else {
        2
    }
}
