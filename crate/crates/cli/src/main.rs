//! `torus`: JSON-in, JSON-out front end to `torus_core`.

mod commands;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::{asym, endo, lab, linear, spectral, subgroup, CliError, CmdResult, Options};

#[derive(Parser)]
#[command(name = "torus", version, about = "Exact computations with endomorphisms of tori")]
struct Cli {
    /// Read input JSON from this file instead of stdin.
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Write output JSON to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Bits of precision for root isolation and evaluation.
    #[arg(long, global = true, env = "TORUS_PRECISION", default_value_t = 64)]
    precision: u32,
    /// Single-line output.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form.
    Snf,
    /// Hermite normal form.
    Hnf,
    /// Factor the characteristic polynomial, or a given polynomial.
    Factor,
    #[command(subcommand)]
    Subgroup(SubgroupCmd),
    #[command(subcommand)]
    Endo(EndoCmd),
    #[command(subcommand)]
    Spectral(SpectralCmd),
    #[command(subcommand)]
    Asym(AsymCmd),
    #[command(subcommand)]
    Lab(LabCmd),
}

#[derive(Subcommand)]
enum SubgroupCmd {
    Sum,
    Intersect,
    Complement,
    Contains,
    FromDual,
    FromSubspace,
    InvariantSubset,
}

#[derive(Subcommand)]
enum EndoCmd {
    Check,
    Degree,
    FixedPoints,
    Image,
    Preimage,
    Orbit,
    Distance,
}

#[derive(Subcommand)]
enum SpectralCmd {
    Data,
    DominantComplement,
    RationalPart,
}

#[derive(Subcommand)]
enum AsymCmd {
    Distance,
    Verify,
    LimitDirection,
}

#[derive(Subcommand)]
enum LabCmd {
    Apply,
    Check,
    Build,
    Invinv,
    PropIrr,
    SampleZeros,
}

fn dispatch(cmd: &Command, input: &str, opts: &Options) -> CmdResult {
    match cmd {
        Command::Snf => linear::snf(input),
        Command::Hnf => linear::hnf(input),
        Command::Factor => linear::factor(input),
        Command::Subgroup(c) => match c {
            SubgroupCmd::Sum => subgroup::sum(input),
            SubgroupCmd::Intersect => subgroup::intersect(input),
            SubgroupCmd::Complement => subgroup::complement(input),
            SubgroupCmd::Contains => subgroup::contains(input),
            SubgroupCmd::FromDual => subgroup::from_dual(input),
            SubgroupCmd::FromSubspace => subgroup::from_subspace(input),
            SubgroupCmd::InvariantSubset => subgroup::invariant_subset(input),
        },
        Command::Endo(c) => match c {
            EndoCmd::Check => endo::check(input, opts),
            EndoCmd::Degree => endo::degree(input),
            EndoCmd::FixedPoints => endo::fixed_points(input),
            EndoCmd::Image => endo::image(input),
            EndoCmd::Preimage => endo::preimage(input),
            EndoCmd::Orbit => endo::orbit(input),
            EndoCmd::Distance => endo::distance(input),
        },
        Command::Spectral(c) => match c {
            SpectralCmd::Data => spectral::data(input, opts),
            SpectralCmd::DominantComplement => spectral::dominant_complement(input, opts),
            SpectralCmd::RationalPart => spectral::rational_part(input, opts),
        },
        Command::Asym(c) => match c {
            AsymCmd::Distance => asym::distance(input),
            AsymCmd::Verify => asym::verify(input),
            AsymCmd::LimitDirection => asym::limit_direction(input),
        },
        Command::Lab(c) => match c {
            LabCmd::Apply => lab::apply(input),
            LabCmd::Check => lab::check(input),
            LabCmd::Build => lab::build(input),
            LabCmd::Invinv => lab::invinv(input),
            LabCmd::PropIrr => lab::prop_irr(input, opts),
            LabCmd::SampleZeros => lab::sample_zeros(input),
        },
    }
}

fn read_input(path: &Option<PathBuf>) -> io::Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn emit(cli: &Cli, value: &serde_json::Value) -> io::Result<()> {
    let mut text = if cli.compact { serde_json::to_string(value)? } else { serde_json::to_string_pretty(value)? };
    text.push('\n');
    match &cli.out {
        Some(p) => std::fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let input = match read_input(&cli.input) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: reading input: {e}");
            return ExitCode::from(2);
        }
    };
    let opts = Options { precision: cli.precision };
    let (value, code) = match dispatch(&cli.command, &input, &opts) {
        Ok(v) => (v, 0),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Domain(e)) => (json!({ "error": { "code": e.code(), "message": e.to_string() } }), 1),
    };
    if let Err(e) = emit(&cli, &value) {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
