mod output;
mod records;
mod scan;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mirror_stringy::{Error, WeightVector};

#[derive(Parser, Debug)]
#[command(
    name = "mirror-stringy",
    version,
    about = "Stringy and orbifold E-functions of weighted Calabi-Yau hypersurfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Guard band (extra series terms) for bracket reconstruction.
    #[arg(long, env = "MIRROR_STRINGY_GUARD", global = true)]
    guard: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weight data: charges, IP and transversality, group census, Milnor number.
    Analyze(Single),
    /// Stringy E-function of the mirror, Hodge numbers and Euler number.
    Stringy(Single),
    /// Orbifold E-function, Poincare polynomial and orbifold Euler number.
    Orbifold(Single),
    /// Compare the stringy and orbifold sides, globally and for each l.
    MirrorCheck(Single),
    /// Verify every IP weight vector of a given dimension up to a degree bound.
    Scan(ScanArgs),
}

#[derive(Args, Debug)]
struct Single {
    /// Comma-separated weights, e.g. 1,5,12,18. Several vectors may be given.
    #[arg(required = true, value_parser = parse_weights)]
    weights: Vec<Vec<u64>>,

    /// Treat the weight vectors as transverse without checking.
    #[arg(long)]
    assume_transverse: bool,

    /// Include the individual l-summands.
    #[arg(long)]
    per_l: bool,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// d: the number of weights minus one.
    #[arg(long)]
    pub dim: usize,

    /// Largest degree w = sum of weights.
    #[arg(long)]
    pub wmax: u64,

    /// Number of leading result rows to skip (to resume an interrupted scan).
    #[arg(long, default_value_t = 0)]
    pub skip: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

fn parse_weights(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad weight {x:?}: {e}"))
        })
        .collect()
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::EmptyInput
        | Error::TooFewWeights(_)
        | Error::TooManyWeights(_)
        | Error::NonPositiveWeight
        | Error::NotWellFormed { .. }
        | Error::OutOfRange { .. }
        | Error::SubsetTooSmall(_)
        | Error::SubsetOutOfRange { .. } => 2,
        Error::NotIP(_) => 3,
        _ => 4,
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(e))
}

fn run_single(cmd: &Command, args: &Single, format: Format) -> ExitCode {
    let mut values = Vec::new();
    for w in &args.weights {
        let wv = match WeightVector::new(w) {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        if args.assume_transverse {
            wv.assume_transverse();
        }
        let rec = match cmd {
            Command::Analyze(_) => Ok(records::analyze(&wv)),
            Command::Stringy(_) => records::stringy(&wv, args.per_l),
            Command::Orbifold(_) => records::orbifold(&wv, args.per_l),
            Command::MirrorCheck(_) => records::mirror_check(&wv, args.per_l),
            Command::Scan(_) => unreachable!(),
        };
        match rec {
            Ok(v) => values.push(v),
            Err(e) => return fail(&e),
        }
    }
    let out = io::stdout();
    let mut out = out.lock();
    let written = output::write_records(&mut out, &values, format).and_then(|()| out.flush());
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(4)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    mirror_stringy::stringy::set_guard_band(cli.guard);
    match &cli.command {
        Command::Scan(args) => scan::run(args, cli.format),
        cmd @ (Command::Analyze(a)
        | Command::Stringy(a)
        | Command::Orbifold(a)
        | Command::MirrorCheck(a)) => run_single(cmd, a, cli.format),
    }
}
