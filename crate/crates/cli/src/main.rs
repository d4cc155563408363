//! `tddel`: JSON in, JSON out. Exit codes: 0 ran and produced a result,
//! 1 internal consistency failure (including a feasible counterexample
//! candidate or a failing self-test), 2 bad input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use tddel_core::{
    build_system, decide, realize, standardness_from_complex, witness, Error, PlanarPointSet, PointConfiguration,
    Representation, SimplicialComplex,
};

mod selftest;

#[derive(Parser)]
#[command(name = "tddel", version, about = "Dushnik-Miller representations and TD-Delaunay complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Input JSON file; stdin if omitted.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Complex Σ(R) of a representation.
    Sigma(Io),
    /// TD-Delaunay complex of a point set in H_d.
    Tdd(Io),
    /// The coordinate orders of a point set.
    RepOf(Io),
    /// The inequality system of a representation.
    System {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Strict solution or multi-flow certificate.
    Decide(Io),
    /// Point set realizing Σ(R), or null when the system is infeasible.
    Realize(Io),
    /// Rectangular Delaunay complex of planar points.
    Rdel(Io),
    /// Points of H_4 realizing the rectangular Delaunay complex.
    RdelRealize(Io),
    /// Standardness of a representation, or of a complex with --complex.
    Standard {
        #[command(flatten)]
        io: Io,
        /// Read a complex and recognize its face-count signature.
        #[arg(long, requires = "d")]
        complex: bool,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Check every representation of the 8-vertex counterexample complex.
    Counterexample {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also search all prefix and middle permutations without propagation.
        #[arg(long)]
        exhaustive: bool,
        /// Include every candidate and its certificate in the report.
        #[arg(long)]
        full: bool,
    },
    /// Built-in examples and seeded random property checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        samples: usize,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TheoremViolation(_) => Failure::Internal(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read<T: DeserializeOwned>(io: &Io) -> Result<T, Failure> {
    let text = match &io.input {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(serde_json::from_str(&text)?)
}

fn emit_text(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn emit<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<(), Failure> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    emit_text(out, &s)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Sigma(io) => emit(&io.out, &read::<Representation>(&io)?.sigma())?,
        Command::Tdd(io) => emit(&io.out, &read::<PointConfiguration>(&io)?.tdd()?)?,
        Command::RepOf(io) => emit(&io.out, &read::<PointConfiguration>(&io)?.representation_of()?)?,
        Command::System { io, format } => {
            let s = build_system(&read::<Representation>(&io)?);
            match format {
                Format::Json => emit(&io.out, &s)?,
                Format::Csv => emit_text(&io.out, &s.to_csv())?,
            }
        }
        Command::Decide(io) => emit(&io.out, &decide(&read::<Representation>(&io)?)?)?,
        Command::Realize(io) => {
            let p = realize(&read::<Representation>(&io)?)?;
            if p.is_none() {
                eprintln!("system infeasible; `tddel decide` prints a multi-flow certificate");
            }
            emit(&io.out, &p)?
        }
        Command::Rdel(io) => emit(&io.out, &read::<PlanarPointSet>(&io)?.rdelaunay())?,
        Command::RdelRealize(io) => emit(&io.out, &read::<PlanarPointSet>(&io)?.realize()?)?,
        Command::Standard { io, complex, d } => {
            if complex {
                let c: SimplicialComplex = read(&io)?;
                let d = d.expect("clap enforces --d");
                emit(&io.out, &serde_json::json!({ "maxima": standardness_from_complex(&c, d) }))?
            } else {
                emit(&io.out, &read::<Representation>(&io)?.standardness()?)?
            }
        }
        Command::Counterexample { out, exhaustive, full } => {
            let report = witness::verify_counterexample()?;
            let mut json = report.to_json(full);
            let mut ok = report.all_infeasible && report.reference_flow_valid;
            eprintln!("{}", report.summary());
            if exhaustive {
                let ex = witness::verify_exhaustive()?;
                eprintln!(
                    "exhaustive: {} orderings, {} after pruning, {} with the same complex, agrees with propagation: {}",
                    ex.report.unpruned_total,
                    ex.report.pruned_total,
                    ex.report.matching.len(),
                    ex.agrees_with_propagation
                );
                ok &= ex.agrees_with_propagation && ex.all_infeasible();
                json["exhaustive"] = ex.to_json();
            }
            emit(&out, &json)?;
            if !ok {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Selftest { seed, samples } => {
            let results = selftest::run(seed, samples);
            let passed = results.iter().filter(|(_, ok)| *ok).count();
            let mut text = String::new();
            for (name, ok) in &results {
                text.push_str(&format!("{} {name}\n", if *ok { "PASS" } else { "FAIL" }));
            }
            text.push_str(&format!("{passed}/{} checks passed\n", results.len()));
            emit_text(&None, &text)?;
            if passed != results.len() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
