use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use blowup_cli::corpus::run_corpus;
use blowup_cli::{exit, parse_problem, run, text_trace, Format, RawProblem};

/// Resolve singularities of an affine hypersurface by explicit blow-ups and
/// print the trace.
#[derive(Parser, Debug)]
#[command(name = "blowup", version)]
struct Args {
    /// Comma-separated variable names, e.g. `x,y,z`.
    #[arg(long)]
    vars: Option<String>,
    /// Hypersurface equation; `0` is the ambient space.
    #[arg(long)]
    eq: Option<String>,
    /// Generators of the marked ideal (marked driver).
    #[arg(long)]
    gens: Option<String>,
    /// fvar, floc, curve-fvar, curve-floc, marked or pair.
    #[arg(long)]
    driver: Option<String>,
    /// Control of the marked ideal.
    #[arg(long)]
    control: Option<String>,
    /// Generators of the subscheme Z (pair driver).
    #[arg(long)]
    subscheme: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// text, json or both (default). `--out` always receives the JSON;
    /// otherwise `both` prints the trace on stderr and the JSON on stdout.
    #[arg(long)]
    format: Option<String>,
    /// Run every case of a golden corpus directory.
    #[arg(long, value_name = "DIR")]
    corpus: Option<PathBuf>,
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return code(if e.use_stderr() { exit::PARSE } else { exit::OK });
        }
    };
    if let Some(dir) = &args.corpus {
        return match run_corpus(dir) {
            Ok(report) => {
                print!("{}", report.summary());
                code(if report.failures() == 0 { exit::OK } else { exit::CORPUS })
            }
            Err(e) => {
                eprintln!("error: {e}");
                code(exit::CORPUS)
            }
        };
    }
    let raw = RawProblem {
        vars: args.vars,
        eq: args.eq,
        gens: args.gens,
        driver: args.driver,
        control: args.control,
        subscheme: args.subscheme,
        format: args.format,
    };
    let spec = match parse_problem(&raw) {
        Ok(s) => s,
        Err(d) => {
            eprintln!("{d}");
            return code(exit::PARSE);
        }
    };
    let report = match run(&spec) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("driver aborted: {e}");
            return code(exit::DRIVER);
        }
    };
    let trace = text_trace(&report);
    let json = report.to_json_string() + "\n";
    match &args.out {
        Some(p) => {
            if let Err(e) = fs::write(p, json) {
                eprintln!("error: {}: {e}", p.display());
                return code(exit::DRIVER);
            }
            if spec.format != Format::Json {
                print!("{trace}");
            }
        }
        None => match spec.format {
            Format::Text => print!("{trace}"),
            Format::Json => print!("{json}"),
            Format::Both => {
                eprint!("{trace}");
                print!("{json}");
            }
        },
    }
    code(exit::OK)
}
