use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, ValueEnum};

use homcat_cli::{run_bytes, text, to_json_string, CliError, Command, Options};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Exact homological algebra from JSON problem files.
#[derive(Debug, Parser)]
#[command(name = "homcat", version)]
struct Args {
    /// One of: cohomology, cone, hom, koszul, d0, cech, hyper, spectral, ext, yoneda,
    /// extension, obstruction, les, correlate, verify.
    command: String,
    /// Problem file; `-` or omitted reads stdin.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Report file; omitted writes stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Record wall-clock time in the report (breaks byte-identical reruns).
    #[arg(long)]
    timings: bool,
}

fn seed_from_env() -> Result<Option<u64>> {
    match std::env::var("HOMCAT_SEED") {
        Ok(s) => Ok(Some(s.trim().parse().with_context(|| {
            format!("HOMCAT_SEED={s:?} is not an unsigned integer")
        })?)),
        Err(_) => Ok(None),
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<Vec<u8>> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf).context("reading stdin")?;
            Ok(buf)
        }
    }
}

fn write_output(path: &Option<PathBuf>, body: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => io::stdout()
            .write_all(body.as_bytes())
            .context("writing stdout"),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match real_main(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("homcat: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn real_main(args: &Args) -> Result<ExitCode> {
    let Some(command) = Command::from_name(&args.command) else {
        let err = CliError::Schema(format!("unknown command {:?}", args.command));
        eprintln!("{}", err.to_json());
        return Ok(ExitCode::from(2));
    };
    let opts = Options {
        seed: seed_from_env()?,
        timings: args.timings,
    };
    let bytes = read_input(&args.input)?;
    match run_bytes(&bytes, Some(command), &opts) {
        Ok(report) => {
            let body = match args.format {
                Format::Json => to_json_string(&report),
                Format::Text => text::render(&report),
            };
            write_output(&args.out, &body)?;
            Ok(ExitCode::SUCCESS)
        }
        Err(err) => {
            eprintln!("{}", err.to_json());
            Ok(ExitCode::from(2))
        }
    }
}
