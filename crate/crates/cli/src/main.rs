use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lzdmw_cli::*;
use lzdmw_core::format::{
    parse_parsing, read_text, write_parsing, write_raw, write_stats, write_sym, TextFormat,
};
use lzdmw_core::{verify_parsing, Scheme};
use lzdmw_gen::{Family, GenParams};

#[derive(Parser)]
#[command(
    name = "lzdmw",
    version,
    about = "LZD / LZMW parsing: generate, parse, verify, benchmark"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Auto,
    Sym,
    Raw,
}

impl From<Format> for TextFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Auto => TextFormat::Auto,
            Format::Sym => TextFormat::Sym,
            Format::Raw => TextFormat::Raw,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a member of an adversarial family.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// `sym` (default) or `raw` bytes.
        #[arg(long, value_enum, default_value = "sym")]
        format: Format,
    },
    /// Parse a text and write the parsing.
    Parse {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long, default_value = "reference")]
        algo: Algo,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print counters as key=value lines on stderr.
        #[arg(long)]
        stats: bool,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
    },
    /// Exit 0 iff the parsing encodes the text.
    Verify {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        text: PathBuf,
        #[arg(long)]
        parsing: PathBuf,
        /// Also require every part to be a longest dictionary match.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
    },
    /// One CSV row per k in [kmin, kmax].
    Bench {
        #[arg(long)]
        family: Family,
        /// Defaults to the family's own scheme.
        #[arg(long)]
        scheme: Option<Scheme>,
        #[arg(long, default_value = "naive")]
        algo: Algo,
        #[arg(long)]
        kmin: usize,
        #[arg(long)]
        kmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Least-squares slope of ln(y) against ln(x) over a bench CSV.
    Fit {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value = "n")]
        x: String,
        #[arg(long, default_value = "edges")]
        y: String,
    },
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.cmd {
        Cmd::Gen {
            family,
            k,
            out,
            format,
        } => {
            let text = GenParams::new(family, k)?.generate()?;
            let mut w = output(&out)?;
            match format {
                Format::Raw => write_raw(&mut w, &text)?,
                _ => write_sym(&mut w, &text)?,
            }
            w.flush()?;
        }
        Cmd::Parse {
            scheme,
            algo,
            input,
            out,
            seed,
            stats,
            format,
        } => {
            let text = read_text(&read(&input)?, format.into())?;
            let res = run_parse(&text, scheme, algo, seed, modulus_from_env()?)?;
            let mut w = output(&out)?;
            write_parsing(&mut w, &res.parsing)?;
            w.flush()?;
            if stats {
                let mut pairs = vec![("n", text.len() as u64), ("z", res.parsing.len() as u64)];
                pairs.extend(res.stats);
                write_stats(io::stderr().lock(), &pairs)?;
            }
        }
        Cmd::Verify {
            scheme,
            text,
            parsing,
            strict,
            format,
        } => {
            let s = read_text(&read(&text)?, format.into())?;
            let data = String::from_utf8(read(&parsing)?)
                .map_err(|_| CliError::Usage("parsing file is not UTF-8".into()))?;
            let p = parse_parsing(&data)?;
            let ok = p.scheme() == scheme && verify_parsing(&s, &p, strict);
            println!("{}", if ok { "ok" } else { "mismatch" });
            return Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Cmd::Bench {
            family,
            scheme,
            algo,
            kmin,
            kmax,
            seed,
            csv,
        } => {
            let ks = k_range(kmin, kmax)?;
            for &k in &ks {
                GenParams::new(family, k)?;
            }
            let scheme = scheme.unwrap_or(family.scheme());
            let rows = run_bench(family, scheme, algo, &ks, seed, modulus_from_env()?)?;
            write_csv(output(&csv)?, &rows)?;
        }
        Cmd::Fit { csv, x, y } => {
            let data = String::from_utf8(read(&csv)?)
                .map_err(|_| CliError::Usage("CSV file is not UTF-8".into()))?;
            let f = fit_exponent(&data, &x, &y)?;
            println!("slope={:.6} r2={:.6} points={}", f.slope, f.r2, f.points);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("lzdmw: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
