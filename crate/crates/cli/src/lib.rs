//! Plumbing behind the `lzdmw` binary: running any of the parsers, the
//! benchmark table and log–log exponent fits.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use lzdmw_core::{
    parse_naive, parse_reference, FormatError, ModelError, Parsing, Scheme, StepStats, Text,
};
use lzdmw_fast::{
    parse_fast, parse_las_vegas, BlockReader, FastError, HashConfig, LasVegas, SliceSource,
    MERSENNE_61,
};
use lzdmw_gen::{generate, Family, GenError};
use thiserror::Error;

/// Overrides the default fingerprint modulus 2^61 − 1.
pub const MODULUS_VAR: &str = "LZDMW_MODULUS";

pub const CSV_HEADER: [&str; 10] = [
    "family", "scheme", "algo", "k", "n", "z", "cmp", "edges", "nanos", "seed",
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Fast(#[from] FastError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 for I/O failures, 2 for bad input or arguments.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_)
            | CliError::Format(FormatError::Io(_))
            | CliError::Fast(FastError::Io(_)) => 1,
            CliError::Csv(e) if e.is_io_error() => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algo {
    Reference,
    Naive,
    Fast,
    LasVegas,
}

impl Algo {
    pub const ALL: [Algo; 4] = [Algo::Reference, Algo::Naive, Algo::Fast, Algo::LasVegas];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Reference => "reference",
            Algo::Naive => "naive",
            Algo::Fast => "fast",
            Algo::LasVegas => "lasvegas",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| CliError::Usage(format!("unknown algorithm {s:?}")))
    }
}

/// The modulus from [`MODULUS_VAR`], or 2^61 − 1 when unset.
pub fn modulus_from_env() -> Result<u64, CliError> {
    match std::env::var(MODULUS_VAR) {
        Ok(v) => {
            let p: u64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{MODULUS_VAR}={v:?} is not a number")))?;
            HashConfig::with_modulus(p, 0).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(p)
        }
        Err(_) => Ok(MERSENNE_61),
    }
}

/// A parsing plus whatever counters the algorithm keeps.
#[derive(Clone, Debug)]
pub struct ParseOutcome {
    pub parsing: Parsing,
    pub naive: Option<StepStats>,
    pub stats: Vec<(&'static str, u64)>,
    /// Total work for the fast algorithms, symbol comparisons for naive.
    pub ops: u64,
}

pub fn run_parse(
    s: &Text,
    scheme: Scheme,
    algo: Algo,
    seed: u64,
    modulus: u64,
) -> Result<ParseOutcome, CliError> {
    Ok(match algo {
        Algo::Reference => ParseOutcome {
            parsing: parse_reference(s, scheme),
            naive: None,
            stats: Vec::new(),
            ops: 0,
        },
        Algo::Naive => {
            let (parsing, st) = parse_naive(s, scheme);
            ParseOutcome {
                parsing,
                naive: Some(st),
                stats: st.to_pairs().to_vec(),
                ops: st.symbol_comparisons,
            }
        }
        Algo::Fast => {
            let cfg = HashConfig::with_modulus(modulus, seed).map_err(FastError::from)?;
            let mut r = BlockReader::new(SliceSource::new(s.symbols()));
            let run = parse_fast(&mut r, scheme, cfg)?;
            let mut stats = run.stats.to_pairs();
            stats.push(("delta", cfg.delta()));
            ParseOutcome {
                parsing: run.parsing,
                naive: None,
                stats,
                ops: run.stats.ops(),
            }
        }
        Algo::LasVegas => {
            let opts = LasVegas::new(scheme, seed).modulus(modulus);
            let run = parse_las_vegas(|| Ok(SliceSource::new(s.symbols())), opts)?;
            let mut stats = run.stats.to_pairs();
            stats.push(("rounds", run.rounds as u64));
            stats.push(("delta", run.delta));
            ParseOutcome {
                parsing: run.parsing,
                naive: None,
                stats,
                ops: run.stats.ops(),
            }
        }
    })
}

/// One benchmark row. `cmp` holds symbol comparisons for the naive parser
/// and total operations for the fast ones; `edges` is the naive parser's
/// `edges_traversed`. Counters an algorithm lacks are 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRecord {
    pub family: Family,
    pub scheme: Scheme,
    pub algo: Algo,
    pub k: usize,
    pub n: usize,
    pub z: usize,
    pub cmp: u64,
    pub edges: u64,
    pub nanos: u128,
    pub seed: u64,
}

impl BenchRecord {
    pub fn fields(&self) -> [String; 10] {
        [
            self.family.to_string(),
            self.scheme.name().to_string(),
            self.algo.to_string(),
            self.k.to_string(),
            self.n.to_string(),
            self.z.to_string(),
            self.cmp.to_string(),
            self.edges.to_string(),
            self.nanos.to_string(),
            self.seed.to_string(),
        ]
    }
}

/// Powers of two in `[kmin, kmax]`.
pub fn k_range(kmin: usize, kmax: usize) -> Result<Vec<usize>, CliError> {
    if !kmin.is_power_of_two() || !kmax.is_power_of_two() || kmin > kmax {
        return Err(CliError::Usage(format!(
            "--kmin {kmin} / --kmax {kmax} must be powers of two with kmin <= kmax"
        )));
    }
    let mut ks = vec![kmin];
    while *ks.last().unwrap() < kmax {
        ks.push(ks.last().unwrap() * 2);
    }
    Ok(ks)
}

pub fn run_bench(
    family: Family,
    scheme: Scheme,
    algo: Algo,
    ks: &[usize],
    seed: u64,
    modulus: u64,
) -> Result<Vec<BenchRecord>, CliError> {
    let mut out = Vec::with_capacity(ks.len());
    for &k in ks {
        let s = generate(family, k)?;
        let t = Instant::now();
        let res = run_parse(&s, scheme, algo, seed, modulus)?;
        let nanos = t.elapsed().as_nanos();
        out.push(BenchRecord {
            family,
            scheme,
            algo,
            k,
            n: s.len(),
            z: res.parsing.len(),
            cmp: res.ops,
            edges: res.naive.map_or(0, |st| st.edges_traversed),
            nanos,
            seed,
        });
    }
    Ok(out)
}

pub fn write_csv<W: Write>(w: W, rows: &[BenchRecord]) -> Result<(), CliError> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(CSV_HEADER)?;
    for r in rows {
        wr.write_record(r.fields())?;
    }
    wr.flush()?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub points: usize,
}

/// Least squares of `ln y` against `ln x`.
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<ExponentFit, CliError> {
    if points.len() < 3 {
        return Err(CliError::Usage(format!(
            "a fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some((x, y)) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(CliError::Usage(format!("point ({x}, {y}) is not positive")));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(CliError::Usage("all x values are equal".into()));
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Ok(ExponentFit {
        slope,
        intercept: my - slope * mx,
        r2,
        points: logs.len(),
    })
}

/// Fits column `y` against column `x` of a CSV table with a header row.
pub fn fit_exponent(csv_text: &str, x: &str, y: &str) -> Result<ExponentFit, CliError> {
    let mut rd = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = rd.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Usage(format!("no column {name:?}")))
    };
    let (xi, yi) = (col(x)?, col(y)?);
    let mut points = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let num = |i: usize| -> Result<f64, CliError> {
            rec[i]
                .parse()
                .map_err(|_| CliError::Usage(format!("bad number {:?}", &rec[i])))
        };
        points.push((num(xi)?, num(yi)?));
    }
    fit_loglog(&points)
}
