//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::ring::{Field, PrimeField, Rationals};
use crate::algebra::scalar::ScalarRing;
use crate::assembler::{from_fixture, predict, Pipeline, SymplecticHomologyResult};
use crate::bench::{self, Suite};
use crate::complexes::{build, triplet, Complex, Family, Module};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::homology::{homology, homology_over_laurent, HomologyOptions, HomologyResult};
use crate::maps::{mu_candidate, DEFAULT_MU};
use crate::record::{self, CacheKey, HomologyRecord, ResultCache, SYMPLECTIC_COEFF, SYMPLECTIC_FAMILY};
use crate::series::{series_braid_f2, series_odd_poincare, series_stable, FormalSeries};
use crate::verify::{verify, Scope};

#[derive(Debug, Parser)]
#[command(name = "artin-homology", version, about = "Exact homology of Artin groups and braid groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComplexFormat {
    Triplet,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Run the cone pipeline.
    Compute,
    /// Read off the generating functions.
    Predict,
    /// Look up the shipped table.
    Fixture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Odd,
    Stable,
    BraidF2,
}

fn parse_n(s: &str) -> std::result::Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("'{s}' is not a non-negative integer"))?;
    if n < 1 {
        return Err("n must be at least 1".into());
    }
    Ok(n)
}

fn parse_ring(s: &str) -> std::result::Result<ScalarRing, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_module(s: &str) -> std::result::Result<Module, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_scope(s: &str) -> std::result::Result<Scope, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a chain complex in triplet format.
    Complex {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, value_parser = parse_n)]
        n: usize,
        #[arg(long, default_value = "trivial", value_parser = parse_module)]
        coeff: Module,
        #[arg(long, value_enum, default_value = "triplet")]
        format: ComplexFormat,
    },
    /// Homology of a type-A or type-B complex.
    Homology {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, value_parser = parse_n)]
        n: usize,
        #[arg(long, default_value = "trivial", value_parser = parse_module)]
        coeff: Module,
        #[arg(long, default_value = "Z", value_parser = parse_ring)]
        ring: ScalarRing,
        /// A single degree; all degrees if omitted.
        #[arg(long)]
        degree: Option<usize>,
        /// Rank over Q by rational elimination instead of modular ranks.
        #[arg(long)]
        exact: bool,
        /// Include a hash of the representing cycles (over Z only).
        #[arg(long)]
        basis: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, env = "ARTIN_HOMOLOGY_CACHE")]
        cache_dir: Option<PathBuf>,
    },
    /// H_i(Br_n; H_1(Sigma_n)).
    BraidSymplectic {
        #[arg(long, value_parser = parse_n)]
        n: usize,
        #[arg(long, default_value = "Z", value_parser = parse_ring)]
        ring: ScalarRing,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value = "compute")]
        mode: Mode,
        #[arg(long, default_value = DEFAULT_MU)]
        candidate: String,
        /// Include a hash of the bases used for the induced map (fields only).
        #[arg(long)]
        basis: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, env = "ARTIN_HOMOLOGY_CACHE")]
        cache_dir: Option<PathBuf>,
    },
    /// Expand a generating function.
    Series {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 11)]
        maxq: usize,
        #[arg(long, default_value_t = 13)]
        maxt: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Reproduce the reference table and series identities.
    Verify {
        #[arg(long, default_value = "quick", value_parser = parse_scope)]
        scope: Scope,
        /// Reference table to compare against instead of the shipped one.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Time the expensive stages.
    Bench {
        /// One suite; all if omitted.
        #[arg(long, value_parser = parse_suite)]
        suite: Option<Suite>,
        #[arg(long, default_value_t = 8, value_parser = parse_n)]
        scale: usize,
        #[arg(long, default_value_t = 3, value_parser = parse_n)]
        runs: usize,
        #[arg(long)]
        json: bool,
    },
}

/// Errors caused by the request rather than the computation.
pub fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidN { .. }
            | Error::NotPrime(_)
            | Error::UnsupportedCoefficients(_)
            | Error::UnsupportedRing(_)
            | Error::Unsupported(_)
            | Error::Parse(_)
    )
}

/// Parses `args`, runs the command and returns the exit code: 0 on success,
/// 1 on a failed verification or computation, 2 on a usage error.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if is_usage_error(&e) {
                2
            } else {
                1
            }
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Complex { family, n, coeff, format } => {
            let c = build(*family, *n, *coeff)?;
            match format {
                ComplexFormat::Triplet => {
                    let text = match &c {
                        Complex::Integral(c) => triplet::write_complex(c),
                        Complex::Laurent(c) => triplet::write_complex(c),
                    };
                    write!(out, "{text}")?;
                }
                ComplexFormat::Json => {
                    let nnz: Vec<usize> = match &c {
                        Complex::Integral(c) => (1..c.num_degrees() as isize).map(|i| c.boundary(i).nnz()).collect(),
                        Complex::Laurent(c) => (1..c.num_degrees() as isize).map(|i| c.boundary(i).nnz()).collect(),
                    };
                    let v = json!({
                        "family": family.to_string(),
                        "n": n,
                        "coeff": coeff.to_string(),
                        "name": c.name(),
                        "dims": c.dims(),
                        "boundary_nnz": nnz,
                        "d_squared_zero": c.check_d_squared().is_ok(),
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                }
            }
            Ok(0)
        }
        Command::Homology { family, n, coeff, ring, degree, exact, basis, format, cache_dir } => {
            let records = homology_records(*family, *n, *coeff, ring, *degree, *exact, *basis, cache_dir.as_ref())?;
            emit(out, &records, *format)?;
            Ok(0)
        }
        Command::BraidSymplectic { n, ring, degree, mode, candidate, basis, format, cache_dir } => {
            let records = symplectic_records(*n, ring, *degree, *mode, candidate, *basis, cache_dir.as_ref())?;
            emit(out, &records, *format)?;
            Ok(0)
        }
        Command::Series { which, maxq, maxt, format } => {
            let s = match which {
                Which::Odd => series_odd_poincare(*maxq, *maxt),
                Which::Stable => series_stable(*maxq),
                Which::BraidF2 => series_braid_f2(*maxq, *maxt),
            };
            emit_series(out, &s, *which, *format)?;
            Ok(0)
        }
        Command::Verify { scope, fixture } => {
            let loaded = match fixture {
                Some(path) => Some(fixtures::FixtureSet::parse(&std::fs::read_to_string(path)?)?),
                None => None,
            };
            let report = verify(*scope, loaded.as_ref().unwrap_or_else(|| fixtures::table()))?;
            writeln!(out, "{report}")?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Bench { suite, scale, runs, json } => {
            let suites: Vec<Suite> = suite.map(|s| vec![s]).unwrap_or_else(|| Suite::ALL.to_vec());
            let mut all = Vec::new();
            for s in suites {
                all.extend(bench::run(s, *scale, *runs)?);
            }
            if *json {
                writeln!(out, "{}", serde_json::to_string_pretty(&all)?)?;
            } else {
                for t in &all {
                    writeln!(out, "{t}")?;
                }
            }
            Ok(0)
        }
    }
}

fn degrees(requested: Option<usize>, top: usize) -> Vec<usize> {
    match requested {
        Some(d) => vec![d],
        None => (0..=top).collect(),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn homology_records(
    family: Family,
    n: usize,
    coeff: Module,
    ring: &ScalarRing,
    degree: Option<usize>,
    exact: bool,
    with_basis: bool,
    cache_dir: Option<&PathBuf>,
) -> Result<Vec<HomologyRecord>> {
    if coeff == Module::Laurent && !ring.is_field() {
        return Err(Error::UnsupportedRing(format!("Laurent coefficients need a field, got {ring}")));
    }
    if with_basis && *ring != ScalarRing::Integers {
        return Err(Error::Unsupported("cycle hashes are computed over Z only".into()));
    }
    let cache = cache_dir.map(ResultCache::open).transpose()?;
    let mut complex: Option<Complex> = None;
    let opts = HomologyOptions { exact, with_basis };
    let mut out = Vec::new();
    for i in degrees(degree, n) {
        let key = CacheKey::new(&family.to_string(), n, coeff.name(), ring, i, None)
            .with_options(format!("exact={exact},basis={with_basis}"));
        let mut compute = || -> Result<HomologyRecord> {
            if complex.is_none() {
                complex = Some(build(family, n, coeff)?);
            }
            let h: HomologyResult = match complex.as_ref().expect("built") {
                Complex::Integral(c) => homology(c, ring, i, opts)?,
                Complex::Laurent(c) => homology_over_laurent(c, ring, i)?,
            };
            Ok(HomologyRecord::from_homology(family, n, coeff, ring, &h))
        };
        out.push(match &cache {
            Some(c) => c.get_or_compute(&key, compute)?.0,
            None => compute()?,
        });
    }
    Ok(out)
}

fn iota_hash<F: Field>(field: &F, p: &Pipeline, i: usize) -> Result<String> {
    Ok(p.iota_matrix(field, i + 1)?.basis_hash)
}

pub fn symplectic_records(
    n: usize,
    ring: &ScalarRing,
    degree: Option<usize>,
    mode: Mode,
    candidate: &str,
    with_basis: bool,
    cache_dir: Option<&PathBuf>,
) -> Result<Vec<HomologyRecord>> {
    let cand = mu_candidate(candidate)?;
    if with_basis && !ring.is_field() {
        return Err(Error::Unsupported("basis hashes for the induced map need a field".into()));
    }
    let one = |r: SymplecticHomologyResult| HomologyRecord::from_symplectic(&r);
    match mode {
        Mode::Predict => degrees(degree, n).into_iter().map(|i| Ok(one(predict(n, i, ring)?))).collect(),
        Mode::Fixture => {
            if *ring != ScalarRing::Integers {
                return Err(Error::UnsupportedRing("the table is integral".into()));
            }
            degrees(degree, n)
                .into_iter()
                .map(|i| {
                    from_fixture(n, i)
                        .map(one)
                        .ok_or_else(|| Error::Unsupported(format!("n = {n} is not in the table")))
                })
                .collect()
        }
        Mode::Compute => {
            let cache = cache_dir.map(ResultCache::open).transpose()?;
            let mut pipeline: Option<Pipeline> = None;
            let mut out = Vec::new();
            for i in degrees(degree, n) {
                let key = CacheKey::new(SYMPLECTIC_FAMILY, n, SYMPLECTIC_COEFF, ring, i, Some(format!("{}@v{}", cand.name, cand.version)))
                    .with_options(format!("basis={with_basis}"));
                let mut compute = || -> Result<HomologyRecord> {
                    if pipeline.is_none() {
                        pipeline = Some(Pipeline::build(n, cand)?);
                    }
                    let p = pipeline.as_ref().expect("built");
                    let r = p.homology(i, ring, HomologyOptions::default())?;
                    let hash = match (with_basis, ring) {
                        (false, _) => None,
                        (true, ScalarRing::Rationals) => Some(iota_hash(&Rationals, p, i)?),
                        (true, ScalarRing::PrimeField(q)) => Some(iota_hash(&PrimeField::new(*q), p, i)?),
                        (true, other) => return Err(Error::UnsupportedRing(other.to_string())),
                    };
                    Ok(one(r).with_basis_hash(hash))
                };
                out.push(match &cache {
                    Some(c) => c.get_or_compute(&key, compute)?.0,
                    None => compute()?,
                });
            }
            Ok(out)
        }
    }
}

fn emit(out: &mut dyn Write, records: &[HomologyRecord], format: Format) -> Result<()> {
    match format {
        Format::Text => {
            for r in records {
                let tag = match &r.candidate {
                    Some(c) => format!("{}, {c}", r.provenance),
                    None => r.provenance.clone(),
                };
                writeln!(out, "{} n={} {} over {}: H_{} = {}  [{tag}]", r.family, r.n, r.coeff, r.ring, r.degree, r.group_string())?;
            }
        }
        Format::Json => writeln!(out, "{}", record::to_json(records)?)?,
        Format::Csv => write!(out, "{}", record::to_csv(records)?)?,
        Format::Md => write!(out, "{}", record::to_markdown(records))?,
    }
    Ok(())
}

fn emit_series(out: &mut dyn Write, s: &FormalSeries, which: Which, format: Format) -> Result<()> {
    let name = match which {
        Which::Odd => "odd",
        Which::Stable => "stable",
        Which::BraidF2 => "braid-f2",
    };
    match format {
        Format::Text => writeln!(out, "{s}")?,
        Format::Json => {
            let terms: Vec<_> =
                s.terms().map(|((a, b), c)| json!({"q": a, "t": b, "coefficient": c.to_string()})).collect();
            let v = json!({"series": name, "max_q": s.max_q(), "max_t": s.max_t(), "terms": terms});
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Csv => {
            writeln!(out, "q,t,coefficient")?;
            for ((a, b), c) in s.terms() {
                writeln!(out, "{a},{b},{c}")?;
            }
        }
        Format::Md => {
            write!(out, "| t \\ q |")?;
            for a in 0..=s.max_q() {
                write!(out, " {a} |")?;
            }
            write!(out, "\n|---|")?;
            for _ in 0..=s.max_q() {
                write!(out, "---|")?;
            }
            writeln!(out)?;
            for b in 0..=s.max_t() {
                write!(out, "| {b} |")?;
                for a in 0..=s.max_q() {
                    write!(out, " {} |", s.coefficient(a, b).expect("in range"))?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
