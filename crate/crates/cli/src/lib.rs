//! Command-line front end: generate sequences, compute entropy profiles, run
//! numerical checks and emit CSV/JSON for external plotting.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sha2::{Digest, Sha256};

use seqentropy::checks::{self, CheckReport, Status};
use seqentropy::estimators::{entropy_profile_with, ProfileOptions};
use seqentropy::generators::TransitionMatrix;
use seqentropy::io::{read_sequence, sequence_to_bytes};
use seqentropy::{
    bernoulli_realization, champernowne_binary, cramer_spec, estimate_h_info, estimate_h_loc,
    markov_sequence, periodic_sequence, prime_indicator, quadratic_residue_word,
    series_scheme_profile, BernoulliSpec, EntropyEstimate, EntropyProfile, RandomSource,
    SymbolSequence,
};

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "SEQENTROPY_THREADS";

#[derive(Debug, Parser)]
#[command(name = "seqentropy", version, about = "Local and information entropy of symbol sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated sequence in the sequence file format.
    Generate {
        #[command(flatten)]
        source: GeneratorArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-n local and information entropy of a sequence.
    Profile {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Apply the Miller–Madow bias correction to block entropies.
        #[arg(long)]
        miller_madow: bool,
    },
    /// Run a numerical check and print its JSON report.
    Check {
        #[arg(value_enum)]
        name: CheckName,
        #[command(flatten)]
        params: CheckParams,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plateau estimates over quadratic residue words for a list of primes.
    Series {
        #[arg(long, value_delimiter = ',', value_parser = parse_count)]
        q: Vec<u64>,
        #[arg(long = "n-max", default_value_t = 16)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorKind {
    Primes,
    Residues,
    Champernowne,
    Bernoulli,
    Cramer,
    Periodic,
    Markov,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    PrimeCounting,
    ResidueEquidistribution,
    CramerCurve,
    CramerEmpirical,
    PrimeEntropy,
    RareOnes,
    Perturbation,
    HlocLeHinfo,
}

#[derive(Debug, Clone, Args)]
pub struct GeneratorArgs {
    #[arg(value_enum)]
    pub generator: Option<GeneratorKind>,
    /// Sequence length.
    #[arg(long = "N", value_parser = parse_count)]
    pub len: Option<u64>,
    /// Prime modulus for `residues`, success probability for `bernoulli`.
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Repeated word for `periodic`, e.g. `001`.
    #[arg(long)]
    pub pattern: Option<String>,
    /// Transition matrix rows for `markov`, e.g. `11,10`.
    #[arg(long)]
    pub matrix: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub start: u8,
    #[arg(long, default_value_t = 2)]
    pub alphabet: u32,
    /// Mark position 1 in the prime indicator (default).
    #[arg(long, conflicts_with = "exclude_one")]
    pub include_one: bool,
    #[arg(long)]
    pub exclude_one: bool,
}

impl GeneratorArgs {
    fn include_one(&self) -> bool {
        !self.exclude_one
    }
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Read the sequence from a file instead of generating it.
    #[arg(long, conflicts_with = "generator")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub generator: GeneratorArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CheckParams {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long = "n-max")]
    pub n_max: Option<usize>,
    /// List of word lengths, or of block lengths for `cramer-curve`.
    #[arg(long = "n", value_delimiter = ',', value_parser = parse_count)]
    pub n: Vec<u64>,
    /// Comma-separated list of N for `prime-counting` and `perturbation`.
    #[arg(long = "N-list", value_delimiter = ',', value_parser = parse_count)]
    pub n_list: Vec<u64>,
    /// Number of seeds for `cramer-empirical`, starting at `--seed`.
    #[arg(long, default_value_t = 30)]
    pub seeds: usize,
    #[arg(long = "C", default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
}

/// Parses a positive count written as an integer or in exponent form (`1e7`).
pub fn parse_count(text: &str) -> std::result::Result<u64, String> {
    if let Ok(v) = text.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = text
        .parse()
        .map_err(|_| format!("'{text}' is not a count"))?;
    if v < 0.0 || v.fract() != 0.0 || v > 9.007_199_254_740_992e15 {
        return Err(format!("'{text}' is not a non-negative integer"));
    }
    Ok(v as u64)
}

fn require_len(args: &GeneratorArgs) -> Result<usize> {
    let len = args.len.context("--N is required for this generator")?;
    if len == 0 {
        bail!("--N must be positive");
    }
    Ok(len as usize)
}

pub fn generate(args: &GeneratorArgs) -> Result<SymbolSequence> {
    let kind = args.generator.context("a generator is required")?;
    let seq = match kind {
        GeneratorKind::Primes => prime_indicator(require_len(args)?, args.include_one())?,
        GeneratorKind::Residues => {
            let q = args.q.as_deref().context("--q is required for residues")?;
            quadratic_residue_word(parse_count(q).map_err(anyhow::Error::msg)?)?
        }
        GeneratorKind::Champernowne => champernowne_binary(require_len(args)?)?,
        GeneratorKind::Bernoulli => {
            let q: f64 = args
                .q
                .as_deref()
                .context("--q is required for bernoulli")?
                .parse()
                .context("--q must be a probability")?;
            if !(0.0..=1.0).contains(&q) {
                bail!("--q must lie in [0, 1]");
            }
            let mut rng = RandomSource::new(args.seed);
            bernoulli_realization(&BernoulliSpec::homogeneous(q)?, require_len(args)?, &mut rng)?
        }
        GeneratorKind::Cramer => {
            let mut rng = RandomSource::new(args.seed);
            bernoulli_realization(&cramer_spec(), require_len(args)?, &mut rng)?
        }
        GeneratorKind::Periodic => {
            let pattern = args.pattern.as_deref().context("--pattern is required")?;
            let pattern = SymbolSequence::from_digits(args.alphabet, pattern)?;
            periodic_sequence(&pattern, require_len(args)?)?
        }
        GeneratorKind::Markov => {
            let matrix = TransitionMatrix::parse(args.matrix.as_deref().context("--matrix is required")?)?;
            let mut rng = RandomSource::new(args.seed);
            markov_sequence(&matrix, args.start, require_len(args)?, &mut rng)?
        }
    };
    Ok(seq)
}

pub fn load(source: &SourceArgs) -> Result<SymbolSequence> {
    match &source.input {
        Some(path) => {
            let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            Ok(read_sequence(BufReader::new(file))?)
        }
        None => generate(&source.generator),
    }
}

fn open_output(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn checksum(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn estimate_json(e: &seqentropy::Result<EntropyEstimate>) -> serde_json::Value {
    match e {
        Ok(e) => json!({
            "lower": e.lower,
            "upper": e.upper,
            "n_from": e.n_from,
            "n_to": e.n_to,
            "method": e.method,
            "non_plateau": e.non_plateau(),
        }),
        Err(err) => json!({ "error": err.to_string() }),
    }
}

fn profile_json(p: &EntropyProfile) -> serde_json::Value {
    json!({
        "N": p.prefix_len,
        "alphabet_size": p.alphabet_size,
        "reliability_cutoff": p.reliability_cutoff,
        "h_loc": estimate_json(&estimate_h_loc(p)),
        "h_info": estimate_json(&estimate_h_info(p)),
        "rows": p.rows,
    })
}

fn describe_estimate(label: &str, e: &seqentropy::Result<EntropyEstimate>) -> String {
    match e {
        Ok(e) => format!(
            "# {label} lower={} upper={} n={}..={}{}",
            e.lower,
            e.upper,
            e.n_from,
            e.n_to,
            if e.non_plateau() { " non-plateau" } else { "" }
        ),
        Err(err) => format!("# {label} unavailable: {err}"),
    }
}

fn parse_list_n(values: &[u64]) -> Vec<usize> {
    values.iter().map(|&v| v as usize).collect()
}

fn run_check(name: CheckName, p: &CheckParams) -> Result<CheckReport> {
    let gen = &p.source.generator;
    let report = match name {
        CheckName::PrimeCounting => {
            let list = if p.n_list.is_empty() {
                vec![100, 10_000, 1_000_000]
            } else {
                p.n_list.clone()
            };
            checks::check_prime_counting(&list)?
        }
        CheckName::ResidueEquidistribution => {
            let q = gen.q.as_deref().context("--q is required")?;
            let q = parse_count(q).map_err(anyhow::Error::msg)?;
            checks::check_residue_equidistribution(q, p.n_max.unwrap_or(8))?
        }
        CheckName::CramerCurve => {
            let list = if p.n.is_empty() {
                vec![1_000, 100_000, 10_000_000]
            } else {
                p.n.clone()
            };
            checks::cramer_entropy_curve(&list)?
        }
        CheckName::CramerEmpirical => {
            let len = gen.len.unwrap_or(1_000_000) as usize;
            let n = p.n_max.unwrap_or(8);
            let seeds: Vec<u64> = (gen.seed..gen.seed + p.seeds as u64).collect();
            checks::check_cramer_empirical(len, n, &seeds)?
        }
        CheckName::PrimeEntropy => {
            let len = gen.len.unwrap_or(10_000_000) as usize;
            checks::check_prime_entropy_bound(len, p.n_max.unwrap_or(20), gen.include_one())?
        }
        CheckName::RareOnes => {
            let seq = load(&p.source)?;
            let n = if p.n.is_empty() { vec![2, 4, 8, 16] } else { parse_list_n(&p.n) };
            checks::check_rare_ones(&seq, &n)?
        }
        CheckName::Perturbation => {
            let list = if p.n_list.is_empty() {
                (10..=30).step_by(5).map(|e| 1u64 << e).collect()
            } else {
                p.n_list.clone()
            };
            checks::check_perturbation_lemma(p.c, p.alpha, &list)?
        }
        CheckName::HlocLeHinfo => {
            let seq = load(&p.source)?;
            let n_max = p.n_max.unwrap_or(12).min(seq.len() - 1);
            let profile = seqentropy::entropy_profile(&seq, n_max)?;
            checks::check_hloc_le_hinfo(&[("input", &profile)])
        }
    };
    Ok(report)
}

#[derive(serde::Serialize)]
struct SeriesRow {
    q: u64,
    length: usize,
    reliability_cutoff: usize,
    h_loc_lower: f64,
    h_loc_upper: f64,
    h_info_lower: f64,
    h_info_upper: f64,
    non_plateau: u8,
}

fn series_rows(qs: &[u64], n_max: usize) -> Result<Vec<SeriesRow>> {
    if qs.is_empty() {
        bail!("--q needs at least one prime");
    }
    let words = qs
        .iter()
        .map(|&q| quadratic_residue_word(q))
        .collect::<seqentropy::Result<Vec<_>>>()?;
    let profiles: Vec<(usize, EntropyProfile)> = if words.len() == 1 {
        let w = &words[0];
        vec![(w.len(), seqentropy::entropy_profile(w, n_max.min(w.len() - 1))?)]
    } else {
        series_scheme_profile(&words, n_max)?
    };
    qs.iter()
        .zip(profiles)
        .map(|(&q, (length, profile))| {
            let loc = estimate_h_loc(&profile)
                .with_context(|| format!("q = {q} is too short for a plateau estimate"))?;
            let info = estimate_h_info(&profile)?;
            Ok(SeriesRow {
                q,
                length,
                reliability_cutoff: profile.reliability_cutoff,
                h_loc_lower: loc.lower,
                h_loc_upper: loc.upper,
                h_info_lower: info.lower,
                h_info_upper: info.upper,
                non_plateau: u8::from(loc.non_plateau() || info.non_plateau()),
            })
        })
        .collect()
}

/// Runs one command; returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Generate { source, out } => {
            let seq = generate(&source)?;
            let bytes = sequence_to_bytes(&seq);
            let summary = format!("N={} checksum=sha256:{}", seq.len(), checksum(&bytes));
            match out {
                Some(path) => {
                    std::fs::write(&path, &bytes)
                        .with_context(|| format!("writing {}", path.display()))?;
                    println!("{summary}");
                }
                None => {
                    io::stdout().lock().write_all(&bytes)?;
                    eprintln!("{summary}");
                }
            }
            Ok(0)
        }
        Command::Profile {
            source,
            n_max,
            format,
            out,
            miller_madow,
        } => {
            let seq = load(&source)?;
            if n_max == 0 || n_max >= seq.len() {
                bail!("--n-max must lie in 1..{}", seq.len());
            }
            let profile = entropy_profile_with(&seq, n_max, ProfileOptions { miller_madow })?;
            let mut w = open_output(out.as_deref())?;
            match format {
                Format::Csv => {
                    profile.write_csv(&mut w)?;
                    eprintln!("# reliability_cutoff={}", profile.reliability_cutoff);
                    eprintln!("{}", describe_estimate("h_loc", &estimate_h_loc(&profile)));
                    eprintln!("{}", describe_estimate("h_info", &estimate_h_info(&profile)));
                }
                Format::Json => {
                    serde_json::to_writer_pretty(&mut w, &profile_json(&profile))?;
                    writeln!(w)?;
                }
            }
            w.flush()?;
            Ok(0)
        }
        Command::Check { name, params, out } => {
            let report = run_check(name, &params)?;
            let mut w = open_output(out.as_deref())?;
            writeln!(w, "{}", report.to_json())?;
            w.flush()?;
            if report.summary.boundary > 0 {
                eprintln!(
                    "warning: {} instance(s) sit exactly on a strict bound",
                    report.summary.boundary
                );
            }
            for f in report.failures().take(10) {
                eprintln!("fail: {} (lhs={}, rhs={})", f.params, f.lhs, f.rhs);
            }
            let ok = report.passed()
                && report.instances.iter().all(|i| {
                    i.role == checks::Role::Reported || i.status != Status::Fail
                });
            Ok(if ok { 0 } else { 1 })
        }
        Command::Series {
            q,
            n_max,
            format,
            out,
        } => {
            let rows = series_rows(&q, n_max)?;
            let mut w = open_output(out.as_deref())?;
            match format {
                Format::Csv => {
                    let mut csv = csv_writer(&mut w);
                    for row in &rows {
                        csv.serialize(row)?;
                    }
                    csv.flush()?;
                }
                Format::Json => {
                    serde_json::to_writer_pretty(&mut w, &rows)?;
                    writeln!(w)?;
                }
            }
            w.flush()?;
            Ok(0)
        }
    }
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::Writer::from_writer(w)
}

/// Caps the global thread pool from [`THREADS_ENV`], if set.
pub fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var(THREADS_ENV) {
        let threads: usize = value
            .parse()
            .with_context(|| format!("{THREADS_ENV} must be a positive integer"))?;
        if threads == 0 {
            bail!("{THREADS_ENV} must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    Ok(())
}
