//! Command-line wiring: `gen`, `verify`, `fsdim`, `analyze`, `debruijn`,
//! `artin find`, `artin gamma`.
//!
//! stdout carries only payload (digit lines, report lines, JSON);
//! diagnostics go to stderr. Exit codes: 0 success, 1 validation or usage
//! error, 2 budget exhaustion. Big integers appear in JSON as decimal
//! strings; JSON objects are emitted with sorted keys so parsing and
//! re-serializing is byte-stable. The symbol budget defaults to 2^28 and
//! can be overridden with --max-symbols or the LIOUVILLE_MAX_SYMBOLS
//! environment variable.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::constructions::ConstructionRecipe;
use crate::dimension::{self, CountMode};
use crate::error::{Error, Result};
use crate::{artin, debruijn, exact, DEFAULT_SYMBOL_BUDGET};

#[derive(Parser)]
#[command(
    name = "liouville",
    about = "Liouville digit streams, exact approximation certificates, and finite-state dimension measurement",
    version
)]
struct Cli {
    /// Override the symbol budget (defaults to LIOUVILLE_MAX_SYMBOLS or 2^28).
    #[arg(long, global = true)]
    max_symbols: Option<u64>,

    /// Write payload to a file instead of stdout.
    #[arg(long, short = 'o', global = true)]
    output: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical de Bruijn sequence B(k, n).
    Debruijn {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
    },
    /// Emit digits of a construction.
    Gen(GenArgs),
    /// Certify the Liouville inequality stage by stage.
    Verify(VerifyArgs),
    /// Block-entropy rates and finite-state dimension estimates.
    Fsdim(FsdimArgs),
    /// Analyze an external digit string from stdin.
    Analyze(AnalyzeArgs),
    /// Primitive-root tools.
    Artin {
        #[command(subcommand)]
        command: ArtinCommand,
    },
}

#[derive(Args)]
struct ConstructionArgs {
    /// One of: psi1, psi2, alpha, diluted.
    #[arg(long)]
    construction: String,
    /// Digit alphabet size (alpha and diluted only; default 2).
    #[arg(long)]
    base: Option<u32>,
    /// Dilution ratio M/N in lowest terms (diluted only).
    #[arg(long)]
    dilution: Option<String>,
}

impl ConstructionArgs {
    fn recipe(&self) -> Result<ConstructionRecipe> {
        let base = self.base.unwrap_or(2);
        match self.construction.as_str() {
            "psi1" | "psi2" => {
                if self.base.is_some() && base != 2 {
                    return Err(Error::invalid(format!(
                        "{} is a binary construction; --base must be 2",
                        self.construction
                    )));
                }
                if self.dilution.is_some() {
                    return Err(Error::invalid("--dilution only applies to `diluted`"));
                }
                Ok(if self.construction == "psi1" {
                    ConstructionRecipe::factorial_ones()
                } else {
                    ConstructionRecipe::sparse_numerals()
                })
            }
            "alpha" => {
                if self.dilution.is_some() {
                    return Err(Error::invalid("--dilution only applies to `diluted`"));
                }
                ConstructionRecipe::debruijn_normal(base)
            }
            "diluted" => {
                let spec = self
                    .dilution
                    .as_deref()
                    .ok_or_else(|| Error::invalid("`diluted` requires --dilution M/N"))?;
                let (m, n) = parse_ratio(spec)?;
                ConstructionRecipe::diluted_with_base(base, m, n)
            }
            other => Err(Error::invalid(format!(
                "unknown construction `{other}` (expected psi1, psi2, alpha, diluted)"
            ))),
        }
    }
}

fn parse_ratio(s: &str) -> Result<(u32, u32)> {
    let (m, n) = s
        .split_once('/')
        .ok_or_else(|| Error::invalid(format!("dilution must look like M/N, got `{s}`")))?;
    let m = m
        .parse::<u32>()
        .map_err(|_| Error::invalid(format!("bad dilution numerator `{m}`")))?;
    let n = n
        .parse::<u32>()
        .map_err(|_| Error::invalid(format!("bad dilution denominator `{n}`")))?;
    Ok((m, n))
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    construction: ConstructionArgs,
    /// How many digits to emit.
    #[arg(long, conflicts_with = "stage")]
    digits: Option<u64>,
    /// Emit exactly stages 1..=I instead of a digit count.
    #[arg(long)]
    stage: Option<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    construction: ConstructionArgs,
    /// Verify stages from the first defined one up to this index.
    #[arg(long)]
    stages: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FsdimArgs {
    #[command(flatten)]
    construction: ConstructionArgs,
    #[arg(long, default_value_t = 4)]
    m_max: usize,
    /// Comma-separated prefix lengths; defaults to stage boundaries.
    #[arg(long, value_delimiter = ',')]
    prefixes: Option<Vec<u64>>,
    /// Sample at the boundaries of stages 1..=S (default 5).
    #[arg(long, conflicts_with = "prefixes")]
    stages: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Read one line of ASCII digits from standard input.
    #[arg(long)]
    stdin: bool,
    #[arg(long)]
    base: u32,
    #[arg(long, default_value_t = 4)]
    m_max: usize,
    /// Comma-separated prefix lengths; defaults to the whole input.
    #[arg(long, value_delimiter = ',')]
    prefixes: Option<Vec<u64>>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum ArtinCommand {
    /// All primes up to a limit with every base as a primitive root.
    Find {
        #[arg(long, value_delimiter = ',', required = true)]
        bases: Vec<u64>,
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        json: bool,
    },
    /// Build the staged multi-base sum and report its certificates.
    Gamma {
        #[arg(long, value_delimiter = ',', required = true)]
        bases: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        stages: u32,
        /// Manual repetition schedule f(1),f(2),… (primes then run
        /// consecutively instead of adaptively).
        #[arg(long, value_delimiter = ',')]
        f: Option<Vec<u64>>,
        /// Also emit this many digits of the final partial sum.
        #[arg(long)]
        digits: Option<u64>,
        /// Base for the emitted digits (must be one of --bases).
        #[arg(long)]
        emit_base: Option<u64>,
        /// Cap for the simultaneous-prime search.
        #[arg(long, default_value_t = 1 << 26)]
        search_limit: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Entry point used by the binary. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap sends real errors to stderr and --help/--version to stdout
            let is_error = e.use_stderr();
            let _ = e.print();
            return if is_error { 1 } else { 0 };
        }
    };
    let cap = cli
        .max_symbols
        .or_else(|| {
            std::env::var("LIOUVILLE_MAX_SYMBOLS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_SYMBOL_BUDGET);
    let result = match &cli.output {
        Some(path) => match std::fs::File::create(path) {
            Ok(file) => {
                let mut out = std::io::BufWriter::new(file);
                dispatch(cli.command, cap, &mut out).and_then(|()| Ok(out.flush()?))
            }
            Err(e) => Err(Error::Io(e)),
        },
        None => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            dispatch(cli.command, cap, &mut out)
        }
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, cap: u64, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Debruijn { k, n } => {
            let seq = debruijn::generate_with_cap(k, n, cap)?;
            writeln!(out, "{}", seq.to_ascii()?)?;
            Ok(())
        }
        Command::Gen(args) => run_gen(args, cap, out),
        Command::Verify(args) => run_verify(args, cap, out),
        Command::Fsdim(args) => run_fsdim(args, cap, out),
        Command::Analyze(args) => run_analyze(args, out),
        Command::Artin { command } => run_artin(command, out),
    }
}

fn run_gen(args: GenArgs, cap: u64, out: &mut dyn Write) -> Result<()> {
    let recipe = args.construction.recipe()?;
    if recipe.base() > 10 {
        return Err(Error::invalid(
            "ASCII digit output is limited to bases up to 10",
        ));
    }
    let length = match (args.digits, args.stage) {
        (Some(d), None) => d,
        (None, Some(i)) => recipe
            .stage_boundary(i)
            .to_u64()
            .filter(|&b| b <= cap)
            .ok_or(Error::BudgetExceeded {
                requested: u128::MAX,
                cap,
            })?,
        _ => return Err(Error::invalid("exactly one of --digits or --stage is required")),
    };
    let digits = recipe.take_prefix(length, cap)?;
    let mut line: Vec<u8> = digits.iter().map(|&d| b'0' + d).collect();
    line.push(b'\n');
    out.write_all(&line)?;
    Ok(())
}

fn run_verify(args: VerifyArgs, cap: u64, out: &mut dyn Write) -> Result<()> {
    let recipe = args.construction.recipe()?;
    let reports = exact::verify_stages(&recipe, args.stages, cap)?;
    if reports.is_empty() {
        eprintln!(
            "note: {} has no stages below {}; its first stage is {}",
            recipe.label(),
            args.stages + 1,
            recipe.first_stage()
        );
    }
    for r in &reports {
        if args.json {
            let value = json!({
                "stage": r.stage,
                "q_bits": r.q_bits,
                "agreement": r.agreement.to_string(),
                "required": r.required.to_string(),
                "holds": r.holds,
            });
            writeln!(out, "{value}")?;
        } else {
            writeln!(
                out,
                "stage {:>2}: holds={} agreement={} required={} q_bits={}",
                r.stage, r.holds, r.agreement, r.required, r.q_bits
            )?;
        }
    }
    Ok(())
}

fn sample_boundaries(recipe: &ConstructionRecipe, stages: u32, cap: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for i in 1..=stages {
        let b = recipe
            .stage_boundary(i)
            .to_u64()
            .filter(|&b| b <= cap)
            .ok_or(Error::BudgetExceeded {
                requested: u128::MAX,
                cap,
            })?;
        if out.last() != Some(&b) {
            out.push(b);
        }
    }
    Ok(out)
}

fn report_to_json(report: &dimension::EntropyReport, extra: &[(&str, Value)]) -> Value {
    let entries: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "prefix": r.prefix.to_string(),
                "m": r.block_size,
                "mode": r.mode.label(),
                "windows": r.windows,
                "entropy_bits": r.entropy_bits,
                "rate": r.rate,
            })
        })
        .collect();
    let summaries: Vec<Value> = report
        .summaries
        .iter()
        .map(|s| {
            json!({
                "m": s.block_size,
                "mode": s.mode.label(),
                "min_rate": s.min_rate,
                "max_rate": s.max_rate,
            })
        })
        .collect();
    let mut value = json!({
        "base": report.base,
        "entries": entries,
        "summaries": summaries,
        "estimates": {
            "note": "finite-sample estimates at the sampled prefixes; the defining rates are limits",
            "dimension": {
                "sliding": report.dimension_estimate(CountMode::Sliding),
                "disjoint": report.dimension_estimate(CountMode::Disjoint),
            },
            "strong_dimension": {
                "sliding": report.strong_dimension_estimate(CountMode::Sliding),
                "disjoint": report.strong_dimension_estimate(CountMode::Disjoint),
            },
        },
    });
    let map = value.as_object_mut().expect("object");
    for (k, v) in extra {
        map.insert(k.to_string(), v.clone());
    }
    value
}

fn print_report_text(report: &dimension::EntropyReport, out: &mut dyn Write) -> Result<()> {
    for r in &report.rows {
        writeln!(
            out,
            "prefix {:>10}  m={}  {:<8} windows={:<10} entropy={:.6} bits  rate={:.6}",
            r.prefix,
            r.block_size,
            r.mode.label(),
            r.windows,
            r.entropy_bits,
            r.rate
        )?;
    }
    for mode in [CountMode::Sliding, CountMode::Disjoint] {
        if let (Some(lo), Some(hi)) = (
            report.dimension_estimate(mode),
            report.strong_dimension_estimate(mode),
        ) {
            writeln!(
                out,
                "{} dimension estimate: {:.6} (strong {:.6}) — finite-sample estimate",
                mode.label(),
                lo,
                hi
            )?;
        }
    }
    Ok(())
}

fn run_fsdim(args: FsdimArgs, cap: u64, out: &mut dyn Write) -> Result<()> {
    let recipe = args.construction.recipe()?;
    let prefixes = match args.prefixes {
        Some(p) => p,
        None => sample_boundaries(&recipe, args.stages.unwrap_or(5), cap)?,
    };
    let report = dimension::entropy_rate_profile(&recipe, args.m_max, &prefixes, cap)?;
    if args.json {
        let value = report_to_json(&report, &[("construction", json!(report.label))]);
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "construction: {}", report.label)?;
        print_report_text(&report, out)?;
    }
    Ok(())
}

fn run_analyze(args: AnalyzeArgs, out: &mut dyn Write) -> Result<()> {
    if !args.stdin {
        return Err(Error::invalid("analyze reads from stdin; pass --stdin"));
    }
    if !(2..=10).contains(&args.base) {
        return Err(Error::invalid("analyze supports ASCII digits, base 2..=10"));
    }
    let mut raw = String::new();
    std::io::stdin()
        .read_to_string(&mut raw)
        .map_err(|e| Error::invalid(format!("could not read stdin: {e}")))?;
    let digits: Vec<u8> = raw
        .trim()
        .bytes()
        .map(|b| {
            if b.is_ascii_digit() && ((b - b'0') as u32) < args.base {
                Ok(b - b'0')
            } else {
                Err(Error::invalid(format!(
                    "unexpected input byte {:?} for base {}",
                    b as char, args.base
                )))
            }
        })
        .collect::<Result<_>>()?;
    if digits.is_empty() {
        return Err(Error::invalid("no digits on stdin"));
    }
    let prefixes = args.prefixes.unwrap_or_else(|| vec![digits.len() as u64]);
    let report = dimension::entropy_profile_digits(&digits, args.base, args.m_max, &prefixes)?;
    if args.json {
        let value = report_to_json(&report, &[("digits", json!(digits.len()))]);
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "input: {} digits, base {}", digits.len(), args.base)?;
        print_report_text(&report, out)?;
    }
    Ok(())
}

fn run_artin(command: ArtinCommand, out: &mut dyn Write) -> Result<()> {
    match command {
        ArtinCommand::Find { bases, limit, json } => {
            let primes = artin::find_simultaneous_primes(&bases, limit)?;
            if json {
                writeln!(out, "{}", json!({ "bases": bases, "limit": limit, "primes": primes }))?;
            } else {
                for p in primes {
                    writeln!(out, "{p}")?;
                }
            }
            Ok(())
        }
        ArtinCommand::Gamma {
            bases,
            stages,
            f,
            digits,
            emit_base,
            search_limit,
            json,
        } => {
            let recipe = match f {
                Some(schedule) => {
                    if schedule.len() != stages as usize {
                        return Err(Error::invalid(format!("--f needs exactly {stages} entries")));
                    }
                    artin::gamma_recipe_with_schedule(&bases, schedule, search_limit)?
                }
                None => artin::default_gamma_recipe(&bases, stages, search_limit)?,
            };
            let build = artin::build_gamma(&recipe)?;
            let emitted = match (emit_base, digits) {
                (Some(b), Some(count)) => Some((b, build.digits(b, count)?)),
                (None, None) => None,
                _ => {
                    return Err(Error::invalid(
                        "--emit-base and --digits must be given together",
                    ))
                }
            };
            if json {
                let stage_values: Vec<Value> = build
                    .reports
                    .iter()
                    .map(|r| {
                        json!({
                            "stage": r.stage,
                            "prime": r.prime,
                            "repetitions": r.repetitions,
                            "q_bits": r.q_bits,
                            "holds": r.liouville_holds,
                            "digit_stability": checks_to_json(&r.digit_stability),
                            "block_repetition": checks_to_json(&r.block_repetition),
                        })
                    })
                    .collect();
                let mut value = json!({
                    "bases": build.recipe.bases,
                    "primes": build.recipe.primes,
                    "schedule": build.recipe.schedule,
                    "stages": stage_values,
                });
                if let Some((b, ds)) = &emitted {
                    let text: String = ds.iter().map(|&d| (b'0' + d) as char).collect();
                    value
                        .as_object_mut()
                        .expect("object")
                        .insert("digits".into(), json!({ "base": b, "value": text }));
                }
                writeln!(out, "{value}")?;
            } else {
                writeln!(
                    out,
                    "bases {:?}, primes {:?}, schedule {:?}",
                    build.recipe.bases, build.recipe.primes, build.recipe.schedule
                )?;
                for r in &build.reports {
                    writeln!(
                        out,
                        "stage {}: prime={} f={} q_bits={} liouville_holds={}",
                        r.stage, r.prime, r.repetitions, r.q_bits, r.liouville_holds
                    )?;
                    for c in &r.digit_stability {
                        writeln!(out, "  stability base {}: {} ({})", c.base, c.passed, c.detail)?;
                    }
                    for c in &r.block_repetition {
                        writeln!(out, "  repetition base {}: {} ({})", c.base, c.passed, c.detail)?;
                    }
                }
                if let Some((b, ds)) = &emitted {
                    let text: String = ds.iter().map(|&d| (b'0' + d) as char).collect();
                    writeln!(out, "digits (base {b}): {text}")?;
                }
            }
            Ok(())
        }
    }
}

fn checks_to_json(checks: &[artin::BaseCheck]) -> Vec<Value> {
    checks
        .iter()
        .map(|c| json!({ "base": c.base, "passed": c.passed, "detail": c.detail }))
        .collect()
}
