use std::path::PathBuf;
use std::process::ExitCode;

use cantor_core::cantor::split;
use cantor_core::enclosure::enclose_value;
use cantor_core::harness::{cmd_plot, cmd_verify, OutputFormat, PlotWhich, RunConfig, Suite};
use cantor_core::regularity::{ergodic_averages, holder_band, ErgodicReport, KhintchineResult};
use cantor_core::stream::StreamKind;
use cantor_core::text::{format_decimal, format_rational, parse_decimal, parse_rational};
use cantor_core::{
    discontinuity_witness, expand_certified, inverse_digits, khintchine, rational_to_cf,
    sample_irrational, BigRational, CfError, Component, DigitStream, Enclosure,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Continued fractions and Cantor's bijection between I and I^2.
#[derive(Parser, Debug)]
#[command(name = "cantor", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Sample count (plot: number of points).
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Digit depth.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Bits of precision for sampled irrationals.
    #[arg(long, global = true)]
    bits: Option<u32>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    A1,
    #[value(name = "a2_given_a1_eq_1")]
    A2GivenA1Eq1,
    F1,
    F2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Identities,
    Bijection,
    Sandwich,
    Khintchine,
    Ergodic,
    Witness,
    Band,
    Metric,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ComponentArg {
    F1,
    F2,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certified digits shared by every irrational in (lo, hi).
    Expand {
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
    },
    /// Value of a stream: exact for finite words, an enclosure otherwise.
    Eval { stream: String },
    /// f(x) = (f1(x), f2(x)).
    Map { x: String },
    /// The point whose image is (y1, y2).
    Inverse { y1: String, y2: String },
    /// Two sequences converging to a rational whose images have different limits.
    Witness {
        rational: String,
        #[arg(long, default_value = "[;(1)]")]
        tail: String,
    },
    /// Hölder band of f1 or f2 at depth n.
    Holder {
        stream: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "f1")]
        component: ComponentArg,
    },
    /// log K_k with a certified tail bound.
    Khintchine {
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value_t = 1e-7)]
        tail: f64,
    },
    /// Digit means of one stream, or of sampled irrationals.
    Ergodic {
        stream: Option<String>,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// Plot data for a_1, a_2 given a_1 = 1, f1 or f2.
    Plot {
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Runs a verification suite and writes its report.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
}

enum Failure {
    Error(CfError),
    /// The report already explains the failure.
    Exit(u8),
}

impl From<CfError> for Failure {
    fn from(e: CfError) -> Self {
        Failure::Error(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Exit(code)) => ExitCode::from(code),
        Err(Failure::Error(e)) => {
            eprintln!("cantor: {e}");
            ExitCode::from(match &e {
                e if e.is_precision() => 3,
                CfError::Domain(_) | CfError::Parse(_) | CfError::Io { .. } => 2,
                _ => 1,
            })
        }
    }
}

fn config(common: &Common, defaults: RunConfig) -> RunConfig {
    RunConfig {
        seed: common.seed.unwrap_or(defaults.seed),
        samples: common.samples.unwrap_or(defaults.samples),
        depth: common.depth.unwrap_or(defaults.depth),
        bits: common.bits.unwrap_or(defaults.bits),
        output_format: match common.format {
            Some(Format::Json) => OutputFormat::Json,
            Some(Format::Csv) => OutputFormat::Csv,
            None => defaults.output_format,
        },
        output_path: common.out.clone(),
    }
}

fn emit_json(config: &RunConfig, value: &Value) -> Result<(), CfError> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON value serializes");
    text.push('\n');
    config.emit(&text)
}

/// A stream in text form, or a rational `p/q` or decimal in `(0, 1]`.
fn parse_point(s: &str) -> Result<DigitStream, CfError> {
    let s = s.trim();
    if s.starts_with('[') || s.contains('(') {
        return s.parse();
    }
    let x = if s.contains('/') {
        parse_rational(s)?
    } else {
        parse_decimal(s)?
    };
    Ok(DigitStream::finite(rational_to_cf(&x)?))
}

fn enclosure_json(e: &Enclosure) -> Value {
    if e.lo == e.hi {
        json!({ "exact": format_rational(&e.lo) })
    } else {
        json!({
            "lo": format_rational(&e.lo),
            "hi": format_rational(&e.hi),
            "lo_decimal": format_decimal(&e.lo, 20),
            "hi_decimal": format_decimal(&e.hi, 20),
        })
    }
}

/// Enclosure from up to `depth` digits; shorter finite streams give their exact value.
fn value_json(stream: &DigitStream, depth: usize) -> Result<Value, CfError> {
    let digits = match stream.kind() {
        StreamKind::Finite(w) => w.len() + 1,
        _ => depth,
    };
    Ok(enclosure_json(&enclose_value(stream, digits)?))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let common = &cli.common;
    let base = config(common, RunConfig::default());
    match cli.command {
        Command::Expand { lo, hi } => {
            let (word, status) =
                expand_certified(&parse_rational(&lo)?, &parse_rational(&hi)?, base.depth)?;
            emit_json(
                &base,
                &json!({ "digits": word.to_string(), "count": word.len(), "status": status }),
            )?;
        }
        Command::Eval { stream } => {
            let s = parse_point(&stream)?;
            let value = value_json(&s, base.depth)?;
            emit_json(&base, &json!({ "stream": s.to_string(), "value": value }))?;
        }
        Command::Map { x } => {
            let s = parse_point(&x)?;
            let pair = split(&s);
            emit_json(
                &base,
                &json!({
                    "x": s.to_string(),
                    "f1": pair.odd_stream.to_string(),
                    "f2": pair.even_stream.to_string(),
                    "f1_value": value_json(&pair.odd_stream, base.depth)?,
                    "f2_value": value_json(&pair.even_stream, base.depth)?,
                }),
            )?;
        }
        Command::Inverse { y1, y2 } => {
            let x = inverse_digits(&parse_point(&y1)?, &parse_point(&y2)?);
            let value = value_json(&x, 2 * base.depth)?;
            emit_json(&base, &json!({ "x": x.to_string(), "value": value }))?;
        }
        Command::Witness { rational, tail } => {
            let x: BigRational = parse_rational(&rational)?;
            let w = discontinuity_witness(&x, &tail.parse()?)?;
            let report = serde_json::to_value(w.report()).expect("report serializes");
            emit_json(&base, &report)?;
        }
        Command::Holder { stream, n, component } => {
            let component = match component {
                ComponentArg::F1 => Component::F1,
                ComponentArg::F2 => Component::F2,
            };
            let band = holder_band(&parse_point(&stream)?, n.unwrap_or(base.depth), component)?;
            emit_json(&base, &band.to_json())?;
        }
        Command::Khintchine { k, tail } => {
            let result: KhintchineResult = khintchine(k, tail)?;
            emit_json(&base, &serde_json::to_value(&result).expect("result serializes"))?;
            if !result.converged {
                return Err(Failure::Error(CfError::Precision(format!(
                    "tail {tail} not reached within the term cap"
                ))));
            }
        }
        Command::Ergodic { stream, k } => {
            let reports: Vec<ErgodicReport> = match stream {
                Some(s) => vec![ergodic_averages(&parse_point(&s)?, base.depth, k)?],
                None => {
                    base.validate()?;
                    (0..base.samples as u64)
                    .map(|i| ergodic_averages(&sample_irrational(base.seed, i, base.bits)?, base.depth, k))
                    .collect::<Result<_, _>>()?
                }
            };
            match base.output_format {
                OutputFormat::Csv => {
                    let mut text = format!("{}\n", ErgodicReport::CSV_HEADER);
                    for r in &reports {
                        text.push_str(&r.csv_row());
                        text.push('\n');
                    }
                    base.emit(&text)?;
                }
                OutputFormat::Json => {
                    emit_json(&base, &serde_json::to_value(&reports).expect("reports serialize"))?
                }
            }
        }
        Command::Plot { which } => {
            let which = match which {
                Which::A1 => PlotWhich::A1,
                Which::A2GivenA1Eq1 => PlotWhich::A2GivenA1Eq1,
                Which::F1 => PlotWhich::F1,
                Which::F2 => PlotWhich::F2,
            };
            let plot_config = config(
                common,
                RunConfig {
                    output_format: OutputFormat::Csv,
                    ..RunConfig::default()
                },
            );
            cmd_plot(&plot_config, which, plot_config.samples)?;
        }
        Command::Verify { suite } => {
            let suite = match suite {
                SuiteArg::Identities => Suite::Identities,
                SuiteArg::Bijection => Suite::Bijection,
                SuiteArg::Sandwich => Suite::Sandwich,
                SuiteArg::Khintchine => Suite::Khintchine,
                SuiteArg::Ergodic => Suite::Ergodic,
                SuiteArg::Witness => Suite::Witness,
                SuiteArg::Band => Suite::Band,
                SuiteArg::Metric => Suite::Metric,
            };
            let suite_config = config(common, suite.default_config(0));
            let report = cmd_verify(&suite_config, suite)?;
            if let Some(error) = &report.error {
                eprintln!("cantor: {error}");
            }
            if report.exit_code() != 0 {
                return Err(Failure::Exit(report.exit_code() as u8));
            }
        }
    }
    Ok(())
}
