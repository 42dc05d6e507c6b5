//! The `lexirank` command line.
//!
//! [`run`] does all the work and returns the text and exit status, so the
//! binary is a thin wrapper and tests can drive every subcommand in-process.
//!
//! Exit codes: 0 success, 1 parse or I/O error, 2 unsupported grossnumeral
//! height, 3 transfer to an infinite argument, 4 any other domain or math
//! error.

use std::cmp::Ordering;
use std::ffi::OsString;
use std::fs::File;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::exact::{Dyadic, Rational, RoundingMode};
use crate::lexrank::{self, MedalSheet};
use crate::parser::{self, Dialect};

/// The 2014 Winter Olympics medal table (gold, silver, bronze).
pub const OLYMPICS_2014_CSV: &str = include_str!("../data/olympics2014.csv");

/// Residual coefficients below this are not printed by `lc`.
pub const DISPLAY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub precision: usize,
    pub base: Rational,
    pub depth: usize,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision: 7,
            base: Rational::from(1_000_000),
            depth: crate::levicivita::DEFAULT_DEPTH,
            format: Format::Text,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.precision < 1 {
            return Err(usage("--precision must be at least 1"));
        }
        if self.depth < 2 {
            return Err(usage("--depth must be at least 2"));
        }
        if !self.base.is_positive() {
            return Err(usage("--base must be positive"));
        }
        Ok(())
    }
}

fn usage(message: &str) -> Error {
    Error::Parse {
        position: 0,
        message: message.to_owned(),
    }
}

const GROSS_HELP: &str = "\
Height-1 grossnumeral calculator.

One expression prints its canonical form, or its exact value at the base \
given by --base when --eval is set. Two expressions print their order and \
the magnitude class of the left one.

Classification: a height-1 grossnumeral is infinite iff some term has a \
positive exponent, infinitesimal iff it is nonzero and every exponent is \
negative, and finite otherwise; G^(1/2) is infinite. The criterion \"infinite \
when at least one grosspower is greater than zero\" is NOT applied to \
multilevel grossnumerals: G^(G^-1) has a positive grosspower but would be \
infinitely close to 1, and no algorithm is known for comparing such \
expressions, so any G inside an exponent is rejected (exit code 2).";

const LC_HELP: &str = "\
Truncated Levi-Civita calculator in the infinitesimal d.

Prints the value of the expression with coefficients below 1e-12 suppressed, \
or with --derive, the n-th derivative of an expression in x at the point \
given by --at. sin, cos and exp are defined only for arguments without an \
infinitely large part; sin(d^-1) exits with code 3.";

#[derive(Debug, Parser)]
#[command(
    name = "lexirank",
    version,
    about = "Exact lexicographic medal ranks, grossnumerals and Levi-Civita numbers"
)]
struct Cli {
    /// Decimal digits in rank output.
    #[arg(long, global = true, default_value_t = 7)]
    precision: usize,

    /// Finite base substituted for G by `gross --eval`.
    #[arg(long, global = true, default_value = "1000000", allow_hyphen_values = true)]
    base: String,

    /// Levi-Civita truncation depth.
    #[arg(long, global = true, default_value_t = crate::levicivita::DEFAULT_DEPTH)]
    depth: usize,

    /// Output format for `table`.
    #[arg(long, global = true, value_enum, env = "LEXIRANK_FORMAT", default_value = "text")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the binary and decimal rank of a medal word such as 13,11,9.
    Rank {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Print the medal word with the given rank (binary 0.1001 or a fraction 9/16).
    Unrank { rank: String },
    /// Rank every row of a medal CSV (`-` reads stdin; no path uses the bundled 2014 table).
    Table { path: Option<PathBuf> },
    #[command(about = "Height-1 grossnumeral calculator", long_about = GROSS_HELP)]
    Gross {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(allow_hyphen_values = true)]
        other: Option<String>,
        /// Substitute --base for G.
        #[arg(long)]
        eval: bool,
    },
    #[command(about = "Truncated Levi-Civita calculator", long_about = LC_HELP)]
    Lc {
        #[arg(allow_hyphen_values = true, required_unless_present = "derive")]
        expr: Option<String>,
        /// Expression in x to differentiate.
        #[arg(long, conflicts_with = "expr", requires = "at", allow_hyphen_values = true)]
        derive: Option<String>,
        /// Point of differentiation.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// Derivative order.
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Csv { .. } | Error::Io(_) | Error::UnknownSymbol { .. } => 1,
        Error::HeightUnsupported(_) => 2,
        Error::TransferUnavailable(_) => 3,
        Error::DivisionByZero
        | Error::NotDyadicRank(_)
        | Error::Domain(_)
        | Error::RationalPowerUnavailable { .. }
        | Error::PowerUndefined(_)
        | Error::Undefined(_) => 4,
    }
}

/// Runs one invocation; `args` includes the program name. `stdin` backs
/// the `-` path.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stderr: text,
                    code: 1,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    stdout: text,
                    ..Outcome::default()
                }
            };
        }
    };
    match execute(cli, stdin) {
        Ok(stdout) => Outcome {
            stdout,
            ..Outcome::default()
        },
        Err(e) => Outcome {
            stderr: format!("error[{}]: {e}\n", e.kind()),
            code: exit_code(&e),
            ..Outcome::default()
        },
    }
}

fn execute(cli: Cli, stdin: &mut dyn Read) -> Result<String> {
    let config = Config {
        precision: cli.precision,
        base: cli.base.parse().map_err(|_| usage("--base must be a rational number"))?,
        depth: cli.depth,
        format: cli.format,
    };
    config.validate()?;
    match cli.command {
        Command::Rank { word } => cmd_rank(&word, &config),
        Command::Unrank { rank } => cmd_unrank(&rank),
        Command::Table { path } => {
            let sheet = match path {
                None => lexrank::ingest_csv(OLYMPICS_2014_CSV.as_bytes())?,
                Some(p) if p.as_os_str() == "-" => lexrank::ingest_csv(stdin)?,
                Some(p) => lexrank::ingest_csv(File::open(&p).map_err(|e| {
                    Error::Io(format!("{}: {e}", p.display()))
                })?)?,
            };
            cmd_table(&sheet, &config)
        }
        Command::Gross { expr, other, eval } => cmd_gross(&expr, other.as_deref(), eval, &config),
        Command::Lc {
            expr,
            derive,
            at,
            order,
        } => match (expr, derive) {
            (_, Some(f)) => cmd_derive(&f, at.as_deref().unwrap_or_default(), order, &config),
            (Some(e), None) => cmd_lc(&e, &config),
            (None, None) => Err(usage("lc needs an expression or --derive")),
        },
    }
}

pub fn cmd_rank(word: &str, config: &Config) -> Result<String> {
    let w = parser::parse_word(word)?;
    let rank = lexrank::encode_rank(&w);
    Ok(format!(
        "{}  {}\n",
        rank.to_binary_string(),
        rank.to_decimal_string(config.precision, RoundingMode::Truncate)
    ))
}

pub fn cmd_unrank(rank: &str) -> Result<String> {
    let word = if rank.contains('/') {
        lexrank::decode_rational(&rank.parse()?)?
    } else {
        lexrank::decode_rank(&Dyadic::parse_binary(rank)?)
    };
    Ok(format!("{word}\n"))
}

pub fn cmd_table(sheet: &MedalSheet, config: &Config) -> Result<String> {
    let rows = lexrank::build_table(&sheet.records, config.precision);
    match config.format {
        Format::Text => Ok(lexrank::render_text(&sheet.classes, &rows)),
        Format::Csv => lexrank::render_csv(&sheet.classes, &rows),
        Format::Json => Ok(lexrank::render_json_lines(&sheet.classes, &rows)),
    }
}

pub fn cmd_gross(expr: &str, other: Option<&str>, eval: bool, config: &Config) -> Result<String> {
    let x = parser::eval_gross_str(expr)?;
    if let Some(other) = other {
        let y = parser::eval_gross_str(other)?;
        let ord = match x.compare(&y) {
            Ordering::Less => "less",
            Ordering::Equal => "equal",
            Ordering::Greater => "greater",
        };
        return Ok(format!("{ord}; left is {}\n", x.classify()));
    }
    if eval {
        return Ok(format!("{}\n", x.eval_at_base(&config.base)?));
    }
    Ok(format!("{x}\n"))
}

pub fn cmd_lc(expr: &str, config: &Config) -> Result<String> {
    let v = parser::eval_lc_str(expr, config.depth)?;
    Ok(format!("{}\n", v.chop(DISPLAY_TOLERANCE)))
}

pub fn cmd_derive(expr: &str, at: &str, order: usize, config: &Config) -> Result<String> {
    let f = parser::parse_expr(expr, Dialect::Lc)?;
    let a: Rational = at.parse()?;
    let v = parser::lc_derivative(&f, &a, order, config.depth)?;
    Ok(format!("{}\n", crate::levicivita::format_coefficient(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let mut argv = vec!["lexirank"];
        argv.extend_from_slice(args);
        run(argv, &mut std::io::empty())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(run_args(&["rank", "1,0,0"]).stdout, "0.1  0.5000000\n");
        assert_eq!(run_args(&["rank", "0"]).stdout, "0  0.0000000\n");
        assert_eq!(run_args(&["rank", "0,0,1"]).stdout, "0.001  0.1250000\n");
        assert_eq!(run_args(&["--precision", "3", "rank", "1,0,1"]).stdout, "0.1001  0.562\n");
    }

    #[test]
    fn unrank_examples() {
        assert_eq!(run_args(&["unrank", "0.1001"]).stdout, "1,0,1\n");
        assert_eq!(run_args(&["unrank", "0"]).stdout, "\n");
        assert_eq!(run_args(&["unrank", "0.01"]).stdout, "0,1\n");
        assert_eq!(run_args(&["unrank", "9/16"]).stdout, "1,0,1\n");
        let out = run_args(&["unrank", "1/3"]);
        assert_eq!(out.code, 4);
        assert!(out.stderr.contains("NotDyadicRank"));
    }

    #[test]
    fn gross_examples() {
        assert_eq!(
            run_args(&["gross", "5*G^3+12*G+1", "--eval"]).stdout,
            "5000000000012000001\n"
        );
        assert_eq!(run_args(&["gross", "G", "1000000"]).stdout, "greater; left is infinite\n");
        let out = run_args(&["gross", "G^(G^-1)"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("HeightUnsupported"));
        assert!(out.stderr.contains("no known algorithm"));
        assert_eq!(run_args(&["gross", "-G + (G+1)^2"]).stdout, "G^2 + G + 1\n");
        assert_eq!(run_args(&["--base", "10", "gross", "G^2", "--eval"]).stdout, "100\n");
    }

    #[test]
    fn lc_examples() {
        assert_eq!(run_args(&["lc", "sin(1+d)^2+cos(1+d)^2"]).stdout, "1\n");
        assert_eq!(
            run_args(&["lc", "--derive", "x^2", "--at", "3", "--order", "1"]).stdout,
            "6\n"
        );
        let out = run_args(&["lc", "sin(d^-1)"]);
        assert_eq!(out.code, 3);
        assert!(out.stderr.contains("TransferUnavailable"));
        assert_eq!(run_args(&["lc", "--derive", "x^3", "--at", "-1", "--order", "2"]).stdout, "-6\n");
        assert_eq!(run_args(&["lc", "(1+d)^-1", "--depth", "3"]).stdout, "1 - d + d^2\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["rank", "1,x"]).code, 1);
        assert_eq!(run_args(&["rank", "1,-1"]).code, 4);
        assert_eq!(run_args(&["lc", "1/(d-d)"]).code, 4);
        assert_eq!(run_args(&["lc", "G"]).code, 1);
        assert_eq!(run_args(&["bogus"]).code, 1);
        assert_eq!(run_args(&["--depth", "1", "lc", "d"]).code, 1);
        assert_eq!(run_args(&["--base", "0", "gross", "G"]).code, 1);
        assert_eq!(run_args(&["table", "/nonexistent/medals.csv"]).code, 1);
        assert_eq!(run_args(&["lc", "--derive", "x", "--at", "0", "--order", "10"]).code, 4);
    }

    #[test]
    fn help_documents_rejected_criterion() {
        let out = run_args(&["gross", "--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("G^(G^-1)"));
        assert!(out.stdout.contains("NOT applied"));
    }
}
