//! `stirling`: values, triangles, series dumps, identity audits and
//! asymptotic comparisons for the Stirling-type number families.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage,
//! parse or domain errors.

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use stirling_kit::asymptotics::{asymptotic_partial, decimal, AsymptoticMode};
use stirling_kit::audit::{run_suite, AuditReport, SUITES};
use stirling_kit::oracle::DEFAULT_CAP;
use stirling_kit::{parse_rational, FamilySpec, Method, ParamSet, Rational, ValueTable};

#[derive(Parser)]
#[command(name = "stirling", version, about = "Exact generalized Stirling numbers of the second kind")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one value.
    Value(ValueArgs),
    /// Print the triangle 0 <= k <= n <= nmax.
    Table(TableArgs),
    /// Print the coefficients of the k-th generating function.
    Series(SeriesArgs),
    /// Run the identity audit.
    Verify(VerifyArgs),
    /// Compare the truncated power expansion with exact values.
    Asympt(AsymptArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// classic, restricted, associated, degenerate, generalized,
    /// gen-restricted, free-atleast, partial or colored
    #[arg(long)]
    family: String,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    s: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ValueArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// egf, recurrence, explicit or oracle
    #[arg(long)]
    method: Option<String>,
    /// Evaluate with every available method and fail on disagreement.
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    nmax: usize,
    #[arg(long)]
    method: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    order: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 8)]
    nmax: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct AsymptArgs {
    #[arg(long, default_value = "partial")]
    family: String,
    #[arg(long)]
    n: usize,
    /// Comma-separated list of k values.
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<usize>,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    ell: usize,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
    /// normalized or literal
    #[arg(long, default_value = "normalized")]
    mode: String,
    #[command(flatten)]
    output: Output,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<stirling_kit::Error> for Failure {
    fn from(e: stirling_kit::Error) -> Self {
        Failure::usage(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn rational(flag: &str, v: &Option<String>) -> CliResult<Option<Rational>> {
    v.as_deref()
        .map(|s| parse_rational(s).map_err(|e| Failure::usage(format!("--{flag}: {e}"))))
        .transpose()
}

fn family(args: &FamilyArgs) -> CliResult<FamilySpec> {
    let params = ParamSet {
        ell: args.ell,
        alpha: rational("alpha", &args.alpha)?,
        beta: rational("beta", &args.beta)?,
        gamma: rational("gamma", &args.gamma)?,
        lambda: rational("lambda", &args.lambda)?,
        r: args.r,
        s: args.s,
    };
    Ok(FamilySpec::from_params(&args.family, &params)?)
}

fn method(spec: &FamilySpec, name: &Option<String>) -> CliResult<Method> {
    match name {
        None => Ok(spec.canonical_method()),
        Some(s) => Ok(s.parse()?),
    }
}

fn emit(output: &Output, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {path}: {e}"))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::usage(format!("cannot write output: {e}")))
        }
    }
}

#[derive(Serialize)]
struct Entry {
    n: usize,
    k: usize,
    value: String,
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn entries_text(entries: &[Entry], format: Format) -> String {
    match format {
        Format::Json => json(entries),
        Format::Csv => {
            let mut s = String::from("n,k,value\n");
            for e in entries {
                s += &format!("{},{},{}\n", e.n, e.k, e.value);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let mut row = None;
            for e in entries {
                if row.is_some() && row != Some(e.n) {
                    s.push('\n');
                } else if row.is_some() {
                    s.push(' ');
                }
                s += &e.value;
                row = Some(e.n);
            }
            if row.is_some() {
                s.push('\n');
            }
            s
        }
    }
}

fn cmd_value(a: &ValueArgs) -> CliResult<u8> {
    let spec = family(&a.family)?;
    let m = method(&spec, &a.method)?;
    if m == Method::Oracle && a.n > DEFAULT_CAP {
        return Err(Failure::usage(format!("--method oracle is limited to n <= {DEFAULT_CAP}")));
    }
    let value = spec.value_by(a.n, a.k, m)?;
    let mut code = 0;
    if a.check {
        for other in spec.methods() {
            if other == Method::Oracle && a.n > DEFAULT_CAP {
                eprintln!("check: oracle skipped, n = {} exceeds the enumeration cap {DEFAULT_CAP}", a.n);
                continue;
            }
            let v = spec.value_by(a.n, a.k, other)?;
            if v != value {
                eprintln!("check: {other} gives {v}, {m} gives {value}");
                code = 1;
            }
        }
    }
    let entry = [Entry {
        n: a.n,
        k: a.k,
        value: value.to_string(),
    }];
    let text = match a.output.format.unwrap_or(Format::Text) {
        Format::Text => format!("{value}\n"),
        Format::Json => json(&entry[0]),
        Format::Csv => entries_text(&entry, Format::Csv),
    };
    emit(&a.output, &text)?;
    Ok(code)
}

fn cmd_table(a: &TableArgs) -> CliResult<u8> {
    let spec = family(&a.family)?;
    let m = method(&spec, &a.method)?;
    if m == Method::Oracle && a.nmax > DEFAULT_CAP {
        return Err(Failure::usage(format!("--method oracle is limited to nmax <= {DEFAULT_CAP}")));
    }
    let table = ValueTable::compute(&spec, a.nmax, m)?;
    let entries: Vec<Entry> = table
        .entries
        .iter()
        .map(|(&(n, k), v)| Entry { n, k, value: v.to_string() })
        .collect();
    emit(&a.output, &entries_text(&entries, a.output.format.unwrap_or(Format::Csv)))?;
    Ok(0)
}

fn cmd_series(a: &SeriesArgs) -> CliResult<u8> {
    let spec = family(&a.family)?;
    let series = spec.egf_series(a.k, a.order)?;
    #[derive(Serialize)]
    struct Coeff {
        n: usize,
        coefficient: String,
        value: String,
    }
    let rows: Vec<Coeff> = series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| Coeff {
            n,
            coefficient: c.to_string(),
            value: (c * stirling_kit::exact_arith::factorial_q(n)).to_string(),
        })
        .collect();
    let text = match a.output.format.unwrap_or(Format::Text) {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = String::from("n,coefficient,value\n");
            for r in &rows {
                s += &format!("{},{},{}\n", r.n, r.coefficient, r.value);
            }
            s
        }
        Format::Text => rows.iter().map(|r| format!("{} {} {}\n", r.n, r.coefficient, r.value)).collect(),
    };
    emit(&a.output, &text)?;
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<u8> {
    if !SUITES.contains(&a.suite.as_str()) {
        return Err(Failure::usage(format!("unknown suite `{}` (expected one of {})", a.suite, SUITES.join(", "))));
    }
    let report = run_suite(&a.suite, a.nmax)?;
    let text = match a.output.format.unwrap_or(Format::Text) {
        Format::Json => json(&report),
        Format::Text => report.to_text(),
        Format::Csv => {
            let mut s = String::from("suite,identity,literal,corrected,informational\n");
            for r in &report.rows {
                let corrected = r.corrected.as_ref().map_or("", |v| v.label());
                s += &format!(
                    "{},\"{}\",{},{},{}\n",
                    r.suite,
                    r.identity.replace('"', "\"\""),
                    r.literal.label(),
                    corrected,
                    r.informational
                );
            }
            s
        }
    };
    emit(&a.output, &text)?;
    Ok(verdict_status(&report))
}

fn verdict_status(report: &AuditReport) -> u8 {
    if report.passed() {
        0
    } else {
        1
    }
}

#[derive(Serialize)]
struct AsymptRow {
    k: usize,
    estimate: Option<String>,
    exact: Option<String>,
    rel_error: Option<String>,
    rel_error_decimal: Option<String>,
    note: Option<String>,
}

fn cmd_asympt(a: &AsymptArgs) -> CliResult<u8> {
    if !matches!(a.family.as_str(), "partial" | "partial-degenerate" | "partial_degenerate") {
        return Err(Failure::usage("asympt supports only --family partial"));
    }
    let mode: AsymptoticMode = a.mode.parse()?;
    let need = |flag: &str, v: &String| rational(flag, &Some(v.clone())).map(|q| q.expect("present"));
    let (alpha, beta, gamma) = (need("alpha", &a.alpha)?, need("beta", &a.beta)?, need("gamma", &a.gamma)?);
    FamilySpec::PartialDegenerate {
        gamma: gamma.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
        ell: a.ell,
    }
    .validate()?;
    let rows: Vec<AsymptRow> = a
        .k
        .iter()
        .map(|&k| match asymptotic_partial(a.n, k, &gamma, &alpha, &beta, a.ell, a.m, mode) {
            Ok(r) => {
                let note = match (&r.exact, &r.rel_error) {
                    (None, _) => Some("undefined: (k)_n vanishes".to_string()),
                    (Some(_), None) => Some("undefined: exact value is 0".to_string()),
                    _ => None,
                };
                AsymptRow {
                    k,
                    estimate: Some(r.estimate.to_string()),
                    exact: r.exact.as_ref().map(ToString::to_string),
                    rel_error_decimal: r.rel_error.as_ref().map(decimal),
                    rel_error: r.rel_error.as_ref().map(ToString::to_string),
                    note,
                }
            }
            Err(e) => AsymptRow {
                k,
                estimate: None,
                exact: None,
                rel_error: None,
                rel_error_decimal: None,
                note: Some(e.to_string()),
            },
        })
        .collect();
    let cell = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".to_string());
    let text = match a.output.format.unwrap_or(Format::Text) {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = String::from("k,estimate,exact,rel_error,rel_error_decimal,note\n");
            for r in &rows {
                s += &format!(
                    "{},{},{},{},{},{}\n",
                    r.k,
                    cell(&r.estimate),
                    cell(&r.exact),
                    cell(&r.rel_error),
                    cell(&r.rel_error_decimal),
                    r.note.clone().unwrap_or_default()
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::from("k\trel_error\testimate\texact\n");
            for r in &rows {
                let err = match (&r.rel_error_decimal, &r.note) {
                    (Some(d), _) => d.clone(),
                    (None, Some(n)) => n.clone(),
                    _ => "-".into(),
                };
                s += &format!("{}\t{}\t{}\t{}\n", r.k, err, cell(&r.estimate), cell(&r.exact));
            }
            s
        }
    };
    emit(&a.output, &text)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Value(a) => cmd_value(a),
        Command::Table(a) => cmd_table(a),
        Command::Series(a) => cmd_series(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Asympt(a) => cmd_asympt(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
