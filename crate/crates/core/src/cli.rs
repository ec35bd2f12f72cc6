//! Command-line front end. Every subcommand writes its result to `out` and
//! diagnostics to `err`, and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expr::parse_poly;
use crate::frobsim::{run_report, SimReport, Target};
use crate::golden::{a_label, a_set, GoldenRational, A_LABELS};
use crate::icosagroup::{ConjClassTable, DIMENSIONS, NUM_CLASSES};
use crate::identities;
use crate::isobaric::{build_pi, ATOM_NAMES};
use crate::rescalc::{RFunctional, MAX_DEGREE};
use crate::verify::{self, default_targets};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "icosa",
    version,
    about = "Exact checks for Hecke eigenvalues in Z[phi]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The 45 values r(x^i y^j) with i + j <= 8
    Rtable {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate r on a polynomial of degree at most 8
    R {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check the identity ledger
    Identities {
        #[arg(long)]
        only: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: TextOrJson,
    },
    /// Character table of SL(2, F_5)
    Chartable {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Multiplicities m_{k,i} of the k-th symmetric power
    Mult(MultArgs),
    /// The isobaric sum Pi_k
    Pik {
        #[arg(long)]
        k: usize,
    },
    /// Densities r(f_alpha) / f_alpha(alpha, alpha^tau) for alpha in A
    Densities {
        #[arg(long, value_enum, default_value = "text")]
        format: TextOrJson,
    },
    /// Sample an eigenvalue stream and report densities and partial sums
    Simulate {
        #[arg(long, default_value_t = verify::SIM_X)]
        x: u64,
        #[arg(long, default_value_t = verify::SIM_SEED)]
        seed: u64,
        /// Target polynomial; repeatable. Defaults to 1, H, f_0, f_1, f_phi
        #[arg(long = "f", allow_hyphen_values = true)]
        f: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: TextOrJson,
    },
    /// Run every section of the self-check
    VerifyAll,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct MultArgs {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    upto: Option<usize>,
}

pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for an error that escapes a subcommand.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::UnknownIdentity(_) | Error::Invalid(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<u8> {
    match cmd {
        Command::Rtable { format } => rtable(format, out),
        Command::R { expr } => {
            let f = parse_poly(&expr)?;
            let v = RFunctional::standard().r_poly(&f)?;
            emit(out, format_args!("{v}\n"))
        }
        Command::Identities { only, format } => identities_cmd(only, format, out),
        Command::Chartable { format } => chartable(format, out),
        Command::Mult(args) => mult(args, out),
        Command::Pik { k } => {
            let rep = build_pi(k)?;
            let doc = json!({ "k": k, "mult": rep.mult, "degree": rep.degree(), "atoms": ATOM_NAMES });
            emit(out, format_args!("{doc}\n"))
        }
        Command::Densities { format } => densities(format, out),
        Command::Simulate { x, seed, f, format } => simulate(x, seed, &f, format, out),
        Command::VerifyAll => {
            let report = verify::verify_all();
            json_out(out, &report)?;
            Ok(if report.pass { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

fn emit(out: &mut dyn Write, args: std::fmt::Arguments) -> Result<u8> {
    out.write_fmt(args).map_err(|e| Error::Invalid(e.to_string()))?;
    Ok(EXIT_OK)
}

fn json_out<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<u8> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Invalid(e.to_string()))?;
    emit(out, format_args!("{text}\n"))
}

/// Integers as JSON numbers, anything else as its printed form.
fn number_or_string(v: &GoldenRational) -> Value {
    match v.to_integer().and_then(|n| i64::try_from(n).ok()) {
        Some(n) => json!(n),
        None => json!(v.to_string()),
    }
}

/// Labels for elements of `A`, printed form otherwise.
fn short_label(v: &GoldenRational) -> String {
    v.to_golden_int()
        .and_then(|g| a_label(&g).ok())
        .map_or_else(|| v.to_string(), str::to_string)
}

fn rtable(format: Format, out: &mut dyn Write) -> Result<u8> {
    let r = RFunctional::standard();
    let mut buf = String::new();
    match format {
        Format::Text => {
            buf.push_str("i\\j");
            for j in 0..=MAX_DEGREE {
                buf.push_str(&format!("{j:>4}"));
            }
            buf.push('\n');
            for i in 0..=MAX_DEGREE {
                buf.push_str(&format!("{i:<3}"));
                for j in 0..=MAX_DEGREE - i {
                    buf.push_str(&format!("{:>4}", r.r_monomial(i, j)?.to_string()));
                }
                buf.push('\n');
            }
        }
        Format::Csv => {
            buf.push_str("i,j,r\n");
            for ((i, j), v) in r.table() {
                buf.push_str(&format!("{i},{j},{v}\n"));
            }
        }
        Format::Json => {
            let rows: Vec<Value> = r
                .table()
                .map(|((i, j), v)| json!({ "i": i, "j": j, "r": number_or_string(v) }))
                .collect();
            return json_out(out, &rows);
        }
    }
    emit(out, format_args!("{buf}"))
}

fn identities_cmd(only: Option<String>, format: TextOrJson, out: &mut dyn Write) -> Result<u8> {
    let reports = match only {
        Some(id) => vec![identities::verify_identity(&id)?],
        None => identities::verify_all(),
    };
    let pass = reports.iter().all(|r| r.pass);
    match format {
        TextOrJson::Json => {
            json_out(out, &reports)?;
        }
        TextOrJson::Text => {
            let mut buf = String::new();
            for r in &reports {
                let status = if r.pass { "PASS" } else { "FAIL" };
                buf.push_str(&format!("{:<4} {status}  {}\n", r.id, r.location));
                for f in &r.failures {
                    buf.push_str(&format!("     {f}\n"));
                }
            }
            emit(out, format_args!("{buf}"))?;
        }
    }
    Ok(if pass { EXIT_OK } else { EXIT_FAIL })
}

fn chartable(format: Format, out: &mut dyn Write) -> Result<u8> {
    let table = ConjClassTable::standard();
    let rows = (0..NUM_CLASSES)
        .map(|i| table.char_from_h(i))
        .collect::<Result<Vec<_>>>()?;
    let reps: Vec<String> = table
        .classes()
        .iter()
        .map(|c| c.representative.to_string())
        .collect();
    let sizes = table.sizes();
    let mut buf = String::new();
    match format {
        Format::Text => {
            let w = 10;
            buf.push_str(&format!("{:<6}", "size"));
            for s in &sizes {
                buf.push_str(&format!("{s:>w$}"));
            }
            buf.push('\n');
            buf.push_str(&format!("{:<6}", "rep"));
            for r in &reps {
                buf.push_str(&format!("{r:>w$}"));
            }
            buf.push('\n');
            for (i, row) in rows.iter().enumerate() {
                buf.push_str(&format!("{:<6}", format!("chi{i}")));
                for v in row {
                    buf.push_str(&format!("{:>w$}", short_label(v)));
                }
                buf.push('\n');
            }
        }
        Format::Csv => {
            buf.push_str("chi");
            for r in &reps {
                buf.push_str(&format!(",\"{r}\""));
            }
            buf.push('\n');
            for (i, row) in rows.iter().enumerate() {
                buf.push_str(&format!("chi{i}"));
                for v in row {
                    buf.push_str(&format!(",{}", short_label(v)));
                }
                buf.push('\n');
            }
        }
        Format::Json => {
            let classes: Vec<Value> = reps
                .iter()
                .zip(&sizes)
                .map(|(r, s)| json!({ "representative": r, "size": s }))
                .collect();
            let characters: Vec<Value> = rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    json!({
                        "index": i,
                        "dimension": DIMENSIONS[i],
                        "values": row.iter().map(short_label).collect::<Vec<_>>(),
                    })
                })
                .collect();
            return json_out(out, &json!({ "classes": classes, "characters": characters }));
        }
    }
    emit(out, format_args!("{buf}"))
}

fn mult(args: MultArgs, out: &mut dyn Write) -> Result<u8> {
    let table = ConjClassTable::standard();
    let row = |k: usize| -> Result<Value> {
        let m = table.multiplicities(k)?;
        Ok(json!({ "k": m.k, "m": m.m, "degree": m.degree() }))
    };
    match (args.k, args.upto) {
        (Some(k), _) => emit(out, format_args!("{}\n", row(k)?)),
        (None, Some(upto)) => {
            let rows = (0..=upto)
                .map(|k| row(k).map(|r| format!("  {r}")))
                .collect::<Result<Vec<_>>>()?;
            emit(out, format_args!("[\n{}\n]\n", rows.join(",\n")))
        }
        (None, None) => Err(Error::Invalid("one of --k or --upto is required".into())),
    }
}

fn densities(format: TextOrJson, out: &mut dyn Write) -> Result<u8> {
    let family = RFunctional::standard().f_alpha_family()?;
    match format {
        TextOrJson::Json => {
            let rows: Vec<Value> = family
                .iter()
                .zip(A_LABELS)
                .map(|(e, label)| {
                    json!({
                        "alpha": label,
                        "norm": e.alpha.norm().to_string(),
                        "residue": e.residue.to_string(),
                        "value": e.value_at_alpha.to_string(),
                        "density": e.density.to_string(),
                    })
                })
                .collect();
            json_out(out, &rows)
        }
        TextOrJson::Text => {
            let mut buf = format!("{:<8} {:>5} {:>8}\n", "alpha", "norm", "density");
            for (e, label) in family.iter().zip(A_LABELS) {
                buf.push_str(&format!(
                    "{label:<8} {:>5} {:>8}\n",
                    e.alpha.norm().to_string(),
                    e.density.to_string()
                ));
            }
            emit(out, format_args!("{buf}"))
        }
    }
}

fn simulate(x: u64, seed: u64, exprs: &[String], format: TextOrJson, out: &mut dyn Write) -> Result<u8> {
    let targets = if exprs.is_empty() {
        default_targets()
    } else {
        exprs
            .iter()
            .map(|e| {
                let poly = parse_poly(e)?;
                if let Some(d) = poly.total_degree().filter(|&d| d > MAX_DEGREE) {
                    return Err(Error::DegreeTooHigh {
                        degree: d,
                        max: MAX_DEGREE,
                    });
                }
                Ok(Target::new(e.clone(), poly))
            })
            .collect::<Result<Vec<_>>>()?
    };
    let report = run_report(x, seed, &targets)?;
    match format {
        TextOrJson::Json => json_out(out, &simulate_json(&report)),
        TextOrJson::Text => {
            let mut buf = format!(
                "x = {}  seed = {}  pi(x) = {}\n",
                report.x, report.seed, report.pi_x
            );
            buf.push_str(&format!("{:<8} {:>8} {:>10}\n", "alpha", "count", "density"));
            for (k, alpha) in a_set().iter().enumerate() {
                let label = a_label(alpha)?;
                buf.push_str(&format!(
                    "{label:<8} {:>8} {:>10.6}\n",
                    report.counts.0[k], report.densities.0[k]
                ));
            }
            buf.push_str(&format!("{:<12} {:>10} {:>10}\n", "f", "ratio", "target"));
            for p in &report.partial_sums {
                buf.push_str(&format!("{:<12} {:>10.6} {:>10.6}\n", p.f, p.ratio, p.target));
            }
            emit(out, format_args!("{buf}"))
        }
    }
}

fn simulate_json(report: &SimReport) -> Value {
    let partial: Vec<Value> = report
        .partial_sums
        .iter()
        .map(|p| json!({ "f": p.f, "ratio": p.ratio, "target": p.target }))
        .collect();
    json!({
        "x": report.x,
        "seed": report.seed,
        "pi_x": report.pi_x,
        "densities": report.densities,
        "partial_sums": partial,
    })
}
