//! `spiral`: command-line front end for the spiral-core library.

mod record;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use spiral_core::fq::{self, EnumOptions, Strategy, DEFAULT_CAP};
use spiral_core::series;
use spiral_core::verify::{self, Profile};
use spiral_core::{stats, BiPoly, Config, Error, Exec, GeneratorSet, MultiIndex};

use record::OutputRecord;

const EXIT_USAGE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_CAP: u8 = 4;
const EXIT_VERIFY: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "spiral", version, about = "Spiral shifting operators, their generating functions, and submodule counts over F_q[[T]]")]
struct Cli {
    /// Print one JSON object instead of the table rendering.
    #[arg(long, global = true)]
    json: bool,

    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Report elapsed wall-clock time.
    #[arg(long, global = true)]
    timing: bool,

    /// Run every sweep on the current thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply g_j to a configuration.
    Apply {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, value_parser = parse_tuple)]
        x: Tuple,
    },
    /// Find the unique a with a.0 = x.
    Decompose {
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = parse_tuple)]
        x: Tuple,
    },
    /// Size n(x) and weight W(x).
    Stats {
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = parse_tuple)]
        x: Tuple,
    },
    /// Expand the full generating function up to t^tcut.
    Series {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        tcut: usize,
        #[arg(long, value_enum, default_value_t = Method::Product)]
        method: Method,
    },
    /// Orbit generating function of a finitely generated subsemigroup.
    Orbit {
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = parse_tuple)]
        x0: Tuple,
        /// A generator such as 1,0. Repeat the flag or separate with ';'.
        #[arg(long, required = true, value_delimiter = ';', value_parser = parse_tuple)]
        gens: Vec<Tuple>,
        #[arg(long)]
        tcut: usize,
        /// Use the product over generators; requires a free basis.
        #[arg(long)]
        closed_form: bool,
    },
    /// Count T-stable submodules of (F_q[T]/T^N)^d by colength.
    Count {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: usize,
        #[arg(long = "N", value_name = "N")]
        n_trunc: usize,
        /// Largest ambient size q^(dN) the enumeration will attempt.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
        /// Filter every subspace instead of building T-stable ones directly.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Group colength-n submodules by leading module and compare with q^W(x).
    Strata {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
    },
    /// Run the machine checks of every identity.
    Verify {
        #[arg(long, value_enum, default_value_t = ProfileArg::Quick)]
        profile: ProfileArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Product,
    Configs,
    Recurrence,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

type Tuple = Vec<usize>;

fn parse_tuple(s: &str) -> Result<Tuple, String> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("'{s}' is not a comma-separated list of natural numbers")))
        .collect()
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::ZeroDimension
            | Error::DimensionMismatch { .. }
            | Error::OperatorIndex { .. }
            | Error::TightnessIndex { .. }
            | Error::InvalidGenerators(_)
            | Error::InvalidPartition(_) => EXIT_USAGE,
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::Defect(_) => EXIT_VERIFY,
            _ => EXIT_PRECONDITION,
        };
        Failure { code, message: err.to_string() }
    }
}

/// What a command produced: echoed inputs, the result payload, its table
/// rendering, and the exit code to finish with.
struct Outcome {
    inputs: Value,
    result: Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(inputs: Value, result: Value, text: String) -> Self {
        Outcome { inputs, result, text, code: 0 }
    }
}

fn config(d: usize, x: &[usize]) -> Result<Config, Failure> {
    if x.len() != d {
        return Err(Failure::usage(format!("expected {d} components, got {}", x.len())));
    }
    Ok(Config::new(x.to_vec())?)
}

fn csv(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn series_json(p: &BiPoly) -> Value {
    Value::Array(p.terms().map(|((n, w), c)| json!({ "n": n, "w": w, "c": c })).collect())
}

fn run(command: &Command, exec: Exec) -> Result<Outcome, Failure> {
    match command {
        Command::Apply { d, j, x } => {
            let y = config(*d, x)?.apply_g(*j)?;
            Ok(Outcome::ok(
                json!({ "d": d, "j": j, "x": x }),
                json!({ "x": y.levels() }),
                csv(y.levels()),
            ))
        }
        Command::Decompose { d, x } => {
            let a = config(*d, x)?.decompose()?;
            Ok(Outcome::ok(json!({ "d": d, "x": x }), json!({ "a": a.as_slice() }), csv(a.as_slice())))
        }
        Command::Stats { d, x } => {
            let c = stats::content(&config(*d, x)?);
            Ok(Outcome::ok(
                json!({ "d": d, "x": x }),
                json!({ "n": c.t_exp, "w": c.q_exp }),
                format!("n={} W={}", c.t_exp, c.q_exp),
            ))
        }
        Command::Series { d, tcut, method } => {
            if *d == 0 {
                return Err(Error::ZeroDimension.into());
            }
            let (name, p) = match method {
                Method::Product => ("product", series::product_formula(*d, *tcut)),
                Method::Configs => ("configs", series::sum_over_configs_with(*d, *tcut, exec)),
                Method::Recurrence => ("recurrence", series::recurrence_formula(*d, *tcut)),
            };
            Ok(Outcome::ok(
                json!({ "d": d, "tcut": tcut, "method": name }),
                json!({ "terms": series_json(&p) }),
                p.to_string(),
            ))
        }
        Command::Orbit { d, x0, gens, tcut, closed_form } => {
            let base = config(*d, x0)?;
            let generators = gens.iter().map(|g| MultiIndex::new(g.clone())).collect::<Result<Vec<_>, _>>()?;
            let set = GeneratorSet::new(*d, generators)?;
            let p = if *closed_form {
                series::free_orbit_formula(&base, &set, *tcut)?
            } else {
                series::orbit_sum_truncated(&base, &set, *tcut)?
            };
            Ok(Outcome::ok(
                json!({ "d": d, "x0": x0, "gens": gens, "tcut": tcut, "closed_form": closed_form }),
                json!({ "terms": series_json(&p) }),
                p.to_string(),
            ))
        }
        Command::Count { q, d, n_trunc, cap, exhaustive } => {
            let strategy = if *exhaustive { Strategy::Exhaustive } else { Strategy::Pruned };
            let opts = EnumOptions::default().with_exec(exec).with_cap(*cap).with_strategy(strategy);
            let counts = fq::count_by_colength_with(*q, *d, *n_trunc, opts)?;
            let text = counts.iter().map(u128::to_string).collect::<Vec<_>>().join(" ");
            Ok(Outcome::ok(
                json!({ "q": q, "d": d, "N": n_trunc, "cap": cap.to_string(), "exhaustive": exhaustive }),
                json!({ "counts": counts.iter().map(u128::to_string).collect::<Vec<_>>() }),
                text,
            ))
        }
        Command::Strata { q, d, n, cap } => {
            let opts = EnumOptions::default().with_exec(exec).with_cap(*cap);
            let rows = fq::strata_table(*q, *d, *n, opts)?;
            let total: u128 = rows.iter().map(|r| r.observed).sum();
            let mut text = String::from("x\tW\tq^W\tobserved\n");
            for r in &rows {
                text.push_str(&format!("{}\t{}\t{}\t{}\n", r.x, r.weight, r.expected, r.observed));
            }
            text.push_str(&format!("total\t\t\t{total}"));
            let code = if rows.iter().all(|r| r.expected == r.observed) { 0 } else { EXIT_VERIFY };
            let rows_json: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "x": r.x.levels(),
                        "w": r.weight,
                        "expected": r.expected.to_string(),
                        "observed": r.observed.to_string(),
                    })
                })
                .collect();
            Ok(Outcome {
                inputs: json!({ "q": q, "d": d, "n": n, "cap": cap.to_string() }),
                result: json!({ "rows": rows_json, "total": total.to_string() }),
                text,
                code,
            })
        }
        Command::Verify { profile } => {
            let (name, profile) = match profile {
                ProfileArg::Quick => ("quick", Profile::Quick),
                ProfileArg::Full => ("full", Profile::Full),
            };
            let report = verify::run(profile, exec);
            let passed = report.iter().all(|c| c.passed);
            let mut text = String::new();
            for c in &report {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!("{mark} {}: {}\n     {}\n", c.name, c.statement, c.detail));
            }
            let failed = report.iter().filter(|c| !c.passed).count();
            text.push_str(&format!("{} checks, {failed} failed", report.len()));
            let checks: Vec<Value> = report
                .iter()
                .map(|c| json!({ "name": c.name, "statement": c.statement, "passed": c.passed, "detail": c.detail }))
                .collect();
            Ok(Outcome {
                inputs: json!({ "profile": name }),
                result: json!({ "passed": passed, "checks": checks }),
                text,
                code: if passed { 0 } else { EXIT_VERIFY },
            })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Apply { .. } => "apply",
        Command::Decompose { .. } => "decompose",
        Command::Stats { .. } => "stats",
        Command::Series { .. } => "series",
        Command::Orbit { .. } => "orbit",
        Command::Count { .. } => "count",
        Command::Strata { .. } => "strata",
        Command::Verify { .. } => "verify",
    }
}

fn emit(cli: &Cli, rendered: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(rendered.as_bytes())
            .map_err(|e| Failure::usage(format!("cannot write to stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };

    let start = Instant::now();
    let outcome = run(&cli.command, exec);
    let elapsed = start.elapsed().as_millis();

    let outcome = match outcome {
        Ok(o) => o,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };

    let rendered = if cli.json {
        let record = OutputRecord::new(
            command_name(&cli.command),
            outcome.inputs,
            outcome.result,
            cli.timing.then_some(elapsed),
        );
        let mut s = serde_json::to_string_pretty(&record).expect("serializable");
        s.push('\n');
        s
    } else {
        let mut s = outcome.text;
        if !s.ends_with('\n') {
            s.push('\n');
        }
        if cli.timing {
            s.push_str(&format!("elapsed_ms={elapsed}\n"));
        }
        s
    };
    if let Err(f) = emit(&cli, &rendered) {
        eprintln!("error: {}", f.message);
        return ExitCode::from(f.code);
    }
    ExitCode::from(outcome.code)
}
