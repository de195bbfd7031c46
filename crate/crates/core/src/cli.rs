//! The `arith` command line.
//!
//! Exit codes: 0 for True / VERIFIED / success, 1 for False / FAILED,
//! 2 for Unknown, 3 for usage and input errors. Results go to standard
//! output (one JSON document with `--json`), diagnostics to standard error.
//!
//! `ARITH_BUDGET=W` or `ARITH_BUDGET=W,S` sets the default witness ceiling
//! and step ceiling; `--max-witness` and `--max-steps` take precedence.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::beta::{decode, encode_sequence, BetaCode};
use crate::compile::{compile_with_plan, make_witness_bundle};
use crate::eval::{
    check_axioms, verify_instance, witness_growth, Assignment, EvalBudget, TruthValue,
};
use crate::formula::parse_formula_file;
use crate::pr::{parse_program, PrFunction};
use crate::{eval, json, Nat};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

pub const BUDGET_ENV: &str = "ARITH_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "arith",
    version,
    about = "Primitive recursion, beta coding and PA formulas over the naturals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encode a sequence as a beta code (b, c)
    Encode {
        #[arg(required = true)]
        values: Vec<Nat>,
        #[arg(long)]
        json: bool,
    },
    /// Decode entry i of the beta code (b, c)
    Decode {
        b: Nat,
        c: Nat,
        i: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print the PA formula representing a function
    Compile {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the witness bundle of a recursion at (k, m)
    Witness {
        file: PathBuf,
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the formulas in a file (one per line)
    Eval {
        file: PathBuf,
        /// Values of the free variables, e.g. x1=2,x2=3
        #[arg(long, default_value = "")]
        assign: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Check one instance of a recursion against its compiled formula
    Verify {
        file: PathBuf,
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        json: bool,
    },
    /// Sample the Peano axioms and induction instances
    Axioms {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Tabulate witness sizes for depths 0..=depth-max
    Growth {
        file: PathBuf,
        /// Fixed arguments k, comma separated
        #[arg(long, default_value = "", value_parser = parse_list)]
        args: NatList,
        #[arg(long)]
        depth_max: Nat,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct Instance {
    /// Fixed arguments k, comma separated
    #[arg(long, default_value = "", value_parser = parse_list)]
    args: NatList,
    /// Recursion depth m
    #[arg(long)]
    depth: Nat,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Candidates tried per unbounded quantifier
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_witness: Option<u64>,
    /// Formula nodes visited per evaluation
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_steps: Option<u64>,
}

#[derive(Clone, Debug)]
struct NatList(Vec<Nat>);

fn parse_list(s: &str) -> Result<NatList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<Nat>()
                .map_err(|_| format!("`{p}` is not a natural number"))
        })
        .collect::<Result<_, _>>()
        .map(NatList)
}

fn budget_from(args: &BudgetArgs, env: Option<&str>) -> Result<EvalBudget> {
    let mut budget = EvalBudget::default();
    if let Some(text) = env {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let number = |p: &str| {
            p.parse::<u64>()
                .map_err(|_| anyhow!("{BUDGET_ENV}: `{p}` is not a number"))
        };
        match parts.as_slice() {
            [w] => budget.max_witness = number(w)?,
            [w, s] => {
                budget.max_witness = number(w)?;
                budget.max_steps = number(s)?;
            }
            _ => bail!("{BUDGET_ENV} must be `W` or `W,S`"),
        }
    }
    if let Some(w) = args.max_witness {
        budget.max_witness = w;
    }
    if let Some(s) = args.max_steps {
        budget.max_steps = s;
    }
    Ok(EvalBudget::new(budget.max_witness, budget.max_steps)?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn program(path: &Path) -> Result<PrFunction> {
    parse_program(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn exit_for(v: TruthValue) -> i32 {
    match v {
        TruthValue::True => EXIT_TRUE,
        TruthValue::False => EXIT_FALSE,
        TruthValue::Unknown(_) => EXIT_UNKNOWN,
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return EXIT_TRUE;
            }
            let rendered = e.render().to_string();
            let message: Vec<&str> = rendered
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more"))
                .filter(|l| !l.is_empty() && !l.starts_with("tip:"))
                .collect();
            let _ = writeln!(err, "{} (see `arith --help`)", message.join(" "));
            return EXIT_USAGE;
        }
    };
    let env = std::env::var(BUDGET_ENV).ok();
    match dispatch(cli.command, env.as_deref(), out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, env: Option<&str>, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Encode { values, json } => {
            let code = encode_sequence(&values)?;
            if json {
                emit_json(out, &json::Code::from(&code))?;
            } else {
                writeln!(out, "b={} c={} length={}", code.b, code.c, code.length)?;
            }
            Ok(EXIT_TRUE)
        }
        Command::Decode { b, c, i, json } => {
            let code = BetaCode {
                b,
                c,
                length: i + 1,
            };
            let value = decode(&code, i);
            if json {
                emit_json(out, &BTreeMap::from([("value", value.to_string())]))?;
            } else {
                writeln!(out, "{value}")?;
            }
            Ok(EXIT_TRUE)
        }
        Command::Compile { file, json } => {
            let f = program(&file)?;
            let compiled = compile_with_plan(&f)?;
            if json {
                #[derive(Serialize)]
                struct Out {
                    function: String,
                    formula: String,
                    free_vars: Vec<String>,
                    delta0: bool,
                    witnesses: BTreeMap<String, String>,
                }
                emit_json(
                    out,
                    &Out {
                        function: f.to_string(),
                        formula: compiled.formula.to_string(),
                        free_vars: compiled.formula.free_vars().into_iter().collect(),
                        delta0: compiled.formula.is_delta0(),
                        witnesses: compiled
                            .plan
                            .rules()
                            .iter()
                            .map(|(k, r)| (k.clone(), r.to_string()))
                            .collect(),
                    },
                )?;
            } else {
                writeln!(out, "{}", compiled.formula)?;
            }
            Ok(EXIT_TRUE)
        }
        Command::Witness {
            file,
            instance,
            json,
        } => {
            let f = program(&file)?;
            let b = make_witness_bundle(&f, &instance.args.0, &instance.depth)?;
            if json {
                emit_json(out, &json::Bundle::from(&b))?;
            } else {
                let list = |ns: &[Nat]| ns.iter().map(Nat::to_string).collect::<Vec<_>>().join(",");
                writeln!(out, "k={} m={} t={}", list(&b.k), b.m, b.t)?;
                writeln!(out, "u={}", b.u)?;
                writeln!(out, "v={}", b.v)?;
                writeln!(out, "trace={}", list(&b.trace))?;
            }
            Ok(EXIT_TRUE)
        }
        Command::Eval {
            file,
            assign,
            budget,
            json,
        } => {
            let budget = budget_from(&budget, env)?;
            let a = Assignment::parse(&assign)?;
            let formulas = parse_formula_file(&read(&file)?)
                .with_context(|| format!("in {}", file.display()))?;
            if formulas.is_empty() {
                bail!("{} contains no formula", file.display());
            }
            let mut overall = TruthValue::True;
            let mut rows = Vec::new();
            for f in &formulas {
                let v = eval::eval_formula(f, &a, budget)?;
                overall = overall.and(v);
                rows.push((f.to_string(), v));
            }
            if json {
                #[derive(Serialize)]
                struct Row {
                    formula: String,
                    value: String,
                }
                #[derive(Serialize)]
                struct Out {
                    assignment: String,
                    max_witness: u64,
                    max_steps: u64,
                    value: String,
                    results: Vec<Row>,
                }
                emit_json(
                    out,
                    &Out {
                        assignment: a.to_string(),
                        max_witness: budget.max_witness,
                        max_steps: budget.max_steps,
                        value: overall.to_string(),
                        results: rows
                            .into_iter()
                            .map(|(formula, v)| Row {
                                formula,
                                value: v.to_string(),
                            })
                            .collect(),
                    },
                )?;
            } else {
                for (f, v) in rows {
                    writeln!(out, "{v}: {f}")?;
                }
            }
            Ok(exit_for(overall))
        }
        Command::Verify {
            file,
            instance,
            json,
        } => {
            let f = program(&file)?;
            let report = verify_instance(&f, &instance.args.0, &instance.depth)?;
            if json {
                emit_json(out, &json::Verification::from(&report))?;
            } else {
                writeln!(out, "{report}")?;
                for c in report.checks() {
                    writeln!(out, "  {}: {}", c.name, c.detail)?;
                }
            }
            Ok(if report.verified() {
                EXIT_TRUE
            } else {
                EXIT_FALSE
            })
        }
        Command::Axioms {
            samples,
            seed,
            budget,
            json,
        } => {
            let budget = budget_from(&budget, env)?;
            let report = check_axioms(samples, seed, budget)?;
            if json {
                emit_json(out, &json::Axioms::from(&report))?;
            } else {
                writeln!(out, "samples={} seed={}", report.samples, report.seed)?;
                for t in report
                    .axioms
                    .iter()
                    .chain(&report.induction)
                    .chain(&report.bounded_induction)
                {
                    writeln!(
                        out,
                        "{}: true={} false={} unknown={}",
                        t.name, t.true_count, t.false_count, t.unknown_count
                    )?;
                }
                for fail in &report.failures {
                    writeln!(
                        out,
                        "FAILED {} at {}: {}",
                        fail.name, fail.assignment, fail.value
                    )?;
                }
                writeln!(out, "{}", if report.ok() { "OK" } else { "FAILED" })?;
            }
            Ok(if report.ok() { EXIT_TRUE } else { EXIT_FALSE })
        }
        Command::Growth {
            file,
            args,
            depth_max,
            json,
        } => {
            let f = program(&file)?;
            let rows = witness_growth(&f, &args.0, &depth_max)?;
            if json {
                let rows: Vec<json::Growth> = rows.iter().map(json::Growth::from).collect();
                emit_json(out, &rows)?;
            } else {
                writeln!(out, "m v u_bits")?;
                for r in rows {
                    writeln!(out, "{} {} {}", r.m, r.v, r.u_bits)?;
                }
            }
            Ok(EXIT_TRUE)
        }
    }
}
