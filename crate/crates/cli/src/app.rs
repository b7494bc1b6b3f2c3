//! Argument parsing and the six commands.

use crate::suite::{run_suite, CaseResult, Suite};
use apery_catalog::{canonical_name, constant, find_relation_with, CatalogError, ENTRIES};
use apery_compiler::PrefactoredIntegral;
use apery_cov::{to_cmzv, to_x_alphabet, CmzvExpr, CmzvTerm, CovTerm};
use apery_evaluator::{compile_series, evaluate_series_with, CompiledSeries, Engine, EvalError, EvalOptions, Evaluation};
use apery_normalizer::canonicalize;
use apery_numerics::{Float, GaussianRational, HPReal, Rational};
use apery_series::{oracle_eval, parse_spec, validate, Form, SeriesSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::process::ExitCode;
use thiserror::Error;

/// Success.
pub const EXIT_OK: u8 = 0;
/// A verification or self-test check failed.
pub const EXIT_CHECK_FAILED: u8 = 1;
/// The input could not be parsed or validated, or the arguments are unusable.
pub const EXIT_INPUT: u8 = 2;
/// The input is valid but could not be evaluated.
pub const EXIT_EVAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "apery", version, about = "Exact compilation and numerical evaluation of central binomial series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a series; `--stage` stops earlier in the pipeline.
    Eval {
        #[command(flatten)]
        args: SpecArgs,
        #[arg(long, value_enum, default_value_t = Stage::Value)]
        stage: Stage,
    },
    /// Show a compilation stage, by default the omega-alphabet integrals.
    Compile {
        #[command(flatten)]
        args: SpecArgs,
        #[arg(long, value_enum, default_value_t = Stage::Omega)]
        stage: Stage,
    },
    /// Express a series at x^2 = 1 as polylogarithms at fourth roots of unity.
    Cmzv {
        #[command(flatten)]
        args: SpecArgs,
    },
    /// Check the pipeline against direct summation, or search for a relation over catalog constants.
    Verify {
        #[command(flatten)]
        args: SpecArgs,
        /// Basis constants separated by ';', e.g. "zeta(3); G"
        #[arg(long, value_delimiter = ';')]
        relation: Option<Vec<String>>,
    },
    /// List the catalog or print one constant.
    Catalog {
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 40)]
        digits: u32,
        #[arg(long)]
        json: bool,
    },
    /// Run the acceptance checks.
    Selftest {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Keep criteria whose number, title or tag matches
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

/// Options shared by the commands that take a series.
#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// Series such as "o+:2 >= 0" or "e:2 > o+:1 >= 0"
    pub spec: String,
    /// Significant digits of the result (at least 10)
    #[arg(long, default_value_t = 40)]
    pub digits: u32,
    /// Evaluation point x^2 as p/q (default 1)
    #[arg(long, allow_hyphen_values = true)]
    pub x2: Option<String>,
    #[arg(long, value_enum, default_value_t = EngineArg::March)]
    pub engine: EngineArg,
    #[arg(long)]
    pub json: bool,
    /// Read every `e` factor as `n`, i.e. 1/n^s instead of 1/(2n)^s
    #[arg(long)]
    pub alias_n: bool,
    /// Use the squared central binomial coefficient
    #[arg(long)]
    pub bsq: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    March,
    Sums,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::March => Engine::March,
            EngineArg::Sums => Engine::Sums,
            EngineArg::Both => Engine::Both,
        }
    }
}

/// Pipeline stages in order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Stage {
    Parsed,
    Normalized,
    Omega,
    XAlphabet,
    Cmzv,
    Value,
}

/// A failure carrying its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Eval(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Eval(_) => EXIT_EVAL,
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Invalid(v) => CliError::Input(violations(&v)),
            EvalError::OutOfRange(_) => CliError::Input(e.to_string()),
            e => CliError::Eval(e.to_string()),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Eval(_) => CliError::Eval(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

fn violations<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
}

/// Parses, applies the flags and validates.
pub fn build_spec(args: &SpecArgs) -> Result<SeriesSpec, CliError> {
    if args.digits < 10 {
        return Err(CliError::Input(format!("--digits must be at least 10, got {}", args.digits)));
    }
    let mut spec = parse_spec(&args.spec).map_err(|errs| CliError::Input(format!("syntax: {}", violations(&errs))))?;
    if args.alias_n {
        for f in spec.factors.iter_mut().filter(|f| f.form == Form::E) {
            f.form = Form::N;
        }
    }
    if args.bsq {
        spec = spec.with_binom_power(2);
    }
    if let Some(x2) = &args.x2 {
        let r: Rational = x2.trim().parse().map_err(|_| CliError::Input(format!("--x2 expects p/q, got {x2:?}")))?;
        spec = spec.with_x2(r);
    }
    let v = validate(&spec);
    if !v.is_empty() {
        return Err(CliError::Input(violations(&v)));
    }
    Ok(spec)
}

/// Decimal string of `v` to `digits` significant digits.
pub fn decimal(v: &Float, digits: u32) -> String {
    HPReal::exact(v.clone()).to_decimal(digits as usize)
}

fn evaluate(spec: &SeriesSpec, args: &SpecArgs) -> Result<Evaluation, CliError> {
    Ok(evaluate_series_with(spec, &EvalOptions { digits: args.digits, engine: args.engine.into(), ladder: None })?)
}

fn cov_terms(compiled: &CompiledSeries) -> Vec<(GaussianRational, Vec<CovTerm>)> {
    compiled.parts.iter().map(|(c, pi)| (c.clone(), to_x_alphabet(&pi.scaled(c)))).collect()
}

/// The whole series as one polylogarithm combination; needs x^2 = 1 and no limit-mode pieces.
pub fn series_cmzv(spec: &SeriesSpec, compiled: &CompiledSeries) -> Result<CmzvExpr, CliError> {
    if spec.x2 != 1 {
        return Err(CliError::Eval(format!("polylogarithm form needs x^2 = 1, not {}", spec.x2)));
    }
    if !compiled.bundle.is_empty() {
        return Err(CliError::Eval("polylogarithm form unavailable: the series needs limit-mode evaluation".into()));
    }
    let all: Vec<CovTerm> = cov_terms(compiled).into_iter().flat_map(|(_, t)| t).collect();
    let mut expr = to_cmzv(&all).map_err(|e| CliError::Eval(e.to_string()))?;
    if !compiled.constant.is_zero() {
        expr.terms.insert(0, CmzvTerm { coeff: compiled.constant.clone(), s: Vec::new(), z: Vec::new() });
    }
    Ok(expr)
}

fn cmzv_text(expr: &CmzvExpr) -> String {
    if expr.terms.is_empty() {
        return "0\n".into();
    }
    let mut out = String::new();
    for t in &expr.terms {
        if t.s.is_empty() {
            out.push_str(&format!("({})\n", t.coeff));
        } else {
            out.push_str(&format!("({}) {}\n", t.coeff, t.index()));
        }
    }
    out
}

#[derive(Serialize)]
struct Part<'a> {
    coeff: &'a GaussianRational,
    integral: &'a PrefactoredIntegral,
}

fn value_json(e: &Evaluation, digits: u32) -> Value {
    let mut v = json!({
        "value": { "re": decimal(&e.value.value.re, digits), "im": decimal(&e.value.value.im, digits) },
        "est_error": format!("{:.2e}", e.value.err),
        "engine": e.engine,
        "terms": e.terms,
    });
    if let Some(l) = &e.limit {
        v["limit"] = json!({ "ladder": l.ladder, "bundle_terms": l.bundle_terms });
    }
    v
}

fn value_text(e: &Evaluation, digits: u32) -> String {
    let mut out = format!("value      {}\n", decimal(&e.value.value.re, digits));
    if !e.value.value.im.is_zero() {
        out.push_str(&format!("imaginary  {}\n", decimal(&e.value.value.im, digits)));
    }
    out.push_str(&format!("error      {:.2e}\nengine     {}\nterms      {}\n", e.value.err, serde_json::to_value(e.engine).unwrap().as_str().unwrap_or(""), e.terms));
    if let Some(l) = &e.limit {
        out.push_str(&format!("limit      ladder {:?} over {} bundle terms\n", l.ladder, l.bundle_terms));
    }
    out
}

/// Output of a stage command as text or JSON.
pub fn run_stage(args: &SpecArgs, stage: Stage) -> Result<String, CliError> {
    let spec = build_spec(args)?;
    if stage == Stage::Parsed {
        return Ok(if args.json { spec.to_json() } else { format!("{spec}\n") });
    }
    if stage == Stage::Normalized {
        let combo = canonicalize(&spec).map_err(|e| CliError::Eval(e.to_string()))?;
        return Ok(if args.json { combo.to_json() } else { combo.to_string() });
    }
    let compiled = compile_series(&spec)?;
    let out = match stage {
        Stage::Omega => {
            if args.json {
                let parts: Vec<Part> = compiled.parts.iter().map(|(coeff, integral)| Part { coeff, integral }).collect();
                let bundle: Vec<Value> = compiled.bundle.iter().map(|(c, s)| json!({ "coeff": c, "spec": s })).collect();
                json!({ "constant": compiled.constant, "parts": parts, "bundle": bundle }).to_string()
            } else {
                let mut out = String::new();
                if !compiled.constant.is_zero() {
                    out.push_str(&format!("constant ({})\n", compiled.constant));
                }
                for (c, pi) in &compiled.parts {
                    out.push_str(&format!("coefficient ({c})\n{pi}"));
                }
                for (c, s) in &compiled.bundle {
                    out.push_str(&format!("limit mode ({c}) {s}\n"));
                }
                out
            }
        }
        Stage::XAlphabet => {
            let parts = cov_terms(&compiled);
            if args.json {
                let all: Vec<&CovTerm> = parts.iter().flat_map(|(_, t)| t).collect();
                json!({ "constant": compiled.constant, "terms": all, "limit_mode": compiled.bundle.len() }).to_string()
            } else {
                let mut out = String::new();
                if !compiled.constant.is_zero() {
                    out.push_str(&format!("constant ({})\n", compiled.constant));
                }
                for t in parts.iter().flat_map(|(_, t)| t) {
                    out.push_str(&format!("{t}\n"));
                }
                for (c, s) in &compiled.bundle {
                    out.push_str(&format!("limit mode ({c}) {s}\n"));
                }
                out
            }
        }
        Stage::Cmzv | Stage::Value => {
            let cmzv = if stage == Stage::Cmzv { Some(series_cmzv(&spec, &compiled)?) } else { None };
            let e = evaluate(&spec, args)?;
            if args.json {
                let mut v = value_json(&e, args.digits);
                if let Some(c) = &cmzv {
                    v["cmzv"] = serde_json::to_value(&c.terms).expect("terms serialize");
                }
                v.to_string()
            } else {
                let mut out = value_text(&e, args.digits);
                if let Some(c) = &cmzv {
                    out.push_str("cmzv\n");
                    out.push_str(&cmzv_text(c));
                }
                out
            }
        }
        Stage::Parsed | Stage::Normalized => unreachable!(),
    };
    Ok(out)
}

/// `verify`: pipeline against direct summation, or a relation search. Returns the output and whether it passed.
pub fn run_verify(args: &SpecArgs, relation: Option<&[String]>) -> Result<(String, bool), CliError> {
    let spec = build_spec(args)?;
    if let Some(basis) = relation {
        let names: Vec<String> = basis.iter().map(|b| b.trim().to_string()).filter(|b| !b.is_empty()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let value = |d: u32| evaluate_series_with(&spec, &EvalOptions { digits: d, engine: args.engine.into(), ladder: None }).ok().map(|e| e.value.re());
        let found = find_relation_with(value, &refs, args.digits)?;
        let Some(rel) = found.relation else {
            let msg = format!("no relation with coefficients below 1e8 (norm bound {:.2e})", found.norm_bound);
            return Ok((if args.json { json!({ "relation": null, "norm_bound": found.norm_bound }).to_string() } else { msg + "\n" }, false));
        };
        let terms: Vec<(String, String)> =
            rel.rational_coeffs().iter().zip(&names).filter(|((n, _), _)| *n != 0).map(|((n, d), b)| (if *d == 1 { n.to_string() } else { format!("{n}/{d}") }, canonical_name(b))).collect();
        let out = if args.json {
            let list: Vec<Value> = terms.iter().map(|(c, b)| json!({ "coeff": c, "constant": b })).collect();
            json!({ "relation": list, "height": rel.height().to_string(), "residual": format!("{:.2e}", rel.residual) }).to_string()
        } else {
            let body: Vec<String> = terms.iter().map(|(c, b)| format!("({c}) {b}")).collect();
            format!("value = {}\nheight {}, residual {:.2e}\n", if body.is_empty() { "0".into() } else { body.join(" + ") }, rel.height(), rel.residual)
        };
        return Ok((out, true));
    }
    let e = evaluate(&spec, args)?;
    let direct = oracle_eval(&spec, args.digits).map_err(|e| CliError::Eval(e.to_string()))?;
    let diff = e.value.abs_diff(&direct.value);
    let tol = 10.0 * (e.value.err + direct.err) + 10f64.powi(-(args.digits as i32));
    let pass = diff <= tol;
    let out = if args.json {
        json!({
            "pipeline": { "re": decimal(&e.value.value.re, args.digits), "im": decimal(&e.value.value.im, args.digits), "est_error": format!("{:.2e}", e.value.err) },
            "direct": { "re": decimal(&direct.value.re, args.digits), "im": decimal(&direct.value.im, args.digits), "est_error": format!("{:.2e}", direct.err) },
            "difference": format!("{diff:.2e}"),
            "tolerance": format!("{tol:.2e}"),
            "agree": pass,
        })
        .to_string()
    } else {
        format!(
            "pipeline   {}\ndirect     {}\ndifference {diff:.2e} (tolerance {tol:.2e})\n{}\n",
            decimal(&e.value.value.re, args.digits),
            decimal(&direct.value.re, args.digits),
            if pass { "agree" } else { "DISAGREE" }
        )
    };
    Ok((out, pass))
}

/// `catalog`: the list of names, or one value.
pub fn run_catalog(name: Option<&str>, digits: u32, as_json: bool) -> Result<String, CliError> {
    if digits < 10 {
        return Err(CliError::Input(format!("--digits must be at least 10, got {digits}")));
    }
    let Some(name) = name else {
        return Ok(if as_json { json!(ENTRIES).to_string() } else { ENTRIES.iter().map(|e| format!("{e}\n")).collect() });
    };
    let v = constant(name, digits)?;
    let canon = canonical_name(name);
    Ok(if as_json {
        json!({ "name": canon, "value": decimal(&v.value, digits), "est_error": format!("{:.2e}", v.err) }).to_string()
    } else {
        format!("{canon} = {}\n", decimal(&v.value, digits))
    })
}

/// `selftest`: results and whether all passed; `None` when the filter selects nothing.
pub fn run_selftest(suite: Suite, filter: Option<&str>, as_json: bool, mut print: impl FnMut(&str)) -> Option<bool> {
    let results: Vec<CaseResult> = run_suite(suite, filter, |r| {
        if !as_json {
            print(&r.line());
            for c in &r.checks {
                print(&format!("      {c}"));
            }
        }
    });
    if results.is_empty() {
        return None;
    }
    let pass = results.iter().all(|r| r.pass);
    if as_json {
        print(&json!({ "pass": pass, "passed": results.iter().filter(|r| r.pass).count(), "total": results.len(), "criteria": results }).to_string());
    } else {
        print(&format!("{} of {} criteria pass", results.iter().filter(|r| r.pass).count(), results.len()));
    }
    Some(pass)
}

/// Runs a parsed command line, printing to stdout and stderr.
pub fn run(cli: Cli) -> ExitCode {
    let result: Result<u8, CliError> = match cli.command {
        Command::Eval { args, stage } | Command::Compile { args, stage } => run_stage(&args, stage).map(|s| {
            print_block(&s);
            EXIT_OK
        }),
        Command::Cmzv { args } => run_stage(&args, Stage::Cmzv).map(|s| {
            print_block(&s);
            EXIT_OK
        }),
        Command::Verify { args, relation } => run_verify(&args, relation.as_deref()).map(|(s, pass)| {
            print_block(&s);
            if pass {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }),
        Command::Catalog { name, digits, json } => run_catalog(name.as_deref(), digits, json).map(|s| {
            print_block(&s);
            EXIT_OK
        }),
        Command::Selftest { suite, filter, json } => match run_selftest(suite, filter.as_deref(), json, |l| println!("{l}")) {
            Some(true) => Ok(EXIT_OK),
            Some(false) => Ok(EXIT_CHECK_FAILED),
            None => Err(CliError::Input(format!("no criteria match {:?}", filter.unwrap_or_default()))),
        },
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn print_block(s: &str) {
    if s.ends_with('\n') {
        print!("{s}");
    } else {
        println!("{s}");
    }
}
