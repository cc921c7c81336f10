//! The `quotient` command: parsing, evaluation and checks over the integer,
//! rational and message quotients, with text or JSON reports.
//!
//! Exit codes: 0 when the result is `ok`, 1 when it is `refuted` (a
//! counterexample or an inequality), 2 for usage, parse and domain errors.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use quotient::equiv::{
    check_respects, lift1, CongruenceReport, LiftError, LiftMode, RespectMap, Verdict,
};
use quotient::msg::{self, maps, normalize, FreeMsg, Msg};
use quotient::sexp::{eval_int, eval_rat, parse_term, IntValue};
use quotient::suites::{self, CheckLine, Counterexample, Outcome, Render, SuiteConfig};
use quotient::{Error, ParseError};

/// Environment variable naming a TOML config file. Flags take precedence.
pub const CONFIG_ENV: &str = "QUOTIENT_CONFIG";

pub const DEFAULT_BUDGET: usize = 500;

#[derive(Debug, Parser)]
#[command(
    name = "quotient",
    version,
    about = "Executable quotient constructions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Cases examined per congruence or equivalence check [default: 500].
    #[arg(long, global = true, value_name = "N")]
    pub budget: Option<usize>,

    /// Term size bound for message universes [default: 7].
    #[arg(long, global = true, value_name = "N")]
    pub bound: Option<usize>,

    /// Key domain for message universes [default: 0,1].
    #[arg(long, global = true, value_delimiter = ',', value_name = "K,..")]
    pub keys: Option<Vec<u64>>,

    /// Nonce domain for message universes [default: 0,1].
    #[arg(long, global = true, value_delimiter = ',', value_name = "N,..")]
    pub nonces: Option<Vec<u64>>,

    /// Lift functions only after a successful congruence check (default).
    #[arg(long, global = true, conflicts_with = "unchecked")]
    pub strict: bool,

    /// Lift functions without checking congruence.
    #[arg(long, global = true)]
    pub unchecked: bool,

    /// Also run the truncated discriminator in `check msg-congruence`.
    #[arg(long, global = true)]
    pub truncated_discrim: bool,

    /// Report wall-clock time in `elapsed_ms` (otherwise 0, keeping output
    /// byte-identical across runs).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of a message term.
    MsgNf { term: String },
    /// Whether two message terms denote the same message.
    MsgEq { left: String, right: String },
    /// Apply a lifted message function.
    MsgFn { function: MsgFunction, term: String },
    /// Evaluate an integer expression, e.g. `(* (+ 1 1) -3)`.
    IntEval { expression: String },
    /// Evaluate a rational expression, e.g. `(+ 1/2 1/3)`.
    RatEval { expression: String },
    /// Run a named suite of checks.
    Check {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES))]
        suite: String,
    },
    /// Compute the message relation by closure and compare it with normal forms.
    OracleMsgrel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MsgFunction {
    Nonces,
    Left,
    Right,
    Discrim,
    /// Discriminator computed in naturals; does not respect the relation.
    DiscrimTruncated,
}

/// Settings read from the file named by [`CONFIG_ENV`].
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub budget: Option<usize>,
    pub bound: Option<usize>,
    pub keys: Option<Vec<u64>>,
    pub nonces: Option<Vec<u64>>,
    pub mode: Option<String>,
    pub truncated_discrim: Option<bool>,
}

/// Effective settings after merging defaults, config file and flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub suite: SuiteConfig,
    pub mode: LiftMode,
}

impl Settings {
    pub fn resolve(cli: &Cli, file: &FileConfig) -> Result<Self, Error> {
        let defaults = SuiteConfig::default();
        let mode = if cli.unchecked {
            LiftMode::Unchecked
        } else if cli.strict {
            LiftMode::Strict
        } else {
            match file.mode.as_deref() {
                None | Some("strict") => LiftMode::Strict,
                Some("unchecked") => LiftMode::Unchecked,
                Some(other) => {
                    return Err(Error::Usage(format!(
                        "config: mode must be `strict` or `unchecked`, not `{other}`"
                    )))
                }
            }
        };
        let suite = SuiteConfig {
            budget: cli.budget.or(file.budget).unwrap_or(DEFAULT_BUDGET),
            bound: cli.bound.or(file.bound).unwrap_or(defaults.bound),
            keys: cli
                .keys
                .clone()
                .or_else(|| file.keys.clone())
                .unwrap_or(defaults.keys.clone()),
            nonces: cli
                .nonces
                .clone()
                .or_else(|| file.nonces.clone())
                .unwrap_or(defaults.nonces.clone()),
            truncated_discrim: cli.truncated_discrim || file.truncated_discrim.unwrap_or(false),
            ..defaults
        };
        if suite.budget == 0 {
            return Err(Error::ZeroBudget);
        }
        if suite.bound == 0 {
            return Err(Error::ZeroBound);
        }
        if suite.keys.is_empty() || suite.nonces.is_empty() {
            return Err(Error::Usage(
                "key and nonce domains must be non-empty".into(),
            ));
        }
        Ok(Settings { suite, mode })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Refuted,
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Refuted => "refuted",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Refuted => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub status: Status,
    pub payload: Value,
    pub budget_used: u64,
    pub elapsed_ms: u64,
    /// Human-readable rendering for text mode.
    pub text: String,
}

impl Report {
    fn new(status: Status, payload: Value, budget_used: u64, text: String) -> Self {
        Report {
            status,
            payload,
            budget_used,
            elapsed_ms: 0,
            text,
        }
    }

    pub fn error(err: &Error) -> Self {
        let mut payload = json!({ "error": err.to_string(), "kind": error_kind(err) });
        if let Error::Parse(ParseError { offset, .. }) = err {
            payload["offset"] = json!(offset);
        }
        Report::new(Status::Error, payload, 0, format!("error: {err}"))
    }

    /// Key-sorted, pretty-printed, newline-terminated.
    pub fn to_json(&self) -> String {
        let doc = json!({
            "status": self.status.label(),
            "payload": self.payload,
            "budget_used": self.budget_used,
            "elapsed_ms": self.elapsed_ms,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::Parse(_) => "parse",
        Error::Usage(_) | Error::ZeroBudget | Error::ZeroBound => "usage",
        Error::Domain { .. } | Error::RelationMismatch { .. } => "domain",
        Error::Resource { .. } => "resource",
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one invocation. `args[0]` is the program name. `config` is the path
/// from [`CONFIG_ENV`], if set.
pub fn run(args: &[String], config: Option<&Path>) -> Output {
    let wants_json = args.iter().skip(1).any(|a| a == "--json");
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            if wants_json {
                let msg = e.kind().as_str().unwrap_or("invalid arguments").to_string();
                let report =
                    Report::error(&Error::Usage(first_line(&e.to_string()).unwrap_or(msg)));
                return Output {
                    code: 2,
                    stdout: report.to_json(),
                    stderr: String::new(),
                };
            }
            return Output {
                code: 2,
                stdout: String::new(),
                stderr: e.to_string(),
            };
        }
    };

    let start = Instant::now();
    let mut report = match load_config(config).and_then(|file| Settings::resolve(&cli, &file)) {
        Ok(settings) => execute(&cli.command, &settings).unwrap_or_else(|e| Report::error(&e)),
        Err(e) => Report::error(&e),
    };
    if cli.timing {
        report.elapsed_ms = start.elapsed().as_millis() as u64;
    }

    let code = report.status.exit_code();
    if cli.json {
        Output {
            code,
            stdout: report.to_json(),
            stderr: String::new(),
        }
    } else if report.status == Status::Error {
        Output {
            code,
            stdout: String::new(),
            stderr: format!("{}\n", report.text),
        }
    } else {
        let mut text = report.text;
        if cli.timing {
            text.push_str(&format!("\nelapsed: {} ms", report.elapsed_ms));
        }
        Output {
            code,
            stdout: format!("{text}\n"),
            stderr: String::new(),
        }
    }
}

fn first_line(s: &str) -> Option<String> {
    s.lines()
        .next()
        .map(|l| l.trim_start_matches("error: ").to_string())
}

pub fn load_config(path: Option<&Path>) -> Result<FileConfig, Error> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| Error::Usage(format!("config {}: {}", path.display(), e.message())))
}

pub fn execute(command: &Command, settings: &Settings) -> Result<Report, Error> {
    match command {
        Command::MsgNf { term } => msg_nf(term),
        Command::MsgEq { left, right } => msg_eq(left, right),
        Command::MsgFn { function, term } => msg_fn(*function, term, settings),
        Command::IntEval { expression } => int_eval(expression),
        Command::RatEval { expression } => rat_eval(expression),
        Command::Check { suite } => check(suite, &settings.suite),
        Command::OracleMsgrel => oracle_msgrel(&settings.suite),
    }
}

fn msg_nf(term: &str) -> Result<Report, Error> {
    let t = parse_term(term)?;
    let nf = normalize(&t);
    let payload = json!({
        "term": t.to_string(),
        "normal_form": nf.to_string(),
        "size": t.size(),
        "normal_form_size": nf.size(),
    });
    Ok(Report::new(Status::Ok, payload, 0, nf.to_string()))
}

fn msg_eq(left: &str, right: &str) -> Result<Report, Error> {
    let (a, b) = (parse_term(left)?, parse_term(right)?);
    let (na, nb) = (normalize(&a), normalize(&b));
    let equal = na == nb;
    let payload = json!({
        "left": a.to_string(),
        "right": b.to_string(),
        "left_normal_form": na.to_string(),
        "right_normal_form": nb.to_string(),
        "equal": equal,
    });
    let text = if equal {
        format!("true\nnormal form: {na}")
    } else {
        format!("false\nnormal forms: {na} vs {nb}")
    };
    let status = if equal { Status::Ok } else { Status::Refuted };
    Ok(Report::new(status, payload, 0, text))
}

fn msg_fn(function: MsgFunction, term: &str, settings: &Settings) -> Result<Report, Error> {
    let t = parse_term(term)?;
    let class = Msg::of(&t).class();
    let rel = msg::msgrel();
    let budget = settings.suite.budget;
    let mode = settings.mode;
    let base = |name: &str| {
        json!({
            "function": name,
            "term": t.to_string(),
            "mode": mode_label(mode),
        })
    };
    match function {
        MsgFunction::Nonces => match lifted(&maps::nonces(rel), budget, mode, &class, &base)? {
            (Lifted::Value(set, mut payload), used) => {
                payload["value"] = json!(set);
                Ok(Report::new(Status::Ok, payload, used, set.render()))
            }
            (Lifted::Refuted(r), _) => Ok(r),
        },
        MsgFunction::Left | MsgFunction::Right => {
            let map = if function == MsgFunction::Left {
                maps::left(rel)
            } else {
                maps::right(rel)
            };
            match lifted(&map, budget, mode, &class, &base)? {
                (Lifted::Value(v, mut payload), used) => {
                    let v = normalize(&v);
                    payload["value"] = json!(v.to_string());
                    Ok(Report::new(Status::Ok, payload, used, v.to_string()))
                }
                (Lifted::Refuted(r), _) => Ok(r),
            }
        }
        MsgFunction::Discrim => int_valued(&maps::discrim(rel), budget, mode, &class, &base),
        MsgFunction::DiscrimTruncated => {
            int_valued(&maps::discrim_truncated(rel), budget, mode, &class, &base)
        }
    }
}

fn int_valued<D>(
    map: &RespectMap<FreeMsg, D>,
    budget: usize,
    mode: LiftMode,
    class: &quotient::equiv::EquivClass<FreeMsg>,
    base: &dyn Fn(&str) -> Value,
) -> Result<Report, Error>
where
    D: Render + serde::Serialize + 'static,
{
    match lifted(map, budget, mode, class, base)? {
        (Lifted::Value(v, mut payload), used) => {
            payload["value"] = json!(v);
            Ok(Report::new(Status::Ok, payload, used, v.render()))
        }
        (Lifted::Refuted(r), _) => Ok(r),
    }
}

enum Lifted<D> {
    Value(D, Value),
    Refuted(Report),
}

/// Lifts `map` (checking congruence first in strict mode) and applies it.
fn lifted<D: Render + 'static>(
    map: &RespectMap<FreeMsg, D>,
    budget: usize,
    mode: LiftMode,
    class: &quotient::equiv::EquivClass<FreeMsg>,
    base: &dyn Fn(&str) -> Value,
) -> Result<(Lifted<D>, u64), Error> {
    let cert = match mode {
        LiftMode::Strict => check_respects(map, budget)?,
        LiftMode::Unchecked => CongruenceReport {
            map: map.name().to_string(),
            verdict: Verdict::NoSamples,
            budget_requested: 0,
            budget_used: 0,
            notes: vec!["not checked".into()],
        },
    };
    let used = cert.budget_used as u64;
    let mut payload = base(map.name());
    match lift1(&cert, map, mode) {
        Ok(f) => {
            payload["unchecked"] = json!(f.is_unchecked());
            Ok((Lifted::Value(f.apply(class)?, payload), used))
        }
        Err(LiftError::Refuted((x, y))) => {
            let cx = Counterexample {
                witness: vec![x.to_string(), y.to_string()],
                images: vec![map.apply(&x).render(), map.apply(&y).render()],
                revalidated: Some(cert.revalidate(map)),
            };
            payload["counterexample"] = counterexample_json(&cx);
            let text = format!(
                "refused to lift {}: does not respect msgrel\ncounterexample: {cx}",
                map.name()
            );
            Ok((
                Lifted::Refuted(Report::new(Status::Refuted, payload, used, text)),
                used,
            ))
        }
        Err(LiftError::NoSamples) => Err(Error::Usage(format!(
            "no related pairs to check {}; use --unchecked to lift anyway",
            map.name()
        ))),
        Err(e @ LiftError::WrongReport { .. }) => Err(Error::Usage(e.to_string())),
    }
}

fn mode_label(mode: LiftMode) -> &'static str {
    match mode {
        LiftMode::Strict => "strict",
        LiftMode::Unchecked => "unchecked",
    }
}

fn int_eval(expression: &str) -> Result<Report, Error> {
    let value = eval_int(expression)?;
    let (kind, shown, pair) = match &value {
        IntValue::Int(z) => ("int", z.to_string(), Some(z.rep().to_string())),
        IntValue::Nat(n) => ("nat", n.to_string(), None),
        IntValue::Bool(b) => ("bool", b.to_string(), None),
    };
    let mut payload = json!({ "expression": expression, "type": kind, "value": shown });
    let text = match pair {
        Some(p) => {
            payload["pair"] = json!(p);
            format!("{shown}\ncanonical pair: {p}")
        }
        None => shown,
    };
    Ok(Report::new(Status::Ok, payload, 0, text))
}

fn rat_eval(expression: &str) -> Result<Report, Error> {
    let q = eval_rat(expression)?;
    let pair = q.rep().to_string();
    let payload = json!({ "expression": expression, "value": q.to_string(), "pair": pair });
    Ok(Report::new(
        Status::Ok,
        payload,
        0,
        format!("{q}\ncanonical pair: {pair}"),
    ))
}

fn counterexample_json(cx: &Counterexample) -> Value {
    let mut v = json!({ "witness": cx.witness });
    if !cx.images.is_empty() {
        v["images"] = json!(cx.images);
    }
    if let Some(ok) = cx.revalidated {
        v["revalidated"] = json!(ok);
    }
    v
}

fn line_json(line: &CheckLine) -> Value {
    let mut v = json!({ "name": line.name, "checked": line.checked });
    let outcome = match &line.outcome {
        Outcome::Pass => "pass",
        Outcome::NoSamples => "no-samples",
        Outcome::Refuted(cx) => {
            v["counterexample"] = counterexample_json(cx);
            "refuted"
        }
    };
    v["outcome"] = json!(outcome);
    v
}

fn line_text(line: &CheckLine) -> String {
    match &line.outcome {
        Outcome::Pass => format!("PASS     {} ({} cases)", line.name, line.checked),
        Outcome::NoSamples => format!("NOSAMPLE {}", line.name),
        Outcome::Refuted(cx) => {
            format!("REFUTED  {} after {} cases: {cx}", line.name, line.checked)
        }
    }
}

fn check(suite: &str, cfg: &SuiteConfig) -> Result<Report, Error> {
    let report = suites::run_suite(suite, cfg)?;
    let status = if report
        .lines
        .iter()
        .any(|l| matches!(l.outcome, Outcome::Refuted(_)))
    {
        Status::Refuted
    } else if report.lines.iter().any(|l| l.outcome == Outcome::NoSamples) {
        Status::Error
    } else {
        Status::Ok
    };
    let payload = json!({
        "suite": report.suite,
        "budget": cfg.budget,
        "checks": report.lines.iter().map(line_json).collect::<Vec<_>>(),
    });
    let mut text: Vec<String> = report.lines.iter().map(line_text).collect();
    text.push(format!("{}: {}", report.suite, status.label()));
    Ok(Report::new(
        status,
        payload,
        report.checked(),
        text.join("\n"),
    ))
}

fn oracle_msgrel(cfg: &SuiteConfig) -> Result<Report, Error> {
    let closure = msg::closure_oracle(cfg.bound, &cfg.keys, &cfg.nonces)?;
    let agreement = suites::run_suite("msg-oracle", cfg)?;
    let first: Vec<Value> = closure
        .ordered_pairs(5)
        .iter()
        .map(|(u, v)| json!([u.to_string(), v.to_string()]))
        .collect();
    let keys: BTreeSet<u64> = cfg.keys.iter().copied().collect();
    let nonces: BTreeSet<u64> = cfg.nonces.iter().copied().collect();
    let payload = json!({
        "bound": cfg.bound,
        "keys": keys,
        "nonces": nonces,
        "terms": closure.universe_len(),
        "classes": closure.class_count(),
        "related_pairs": closure.pair_count(),
        "passes": closure.passes(),
        "first_pairs": first,
        "checks": agreement.lines.iter().map(line_json).collect::<Vec<_>>(),
    });
    let status = if agreement.passed() {
        Status::Ok
    } else {
        Status::Refuted
    };
    let mut text = vec![format!(
        "size <= {}, keys {:?}, nonces {:?}: {} terms, {} classes, {} related pairs, {} passes",
        cfg.bound,
        keys,
        nonces,
        closure.universe_len(),
        closure.class_count(),
        closure.pair_count(),
        closure.passes()
    )];
    text.extend(agreement.lines.iter().map(line_text));
    Ok(Report::new(
        status,
        payload,
        agreement.checked(),
        text.join("\n"),
    ))
}
