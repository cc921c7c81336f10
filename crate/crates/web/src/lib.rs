//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export takes plain strings and returns the same JSON report the
//! command line prints with `--json`.

use wasm_bindgen::prelude::*;

use quotient::equiv::LiftMode;
use quotient::suites::SuiteConfig;
use quotient::Error;
use quotient_cli::{execute, Command, Report, Settings};

/// Suites cheap enough to run interactively.
pub const DEMO_SUITES: &[&str] = &[
    "msg-congruence",
    "int-congruence",
    "rat-congruence",
    "equivalence",
];

/// Largest budget the page will request.
pub const MAX_BUDGET: usize = 5000;

fn report(command: Command, settings: &Settings) -> String {
    execute(&command, settings)
        .unwrap_or_else(|e| Report::error(&e))
        .to_json()
}

fn defaults() -> Settings {
    Settings {
        suite: SuiteConfig::default(),
        mode: LiftMode::Strict,
    }
}

/// Normal form of a message term.
#[wasm_bindgen]
pub fn msg_normalize(term: &str) -> String {
    report(
        Command::MsgNf {
            term: term.to_string(),
        },
        &defaults(),
    )
}

/// Whether two message terms are equal in the quotient.
#[wasm_bindgen]
pub fn msg_equal(left: &str, right: &str) -> String {
    report(
        Command::MsgEq {
            left: left.to_string(),
            right: right.to_string(),
        },
        &defaults(),
    )
}

/// Evaluates an integer expression such as `(* (+ 1 1) -3)`.
#[wasm_bindgen]
pub fn int_eval(expression: &str) -> String {
    report(
        Command::IntEval {
            expression: expression.to_string(),
        },
        &defaults(),
    )
}

/// Runs a congruence suite with the given budget.
#[wasm_bindgen]
pub fn congruence_check(suite: &str, budget: usize, truncated_discrim: bool) -> String {
    if !DEMO_SUITES.contains(&suite) {
        let msg = format!("suite must be one of: {}", DEMO_SUITES.join(", "));
        return Report::error(&Error::Usage(msg)).to_json();
    }
    if budget == 0 || budget > MAX_BUDGET {
        let msg = format!("budget must be between 1 and {MAX_BUDGET}");
        return Report::error(&Error::Usage(msg)).to_json();
    }
    let settings = Settings {
        suite: SuiteConfig {
            budget,
            truncated_discrim,
            ..SuiteConfig::default()
        },
        mode: LiftMode::Strict,
    };
    report(
        Command::Check {
            suite: suite.to_string(),
        },
        &settings,
    )
}
