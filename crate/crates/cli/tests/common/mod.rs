#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.txt")).expect("cases.txt");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut parts = l.split(" | ").map(str::to_string);
            let name = parts.next().unwrap();
            Case {
                name,
                args: parts.collect(),
            }
        })
        .collect()
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the built binary with a clean configuration environment.
pub fn quotient(args: &[String]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_quotient"))
        .args(args)
        .env_remove("QUOTIENT_CONFIG")
        .output()
        .expect("spawn quotient");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Compares one case against its golden file; `UPDATE_GOLDEN=1` rewrites it.
pub fn golden_matches(case: &Case) -> Result<(), String> {
    let path = golden_dir().join(format!("{}.json", case.name));
    let first = quotient(&case.args);
    let second = quotient(&case.args);
    if first.stdout != second.stdout {
        return Err(format!("{}: two runs differ", case.name));
    }
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &first.stdout).map_err(|e| e.to_string())?;
    }
    let expected =
        std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if first.stdout != expected {
        return Err(format!(
            "{}: output differs from {}\n--- expected\n{expected}--- actual\n{}",
            case.name,
            path.display(),
            first.stdout
        ));
    }
    Ok(())
}
