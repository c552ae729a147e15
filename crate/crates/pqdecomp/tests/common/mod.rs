//! Golden-file runner shared by the golden test and the acceptance harness.
//!
//! `tests/golden/cases.txt` lists `name | arguments`; the binary runs in the
//! golden directory on `name.in` with `--deterministic` appended, and its
//! exit code, standard output and diagnostics must equal `name.expected`.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_pqdecomp")
}

/// `(name, arguments)` for every listed case.
pub fn cases() -> Vec<(String, Vec<String>)> {
    let list = std::fs::read_to_string(golden_dir().join("cases.txt")).expect("cases.txt is readable");
    list.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once('|').expect("`name | arguments`");
            (name.trim().to_string(), args.split_whitespace().map(str::to_string).collect())
        })
        .collect()
}

pub fn run_in(dir: &Path, args: &[String], file: &str) -> Output {
    Command::new(binary())
        .args(args)
        .arg("--deterministic")
        .arg(file)
        .current_dir(dir)
        .output()
        .expect("the binary runs")
}

/// The transcript format of `.expected` files.
pub fn transcript(out: &Output) -> String {
    format!(
        "exit: {}\n--- stdout\n{}--- stderr\n{}",
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    )
}

/// Runs one case twice; checks the transcript and run-to-run stability,
/// and sends every successful `witness` text output through `verify`.
pub fn check_case(name: &str, args: &[String]) -> Result<(), String> {
    let dir = golden_dir();
    let file = format!("{name}.in");
    let expected = std::fs::read_to_string(dir.join(format!("{name}.expected")))
        .map_err(|e| format!("{name}: cannot read expected output: {e}"))?;
    let first = run_in(&dir, args, &file);
    let got = transcript(&first);
    if got != expected {
        return Err(format!("{name}: output differs\n--- expected\n{expected}--- got\n{got}"));
    }
    let second = run_in(&dir, args, &file);
    if second.stdout != first.stdout || second.stderr != first.stderr {
        return Err(format!("{name}: output changed between runs"));
    }
    let text_witness = args.first().is_some_and(|a| a == "witness") && !args.iter().any(|a| a == "json");
    if text_witness && first.status.code() == Some(0) {
        verify_round_trip(name, &first.stdout)?;
    }
    Ok(())
}

/// Feeds witness output back through `verify`, which must exit 0.
pub fn verify_round_trip(name: &str, witness_output: &[u8]) -> Result<(), String> {
    let tmp = std::env::temp_dir().join(format!("pqdecomp-roundtrip-{}-{name}.in", std::process::id()));
    std::fs::write(&tmp, witness_output).map_err(|e| e.to_string())?;
    let out = Command::new(binary()).arg("verify").arg(&tmp).output().expect("the binary runs");
    let _ = std::fs::remove_file(&tmp);
    if out.status.code() != Some(0) {
        return Err(format!("{name}: witness did not verify\n{}", transcript(&out)));
    }
    Ok(())
}

/// Runs every case; returns the failures.
pub fn check_all() -> Vec<String> {
    cases().iter().filter_map(|(name, args)| check_case(name, args).err()).collect()
}
