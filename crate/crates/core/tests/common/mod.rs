//! Golden cases shared by the CLI tests and the acceptance suite.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub const FIXTURES: [&str; 3] = ["a1", "a2", "quadrant"];

pub const COMMANDS: [(&str, &[&str]); 16] = [
    ("dual", &["dual"]),
    ("faces", &["faces"]),
    ("smooth", &["smooth"]),
    ("hilbert", &["hilbert"]),
    ("orbits", &["orbits"]),
    ("orbits_bound2", &["orbits", "--bound", "2"]),
    ("dominates", &["dominates"]),
    (
        "dominates_reverse",
        &["dominates", "--v", "[2,1]", "--v2", "[1,1]", "--stratum2", "0"],
    ),
    ("witness", &["witness"]),
    (
        "witness_cross",
        &["witness", "--v", "1,1", "--stratum2", "[1]", "--v2", "1"],
    ),
    ("contact", &["contact"]),
    ("contact_p1", &["contact", "--p", "1"]),
    ("sing", &["sing"]),
    ("newton", &["newton"]),
    ("polar", &["polar"]),
    ("valuation", &["valuation"]),
];

pub fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn fixture(name: &str) -> PathBuf {
    tests_dir().join("fixtures").join(format!("{name}.json"))
}

pub fn golden(name: &str) -> PathBuf {
    tests_dir().join("golden").join(format!("{name}.txt"))
}

/// Every golden case as (name, arguments, input file).
pub fn cases() -> Vec<(String, Vec<String>, PathBuf)> {
    let mut out = Vec::new();
    for f in FIXTURES {
        for (name, args) in COMMANDS {
            out.push((
                format!("{f}_{name}"),
                args.iter().map(|s| s.to_string()).collect(),
                fixture(f),
            ));
        }
    }
    let poly = fixture("poly").to_str().unwrap().to_string();
    let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    out.push((
        "quadrant_valuation_file".into(),
        s(&["valuation", "--v", "2,1", "--poly", &poly]),
        fixture("quadrant"),
    ));
    out.push((
        "quadrant_bad_cone".into(),
        s(&["--cone", "1", "sing"]),
        fixture("quadrant"),
    ));
    out
}

/// Exit code, standard output and standard error of one run of the binary.
pub fn invoke<S: AsRef<std::ffi::OsStr>>(args: &[S], input: &Path) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_toric-arcs"))
        .args(args)
        .arg(input)
        .output()
        .expect("binary runs");
    format!(
        "exit: {}\n--- stdout\n{}--- stderr\n{}",
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap()
    )
}
