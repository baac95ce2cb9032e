#![allow(dead_code)]

use std::path::{Path, PathBuf};

use uniloc_cli::{run_text, Command, Overrides};

pub struct Case {
    pub name: String,
    pub fixture: String,
    pub command: Command,
    pub exit: i32,
    pub operands: Vec<(String, String)>,
}

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_path(case: &Case) -> PathBuf {
    fixtures().join(format!("{}.uloc", case.fixture))
}

pub fn golden_path(case: &Case) -> PathBuf {
    fixtures().join("golden").join(format!("{}.json", case.name))
}

/// The cases listed in `fixtures/golden.txt`, one per line:
/// `name fixture command exit [key=value ...]`.
pub fn cases() -> Vec<Case> {
    let manifest = std::fs::read_to_string(fixtures().join("golden.txt")).unwrap();
    manifest
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let w: Vec<&str> = l.split_whitespace().collect();
            Case {
                name: w[0].into(),
                fixture: w[1].into(),
                command: w[2].parse().unwrap(),
                exit: w[3].parse().unwrap(),
                operands: w[4..]
                    .iter()
                    .map(|b| {
                        let (k, v) = b.split_once('=').unwrap();
                        (k.into(), v.into())
                    })
                    .collect(),
            }
        })
        .collect()
}

pub fn run(case: &Case) -> (String, i32) {
    let text = std::fs::read_to_string(fixture_path(case)).unwrap();
    let overrides = Overrides {
        operands: case.operands.clone(),
        ..Overrides::default()
    };
    let out = run_text(&text, case.command, &overrides);
    (out.render(), out.code())
}
