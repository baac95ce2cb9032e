//! Every fixture in `fixtures/golden.txt` is run and compared byte for byte
//! with its stored report. Set `UNILOC_BLESS=1` to rewrite the reports.

mod common;

use common::{cases, golden_path, run};
use uniloc_cli::Command;

#[test]
fn reports_match_golden_files() {
    let bless = std::env::var_os("UNILOC_BLESS").is_some();
    let mut failures = Vec::new();
    for case in cases() {
        let (report, code) = run(&case);
        assert_eq!(code, case.exit, "{}: exit code\n{report}", case.name);
        let path = golden_path(&case);
        if bless {
            std::fs::write(&path, &report).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == report => {}
            Ok(_) => failures.push(format!("{}: report differs from {}", case.name, path.display())),
            Err(e) => failures.push(format!("{}: {e}", case.name)),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_command_has_a_golden_case() {
    let covered: Vec<Command> = cases().iter().map(|c| c.command).collect();
    for c in Command::ALL {
        assert!(covered.contains(&c), "no golden case for {c}");
    }
}

#[test]
fn reports_are_stable_across_runs() {
    for case in cases() {
        assert_eq!(run(&case), run(&case), "{}", case.name);
    }
}
