//! Problem files, command dispatch and JSON reports for the `uniloc` tool.

pub mod commands;
pub mod problem;
pub mod report;

pub use commands::{run_command, Command, Exit, Outcome};
pub use problem::{parse_problem, serialize_problem, ParseError, ProblemFile};

/// Settings given on the command line; they override the file's own.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub budget: Option<usize>,
    pub max_steps: Option<usize>,
    pub dim_bound: Option<Vec<usize>>,
    pub operands: Vec<(String, String)>,
}

/// Parses `text`, applies `overrides` and runs `cmd`. Parse failures and
/// dangling operand names become error reports with exit code 1.
pub fn run_text(text: &str, cmd: Command, overrides: &Overrides) -> Outcome {
    let error = |msg: String| Outcome {
        report: serde_json::json!({ "command": cmd.name(), "status": "error", "result": { "error": msg } }),
        exit: Exit::InputError,
    };
    let mut p = match parse_problem(text) {
        Ok(p) => p,
        Err(e) => return error(e.to_string()),
    };
    if let Some(b) = overrides.budget {
        p.params.budget = Some(b);
    }
    if let Some(s) = overrides.max_steps {
        p.params.max_steps = Some(s);
    }
    if let Some(d) = &overrides.dim_bound {
        if d.len() != p.quiver.vertex_count() {
            return error(format!(
                "--dim-bound has {} entries for {} vertices",
                d.len(),
                p.quiver.vertex_count()
            ));
        }
        p.params.dim_bound = Some(d.clone());
    }
    for (k, v) in &overrides.operands {
        if !p.reps.contains_key(v) && !p.morphisms.contains_key(v) {
            return error(format!("--set {k}={v}: no representation named '{v}'"));
        }
        p.operands.insert(k.clone(), v.clone());
    }
    run_command(&p, cmd)
}
