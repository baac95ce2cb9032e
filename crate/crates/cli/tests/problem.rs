use std::fs;
use std::path::Path;

use uniloc_cli::{parse_problem, serialize_problem, ParseError};

const MINIMAL: &str = "field 2\nquiver linear 2\nrep M [1 1]\n  a1 = [1]\nend\n";

fn fixtures() -> Vec<(String, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "uloc"))
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read_to_string(&p).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(out.len() >= 5);
    out
}

fn err(text: &str) -> ParseError {
    parse_problem(text).expect_err("should be rejected")
}

#[test]
fn minimal_file_parses() {
    let p = parse_problem(MINIMAL).unwrap();
    assert_eq!(p.quiver.vertex_count(), 2);
    assert_eq!(p.reps["M"].dims(), &[1, 1]);
    assert!(p.morphisms.is_empty() && p.generators.is_empty());
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let text = format!("# header\n\n{}  # trailing\n", MINIMAL.replace("end\n", "end # done\n"));
    assert_eq!(parse_problem(&text).unwrap(), parse_problem(MINIMAL).unwrap());
}

#[test]
fn wrong_matrix_shape_names_the_arrow() {
    let e = err("field 2\nquiver linear 2\nrep M [1 2]\n  a1 = [1]\nend\n");
    assert!(matches!(e, ParseError::Invalid { line: 4, .. }), "{e:?}");
    assert!(e.to_string().contains("arrow a1"), "{e}");
}

#[test]
fn non_commuting_morphism_names_arrow_and_vertices() {
    let text = "field 2\nquiver linear 2\nrep M [1 1]\n  a1 = [1]\nend\nrep N [1 1]\n  a1 = [1]\nend\n\
                morphism f : M -> N\n  1 = [1]\n  2 = [0]\nend\n";
    let e = err(text);
    let msg = e.to_string();
    assert!(matches!(e, ParseError::Invalid { line: 9, .. }), "{e:?}");
    assert!(msg.contains("a1") && msg.contains("1 -> 2"), "{msg}");
}

#[test]
fn error_kinds_are_distinct() {
    let syntax = err("field 2\nquiver linear 2\nrep M [1 1\nend\n");
    let unresolved = err("field 2\nquiver linear 2\ngenerators S\n");
    let invalid = err("field 2\nquiver linear 2\nrep M [1]\nend\n");
    assert!(matches!(syntax, ParseError::Syntax { line: 3, .. }), "{syntax:?}");
    assert!(
        matches!(unresolved, ParseError::Unresolved { line: 3, ref name } if name == "S"),
        "{unresolved:?}"
    );
    assert!(matches!(invalid, ParseError::Invalid { line: 3, .. }), "{invalid:?}");
}

#[test]
fn unknown_arrow_and_vertex_are_unresolved() {
    let e = err("field 2\nquiver linear 2\nrep M [1 1]\n  b = [1]\nend\n");
    assert!(
        matches!(e, ParseError::Unresolved { line: 4, ref name } if name == "b"),
        "{e:?}"
    );
    let e = err(&format!("{MINIMAL}morphism f : M -> M\n  7 = [1]\nend\n"));
    assert!(
        matches!(e, ParseError::Unresolved { line: 7, ref name } if name == "7"),
        "{e:?}"
    );
}

#[test]
fn missing_nonzero_map_is_rejected() {
    let e = err("field 2\nquiver linear 2\nrep M [1 1]\nend\n");
    assert!(e.to_string().contains("a1"), "{e}");
}

#[test]
fn rationals_and_custom_quivers() {
    let p = parse_problem(
        &fixtures()
            .into_iter()
            .find(|(n, _)| n == "a2_rationals.uloc")
            .unwrap()
            .1,
    )
    .unwrap();
    assert_eq!(p.quiver.arrow_label(0), "f");
    assert_eq!(p.morphisms["g"].source, "N");
    assert_eq!(p.operands["m"], "N");
}

#[test]
fn bad_settings_are_rejected() {
    assert!(matches!(
        err(&format!("{MINIMAL}set dim-bound = 1,2,3\n")),
        ParseError::Invalid { .. }
    ));
    assert!(matches!(
        err(&format!("{MINIMAL}set budget = lots\n")),
        ParseError::Syntax { .. }
    ));
    assert!(matches!(
        err(&format!("{MINIMAL}set m = Q\n")),
        ParseError::Unresolved { .. }
    ));
}

#[test]
fn serialization_round_trips_every_fixture() {
    for (name, text) in fixtures() {
        let p = parse_problem(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let s = serialize_problem(&p);
        let back = parse_problem(&s).unwrap_or_else(|e| panic!("{name} reserialized: {e}\n{s}"));
        assert_eq!(back, p, "{name}");
        assert_eq!(serialize_problem(&back), s, "{name}: serialization is not canonical");
    }
}
