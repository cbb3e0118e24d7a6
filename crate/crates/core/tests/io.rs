use charmod_core::io::*;
use charmod_core::samples;
use std::path::PathBuf;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

#[test]
fn corpus_files_match_samples() {
    for (file, k) in [
        ("interval.json", samples::interval()),
        ("simplex2.json", samples::simplex2()),
        ("square.json", samples::unit_square()),
        ("square_boundary.json", samples::square_boundary()),
        ("box3.json", samples::unit_box()),
        ("four_ray_cone.json", samples::four_ray_cone()),
        ("open_box_shell.json", samples::open_box_shell()),
    ] {
        let parsed = read_complex(&corpus(file)).unwrap();
        assert_eq!(complex_to_value(&parsed), complex_to_value(&k), "{file}");
    }
}

#[test]
fn census() {
    assert_eq!(read_complex(&corpus("interval.json")).unwrap().len(), 3);
    assert_eq!(read_complex(&corpus("box3.json")).unwrap().len(), 27);
}

#[test]
fn round_trip_is_idempotent() {
    for f in std::fs::read_dir(corpus("")).unwrap() {
        let k = read_complex(&f.unwrap().path()).unwrap();
        let once = serde_json::to_string_pretty(&complex_to_value(&k)).unwrap();
        let twice = serde_json::to_string_pretty(&complex_to_value(&parse_complex(&once).unwrap())).unwrap();
        assert_eq!(once, twice);
    }
}

#[test]
fn rationals_and_errors() {
    let k = parse_complex(r#"{"ambient_dim": 1, "cells": [{"id": "I", "ineqs": [[-1, "-1/2"], [1, "3/2"]]}], "generate_faces": true}"#)
        .unwrap();
    assert_eq!(k.len(), 3);
    let bad = parse_complex(r#"{"ambient_dim": 1, "cells": [{"id": "I", "ineqs": [[-1, "1/0"], [1, 1]]}]}"#);
    assert!(matches!(bad, Err(ParseError::Field { ref field, .. }) if field == "cells[0].ineqs[0][1]"));
    assert!(matches!(parse_complex("{\n  \"ambient_dim\": 1,\n  oops"), Err(ParseError::Json { line: 3, .. })));
    assert!(matches!(parse_complex(r#"{"cells": []}"#), Err(ParseError::Field { .. })));
    assert!(matches!(
        parse_complex(r#"{"ambient_dim": 2, "cells": [{"id": "a", "ineqs": [[1, 0]]}]}"#),
        Err(ParseError::Field { .. })
    ));
    assert!(matches!(read_complex(&corpus("missing.json")), Err(ParseError::Io(_))));
}
