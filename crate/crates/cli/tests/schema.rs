use std::process::Command;

use serde_json::Value;

fn validator() -> jsonschema::Validator {
    let raw = include_str!("../schema/output.schema.json");
    jsonschema::validator_for(&serde_json::from_str(raw).unwrap()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let o = Command::new(env!("CARGO_BIN_EXE_dgstab")).arg("--json").args(args).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn every_command_validates() {
    let v = validator();
    let runs: &[&[&str]] = &[
        &["hom", "--n", "3", "--d", "2", "--from", "C[2](0)", "--to", "C[2](4)", "--oracle"],
        &["hom", "--kronecker", "--from", "S", "--to", "S(2) + M0(1)"],
        &["compose", "--n", "3", "--d", "2", "--first", "f[2,2,1]", "--second", "f[2,2,2](4)"],
        &["normalize", "--n", "4", "--d", "1", "--object", "M[3,1](2)", "--oracle"],
        &["omega", "--n", "3", "--d", "2", "--object", "M[1,2](0)", "--power", "5"],
        &["cone", "--n", "3", "--d", "0", "--morphism", "g[2,1,2]", "--oracle"],
        &["ar-quiver", "--n", "3", "--d", "1"],
        &["ar-quiver", "--n", "2", "--d", "2", "--format", "json"],
        &["oracle-check", "--n-max", "2", "--d-max", "1"],
        &["kronecker", "--tables", "--m-max", "2", "--k-max", "4"],
        &["kronecker", "--counterexample"],
    ];
    for args in runs {
        let out = json_of(args);
        let errors: Vec<String> = v.iter_errors(&out).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        assert_eq!(out["schema_version"], "1.0");
    }
}

#[test]
fn schema_rejects_malformed_envelopes() {
    let v = validator();
    let mut good = json_of(&["normalize", "--n", "3", "--d", "2", "--object", "M[2,2](0)"]);
    assert!(v.is_valid(&good));
    good["provenance"] = "guess".into();
    assert!(!v.is_valid(&good));
}
