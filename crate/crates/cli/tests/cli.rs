use std::path::Path;
use std::process::Command;

use hopfcat::Field;
use hopfcat_cli::fixtures::{by_name, NAMES};
use hopfcat_cli::format::{parse, resolve, to_json, FieldSpec, LoadError};
use hopfcat_cli::gen::{gen_crossed_product, gen_groupoid_kg, gen_perturbed, Params};
use hopfcat_cli::suite::{run_suite, Status};

fn fixture_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopfcat"))
}

#[test]
fn shipped_fixtures_match_generators() {
    for name in NAMES {
        let shipped = std::fs::read_to_string(fixture_dir().join(format!("{}.json", name))).unwrap();
        assert_eq!(shipped, to_json(&by_name(name, Field::Rational).unwrap()), "{}", name);
    }
}

#[test]
fn files_round_trip_through_json() {
    for name in NAMES {
        let f = by_name(name, Field::Rational).unwrap();
        assert_eq!(parse(&to_json(&f)).unwrap(), f);
    }
}

#[test]
fn dangling_space_is_unresolved() {
    let mut f = by_name("c2", Field::Rational).unwrap();
    let t = f.tensors.values_mut().next().unwrap();
    t.from[0] = "nowhere".into();
    match resolve(&f) {
        Err(LoadError::Unresolved { kind, name, .. }) => assert_eq!((kind, name.as_str()), ("space", "nowhere")),
        other => panic!("{:?}", other.map(|_| ())),
    }
}

#[test]
fn malformed_json_reports_position() {
    match parse("{\"format\": 1,\n  \"field\": }") {
        Err(LoadError::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("{:?}", other.map(|_| ())),
    }
}

#[test]
fn out_of_range_entry_is_invalid() {
    let mut f = by_name("c2", Field::Rational).unwrap();
    f.tensors.values_mut().next().unwrap().entries[0][0] = 99;
    assert!(matches!(resolve(&f), Err(LoadError::Invalid { .. })));
}

#[test]
fn galois_suite_passes_on_c2() {
    let l = resolve(&by_name("c2", Field::Rational).unwrap()).unwrap();
    let r = run_suite("galois", "c2.json", &l).unwrap();
    assert!(r.ok(), "{:?}", r);
    assert_eq!(r.find("C", "Galois condition").unwrap().status, Status::Pass);
}

#[test]
fn bad_grading_fails_with_witness() {
    let l = resolve(&by_name("bad", Field::Rational).unwrap()).unwrap();
    let r = run_suite("graded", "bad.json", &l).unwrap();
    assert!(!r.ok());
    let c = r.find("grading", "strongly graded").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert_eq!(c.witnesses[0].labels, vec!["g", "g"]);
    let c = r.find("grading", "graded Galois").unwrap();
    assert_eq!(c.witnesses[0].identity, "probe counit bijective");
}

#[test]
fn all_suites_pass_on_trivial() {
    for field in [Field::Rational, Field::prime(3).unwrap()] {
        let l = resolve(&by_name("trivial", field).unwrap()).unwrap();
        let r = run_suite("all", "trivial.json", &l).unwrap();
        assert!(r.ok() && r.skipped == 0, "{:?}", r);
    }
}

#[test]
fn degenerate_extension_gives_unit_witness() {
    let l = resolve(&by_name("degenerate", Field::Rational).unwrap()).unwrap();
    let r = run_suite("descent", "degenerate.json", &l).unwrap();
    let c = r.find("E", "descent equivalence").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert_eq!(c.witnesses[0].identity, "unit bijective");
}

#[test]
fn unknown_suite_is_an_error() {
    let l = resolve(&by_name("trivial", Field::Rational).unwrap()).unwrap();
    assert!(run_suite("everything", "t", &l).is_err());
}

#[test]
fn generators_are_deterministic() {
    let p = Params { objects: 2, order: 2, indiscrete: false, base_dim: 1 };
    assert_eq!(gen_groupoid_kg(&p, 7).unwrap(), gen_groupoid_kg(&p, 7).unwrap());
    let p = Params { objects: 2, order: 2, indiscrete: true, base_dim: 2 };
    assert_eq!(gen_crossed_product(&p, 3).unwrap(), gen_crossed_product(&p, 3).unwrap());
    let c2 = by_name("c2", Field::Rational).unwrap();
    assert_eq!(gen_perturbed(&c2, "", 5).unwrap(), gen_perturbed(&c2, "", 5).unwrap());
    assert!(gen_crossed_product(&Params { objects: 9, ..p }, 0).is_err());
}

#[test]
fn indiscrete_groupoid_of_order_one_is_gpd2() {
    let p = Params { objects: 2, order: 1, indiscrete: true, base_dim: 1 };
    assert_eq!(gen_groupoid_kg(&p, 0).unwrap(), by_name("gpd2", Field::Rational).unwrap());
}

#[test]
fn perturbed_coaction_fails_validation() {
    let c2 = by_name("c2", Field::Rational).unwrap();
    let l = resolve(&gen_perturbed(&c2, "C.coaction", 1).unwrap()).unwrap();
    let r = run_suite("validate", "p.json", &l).unwrap();
    assert_eq!(r.find("C", "comodule axioms").unwrap().status, Status::Fail);
}

#[test]
fn crossed_product_is_strongly_graded_and_galois() {
    let p = Params { objects: 1, order: 2, indiscrete: true, base_dim: 1 };
    let l = resolve(&gen_crossed_product(&p, 1).unwrap()).unwrap();
    let r = run_suite("all", "cp.json", &l).unwrap();
    assert!(r.ok(), "{:?}", r);
    assert_eq!(r.find("grading", "graded Galois").unwrap().values["agree"], true);
}

#[test]
fn field_flag_parses() {
    assert_eq!(FieldSpec::parse_flag("Fp:7").unwrap(), FieldSpec::Prime { p: 7 });
    assert!(FieldSpec::parse_flag("R").is_err());
    assert!(FieldSpec::Prime { p: 8 }.field().is_err());
}

#[test]
fn exit_codes() {
    let c2 = fixture_dir().join("c2.json");
    let bad = fixture_dir().join("bad.json");
    assert_eq!(bin().arg("validate").arg(&c2).status().unwrap().code(), Some(0));
    assert_eq!(bin().args(["check", "graded"]).arg(&bad).status().unwrap().code(), Some(1));
    assert_eq!(bin().args(["check", "graded", "/nonexistent.json"]).status().unwrap().code(), Some(2));
    assert_eq!(bin().args(["check", "galois"]).arg(&c2).args(["--field", "Fp:4"]).status().unwrap().code(), Some(2));
    assert_eq!(bin().args(["check", "galois"]).arg(&c2).args(["--field", "Fp:5"]).status().unwrap().code(), Some(0));
}

#[test]
fn gen_writes_loadable_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cp.json");
    let st = bin().args(["gen", "crossed-product", "--seed", "2", "--objects", "2", "--indiscrete", "--out"]).arg(&out).status().unwrap();
    assert!(st.success());
    let again = bin().args(["gen", "crossed-product", "--seed", "2", "--objects", "2", "--indiscrete"]).output().unwrap();
    assert_eq!(std::fs::read(&out).unwrap(), again.stdout);
    assert_eq!(bin().args(["check", "all"]).arg(&out).status().unwrap().code(), Some(0));
    let st = bin().args(["gen", "fixture", "--name", "bad", "--out"]).arg(dir.path().join("bad.json")).status().unwrap();
    assert!(st.success());
    let st = bin()
        .args(["gen", "perturbed", "--name", "c2", "--target", "C.A.mult", "--seed", "3", "--out"])
        .arg(dir.path().join("p.json"))
        .status()
        .unwrap();
    assert!(st.success());
    assert_eq!(bin().arg("validate").arg(dir.path().join("p.json")).status().unwrap().code(), Some(1));
}

#[test]
fn json_reports_have_no_timing() {
    let out = bin().args(["check", "all"]).arg(fixture_dir()).arg("--json").output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), NAMES.len());
    assert!(!String::from_utf8_lossy(&out.stdout).contains("millis"));
}
