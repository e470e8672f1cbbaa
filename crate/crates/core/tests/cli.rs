use std::sync::Arc;

use affvir_core::cli::{execute, export, main_with_args, parse_tuple, render, run_preset, Cli};
use affvir_core::highest_weight::HWModule;
use affvir_core::lie::SimpleLieAlgebra;
use affvir_core::Error;
use clap::Parser;

fn run(args: &[&str]) -> affvir_core::Result<serde_json::Value> {
    let cli = Cli::try_parse_from(std::iter::once("affvir").chain(args.iter().copied())).unwrap();
    execute(&cli.command)
}

#[test]
fn verdict_export_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.json"), dir.path().join("b.json"));
    export(&run_preset("example-4.5").unwrap(), &p1).unwrap();
    export(&run_preset("example-4.5").unwrap(), &p2).unwrap();
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
}

#[test]
fn unwritable_path_is_an_io_failure() {
    let v = serde_json::json!({"x": 1});
    match export(&v, std::path::Path::new("/nonexistent-dir/out.json")) {
        Err(Error::IoFailure { path, msg }) => {
            assert!(path.contains("nonexistent-dir"));
            assert!(!msg.is_empty());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_preset() {
    assert!(matches!(run_preset("example-9.9"), Err(Error::PresetUnknown(_))));
    assert_eq!(main_with_args(["affvir", "preset", "nope"]), 1);
}

#[test]
fn verma_dump_round_trips_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("verma.json");
    let code = main_with_args(["affvir", "verma", "build", "--lambda", "2", "--l", "3/2", "--k", "2", "--c", "5/2", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let m = HWModule::from_json(Arc::new(SimpleLieAlgebra::sl2()), &v).unwrap();
    assert_eq!(render(&m.to_json()), text);
}

#[test]
fn keys_are_sorted() {
    let text = render(&run(&["algebra", "check"]).unwrap());
    let keys: Vec<&str> = text.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim().split('"').nth(1).unwrap()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn rationals_only() {
    assert!(matches!(run(&["tensor", "verdict", "--b", "0.5"]), Err(Error::ParseRational(_)) | Err(Error::BadInput(_))));
    assert!(matches!(run(&["verma", "build", "--lambda", "1,2"]), Err(Error::BadInput(_))));
    assert!(matches!(run(&["tensor", "verdict", "--window", "0"]), Err(Error::BadInput(_))));
}

#[test]
fn a_is_normalized_mod_one() {
    let v1 = run(&["tensor", "verdict", "--a", "7/3", "--b", "1/2"]).unwrap();
    let v2 = run(&["tensor", "verdict", "--a", "1/3", "--b", "1/2"]).unwrap();
    assert_eq!(v1, v2);
    let iso = run(&["iso", "check", "0;0;1;2;1;5/3;1/2", "0;0;1;2;1;2/3;1/2"]).unwrap();
    assert_eq!(iso["isomorphic"], true);
    let tuple = parse_tuple(&SimpleLieAlgebra::sl2(), "0;0;1;2;1;0;1/2;9");
    assert!(tuple.is_err());
}

#[test]
fn subcommands_report() {
    let ann = run(&["ann", "gens"]).unwrap();
    let labels: Vec<&str> = ann["generators"].as_array().unwrap().iter().map(|g| g["label"].as_str().unwrap()).collect();
    assert_eq!(labels.len(), 3);
    assert!(labels.contains(&"D(-1)"));
    let rep = run(&["sugawara", "report", "--depth", "1", "--charge", "1", "--modes", "1"]).unwrap();
    assert_eq!(rep["l_prime"], "0");
    let s = run(&["singular", "find", "--depth", "1", "--charge", "2"]).unwrap();
    assert!(!s["vectors"].as_array().unwrap().is_empty());
    let q = run(&["quotient", "build", "--depth", "1", "--charge", "1"]).unwrap();
    assert_eq!(q["kind"], "irreducible_quotient");
    let e = run(&["endo", "dim", "--depth", "1", "--charge", "1", "--window", "2"]).unwrap();
    assert_eq!(e["dimension"], 1);
    let left = run(&["tensor", "verdict", "--psi-convention", "left", "--symbolic", "false"]).unwrap();
    assert_eq!(left["method"], "window");
}
