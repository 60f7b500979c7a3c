//! The bundled scenario corpus: every file parses, survives a round trip and
//! runs to completion.

use std::path::PathBuf;

use chronos::cli::{cmd_run, load_scenario, parse_scenario, serialize_scenario};

fn corpus() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

#[test]
fn corpus_has_ten_or_more_scenarios() {
    assert!(corpus().len() >= 10);
}

#[test]
fn corpus_round_trips() {
    for path in corpus() {
        let sc = load_scenario(&path).unwrap();
        let text = serialize_scenario(&sc);
        let again = parse_scenario(&text).unwrap();
        assert_eq!(serialize_scenario(&again), text, "{}", path.display());
    }
}

#[test]
fn corpus_runs() {
    for path in corpus() {
        let sc = load_scenario(&path).unwrap();
        let out = cmd_run(&sc).unwrap();
        assert!(out.error.is_none(), "{}: {:?}", path.display(), out.error);
        assert_eq!(out.csv.lines().count(), sc.steps.len() + 2, "{}", path.display());
    }
}

#[test]
fn jump_scenario_lands_on_level_one() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/oscillator_jump.json");
    let out = cmd_run(&load_scenario(&path).unwrap()).unwrap();
    let last: Vec<f64> = out
        .csv
        .lines()
        .last()
        .unwrap()
        .split(',')
        .skip(2)
        .map(|x| x.parse().unwrap())
        .collect();
    let (energy, p1) = (last[2], last[6]);
    assert!((energy - 1.5).abs() < 1e-10);
    assert!((p1 - 1.0).abs() < 1e-10);
}
