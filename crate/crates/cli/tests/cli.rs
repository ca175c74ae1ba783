use std::collections::BTreeSet;
use std::process::{Command, Output};

use flag_einstein_cli::{sig6, RunReport};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_flag-einstein"));
    c.env_remove("FLAG_EINSTEIN_SEED")
        .env_remove("FLAG_EINSTEIN_OUT");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> RunReport {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(&a);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid report")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn describe_b3_13() {
    let r = json(&["describe", "B3", "--paint", "1,3"]);
    assert_eq!(r.schema, 1);
    assert_eq!(r.flag.dims, vec![4, 4, 2, 2, 4]);
    assert_eq!(r.flag.betti, 2);
    assert_eq!(r.flag.t_roots.len(), 5);
    assert_eq!(r.input.painted, vec![1, 3]);
    assert!(r.triples.is_none() && r.einstein.is_none());
}

#[test]
fn describe_small_and_large() {
    let r = json(&["describe", "A1", "--paint", "1"]);
    assert_eq!((r.flag.t_roots.len(), r.flag.betti), (1, 1));
    let r = json(&["describe", "E8", "--paint", "mark=6"]);
    assert_eq!((r.flag.t_roots.len(), r.flag.betti), (6, 1));
    let r = json(&["describe", "SO(7)", "--paint", "1,3"]);
    assert_eq!(r.input.group, "B3");
    assert_eq!(r.input.group_input, "SO(7)");
}

#[test]
fn triples_examples() {
    let r = json(&["triples", "G2", "--full-flag"]);
    assert_eq!(r.triples.unwrap().entries.len(), 5);

    let r = json(&["triples", "B3", "--paint", "2,3"]);
    let got: BTreeSet<[usize; 3]> = r.triples.unwrap().entries.into_iter().collect();
    let want: BTreeSet<[usize; 3]> = [[1, 2, 3], [2, 3, 4], [1, 4, 5], [3, 3, 5]]
        .into_iter()
        .collect();
    assert_eq!(got, want);

    let text = stdout(&["triples", "A1", "--paint", "1"]);
    assert!(text.contains("Hermitian symmetric, 𝒯 = ∅"));
}

#[test]
fn constants_are_exact() {
    let r = json(&["constants", "B3", "--paint", "1,3"]);
    let c = r.constants.unwrap();
    assert_eq!(c.values.len(), 4);
    assert!(c.values.iter().all(|v| v.value == "2/5"));
    let ke = r.kahler_einstein.unwrap();
    assert_eq!(ke.koszul_form, "3Λ1+4Λ3");
    let std = ke.metrics.iter().find(|m| m.standard).unwrap();
    assert_eq!(std.metric, ["3", "2", "5", "4", "7"]);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["describe", "X9", "--paint", "1"],
        vec!["describe", "B3"],
        vec!["describe", "B3", "--paint", "7"],
        vec!["describe", "B3", "--paint", "one"],
        vec!["describe", "B3", "--paint", "mark=9"],
        vec!["frobnicate", "B3"],
        vec!["einstein", "A2", "--full-flag", "--grid", "0"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(
            String::from_utf8_lossy(&out.stderr).contains("Usage"),
            "{args:?}"
        );
    }
}

#[test]
fn computation_failure_exits_3() {
    let out = run(&[
        "einstein",
        "E7",
        "--paint",
        "1",
        "--restarts",
        "5",
        "--grid",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn seed_precedence() {
    let quick = [
        "einstein",
        "A2",
        "--full-flag",
        "--grid",
        "2",
        "--restarts",
        "4",
        "--json",
    ];
    let seed = |cmd: &mut Command| -> u64 {
        let out = cmd.output().unwrap();
        assert!(out.status.success());
        let r: RunReport = serde_json::from_slice(&out.stdout).unwrap();
        r.einstein.unwrap().seed
    };
    assert_eq!(seed(bin().args(quick)), 0);
    assert_eq!(seed(bin().args(quick).env("FLAG_EINSTEIN_SEED", "5")), 5);
    assert_eq!(
        seed(
            bin()
                .args(quick)
                .args(["--seed", "9"])
                .env("FLAG_EINSTEIN_SEED", "5")
        ),
        9
    );
}

#[test]
fn out_dir_naming_and_precedence() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["triples", "B3", "--paint", "1,3"])
        .env("FLAG_EINSTEIN_OUT", env_dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let files: Vec<_> = std::fs::read_dir(env_dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(files.len(), 1);
    let name = files[0].to_string_lossy().to_string();
    assert!(
        name.starts_with("B3_p1-3_") && name.ends_with(".json"),
        "{name}"
    );
    assert_eq!(name.len(), "B3_p1-3_".len() + 12 + ".json".len());

    let out = bin()
        .args(["triples", "B3", "--paint", "1,3", "--out"])
        .arg(flag_dir.path())
        .env("FLAG_EINSTEIN_OUT", env_dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(flag_dir.path()).unwrap().count(), 1);
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 1);

    let stored: RunReport =
        serde_json::from_str(&std::fs::read_to_string(flag_dir.path().join(&name)).unwrap())
            .unwrap();
    assert_eq!(stored.triples.unwrap().entries.len(), 4);
}

#[test]
fn json_round_trip_and_human_numbers() {
    let args = ["classify", "B3", "--paint", "1,3"];
    let mut with_json = args.to_vec();
    with_json.push("--json");
    let raw = stdout(&with_json);
    let report: RunReport = serde_json::from_str(&raw).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(raw.trim_end(), again);
    let back: RunReport = serde_json::from_str(&again).unwrap();
    assert_eq!(back, report);

    let text = stdout(&args);
    let e = report.einstein.unwrap();
    assert_eq!(e.solutions.len(), 8);
    for s in &e.solutions {
        match &s.exact {
            Some(q) => assert!(text.contains(&q.join(", ")), "{q:?}"),
            None => {
                let coords: Vec<String> = s.x.iter().map(|&v| sig6(v)).collect();
                assert!(text.contains(&coords.join(", ")), "{coords:?}");
            }
        }
        assert!(text.contains(&format!("H={}", sig6(s.h_invariant))));
        assert!(text.contains(&format!("λ={}", sig6(s.einstein_constant))));
        if let Some(w) = &s.witness {
            assert!(text.contains(&format!("scale {}", sig6(w.scale))));
        }
    }
    for c in &report.constants.unwrap().values {
        assert!(text.contains(&format!(
            "[{}{}{}] = {}",
            c.triple[0], c.triple[1], c.triple[2], c.value
        )));
    }
}

#[test]
fn seeds_agree_after_canonical_sort() {
    let a = json(&["einstein", "B3", "--paint", "1,3", "--seed", "7"])
        .einstein
        .unwrap();
    let b = json(&["einstein", "B3", "--paint", "1,3", "--seed", "11"])
        .einstein
        .unwrap();
    assert_eq!(a.solutions.len(), b.solutions.len());
    for (x, y) in a.solutions.iter().zip(&b.solutions) {
        assert_eq!(x.exact, y.exact);
        for (u, v) in x.x.iter().zip(&y.x) {
            assert!((u - v).abs() < 1e-8, "{u} vs {v}");
        }
        assert_eq!(x.isometry_class, y.isometry_class);
    }
}

#[test]
fn help_documents_numbering() {
    let text = stdout(&["--help"]);
    assert!(text.contains("Bourbaki"));
    assert!(text.contains("G2: alpha_1 long"));
}
