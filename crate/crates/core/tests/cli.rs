use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flag-einstein"))
        .args(args)
        .env_remove("FLAGEIN_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn roots_summary() {
    let o = bin(&["roots", "E8"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("E8: 120 positive roots, highest root 2,3,4,5,6,4,2,3\n"));
    let o = bin(&["roots", "A2"]);
    assert!(stdout(&o).starts_with("A2: 3 positive roots"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bin(&["roots", "Z9"]).status.code(), Some(2));
    assert_eq!(bin(&["flag", "G2", "--node", "3"]).status.code(), Some(2));
    assert_eq!(
        bin(&["triples", "G2", "--node", "1", "--triples", "paper"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(bin(&["classify", "G2"]).status.code(), Some(2));
    assert_eq!(bin(&["table1", "--subset", "some"]).status.code(), Some(2));
}

#[test]
fn flag_lists_modules() {
    let o = bin(&["flag", "E8", "--node", "4"]);
    let s = stdout(&o);
    assert!(s.contains("isotropy U(1)×SU(4)×SU(5) of dimension 40"));
    assert!(s.contains("m1: dim 80") && s.contains("m5: dim 8"));
}

#[test]
fn triples_both_sources_agree() {
    let o = bin(&["triples", "E8", "--node", "4"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "{1,1,2}: 12\n{1,2,3}: 8\n{1,3,4}: 4\n{1,4,5}: 4/3\n{2,2,4}: 4\n{2,3,5}: 2\n"
    );
    let p = bin(&["triples", "E8", "--node", "4", "--triples", "paper"]);
    assert_eq!(stdout(&p), stdout(&o));
}

#[test]
fn classify_prints_rows_and_checks_expectation() {
    let o = bin(&["classify", "G2", "--node", "2", "--starts", "500", "--expect", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert_eq!(
        s.lines()
            .filter(|l| l.contains("Kähler ") || l.contains("Einstein "))
            .count(),
        2
    );
    assert!(s.contains("1 Kähler, 1 non-Kähler, 2 isometry classes"));
    let bad = bin(&["classify", "G2", "--node", "2", "--starts", "500", "--expect", "3"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn classify_e8_node5_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.toml");
    let o = bin(&[
        "classify",
        "E8",
        "--node",
        "5",
        "--out",
        out.to_str().unwrap(),
        "--expect",
        "5",
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let report = flag_einstein::report::RunReport::from_toml(&text).unwrap();
    assert_eq!(report.solutions.len(), 5);
    assert_eq!(report.solutions.iter().filter(|s| !s.kahler).count(), 4);
    assert_eq!(report.triples.agreement, Some(true));
    assert_eq!(report.triples.values["{3,3,6}"], "2");
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_flag-einstein"))
        .args(["triples", "F4", "--node", "2"])
        .env("FLAGEIN_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("F4.v1.json").exists());
    let again = Command::new(env!("CARGO_BIN_EXE_flag-einstein"))
        .args(["triples", "F4", "--node", "2"])
        .env("FLAGEIN_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn table1_quick_subset_passes() {
    let o = bin(&["table1", "--subset", "quick", "--starts", "5000"]);
    let s = stdout(&o);
    assert!(o.status.success(), "{s}");
    assert!(s.contains(", 0 mismatches"));
    assert!(s
        .lines()
        .any(|l| l.starts_with("E8") && l.contains(" E ") && l.trim_end().ends_with("6  ok")));
}
