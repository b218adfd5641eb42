use std::path::Path;
use std::process::{Command, Output};

use hoopkit::enumerate::are_isomorphic;
use hoopkit::{format, named, FiniteHoop};

fn hoopkit(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hoopkit"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn load(path: &Path) -> FiniteHoop {
    let text = std::fs::read_to_string(path).unwrap();
    FiniteHoop::from_tables(&format::parse(&text).unwrap()).unwrap()
}

#[test]
fn generated_files_round_trip_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    for (args, file) in [
        (vec!["gen", "lukasiewicz", "3", "--out", "l3.json"], "l3.json"),
        (vec!["gen", "lukasiewicz", "3", "--text", "--out", "l3.txt"], "l3.txt"),
    ] {
        let o = hoopkit(&args, dir.path());
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(are_isomorphic(&load(&dir.path().join(file)), &named::l3()));
        let o = hoopkit(&["check", file], dir.path());
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with("status: pass"));
    }
}

#[test]
fn ordinal_sum_of_generated_chains() {
    let dir = tempfile::tempdir().unwrap();
    hoopkit(&["gen", "godel", "2", "--out", "b2.json"], dir.path());
    hoopkit(&["gen", "lukasiewicz", "3", "--out", "l3.json"], dir.path());
    let o = hoopkit(&["gen", "osum", "l3.json", "b2.json", "--out", "sum.json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let sum = load(&dir.path().join("sum.json"));
    assert_eq!(sum.size(), 4);
    let o = hoopkit(&["rdp", "sum.json", "--verify"], dir.path());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn exit_codes_distinguish_fail_from_error() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| std::fs::write(dir.path().join(name), body).unwrap();
    // Well-formed tables that are not a pseudo hoop.
    write("corrupt.txt", "hoop 2 1\n0 1\n1 1\n1 0\n1 1\n1 0\n1 1\n");
    write("empty.txt", "hoop 0 0\n");
    write("range.txt", "hoop 2 1\n0 0\n0 9\n1 0\n1 1\n1 0\n1 1\n");

    let o = hoopkit(&["check", "corrupt.txt"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("violates"));

    assert_eq!(hoopkit(&["check", "empty.txt"], dir.path()).status.code(), Some(2));

    let o = hoopkit(&["check", "range.txt"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("prod[1][1]"), "{}", stdout(&o));

    assert_eq!(hoopkit(&["check", "missing.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn json_reports_parse() {
    let dir = tempfile::tempdir().unwrap();
    hoopkit(&["gen", "lukasiewicz", "3", "--out", "l3.json"], dir.path());
    let o = hoopkit(&["--json", "rdp", "l3.json", "--verify"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["command"], "rdp");

    let o = hoopkit(&["--json", "classify", "l3.json"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["details"]["basic"], true);
    assert_eq!(v["details"]["cancellative"], false);
}

#[test]
fn trivial_chain_is_the_one_element_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let o = hoopkit(&["gen", "lukasiewicz", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let json = &text[text.find('{').unwrap()..=text.rfind('}').unwrap()];
    let m = FiniteHoop::from_tables(&format::parse(json).unwrap()).unwrap();
    assert!(are_isomorphic(&m, &named::t1()));
}

#[test]
fn claims_and_holland_on_l3() {
    let dir = tempfile::tempdir().unwrap();
    hoopkit(&["gen", "lukasiewicz", "3", "--out", "l3.json"], dir.path());
    for claim in ["PROP31", "THM66i", "COR69", "CONJSUB"] {
        let o = hoopkit(&["check-claim", "l3.json", "--claim", claim], dir.path());
        assert_eq!(o.status.code(), Some(0), "{claim}: {}", stdout(&o));
    }
    let o = hoopkit(&["holland", "l3.json", "--verify"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = hoopkit(&["holland", "l3.json", "--out", "dot"], dir.path());
    assert!(stdout(&o).contains("digraph"));
    let o = hoopkit(&["check-claim", "l3.json", "--claim", "NOPE"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_writes_one_file_per_class() {
    let dir = tempfile::tempdir().unwrap();
    let o = hoopkit(&["enumerate", "--size", "4", "--out", "out"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let files: Vec<_> = std::fs::read_dir(dir.path().join("out")).unwrap().collect();
    assert_eq!(files.len(), 5);
}

#[test]
fn cone_sampling_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--json", "--seed", "7", "gen", "cone", "--dim", "3", "--order", "lex", "--sample", "500"];
    let a: serde_json::Value = serde_json::from_slice(&hoopkit(&args, dir.path()).stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&hoopkit(&args, dir.path()).stdout).unwrap();
    assert_eq!(a["status"], "pass");
    assert_eq!(a["details"], b["details"]);
}
