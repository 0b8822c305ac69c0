//! End-to-end tests of the binary: output shapes, determinism, and
//! the exit-code contract.

use std::process::{Command, Output};

fn pgabr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgabr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn classify_prints_sixteen_classes_with_the_expected_sizes() {
    let out = pgabr(&["classify"]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines.len(), 16);
    assert!(lines[4].starts_with("f.ff:"));
    let mut sizes: Vec<usize> = lines
        .iter()
        .map(|l| l.split(": ").nth(1).unwrap().split(' ').count())
        .collect();
    sizes.sort();
    assert_eq!(sizes, [[2; 12].to_vec(), [6; 4].to_vec()].concat());
}

#[test]
fn classify_json_is_an_array_of_sixteen_objects() {
    let out = pgabr(&["classify", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 16);
    assert_eq!(v[4]["representative"], "f.ff");
}

#[test]
fn minimal_sets_prints_256_sets() {
    let out = pgabr(&["minimal-sets"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 256);
}

#[test]
fn bound_json_reports_the_strict_bound_with_witnesses() {
    let out = pgabr(&["bound", "--methods", "cc", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "bound");
    assert_eq!(v["k"], 3);
    assert_eq!(v["witnesses"]["f.ff"], "+f.cc ; f.cc");
}

#[test]
fn bound_on_an_incomplete_set_reports_the_certificate() {
    let out = pgabr(&["bound", "--methods", "ff", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "incomplete");
    assert_eq!(v["certificate"]["kind"], "unwritable");
}

#[test]
fn undecided_bound_exits_one() {
    // {ff,tt,ii} is complete with bound 4 and carries no certificate,
    // so capping the search at 2 leaves the verdict undecided.
    let out = pgabr(&["bound", "--methods", "ff,tt,ii", "--kmax", "2", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "unknown");
}

#[test]
fn bad_method_code_is_a_usage_error() {
    let out = pgabr(&["bound", "--methods", "zz"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_path_is_an_io_error() {
    let out = pgabr(&["classify", "--out", "/nonexistent/dir/out.txt"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweep_output_is_byte_identical_across_runs_and_job_counts() {
    let a = pgabr(&["sweep", "--kmax", "4", "--jobs", "1"]);
    let b = pgabr(&["sweep", "--kmax", "4", "--jobs", "4"]);
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(out_bytes(&a), out_bytes(&b));
    assert!(!out_bytes(&a).is_empty());
}

fn out_bytes(output: &Output) -> &[u8] {
    &output.stdout
}

#[test]
fn sweep_writes_csv_when_the_output_file_says_so() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = pgabr(&["sweep", "--kmax", "6", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("methods,kind,k,target,certificate\n"));
    assert_eq!(csv.lines().count(), 256);
}

#[test]
fn rewrite_uses_builtin_maps_and_map_files() {
    let dir = tempfile::tempdir().unwrap();
    let seq_path = dir.path().join("seq.pga");
    std::fs::write(&seq_path, "#2 ; -f.tc ; !\n").unwrap();

    let out = pgabr(&["rewrite", "--map", "part1", "--in", seq_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "#3 ; f.cc ; #2 ; !\n");

    let map_path = dir.path().join("map.json");
    let map = serde_json::to_string(&pgabr_core::theorem3_fixtures()[&1][0]).unwrap();
    std::fs::write(&map_path, map).unwrap();
    let out = pgabr(&[
        "rewrite",
        "--map",
        map_path.to_str().unwrap(),
        "--in",
        seq_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "#3 ; f.cc ; #2 ; !\n");
}

#[test]
fn rewrite_rejects_a_bad_map_id() {
    let out = pgabr(&["rewrite", "--map", "part9", "--in", "/dev/null"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rewrite_rejects_a_map_that_rewrites_its_own_images() {
    // The second recorded map for {ff,tt,ii} sends instructions into
    // sequences whose instructions it would rewrite again, so the
    // splicing rewriter refuses it.
    let out = pgabr(&["rewrite", "--map", "part3-2", "--in", "/dev/null"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_on_a_fault_free_build() {
    let out = pgabr(&["verify"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("thm3-fixture-b"));
    assert!(!text.contains("FAIL"));
    assert!(text.lines().last().unwrap().ends_with("0 failed"));
}

#[test]
fn verify_json_is_a_machine_readable_check_list() {
    let out = pgabr(&["verify", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let checks = v.as_array().unwrap();
    assert!(checks.len() > 100);
    assert!(checks.iter().all(|c| c["passed"] == true));
}
