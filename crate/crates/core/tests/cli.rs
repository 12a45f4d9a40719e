use std::process::Command;

use superharm::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["superharm"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn strip_elapsed(s: &str) -> String {
    s.lines().filter(|l| !l.contains("\"elapsed_ms\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn theorem_one_passes() {
    let (code, out, _) = call(&["verify-theorem", "1", "--n", "2", "--m", "3", "--lmax", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("[PASS] theorem T1 GL_NATURAL(2,3)"));
}

#[test]
fn harmonic_basis_reports_both_bases() {
    let (code, out, _) =
        call(&["harmonic-basis", "--scheme", "gl-natural", "--n", "2", "--m", "1", "--l", "1", "--lp", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dimensions"]["kernel"], 8);
    assert_eq!(v["details"][0]["basis"].as_array().unwrap().len(), 8);
    assert_eq!(v["details"][1]["basis"].as_array().unwrap().len(), 8);
}

#[test]
fn capped_runs_exit_three() {
    let (code, out, _) =
        call(&["verify-theorem", "2", "--n", "4", "--m", "1", "--n1", "1", "--n2", "3", "--l", "0", "--lp", "0", "--cap", "6"]);
    assert_eq!(code, 3);
    assert!(out.contains("INCONCLUSIVE_CAP"));
    assert!(out.contains("cap=6"));
}

#[test]
fn config_errors_exit_two() {
    for args in [
        vec!["verify-theorem", "2", "--n", "4", "--m", "1", "--n1", "1", "--n2", "3", "--l", "0", "--lp", "0"],
        vec!["verify-theorem", "2", "--n", "4", "--m", "1", "--n1", "2", "--n2", "3", "--l", "0", "--lp", "0", "--cap", "3"],
        vec!["verify-theorem", "7", "--n", "2", "--m", "1", "--lmax", "1"],
        vec!["verify-theorem", "1", "--n", "2", "--m", "1", "--k", "1"],
        vec!["verify-theorem", "1", "--n", "2", "--m", "1", "--l", "-1", "--lp", "0"],
        vec!["verify-theorem", "3", "--n", "1", "--m", "2", "--k", "1"],
        vec!["harmonic-basis", "--n", "2", "--m", "1", "--lmax", "2"],
        vec!["no-such-command"],
        vec!["check-brackets", "--n", "notanumber"],
    ] {
        let (code, _, err) = call(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn json_is_deterministic() {
    let args = ["verify-theorem", "3", "--n", "2", "--m", "3", "--kmax", "4", "--format", "json", "--jobs", "4"];
    let (c1, a, _) = call(&args);
    let (c2, b, _) = call(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(strip_elapsed(&a), strip_elapsed(&b));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], "superharm-report/1");
    assert_eq!(v["verdict"], "PASS");
}

#[test]
fn other_commands() {
    assert_eq!(call(&["check-brackets", "--n", "2", "--m", "1"]).0, 0);
    assert_eq!(call(&["check-identities", "--n", "3", "--m", "1"]).0, 0);
    let (code, out, _) = call(&["stabilizer", "--n", "2", "--m", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("kernel=17"));
    let (code, out, _) = call(&["singular-vectors", "--n", "2", "--m", "3", "--l", "1", "--lp", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("1/1*x1"));
}

#[test]
fn out_file_is_written() {
    let dir = std::env::temp_dir().join(format!("superharm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let (code, out, _) =
        call(&["stabilizer", "--n", "2", "--m", "1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("\"check\": \"stabilizer\""));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn binary_honours_max_cells() {
    let bin = env!("CARGO_BIN_EXE_superharm");
    let args = ["verify-theorem", "1", "--n", "2", "--m", "3", "--l", "3", "--lp", "3"];
    let st = Command::new(bin).args(args).env("SUPERHARM_MAX_CELLS", "10").output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&st.stderr).contains("above the limit"));
    let st = Command::new(bin).args(args).env("SUPERHARM_MAX_CELLS", "lots").output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    let st = Command::new(bin).args(args).env_remove("SUPERHARM_MAX_CELLS").output().unwrap();
    assert_eq!(st.status.code(), Some(0));
}
