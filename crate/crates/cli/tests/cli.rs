use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const COMPLEX: &str = "quotient_poly(x^2+1)";

fn sweedler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sweedler")).args(args).env_remove("SWEEDLER_BOUND").output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn golden(name: &str, args: &[&str]) {
    let out = sweedler(args);
    assert!(out.status.code().is_some_and(|c| c < 2), "{}", stderr(&out));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    let got = String::from_utf8(out.stdout).unwrap();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}; rerun with UPDATE_GOLDEN=1", path.display()));
    assert_eq!(got, want, "{name} drifted from its golden file");
}

#[test]
fn golden_reports() {
    golden("present_complex", &["present", "--A", COMPLEX, "--bound", "6", "--pretty", "--quiet"]);
    golden("present_dual_numbers", &["present", "--A", "dual_numbers", "--prefix", "g", "--bound", "6", "--pretty", "--quiet"]);
    golden("pareigis", &["pareigis", "--bound", "6", "--pretty", "--quiet"]);
    golden("qcalc_cubic", &["verify-qcalc", "--p", "x^3-2", "--bound", "5", "--pretty", "--quiet"]);
    golden("galois_swap", &["galois", "--p", "x^2+1", "--field", "Q[t]/(t^2+1)", "--roots", "t,-t", "--sigma", "2,1", "--bound", "4", "--pretty", "--quiet"]);
    golden("loop", &["loop", "--p", "x^2+1", "--Z", "[[0,1],[0,0]]", "--bound", "4", "--pretty", "--quiet"]);
    golden("chain_comodule", &["chain-comodule", "--bound", "6", "--pretty", "--quiet"]);
    golden("tau", &["tau", "--A", COMPLEX, "--bound", "2", "--pretty", "--quiet"]);
}

#[test]
fn hilbert_series_of_complex_numbers() {
    let out = sweedler(&["hilbert", "--A", COMPLEX, "--dmax", "4", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["artifacts"]["dimension_sequence"], serde_json::json!([1, 2, 2, 2, 2]));
}

#[test]
fn exit_codes() {
    assert_eq!(sweedler(&["tau", "--A", COMPLEX, "--bound", "2", "--quiet"]).status.code(), Some(0));
    // warnings do not fail the run
    let p = sweedler(&["pareigis", "--bound", "4", "--quiet"]);
    assert_eq!(p.status.code(), Some(0));
    assert_eq!(stdout_json(&p)["status"], "warn");
    let bad = sweedler(&["galois", "--p", "x^2-2", "--field", "Q[t]/(t^2-2)", "--roots", "t,-t", "--sigma", "1,1", "--quiet"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(stdout_json(&bad)["status"], "violations");
    assert_eq!(sweedler(&["present", "--A", "octonions"]).status.code(), Some(2));
    assert_eq!(sweedler(&["present", "--A", COMPLEX, "--bound", "0"]).status.code(), Some(2));
}

#[test]
fn syntax_errors_point_at_the_offset() {
    let out = sweedler(&["present", "--A", "quotient_poly(x^+1)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = stderr(&out);
    assert!(err.contains("offset 2"), "{err}");
    assert!(err.contains("  x^+1\n    ^"), "{err}");
}

#[test]
fn unknown_catalog_entries_list_the_catalog() {
    let err = stderr(&sweedler(&["present", "--A", "octonions"]));
    for name in ["quotient_poly(p)", "matrix_algebra(n)", "dual_numbers", "conjugation_algebra", "base_field"] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn bound_comes_from_the_environment() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_sweedler")).args(["hilbert", "--A", COMPLEX, "--quiet"]).env("SWEEDLER_BOUND", v).output().unwrap()
    };
    let ok = run("3");
    assert_eq!(stdout_json(&ok)["artifacts"]["dimension_sequence"], serde_json::json!([1, 2, 2, 2]));
    assert_eq!(run("x").status.code(), Some(2));
    // an explicit flag wins
    let out = Command::new(env!("CARGO_BIN_EXE_sweedler"))
        .args(["hilbert", "--A", COMPLEX, "--bound", "2", "--quiet"])
        .env("SWEEDLER_BOUND", "5")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&out)["command"]["bound"], 2);
}

#[test]
fn job_files_and_stdin() {
    let dir = std::env::temp_dir().join(format!("sweedler-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let job = dir.join("job.json");
    std::fs::write(&job, r#"{"command": "hilbert", "bound": 4, "A": "quotient_poly(x^2+1)"}"#).unwrap();
    let from_file = sweedler(&["run", job.to_str().unwrap(), "--quiet"]);
    assert_eq!(from_file.status.code(), Some(0), "{}", stderr(&from_file));

    let mut child = Command::new(env!("CARGO_BIN_EXE_sweedler"))
        .args(["run", "-", "--quiet"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&std::fs::read(&job).unwrap()).unwrap();
    let from_stdin = child.wait_with_output().unwrap();
    assert_eq!(from_stdin.stdout, from_file.stdout);

    let direct = sweedler(&["hilbert", "--A", COMPLEX, "--bound", "4", "--quiet"]);
    assert_eq!(direct.stdout, from_file.stdout);

    std::fs::write(&job, "{\"command\": \"hilbert\",\n \"bound\": 4 4}").unwrap();
    let broken = sweedler(&["run", job.to_str().unwrap()]);
    assert_eq!(broken.status.code(), Some(2));
    assert!(stderr(&broken).contains("line 2, column"), "{}", stderr(&broken));

    let report = dir.join("report.json");
    let out = sweedler(&["tau", "--A", COMPLEX, "--bound", "2", "--quiet", "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(written["command"]["name"], "tau");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn reports_are_deterministic() {
    let args = ["present", "--A", "conjugation_algebra", "--bound", "4", "--quiet"];
    let first = sweedler(&args).stdout;
    assert_eq!(sweedler(&args).stdout, first);
    for seed in ["1", "7"] {
        let mut shuffled = args.to_vec();
        shuffled.extend(["--shuffle", seed]);
        assert_eq!(sweedler(&shuffled).stdout, first, "schedule {seed}");
    }
}

#[test]
fn summary_goes_to_stderr() {
    let out = sweedler(&["tau", "--A", COMPLEX, "--bound", "2"]);
    let err = stderr(&out);
    assert!(err.starts_with("tau: ok\n"), "{err}");
    assert!(err.contains("τ(x) = [x⊗1*]⊗1 + [x⊗x*]⊗x"), "{err}");
    assert!(stderr(&sweedler(&["tau", "--A", COMPLEX, "--bound", "2", "--quiet"])).is_empty());
}
