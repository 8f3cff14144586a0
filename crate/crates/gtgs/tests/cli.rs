use std::process::Command;

fn gtgs(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gtgs")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn params_file(dir: &tempfile::TempDir) -> String {
    let path = dir.path().join("p.json");
    let p = gtgs::GtgsParams::symmetric(0.6, 0.5, 1.0, 1.0, 1.0, 0.0);
    std::fs::write(&path, p.to_json()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn eval_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = params_file(&dir);
    let (code, a, _) = gtgs(&["eval", "--params", &p, "--grid", "-2:2:5"]);
    assert_eq!(code, 0);
    let (_, b, _) = gtgs(&["eval", "--params", &p, "--grid", "-2:2:5"]);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 6);
}

#[test]
fn json_output_parses() {
    let dir = tempfile::tempdir().unwrap();
    let p = params_file(&dir);
    let (code, out, _) = gtgs(&["cumulants", "--params", &p, "--n", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn out_file_and_seeded_simulation() {
    let dir = tempfile::tempdir().unwrap();
    let p = params_file(&dir);
    let f1 = dir.path().join("a.csv");
    let f2 = dir.path().join("b.csv");
    for f in [&f1, &f2] {
        let (code, _, _) = gtgs(&["simulate", "--params", &p, "--seed", "4", "--grid", "0.1:1:10", "--out", f.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(&f1).unwrap(), std::fs::read(&f2).unwrap());
}

#[test]
fn validation_errors_exit_2() {
    let (code, _, _) = gtgs(&["eval", "--params", "/nonexistent/params.json"]);
    assert_eq!(code, 2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"gamma_plus": 3.0}"#).unwrap();
    let (code, _, err) = gtgs(&["eval", "--params", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn figure1_default_grid() {
    let (code, out, _) = gtgs(&["figure1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 201);
}
