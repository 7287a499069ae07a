use std::path::PathBuf;

use torsion::cli::run;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name).to_string_lossy().into_owned()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["torsion"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn ball_table_csv() {
    let (code, out, _) = call(&["ball-table", "--dmax", "3"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "d,q_d,C_d,C_d/q_d");
    assert_eq!(lines[1], "1,1.2337,1.7305,1.4027");
    assert_eq!(lines.len(), 4);
}

#[test]
fn ball_table_json_is_valid() {
    let (code, out, _) = call(&["ball-table", "--dmax", "4", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn q_on_disc_and_triangle() {
    let (code, out, _) = call(&["q", "--domain", &data("disc.json"), "--h", "0.03125", "--format", "json"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let q = v["q"].as_f64().unwrap();
    assert!((q - 1.44580).abs() < 2e-3, "{q}");

    let (code, out, _) = call(&["q", "--domain", &data("triangle.json"), "--h", "0.015625", "--format", "json"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let q = v["q"].as_f64().unwrap();
    assert!(q > 1.44 && q < 2.1063, "{q}");
}

#[test]
fn q_with_potential_and_out_file() {
    let dir = std::env::temp_dir().join(format!("torsion-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("q.csv");
    let (code, out, _) = call(&[
        "q",
        "--domain",
        &data("square.json"),
        "--potential",
        &data("left_half.json"),
        "--h",
        "0.0625",
        "--format",
        "csv",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("d,h,e0,torsion_sup,q,extrapolated,bound_cd,margin"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_and_io_errors_exit_2() {
    assert_eq!(call(&["no-such-command"]).0, 2);
    assert_eq!(call(&["q", "--domain", "/nonexistent/domain.json", "--h", "0.1"]).0, 2);
    assert_eq!(call(&["q", "--domain", &data("disc.json"), "--h", "-1"]).0, 2);
    assert_eq!(call(&["ball-table", "--dmax", "0"]).0, 2);
}

#[test]
fn bounds_verify_passes_and_weak_constant_fails() {
    let (code, out, _) = call(&["bounds-verify"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, _) = call(&["bounds-verify", "--aim-constant", "5.0"]);
    assert_eq!(code, 1);
}

#[test]
fn mc_exit_is_deterministic() {
    let args = ["mc-exit", "--domain", &data("interval.json"), "--n", "2000", "--seed", "5", "--dt", "1e-3"];
    let a = call(&args);
    let b = call(&args);
    assert_eq!(a.1, b.1);
    assert!(a.0 == 0 || a.0 == 1);
}

#[test]
fn semigroup_writes_csv() {
    let (code, out, err) = call(&["semigroup", "--domain", &data("interval.json"), "--h", "0.03125"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("t,sup_norm,scaled,bound"));
    assert_eq!(out.lines().count(), 102);
}

#[test]
fn proof_checks_pass() {
    assert_eq!(call(&["proof-checks"]).0, 0);
}
