use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_relroots"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn temp_file(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("relroots-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn rel_of_triangle() {
    let k3 = temp_file("k3.json", r#"{"n":3,"edges":[[0,1,1],[1,2,1],[0,2,1]]}"#);
    for method in ["brute", "dc"] {
        let (code, out) = run(&["rel", "--method", method, &k3]);
        assert_eq!(code, 0);
        assert_eq!(
            out.trim(),
            r#"{"var":"q","coeffs":["1/1","0/1","-3/1","2/1"]}"#
        );
    }
}

#[test]
fn exit_codes() {
    let disc = temp_file("disc.json", r#"{"n":4,"edges":[[0,1,1],[2,3,1]]}"#);
    assert_eq!(run(&["rel", &disc]).0, 1);
    assert_eq!(run(&["rel", "/nonexistent/graph.json"]).0, 1);
    assert_eq!(run(&["no-such-command"]).0, 1);
    let k4 = temp_file(
        "k4.json",
        r#"{"n":4,"edges":[[0,1,1],[1,2,1],[0,2,1],[0,3,1],[1,3,1],[2,3,1]]}"#,
    );
    assert_eq!(
        run(&["rel", "--method", "brute", "--guard-m", "3", &k4]).0,
        2
    );
    assert_eq!(run(&["schur-cohn", "q-1"]).0, 3);
    assert_eq!(
        run(&["schur-cohn", "--fn-n", "3", "--box", "-2", "2", "0.5", "1"]).0,
        3
    );
}

#[test]
fn schur_cohn_and_hvector() {
    let (code, out) = run(&["schur-cohn", "q-2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["beta"], 1);
    let k4 = temp_file(
        "k4h.json",
        r#"{"n":4,"edges":[[0,1,1],[1,2,1],[0,2,1],[0,3,1],[1,3,1],[2,3,1]]}"#,
    );
    let (_, out) = run(&["hvector", &k4]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["h"], serde_json::json!(["1", "3", "6", "6"]));
}

#[test]
fn small_family_has_root_outside() {
    let poly = temp_file("fam.json", &run(&["family", "2", "2", "6", "1"]).1);
    let (code, csv) = run(&["roots", &poly]);
    assert_eq!(code, 0);
    let max = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse::<f64>().unwrap())
        .fold(0.0, f64::max);
    assert!(max > 1.0);
}

#[test]
fn certify_smallest() {
    let (code, out) = run(&["certify", "9", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["schur_cohn"]["signs"], serde_json::json!(["-"]));
}
