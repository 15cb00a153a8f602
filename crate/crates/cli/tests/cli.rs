//! End-to-end tests of the binary: exit codes, output shapes, and the
//! separate/verify round trip.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn altquot(args: &[&str], stdin: Option<&str>) -> Output {
    let mut command = Command::new(env!("CARGO_BIN_EXE_altquot"));
    command.args(args);
    command.stdin(Stdio::piped());
    command.stdout(Stdio::piped());
    command.stderr(Stdio::piped());
    let mut child = command.spawn().expect("spawn altquot");
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().expect("wait for altquot")
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("altquot-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

const REFERENCE_INSTANCE: &str =
    r#"{"rank":2,"subgroup":["a"],"elements":["b"],"mode":"alternating"}"#;

#[test]
fn separate_emits_a_degree_seven_certificate() {
    let output = altquot(&["separate", "-"], Some(REFERENCE_INSTANCE));
    assert_eq!(output.status.code(), Some(0));
    let text = String::from_utf8(output.stdout).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["degree"], 7);
    assert_eq!(value["order"], "2520");
    assert_eq!(value["classification"], "alternating");
    assert_eq!(value["base"], 0);
}

#[test]
fn separate_rejects_subgroup_members_with_exit_3() {
    let instance = r#"{"rank":2,"subgroup":["a"],"elements":["a"],"mode":"hall"}"#;
    let output = altquot(&["separate", "-"], Some(instance));
    assert_eq!(output.status.code(), Some(3));
    assert!(!String::from_utf8(output.stderr).unwrap().is_empty());
}

#[test]
fn separate_rejects_finite_index_subgroups_with_exit_4() {
    let instance =
        r#"{"rank":2,"subgroup":["aa","b","abA"],"elements":["a"],"mode":"symmetric"}"#;
    let output = altquot(&["separate", "-"], Some(instance));
    assert_eq!(output.status.code(), Some(4));
}

#[test]
fn separate_rejects_small_rank_with_exit_5() {
    let instance = r#"{"rank":1,"subgroup":["aa"],"elements":["a"],"mode":"alternating"}"#;
    let output = altquot(&["separate", "-"], Some(instance));
    assert_eq!(output.status.code(), Some(5));
}

#[test]
fn separate_rejects_malformed_documents_with_exit_2() {
    for bad in [
        "not json",
        r#"{"rank":2,"subgroup":["a"],"elements":["q"],"mode":"hall"}"#,
        r#"{"rank":0,"subgroup":[],"elements":["a"],"mode":"hall"}"#,
        r#"{"rank":2,"subgroup":["a"],"elements":[],"mode":"hall"}"#,
        r#"{"rank":2,"subgroup":["a"],"elements":["b"],"mode":"wedge"}"#,
    ] {
        let output = altquot(&["separate", "-"], Some(bad));
        assert_eq!(output.status.code(), Some(2), "input: {bad}");
    }
}

#[test]
fn member_prints_verdicts() {
    let output = altquot(
        &["member", "--rank", "2", "--subgroup", "a", "--subgroup", "baB", "baB"],
        None,
    );
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(String::from_utf8(output.stdout).unwrap().trim(), "true");

    let output = altquot(
        &["member", "--rank", "2", "--subgroup", "a", "--subgroup", "baB", "b"],
        None,
    );
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(String::from_utf8(output.stdout).unwrap().trim(), "false");

    // The identity belongs to the trivial subgroup.
    let output = altquot(&["member", "--rank", "2", ""], None);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(String::from_utf8(output.stdout).unwrap().trim(), "true");

    let output = altquot(&["member", "--rank", "2", "a1"], None);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn export_dot_stages() {
    let core = altquot(&["export-dot", "--stage", "core", "-"], Some(REFERENCE_INSTANCE));
    assert_eq!(core.status.code(), Some(0));
    let text = String::from_utf8(core.stdout).unwrap();
    assert_eq!(
        text,
        "digraph stallings {\n    0 [shape=doublecircle];\n    0 -> 0 [label=\"a\"];\n}\n"
    );

    let z = altquot(&["export-dot", "--stage", "z", "-"], Some(REFERENCE_INSTANCE));
    let text = String::from_utf8(z.stdout).unwrap();
    assert!(text.contains("0 -> 0 [label=\"a\"]"));
    assert!(text.contains("0 -> 1 [label=\"b\"]"));
    assert_eq!(text.matches("->").count(), 2);

    let cover = altquot(&["export-dot", "--stage", "cover", "-"], Some(REFERENCE_INSTANCE));
    let text = String::from_utf8(cover.stdout).unwrap();
    // Seven vertices, each with one outgoing edge per label.
    assert_eq!(text.matches("shape=").count(), 7);
    assert_eq!(text.matches("->").count(), 14);

    // An unreachable stage propagates the pipeline's exit code.
    let member = r#"{"rank":2,"subgroup":["a"],"elements":["a"],"mode":"hall"}"#;
    let blocked = altquot(&["export-dot", "--stage", "z", "-"], Some(member));
    assert_eq!(blocked.status.code(), Some(3));
    let core_ok = altquot(&["export-dot", "--stage", "core", "-"], Some(member));
    assert_eq!(core_ok.status.code(), Some(0));
}

#[test]
fn verify_round_trip_and_tampering() {
    let instance_path = write_temp("verify-inst.json", REFERENCE_INSTANCE);
    let output = altquot(&["separate", "-"], Some(REFERENCE_INSTANCE));
    let certificate = String::from_utf8(output.stdout).unwrap();
    let certificate_path = write_temp("verify-cert.json", &certificate);

    let verify = altquot(
        &[
            "verify",
            "--instance",
            instance_path.to_str().unwrap(),
            "--certificate",
            certificate_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(verify.status.code(), Some(0));
    let text = String::from_utf8(verify.stdout).unwrap();
    assert!(text.contains("passed"));
    assert!(!text.contains("FAIL"));

    // JSON report flag.
    let verify_json = altquot(
        &[
            "verify",
            "--instance",
            instance_path.to_str().unwrap(),
            "--certificate",
            certificate_path.to_str().unwrap(),
            "--json",
        ],
        None,
    );
    assert_eq!(verify_json.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8(verify_json.stdout).unwrap()).unwrap();
    assert_eq!(report["passed"], true);

    // Tamper with one image: still schema-valid, so verification runs and
    // fails with exit 1.
    let mut doc: serde_json::Value = serde_json::from_str(&certificate).unwrap();
    let degree = doc["degree"].as_u64().unwrap() as usize;
    let identity: Vec<usize> = (0..degree).collect();
    doc["images"]["b"]["array"] = serde_json::json!(identity);
    doc["images"]["b"]["cycles"] = serde_json::json!("()");
    let tampered_path = write_temp("verify-tampered.json", &doc.to_string());
    let tampered = altquot(
        &[
            "verify",
            "--instance",
            instance_path.to_str().unwrap(),
            "--certificate",
            tampered_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(tampered.status.code(), Some(1));

    // Break the schema: image length disagrees with the degree.
    let mut doc: serde_json::Value = serde_json::from_str(&certificate).unwrap();
    doc["images"]["b"]["array"] = serde_json::json!([0, 1, 2]);
    let broken_path = write_temp("verify-broken.json", &doc.to_string());
    let broken = altquot(
        &[
            "verify",
            "--instance",
            instance_path.to_str().unwrap(),
            "--certificate",
            broken_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(broken.status.code(), Some(2));
}
