//! End-to-end checks of the command-line interface: catalog round trips,
//! report formats, and exit-code conventions.

use std::io::Write;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_prodiff"))
}

#[test]
fn catalog_list_names() {
    let out = bin().args(["catalog", "list"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["conic", "twisted-cubic", "spinor10", "severi-8"] {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn analyze_conic_text_and_json() {
    let out = bin()
        .args(["analyze", "--variety", "conic", "--max-degree", "2", "--max-order", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("MongeHolds"));
    assert!(text.contains("x0*x2 - x1^2"));
    assert!(text.contains("complete intersection up to degree 2: YES"));

    let out_json = bin()
        .args(["analyze", "--variety", "conic", "--max-degree", "2", "--max-order", "5", "--json"])
        .output()
        .unwrap();
    assert!(out_json.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out_json.stdout).unwrap();
    // identical numeric content between the renderings
    assert_eq!(v["monge"]["verdict"], "MongeHolds");
    assert_eq!(v["ci"]["complete_intersection_up_to_bound"], true);
    assert_eq!(v["fundamental"]["ii_span_dim"], 1);
    let row = v["osculation"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["degree"] == 2 && r["order"] == 2)
        .unwrap();
    assert_eq!(row["vector_dim"], 3);
    assert_eq!(row["projective_dim"], 2);
}

#[test]
fn catalog_dump_round_trips_through_analyze() {
    let dump = bin()
        .args(["catalog", "dump", "veronese-2"])
        .output()
        .unwrap();
    assert!(dump.status.success());
    let mut child = bin()
        .args(["analyze", "--spec", "-", "--max-degree", "2", "--max-order", "5", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(&dump.stdout)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["label"], "veronese-2");
    assert_eq!(v["n"], 2);
    assert_eq!(v["a"], 3);
    assert_eq!(v["monge"]["verdict"], "HypothesisFails");
}

#[test]
fn monge_subcommand_on_catalog_entry() {
    let out = bin()
        .args(["monge", "--variety", "example-4-36"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("MongeHolds"));
    assert!(text.contains("generator"));
}

#[test]
fn ci_subcommand_reports_witness() {
    let out = bin()
        .args(["ci", "--variety", "twisted-cubic", "--max-degree", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("NO"));
    assert!(text.contains("witness"));
}

#[test]
fn from_quadrics_pipeline() {
    let spec = r#"{"n": 3, "quadrics": ["t1*t2", "t1*t3"], "label": "demo"}"#;
    let mut child = bin()
        .args(["from-quadrics", "--spec", "-", "--max-degree", "2", "--max-order", "5", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(spec.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["label"], "demo");
    // a + one syzygy quadric
    assert_eq!(v["ci"]["rows"][1]["dim_ideal"], 3);
    assert!(v["variety_spec"]["coords"].as_array().unwrap().len() == 6);
}

#[test]
fn from_quadrics_lacing_system_reports_the_cubic() {
    let spec = r#"{"n": 6, "quadrics": ["t1*t4", "t2*t5", "t3*t6", "t1*t5", "t2*t6", "t3*t4"], "label": "lacing"}"#;
    let mut child = bin()
        .args(["from-quadrics", "--spec", "-", "--max-degree", "3", "--max-order", "7",
               "--check-generation", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(spec.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // twelve quadrics through the graph and the one essential cubic
    assert_eq!(v["ci"]["rows"][1]["dim_ideal"], 12);
    assert_eq!(v["ci"]["rows"][2]["dim_essential"], 1);
    let witness = v["ci"]["rows"][2]["witness"].as_str().unwrap();
    assert!(witness.contains("x7*x8*x9"), "{witness}");
    assert_eq!(v["quadratic_generation"]["rows"][0]["excess"], 1);
}

#[test]
fn random_point_is_echoed() {
    let out = bin()
        .args(["analyze", "--variety", "twisted-cubic", "--point", "random", "--seed", "9",
               "--max-degree", "2", "--max-order", "5", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 9);
    assert!(v["point"].as_array().unwrap().len() == 1);
}

#[test]
fn errors_exit_nonzero() {
    // unknown catalog entry
    let out = bin().args(["analyze", "--variety", "nope"]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("unknown catalog entry"));

    // bad point arity
    let out2 = bin()
        .args(["analyze", "--variety", "conic", "--point", "1,2"])
        .output()
        .unwrap();
    assert!(!out2.status.success());

    // cap too small for Monge
    let out3 = bin()
        .args(["analyze", "--variety", "conic", "--max-degree", "3", "--max-order", "4"])
        .output()
        .unwrap();
    assert!(!out3.status.success());
    let err3 = String::from_utf8(out3.stderr).unwrap();
    assert!(err3.contains("max order"), "{err3}");

    // singular point is an actionable error
    let out4 = bin()
        .args(["analyze", "--spec", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map(|mut c| {
            c.stdin
                .as_mut()
                .unwrap()
                .write_all(
                    br#"{"label": "cusp", "n": 1, "a": 1, "coords": ["1", "t1^2", "t1^3"]}"#,
                )
                .unwrap();
            c.wait_with_output().unwrap()
        })
        .unwrap();
    assert!(!out4.status.success());
    let err4 = String::from_utf8(out4.stderr).unwrap();
    assert!(err4.to_lowercase().contains("singular"), "{err4}");
}
