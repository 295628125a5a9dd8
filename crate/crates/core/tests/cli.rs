//! Drives the `icmod` binary as a subprocess.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

use icmod::classify::classify;
use icmod::modmat::PresMatrix;
use icmod::staircase::MonomialIdeal;

const STAIR88: &str = r#"{"gens":[[8,0],[6,1],[3,2],[2,3],[1,4],[0,8]]}"#;
const STAIR59: &str = r#"{"gens":[[5,0],[4,2],[3,3],[2,4],[1,6],[0,9]]}"#;

fn icmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icmod"))
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = icmod(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    icmod(args).status.code().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("icmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn closure_output_reparses() {
    let v = json(&["--json", "closure", r#"{"gens":[[0,3],[2,0],[2,1]]}"#]);
    let closure: MonomialIdeal = serde_json::from_value(v["closure"].clone()).unwrap();
    assert_eq!(
        closure,
        MonomialIdeal::primary(&[(2, 0), (1, 2), (0, 3)]).unwrap()
    );
    assert_eq!(v["complete"], Value::Bool(false));
    assert_eq!(serde_json::to_value(&closure).unwrap(), v["closure"]);
}

#[test]
fn factor_lists_simple_blocks() {
    let v = json(&["--json", "factor", STAIR88]);
    let got: Vec<(u64, u64, u64)> = v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| {
            (
                f["p"].as_u64().unwrap(),
                f["q"].as_u64().unwrap(),
                f["mult"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(got, vec![(5, 2, 1), (1, 1, 2), (1, 4, 1)]);
}

#[test]
fn classify_emits_verdict_records() {
    let out = icmod(&["--json", "classify", STAIR59]);
    assert!(out.status.success());
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let i: MonomialIdeal = serde_json::from_str(STAIR59).unwrap();
    assert_eq!(lines.len(), 4);
    for (k, line) in lines.iter().enumerate() {
        assert_eq!(line, &serde_json::to_value(classify(&i, k + 2)).unwrap());
    }
    assert_eq!(
        lines[3]["indecomposable"],
        serde_json::json!({"status": "proven_indecomposable", "theorem": "thm_5_4"})
    );
}

#[test]
fn construct_then_length_via_stdin() {
    let v = json(&["--json", "construct", STAIR88, "--e", "3"]);
    let p: PresMatrix = serde_json::from_value(v.clone()).unwrap();
    assert_eq!((p.rank(), p.ncols()), (3, 8));
    let mut child = Command::new(env!("CARGO_BIN_EXE_icmod"))
        .args(["--json", "length", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(v.to_string().as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let len: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(len["length"], 20);
    let direct = json(&["--json", "length", STAIR88, "--e", "3"]);
    assert_eq!(direct["length"], 20);
}

#[test]
fn length_of_an_ideal_matches_the_lattice_count() {
    let v = json(&["--json", "length", STAIR88]);
    assert_eq!(v["length"], 23);
    assert_eq!(v["lattice_count"], 23);
}

#[test]
fn mult_routes_agree_and_are_seeded() {
    let v = json(&["--json", "mult", STAIR88]);
    assert_eq!(v["area"], 34);
    assert_eq!(v["reduction"]["value"], 34);
    assert_eq!(v["agree"], Value::Bool(true));
    let a = json(&["--json", "--seed", "11", "mult", STAIR59, "--e", "5"]);
    let b = json(&["--json", "--seed", "11", "mult", STAIR59, "--e", "5"]);
    assert_eq!(a, b);
    assert_eq!(a["seed"], 11);
    let c = json(&[
        "--json", "--seed", "12", "--trials", "5", "mult", STAIR59, "--e", "5",
    ]);
    assert_eq!(a["value"], c["value"]);
    assert_eq!(c["values"].as_array().unwrap().len(), 5);
}

#[test]
fn audits_report_records() {
    let v = json(&["--json", "audit", "--kind", "prop51", STAIR59, "--e", "5"]);
    assert_eq!(
        (v["lhs"].as_i64(), v["pass"].as_bool()),
        (Some(10), Some(true))
    );
    let v = json(&["--json", "audit", "--kind", "km", STAIR59, "--e", "3"]);
    assert_eq!(v["equal"], Value::Bool(true));
    let out = icmod(&["--json", "audit", "--kind", "lemma55", STAIR59]);
    assert!(out.status.success());
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert!(lines
        .iter()
        .all(|l| l["audit"]["strict"] == Value::Bool(true)));
    let v = json(&[
        "--json", "audit", "--kind", "lemma55", STAIR59, "--split", "0,2",
    ]);
    assert_eq!(v["split"], serde_json::json!([0, 2]));
    let v = json(&["--json", "audit", "--kind", "thm42", STAIR59, "--e", "4"]);
    assert!(v["ord_ge_e_plus_1"].is_boolean());
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["closure", STAIR88]), 0);
    assert_eq!(code(&["closure", "{\"gens\": [[1,0]"]), 2);
    assert_eq!(code(&["closure", r#"{"gens":[[1,0]]}"#]), 2);
    assert_eq!(code(&["closure", "/nonexistent/ideal.json"]), 2);
    assert_eq!(code(&["construct", STAIR88, "--e", "9"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["length", r#"{"rank":1,"cols":[[[[1,0,1]]]]}"#]), 3);
    let nonmonomial =
        r#"{"rank":2,"cols":[[[[1,0,1],[0,1,1]],[]],[[],[[1,0,1]]],[[[0,1,1]],[[0,1,1]]]]}"#;
    assert_eq!(code(&["audit", "--kind", "thm44", nonmonomial]), 3);
    assert_eq!(code(&["atlas", "--max-a", "13", "--max-b", "3"]), 4);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn atlas_is_deterministic() {
    let a = scratch("a.csv");
    let b = scratch("b.csv");
    for path in [&a, &b] {
        assert_eq!(
            code(&[
                "atlas",
                "--max-a",
                "6",
                "--max-b",
                "6",
                "--out",
                path.to_str().unwrap()
            ]),
            0
        );
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with(icmod::cli::atlas::CSV_HEADER));
    let j1 = icmod(&[
        "atlas", "--max-a", "5", "--max-b", "5", "--format", "jsonl", "--e", "2",
    ]);
    let j2 = icmod(&[
        "atlas", "--max-a", "5", "--max-b", "5", "--format", "jsonl", "--e", "2",
    ]);
    assert_eq!(j1.stdout, j2.stdout);
    for line in String::from_utf8(j1.stdout).unwrap().lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["e"], 2);
    }
}

#[test]
fn render_writes_svg() {
    let path = scratch("stair88.svg");
    assert_eq!(
        code(&["render", STAIR88, "--out", path.to_str().unwrap()]),
        0
    );
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"class="vertex""#).count(), 4);
    assert_eq!(icmod(&["render", STAIR88]).stdout, svg.into_bytes());
}
