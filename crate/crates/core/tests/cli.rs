use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const K4: &str = "4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
// two triangles joined by a bridge
const BRIDGED: &str = "6 7\n1 2\n2 3\n1 3\n4 5\n5 6\n4 6\n3 4\n";

fn write_graph(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("subtour-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn subtour(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subtour")).args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn locked_on_k4() {
    let g = write_graph("k4.txt", K4);
    let out = subtour(&["locked", g.to_str().unwrap(), "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["schema"], "subtour/locked/v1");
    assert_eq!(doc["count"], 4);
    assert_eq!(doc["oracle_disagreements"].as_array().unwrap().len(), 0);
}

#[test]
fn bridge_exits_infeasible() {
    let g = write_graph("bridged.txt", BRIDGED);
    let out = subtour(&["reduce", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["status"], "infeasible_bridge");
}

#[test]
fn bound_unit_weights_on_k4() {
    let g = write_graph("k4-bound.txt", K4);
    let out = subtour(&["bound", g.to_str().unwrap(), "--weights", "uniform"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["schema"], "subtour/bound/v1");
    assert_eq!(doc["bound"], "4");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let g = write_graph("k4-repeat.txt", K4);
    let path = g.to_str().unwrap();
    for args in [
        vec!["describe", path, "--kind", "Q"],
        vec!["describe", path, "--kind", "P-minimal", "--lp"],
        vec!["certify", path, "--kind", "P-refined"],
    ] {
        let a = subtour(&args);
        let b = subtour(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn bad_input_exits_one() {
    let g = write_graph("broken.txt", "3 2\n1 2\n");
    assert_eq!(subtour(&["locked", g.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(subtour(&["describe", g.to_str().unwrap(), "--kind", "nope"]).status.code(), Some(1));
    assert_eq!(subtour(&["--help"]).status.code(), Some(0));
}

#[test]
fn decompose_hamilton_circuit() {
    let g = write_graph("k4-dec.txt", K4);
    // the circuit 1-2-4-3-1 uses edges 12, 13, 24, 34
    let out = subtour(&["decompose", g.to_str().unwrap(), "--point", "[1,1,0,0,1,1]"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json_of(&out);
    assert_eq!(doc["schema"], "subtour/decomposition/v1");
    assert_eq!(doc["members"].as_array().unwrap().len(), 4);
}
