#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture(rel: &str) -> PathBuf {
    root().join("fixtures").join(rel)
}

/// Node and edge file of a fixture directory.
pub fn pair(dir: &str) -> (PathBuf, PathBuf) {
    let (n, e) = match dir {
        "bike" | "bike_nogeo" | "excerpt" => ("stations", "trips"),
        "bus" | "bus_nogeo" => ("stops", "routes"),
        "subway" => ("stations", "segments"),
        _ => ("nodes", "edges"),
    };
    (
        fixture(&format!("{dir}/{n}.csv")),
        fixture(&format!("{dir}/{e}.csv")),
    )
}

pub fn netboard() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_netboard"));
    cmd.env("RUST_LOG", "warn");
    cmd
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout)
            .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", self.stdout))
    }
}

impl From<Output> for Run {
    fn from(o: Output) -> Self {
        Run {
            code: o.status.code().unwrap_or(-1),
            stdout: String::from_utf8(o.stdout).unwrap(),
            stderr: String::from_utf8(o.stderr).unwrap(),
        }
    }
}

pub fn run(args: &[&str]) -> Run {
    netboard().args(args).output().unwrap().into()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

pub fn on_pair(command: &str, nodes: &Path, edges: &Path, extra: &[&str]) -> Run {
    let mut args = vec![command, "--nodes", s(nodes), "--edges", s(edges)];
    args.extend_from_slice(extra);
    run(&args)
}

pub fn on_fixture(command: &str, dir: &str, extra: &[&str]) -> Run {
    let (n, e) = pair(dir);
    on_pair(command, &n, &e, extra)
}

pub fn build(dir: &str, out: &Path, extra: &[&str]) -> Run {
    let mut args = vec!["--out", s(out), "--reproducible"];
    args.extend_from_slice(extra);
    on_fixture("build", dir, &args)
}

pub fn applicable(discover: &Value) -> Vec<String> {
    discover["indicators"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|i| i["applicable"] == true)
        .map(|i| i["id"].as_str().unwrap().to_string())
        .collect()
}
