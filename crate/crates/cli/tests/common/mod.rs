#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use exactfact::io::MatrixFile;
use exactfact::matrix::ExactMatrix;
use serde_json::Value;

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_exactfact"))
        .args(args)
        .output()
        .expect("binary runs");
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub struct Scratch {
    dir: tempfile::TempDir,
}

impl Scratch {
    pub fn new() -> Self {
        Scratch {
            dir: tempfile::tempdir().expect("temp dir"),
        }
    }

    pub fn raw(&self, name: &str, text: &str) -> String {
        let path: PathBuf = self.dir.path().join(name);
        std::fs::write(&path, text).expect("write fixture");
        path.to_str().expect("utf-8 path").to_string()
    }

    pub fn rows(&self, name: &str, rows: &[&[&str]]) -> String {
        let doc = MatrixFile {
            rows: rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        };
        self.raw(name, &doc.to_json())
    }

    pub fn matrix(&self, name: &str, m: &ExactMatrix) -> String {
        self.raw(name, &MatrixFile::from_matrix(m).to_json())
    }
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas")
}

fn load_schema(name: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(name)).expect("schema file");
    serde_json::from_str(&text).expect("schema parses")
}

/// Validation errors of `doc` against one of the shipped schemas.
pub fn schema_errors(schema: &str, doc: &str) -> Vec<String> {
    let common = load_schema("common.schema.json");
    let registry = jsonschema::Registry::new()
        .add("urn:exactfact:schema:v1:common", &common)
        .expect("common schema registers")
        .prepare()
        .expect("registry prepares");
    let validator = jsonschema::options()
        .with_registry(&registry)
        .build(&load_schema(schema))
        .expect("schema compiles");
    let instance: Value = serde_json::from_str(doc).expect("document parses");
    validator.iter_errors(&instance).map(|e| e.to_string()).collect()
}
