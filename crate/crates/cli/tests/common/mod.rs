#![allow(dead_code)]

use std::io::Write;
use std::process::Command;

use tempfile::NamedTempFile;
use woven_core::document::FamilyDocument;
use woven_core::WovenFamily;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn woven(args: &[&str]) -> Run {
    woven_with_env(args, &[])
}

pub fn woven_with_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_woven"));
    cmd.args(args).env_remove("WOVEN_MAX_PARTITIONS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn write_text(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().expect("temp file");
    f.write_all(text.as_bytes()).expect("write");
    f
}

pub fn write_family(family: &WovenFamily) -> NamedTempFile {
    write_text(
        &FamilyDocument::from_family(family)
            .to_canonical_json()
            .expect("serializable"),
    )
}

pub fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().expect("utf-8 path")
}

pub fn json(run: &Run) -> serde_json::Value {
    serde_json::from_str(run.stdout.trim())
        .unwrap_or_else(|e| panic!("bad output {e}: {}", run.stdout))
}
