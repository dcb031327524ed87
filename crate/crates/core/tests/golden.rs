//! Golden json-mode reports. Regenerate with `TCALC_BLESS=1 cargo test --test golden`
//! and review the diff.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tcalc::cli::{run_command, CommandRequest, Format, Subcommand};

fn cases() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| {
            let s = p.to_string_lossy();
            s.ends_with(".json") && !s.ends_with(".expected.json")
        })
        .collect();
    v.sort();
    v
}

fn load(case: &Path) -> (Subcommand, String) {
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(case).unwrap()).unwrap();
    (doc["command"].as_str().unwrap().parse().unwrap(), doc["input"].to_string())
}

#[test]
fn golden_reports() {
    let bless = std::env::var_os("TCALC_BLESS").is_some();
    let all = cases();
    assert_eq!(all.len(), 20);
    for case in all {
        let (cmd, input) = load(&case);
        let out = run_command(&CommandRequest::inline(cmd, &input, Format::Json));
        let got = json!({ "exit_code": out.exit_code, "stdout": out.stdout });
        let path = case.with_extension("expected.json");
        if bless {
            std::fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
            continue;
        }
        let want: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(got, want, "{}", case.display());
        if out.exit_code == 1 {
            assert!(out.stdout.is_empty() && !out.stderr.is_empty());
        }
    }
}

#[test]
fn binary_matches_library() {
    for case in cases() {
        let (cmd, input) = load(&case);
        let lib = run_command(&CommandRequest::inline(cmd, &input, Format::Json));
        let bin = Command::new(env!("CARGO_BIN_EXE_tcalc"))
            .args([cmd.name(), "--format", "json", "--input"])
            .arg(case_input_file(&case, &input))
            .output()
            .unwrap();
        assert_eq!(bin.status.code(), Some(lib.exit_code), "{}", case.display());
        assert_eq!(String::from_utf8(bin.stdout).unwrap(), lib.stdout, "{}", case.display());
    }
}

fn case_input_file(case: &Path, input: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let p = dir.join(case.file_name().unwrap());
    std::fs::write(&p, input).unwrap();
    p
}

#[test]
fn text_mode_renders() {
    let (cmd, input) = load(&cases()[2]);
    let out = run_command(&CommandRequest::inline(cmd, &input, Format::Text));
    assert_eq!(out.exit_code, 0);
    assert!(out.stdout.contains("D(G) ⊗ E_{"), "{}", out.stdout);
}

#[test]
fn binary_usage_errors() {
    let bin = env!("CARGO_BIN_EXE_tcalc");
    let o = Command::new(bin).args(["frobnicate", "--inline", "{}"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let o = Command::new(bin).args(["weights"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(bin)
        .args(["weyl", "--inline", r#"{"datum":{"preset":"E7"}}"#, "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(bin)
        .args(["weyl", "--inline", r#"{"datum":{"preset":"GL3"}}"#, "--weyl-cap", "5"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(bin).args(["--help"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}
