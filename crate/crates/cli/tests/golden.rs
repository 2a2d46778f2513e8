use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

const SEED: &str = "20240517";

fn dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn scripts() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir("corpus"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "syn"))
        .collect();
    v.sort();
    v
}

fn run(script: &Path) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_synthkit"))
        .arg("--input")
        .arg(script)
        .env("SYNTHKIT_SEED", SEED)
        .output()
        .unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn golden_path(script: &Path) -> PathBuf {
    dir("golden").join(script.file_stem().unwrap()).with_extension("json")
}

#[test]
fn corpus_has_twenty_scripts() {
    assert_eq!(scripts().len(), 20);
}

#[test]
fn outputs_match_goldens() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for s in scripts() {
        let (out, _) = run(&s);
        let g = golden_path(&s);
        if update {
            fs::write(&g, &out).unwrap();
            continue;
        }
        let expected = fs::read_to_string(&g).unwrap_or_else(|_| panic!("missing golden {}", g.display()));
        assert_eq!(out, expected, "{}", s.display());
    }
}

#[test]
fn exit_codes_follow_status() {
    for s in scripts() {
        let (out, code) = run(&s);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        let expected = match doc["status"].as_str().unwrap() {
            "ok" => 0,
            "inconclusive" => 2,
            _ => 1,
        };
        assert_eq!(code, expected, "{}", s.display());
        assert_eq!(doc["schema"], 1);
    }
}
