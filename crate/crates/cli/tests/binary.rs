use std::process::{Command, Output};

fn synthkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_synthkit")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn command_words_on_the_command_line() {
    let out = synthkit(&["solve", "d[-2] - 3*d[-1] + 2*d[0]"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["result"]["dimension"], 2);
    let roots: Vec<_> = doc["result"]["roots"].as_array().unwrap().iter().map(|r| r["root"][0].clone()).collect();
    assert_eq!(roots, vec!["1", "2"]);
}

#[test]
fn member_example() {
    let doc = json(&synthkit(&["member", "<z - 1>", "z^2 - 1"]));
    assert_eq!(doc["result"]["member"], true);
}

#[test]
fn demo_rank_text_format() {
    let out = synthkit(&["--format", "text", "demo-rank", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "result.dimension: 6"), "{text}");
}

#[test]
fn approximate_roots_are_inconclusive() {
    let out = synthkit(&["roots", "<z^2 - z - 1>"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    let approx = doc["result"]["approximate"].as_array().unwrap();
    assert_eq!(approx.len(), 2);
    assert!(approx.iter().all(|a| a["approx"] == true && a["radius"].is_string()));
    assert!(doc["result"]["exact"].as_array().unwrap().is_empty());
}

#[test]
fn missing_input_file_is_an_error() {
    let out = synthkit(&["--input", "/nonexistent/script.syn"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["code"], "E_IO");
}

#[test]
fn flags_override_script_flags() {
    let dir = std::env::temp_dir().join(format!("synthkit-flags-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let script = dir.join("s.syn");
    std::fs::write(&script, "mu = d[-3] - 3*d[-2] + 3*d[-1] - d[0]\nsolve mu --degbound 1\n").unwrap();
    let narrow = synthkit(&["--input", script.to_str().unwrap()]);
    assert_eq!(narrow.status.code(), Some(2));
    let wide = synthkit(&["--input", script.to_str().unwrap(), "--degbound", "4"]);
    assert_eq!(wide.status.code(), Some(0));
    assert_eq!(json(&wide)["result"]["dimension"], 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn seed_is_read_from_the_environment() {
    let run = |seed: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_synthkit"))
            .args(["verify", "lefranc", "--trials", "2"])
            .env("SYNTHKIT_SEED", seed)
            .output()
            .unwrap();
        json(&out)
    };
    assert_eq!(run("99")["result"]["seed"], 99);
    assert_eq!(run("5"), run("5"));
}

#[test]
fn unknown_suite_is_reported() {
    let out = synthkit(&["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["code"], "E_UNKNOWN_SUITE");
}

#[test]
fn syntax_errors_carry_positions() {
    let out = synthkit(&["solve", "d[1] +* d[0]"]);
    assert_eq!(out.status.code(), Some(1));
    let e = &json(&out)["error"];
    assert_eq!(e["code"], "E_SYNTAX");
    assert_eq!(e["line"], 1);
    assert!(e["column"].as_u64().unwrap() > 1);
}
