use std::process::{Command, Output};

fn orthomon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthomon"))
        .args(args)
        .env_remove("ORTHOMON_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn normalize_matches_multiplication() {
    let out = orthomon(&["--nu", "2", "--mu", "2", "normalize", "aaabbb"]);
    assert!(out.status.success());
    let normal = stdout(&out);
    let product = stdout(&orthomon(&["--nu", "2", "--mu", "2", "mul", "a^3", "b^3"]));
    assert_eq!(normal, product);
    assert_eq!(normal.trim(), "ab");
    let oracle = orthomon(&["--nu", "2", "--mu", "2", "oracle", "aaabbb", "ab"]);
    assert_eq!(stdout(&oracle).trim(), "YES");
}

#[test]
fn eq_follows_the_relations() {
    let out = orthomon(&["--nu", "inf", "--mu", "inf", "eq", "aba", "a"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "true");
    assert_eq!(stdout(&orthomon(&["eq", "ab", "ba"])).trim(), "false");
}

#[test]
fn closure_lists_five_elements() {
    let out = orthomon(&["--nu", "2", "--mu", "2", "closure", "ab", "ba", "--cap", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("5 elements (complete)"), "{text}");
    for w in ["ab", "ba", "ab^2a", "ba^2b", "ab^2a^2b"] {
        assert!(text.split_whitespace().any(|t| t == w), "{w} missing from {text}");
    }
}

#[test]
fn json_output_is_one_document_per_line() {
    let out = orthomon(&["--output", "json", "--nu", "2", "classify", "ab^2a^2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["element"]["type"], "III");
    assert_eq!(v["element"]["display"], "ab^2a^2");
    assert_eq!(v["order"], "inf");
}

#[test]
fn text_and_json_agree() {
    let text = stdout(&orthomon(&["--nu", "3", "pow", "a^2b", "4"]));
    let json = stdout(&orthomon(&["--nu", "3", "--output", "json", "pow", "a^2b", "4"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["display"], text.trim());
}

#[test]
fn eggbox_prints_the_default_window() {
    let out = orthomon(&["eggbox"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ab\ta^3b\ta^2b\tab\ta\ta^2\n"));
    assert_eq!(text, stdout(&orthomon(&["eggbox"])));
}

#[test]
fn band_emits_dot() {
    let out = orthomon(&["--nu", "2", "--mu", "1", "band", "--depth", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("graph band {"));
    assert!(text.contains("[style=bold]"));
    assert!(text.contains("[label=\"R\"]"));
}

#[test]
fn oracle_uses_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let out = orthomon(&["--cache-dir", cache, "oracle", "aba", "a", "--length", "8"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "YES");
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let again = orthomon(&["--cache-dir", cache, "oracle", "ab", "ba", "--length", "8", "--rebuild"]);
    assert_eq!(stdout(&again).trim(), "NO_OR_UNKNOWN");
    let sweep = orthomon(&["--nu", "2", "--mu", "2", "oracle", "--sweep", "5", "--length", "9"]);
    assert!(sweep.status.success());
    assert!(stdout(&sweep).contains("0 soundness violations"));
}

#[test]
fn verify_runs_named_suites() {
    let out = orthomon(&["--nu", "2", "--mu", "2", "verify", "types", "identity", "bicyclic"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS")).count(), 3);
    let skipped = orthomon(&["--nu", "1", "--mu", "1", "verify", "identity"]);
    assert!(skipped.status.success());
    assert!(stdout(&skipped).starts_with("SKIP"));
}

#[test]
fn verify_over_the_matrix() {
    let out = orthomon(&["verify", "complement", "--matrix", "--pairs", "200"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 9);
}

#[test]
fn exit_codes() {
    let domain = orthomon(&["normalize", "ac"]);
    assert_eq!(domain.status.code(), Some(1));
    assert!(!domain.stderr.is_empty());
    assert_eq!(orthomon(&["leq", "a", "ab"]).status.code(), Some(1));
    assert_eq!(orthomon(&["--nu", "0", "normalize", "a"]).status.code(), Some(2));
    assert_eq!(orthomon(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(orthomon(&["verify", "nope"]).status.code(), Some(1));
}
