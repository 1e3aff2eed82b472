use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(format!("{name}.json")).to_string_lossy().into_owned()
}

fn factperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_factperm"))
        .args(args)
        .env_remove("FACTPERM_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_z2_passes_permcat_laws() {
    let o = factperm(&["check", &fixture("z2"), "--only", "permcat-laws"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS permcat-laws [z2]"));
}

#[test]
fn roundtrip_maxposet_at_two() {
    let o = factperm(&["roundtrip", &fixture("maxposet"), "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["reports"][0]["check"], "counit");
    assert_eq!(doc["reports"][0]["bounds"]["N"], 2);
}

#[test]
fn malformed_json_exits_two_with_location() {
    let path = std::env::temp_dir().join("factperm-malformed.json");
    std::fs::write(&path, "{\"objects\": [\"a\",\n").unwrap();
    let o = factperm(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn invalid_fixture_exits_two() {
    let path = std::env::temp_dir().join("factperm-partial.json");
    let mut doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(fixture("z2")).unwrap()).unwrap();
    doc["tensor_obj"].as_array_mut().unwrap().pop();
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = factperm(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("total"));
}

#[test]
fn export_twisted_arrow_of_the_arrow_as_dot() {
    let o = factperm(&["export", "twisted-arrow", &fixture("maxposet"), "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.lines().filter(|l| l.contains("[ label") && !l.contains("->")).count(), 3);
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 2);
}

#[test]
fn export_perm_1_of_z2_as_json() {
    let o = factperm(&["export", "perm", &fixture("z2"), "--max-n", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: factperm::permcat::PermCategoryJson = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!doc.rel.category.objects.is_empty());
    assert!(!doc.braid.is_empty());
}

#[test]
fn export_rejects_unknown_format() {
    let o = factperm(&["export", "category", &fixture("z2"), "--format", "yaml"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("json") && err.contains("dot"), "{err}");
}

#[test]
fn export_text_is_not_an_export_format() {
    let o = factperm(&["export", "category", &fixture("z2")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn env_sets_the_bound() {
    let o = Command::new(env!("CARGO_BIN_EXE_factperm"))
        .args(["finstar", "--format", "json"])
        .env("FACTPERM_MAX_N", "1")
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["max_n"], 1);
    assert_eq!(doc["reports"][0]["bounds"]["n"], 2);
}

#[test]
fn reports_are_byte_stable() {
    let args = ["check", &fixture("maxposet-min"), "--max-n", "2", "--format", "json"];
    let (a, b) = (factperm(&args), factperm(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_writes_a_file() {
    let path = std::env::temp_dir().join("factperm-tw.dot");
    let o = factperm(&["export", "tw", "--max-n", "1", "--format", "dot", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("digraph"));
}

#[test]
fn subcommands_run() {
    for cmd in ["fact", "perm", "eta-check", "segal", "probe-initial", "sset"] {
        let o = factperm(&[cmd, &fixture("z2"), "--max-n", "2"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", stdout(&o));
    }
}

#[test]
fn unknown_check_is_a_usage_error() {
    let o = factperm(&["check", &fixture("z2"), "--only", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("permcat-laws"));
}

#[test]
fn fixture_files_match_the_builtin_fixtures() {
    for fx in factperm::fixtures::perm_fixtures() {
        let on_disk = std::fs::read_to_string(fixture(fx.name)).unwrap();
        let built = serde_json::to_string_pretty(&factperm::permcat::PermCategoryJson::from_perm(&fx.perm)).unwrap() + "\n";
        assert_eq!(on_disk, built, "{} is stale; rerun the write_fixtures example", fx.name);
    }
}
