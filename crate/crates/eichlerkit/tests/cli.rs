use std::io::Write;
use std::process::{Command, Output, Stdio};

use eichlerkit::cli::{MhJson, QuotientsJson};
use eichlerkit::report::{GraphJson, TableJson, VerdictJson, WitnessJson};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn run(args: &[&str]) -> Output {
    run_env(args, None, None)
}

fn run_env(args: &[&str], config: Option<&std::path::Path>, stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_eichlerkit"));
    cmd.args(args).env_remove("EICHLERKIT_CONFIG").stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    if let Some(c) = config {
        cmd.env("EICHLERKIT_CONFIG", c);
    }
    let mut child = cmd.spawn().unwrap();
    {
        let mut i = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            i.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parse, re-print, and require byte equality.
fn round_trip<T: Serialize + DeserializeOwned>(text: &str) -> T {
    let v: T = serde_json::from_str(text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    v
}

fn temp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("eichlerkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn mh_prints_the_count() {
    let o = run(&["mh", "Q(8)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
    let o = run(&["mh", "SG(100,7)", "--format", "json"]);
    let j: MhJson = round_trip(&stdout(&o));
    assert_eq!((j.order, j.m_h), (100, 12));
}

#[test]
fn classify_json_schema() {
    let o = run(&["classify", "C(7)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: VerdictJson = round_trip(&stdout(&o));
    assert_eq!(v.status, "PC");
    let raw: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["name", "order", "mH", "status", "mode", "trace"] {
        assert!(raw.get(key).is_some(), "{key}");
    }
    for key in ["rule", "citation", "witness"] {
        assert!(raw["trace"][0].get(key).is_some(), "{key}");
    }
}

#[test]
fn failing_verdict_still_exits_zero() {
    let o = run(&["classify", "Q(24)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: VerdictJson = round_trip(&stdout(&o));
    assert_eq!(v.status, "FAILS_SFC");
    let o = run(&["periodic", "Q(28)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cyclic"));
}

#[test]
fn other_modes() {
    assert!(stdout(&run(&["classify2", "Q(32)"])).contains("FAILS_SFC"));
    assert!(stdout(&run(&["classifyc22", "Q(8)"])).contains("PC"));
    assert_eq!(stdout(&run(&["eichler-simple", "SG(32,14)"])), "true\n");
    assert_eq!(stdout(&run(&["mnec", "Q(8)"])).lines().next(), Some("true"));
    assert_eq!(stdout(&run(&["mnec", "Q(8) x C(2)"])).lines().next(), Some("false"));
    assert_eq!(stdout(&run(&["mnec", "SG(32,14)", "--over", "Q(8)"])).lines().next(), Some("true"));
    // mode preconditions are errors, not parse errors
    assert_eq!(run(&["classify2", "C(6)"]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["mh", "Q(("]).status.code(), Some(2));
    assert_eq!(run(&["mh", "SG(7,7)"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["mh", "Q(16)", "--order-cap", "10"]).status.code(), Some(3));
    let bad = temp("bad.catalog", "X = Q(8) x\n");
    assert_eq!(run(&["gamma", "--catalog", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn stdin_spec() {
    let o = run_env(&["mh", "-"], None, Some("Q(24) x C(2)\n"));
    assert_eq!(stdout(&o), "6\n");
    let o = run_env(&["mh", "-"], None, Some("x,y | x^4, x^2*Y^2, Y*x*y*x"));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn catalog_names_resolve() {
    let o = run(&["classify", "TxQ12", "--format", "json"]);
    let v: VerdictJson = round_trip(&stdout(&o));
    assert_eq!((v.order, v.status.as_str()), (288, "SFC_HOLDS_PC_OPEN"));
}

#[test]
fn config_file_and_flag_precedence() {
    let cfg = temp("config.toml", "output_format = \"json\"\n");
    let o = run_env(&["mh", "Q(8)"], Some(&cfg), None);
    let _: MhJson = round_trip(&stdout(&o));
    let o = run_env(&["mh", "Q(8)", "--format", "table"], Some(&cfg), None);
    assert_eq!(stdout(&o), "1\n");
    let small = temp("small.toml", "order_cap = 10\n");
    assert_eq!(run_env(&["mh", "Q(16)"], Some(&small), None).status.code(), Some(3));
    assert_eq!(run_env(&["mh", "Q(16)", "--order-cap", "100"], Some(&small), None).status.code(), Some(0));
    let broken = temp("broken.toml", "order_cap = \"many\"\n");
    assert_eq!(run_env(&["mh", "Q(8)"], Some(&broken), None).status.code(), Some(2));
    let unknown = temp("unknown.toml", "colour = 1\n");
    assert_eq!(run_env(&["mh", "Q(8)"], Some(&unknown), None).status.code(), Some(2));
}

#[test]
fn chartab_and_quotients_round_trip() {
    let o = run(&["chartab", "BT", "--format", "json"]);
    let t: TableJson = round_trip(&stdout(&o));
    assert_eq!((t.order, t.characters.len(), t.m_h), (24, 7, 1));
    let o = run(&["quotients", "SG(96,66)", "--format", "json"]);
    let q: QuotientsJson = round_trip(&stdout(&o));
    let mut targets: Vec<&str> = q.binary_polyhedral.iter().map(|w| w.target.as_str()).collect();
    targets.sort();
    assert_eq!(targets, ["BO", "Q(12)"]);
    let o = run(&["quotients", "SG(32,14)", "--target", "Q(8)", "--format", "json"]);
    let w: WitnessJson = round_trip(&stdout(&o));
    assert_eq!((w.index, w.kernel_order), (8, 4));
    let raw: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["kernel_generators", "index", "target", "iso_images"] {
        assert!(raw.get(key).is_some(), "{key}");
    }
}

#[test]
fn small_catalog_gamma_is_deterministic() {
    let cat = temp("small.catalog", "Q8 = Q(8)\nQ12 = Q(12)\nC6 = C(6)\nQ8xC2 = Q(8) x C(2)   # order=16\nQ8xC3 = Q(8) x C(3)\nSG32 = SG(32,14)\n");
    let args = ["gamma", "--catalog", cat.to_str().unwrap(), "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let g: GraphJson = round_trip(&stdout(&a));
    let level = |n: &str| g.nodes.iter().find(|x| x.name == n).map(|x| x.level);
    assert_eq!(level("C(1)"), Some(0));
    assert_eq!(level("Q8"), Some(1));
    assert_eq!(level("Q8xC2"), Some(2));
    assert_eq!(level("SG32"), Some(2));
    assert_eq!(level("C6"), None);
    assert_eq!(level("Q8xC3"), None);
    assert!(g.edges.iter().any(|e| e.from == "SG32" && e.to == "Q8"));
    let dot = run(&["gamma", "--catalog", cat.to_str().unwrap(), "--format", "dot"]);
    assert!(stdout(&dot).starts_with("digraph"));
}

#[test]
fn check_table_reports_mismatches() {
    let o = run(&["check-table"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("38 of 38 rows match\n"));
    // corrupt one m_H value
    let table = eichlerkit::catalog::APPENDIX_TABLE.replacen("| 12 |", "| 11 |", 1);
    assert_ne!(table, eichlerkit::catalog::APPENDIX_TABLE);
    let p = temp("wrong.table", &table);
    let o = run(&["check-table", "--expected", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn table_rows_follow_the_column_order() {
    let o = run(&["table", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<eichlerkit::report::RowJson> = round_trip(&stdout(&o));
    assert_eq!(rows.len(), 38);
    let r = rows.iter().find(|r| r.description == "TxC2").unwrap();
    assert_eq!((r.id.as_deref(), r.m_h, r.cancellation.as_str()), (Some("(2,7)"), 2, "PC"));
    let text = stdout(&run(&["table"]));
    assert!(text.starts_with("ID"));
}
