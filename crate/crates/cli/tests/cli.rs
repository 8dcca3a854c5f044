use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

const G1: &str = "p1 p2 1\np2 p3 2\np3 p4 3\n";
const G2: &str = "# break at p3\np1 p2 1\np2 p3 2\n\np3 p4 1\np4 p5 2\n";
const G3: &str = "a b 1\nb c 2\n";
const G4: &str = "x a 6\na b 6\nb c 7\nc d 7\n";
const RATIO: &str = "u w 1\nu a 5\na w 6\n";

struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("tdss-cli-{name}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, text: &str) -> String {
        let p = self.0.join(name);
        fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn tdss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdss")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn analyze_reports_diameter_and_breaks() {
    let s = Scratch::new("analyze");
    let out = tdss(&["analyze", &s.file("g1.tg", G1)]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("diameter 3"));
    assert!(stdout(&out).contains("breaks []"));

    let out = tdss(&["analyze", "--json", &s.file("g2.tg", G2)]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["diameter"], 2);
    assert_eq!(doc["breaks"], serde_json::json!(["p3"]));
}

#[test]
fn parse_errors_name_the_line() {
    let s = Scratch::new("parse");
    let out = tdss(&["analyze", &s.file("bad.tg", "a b 1\na b\n")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn path_random_on_g2() {
    let s = Scratch::new("path-random");
    let g = s.file("g2.tg", G2);
    let report = s.path("r.json");
    let out = tdss(&["shortcut", &g, "--method", "path-random", "--target", "1", "--out", &report]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["shortcuts"].as_array().unwrap().len(), 2);
    assert_eq!(doc["results"]["base_diameter_after"], 1);
    assert_eq!(doc["parameters"]["method"], "path-random");
}

#[test]
fn expansion_random_saturating_on_g3() {
    let s = Scratch::new("expansion-random");
    let g = s.file("g3.tg", G3);
    let out = tdss(&["shortcut", &g, "--method", "expansion-random", "--target", "1", "--multiplier", "1000"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let r = &doc["results"];
    assert_eq!(r["base_diameter_after"], 1);
    assert_eq!(r["expansion_diameter"], 1);
    let l = &r["ledger"];
    let translated = l["new_edges"].as_u64().unwrap()
        + l["duplicate_hits"].as_u64().unwrap()
        + l["existing_hits"].as_u64().unwrap()
        + l["skipped_gadget_edges"].as_u64().unwrap();
    assert_eq!(translated, r["static_shortcuts"].as_u64().unwrap());
    assert!(l["new_edges"].as_u64().unwrap() <= r["static_shortcuts"].as_u64().unwrap());
}

#[test]
fn exit_codes_for_preconditions() {
    let s = Scratch::new("codes");
    let out = tdss(&["shortcut", &s.file("g1.tg", G1), "--method", "expansion-greedy", "--target", "3"]);
    assert_eq!(out.status.code(), Some(4));
    let out = tdss(&["shortcut", &s.file("ratio.tg", RATIO), "--method", "path-greedy", "--target", "4"]);
    assert_eq!(out.status.code(), Some(3));
    let out = tdss(&["analyze", &s.path("missing.tg")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_examples() {
    let s = Scratch::new("verify");
    let g2 = s.file("g2.tg", G2);
    let out = tdss(&["verify", &g2, "--shortcuts", &s.file("s.tg", "p1 p3 1\np3 p5 1\n"), "--target", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("ok"));

    let out = tdss(&["verify", &g2, "--shortcuts", &s.file("empty.tg", ""), "--target", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("achieved 2"));

    let out = tdss(&["verify", &s.file("g4.tg", G4), "--shortcuts", &s.file("ac.tg", "a c 8\n"), "--target", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("new-pairs=1"));
}

#[test]
fn verify_warns_on_overlap() {
    let s = Scratch::new("overlap");
    let out = tdss(&["verify", &s.file("g1.tg", G1), "--shortcuts", &s.file("s.tg", "p1 p2 1\n"), "--target", "3"]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("warning"));
}

#[test]
fn reports_round_trip_through_verify() {
    let s = Scratch::new("roundtrip");
    let g = s.file("g.tg", "p1 p2 1\np2 p3 2\np3 p4 3\np4 p5 4\np5 p6 5\np6 p7 6\n");
    for method in ["path-greedy", "path-random", "expansion-greedy", "expansion-random"] {
        let report = s.path(&format!("{method}.json"));
        let out = tdss(&["shortcut", &g, "--method", method, "--target", "4", "--seed", "3", "--out", &report]);
        assert!(out.status.success(), "{method}: {}", stderr(&out));
        let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
        let achieved = doc["results"]["base_diameter_after"].clone();
        let out = tdss(&["verify", &g, "--shortcuts", &report, "--target", "4"]);
        assert!(out.status.success(), "{method}: {}", stdout(&out));
        assert!(stdout(&out).contains(&format!("achieved {achieved}")), "{method}: {}", stdout(&out));
    }
}

#[test]
fn shortcut_lists_are_reproducible() {
    let s = Scratch::new("repro");
    let g = s.file("g.tg", "a b 1\nb c 2\nc d 3\na c 4\nd a 5\nb d 2\n");
    let run = |name: &str| {
        let edges = s.path(name);
        let out = tdss(&["shortcut", &g, "--method", "expansion-random", "--target", "2", "--seed", "11", "--edges", &edges]);
        assert!(out.status.success() || out.status.code() == Some(1));
        fs::read(edges).unwrap()
    };
    assert_eq!(run("a.tg"), run("b.tg"));
}

#[test]
fn expand_summaries() {
    let s = Scratch::new("expand");
    let dot = s.path("g3.dot");
    let out = tdss(&["expand", &s.file("g3.tg", G3), "--dot", &dot]);
    assert_eq!(stdout(&out).trim(), "18 vertices, 20 edges, K=5, 2k+1=5");
    let text = fs::read_to_string(dot).unwrap();
    assert_eq!(text.matches("style=dashed").count(), 18);
    assert_eq!(text.matches("style=solid").count(), 2);

    let out = tdss(&["expand", &s.file("g1.tg", G1)]);
    assert!(stdout(&out).contains("K=7, 2k+1=7"));
    let out = tdss(&["expand", &s.file("ratio.tg", RATIO)]);
    assert!(stdout(&out).contains("K=5 > 2k+1=3"));
}

#[test]
fn closure_reports_added_pairs() {
    let s = Scratch::new("closure");
    let g = s.file("g4.tg", G4);
    let out = tdss(&["closure", &g, "--kind", "ldt"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let pairs: Vec<_> = doc["added_pairs"].as_array().unwrap().iter().map(|p| p["pair"].clone()).collect();
    assert!(pairs.contains(&serde_json::json!(["a", "d"])));
    let out = tdss(&["closure", &g, "--kind", "eat"]);
    assert!(stdout(&out).contains("\"x\""));
}

#[test]
fn gen_writes_edge_lists() {
    let out = tdss(&["gen", "path", "--n", "4", "--labels", "1,2,3"]);
    assert_eq!(stdout(&out), G1);
    let a = tdss(&["gen", "random", "--n", "5", "--m", "8", "--t-max", "4", "--seed", "7"]);
    let b = tdss(&["gen", "random", "--n", "5", "--m", "8", "--t-max", "4", "--seed", "7"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 8);
    let out = tdss(&["gen", "random", "--n", "2", "--m", "5", "--t-max", "1"]);
    assert_eq!(out.status.code(), Some(4));
}
