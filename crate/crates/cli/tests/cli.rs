use std::path::Path;
use std::process::{Command, Output};

use atam::format::{self, ExplorationRecord};
use tempfile::TempDir;

fn atam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atam")).args(args).env_remove("ATAM_BUDGET").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fixture_file(dir: &TempDir, name: &str, file: &str) -> std::path::PathBuf {
    let o = atam(&["fixture", name]);
    assert!(o.status.success());
    let p = dir.path().join(file);
    std::fs::write(&p, &o.stdout).unwrap();
    p
}

#[test]
fn encode_matches_golden() {
    let o = atam(&["encode", "--fixture", "five-tile"]);
    assert!(o.status.success());
    let golden = include_str!("../../core/fixtures/five_tile_encoding.txt");
    let collapse = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ");
    assert_eq!(collapse(&stdout(&o)), collapse(golden));
}

#[test]
fn explore_is_deterministic_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let sys = fixture_file(&dir, "keystone", "keystone.json");
    let (out1, out2) = (dir.path().join("e1.json"), dir.path().join("e2.json"));
    for out in [&out1, &out2] {
        let o = atam(&["explore", "--system", path(&sys), "--max-tiles", "12", "--out", path(out)]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (t1, t2) = (std::fs::read(&out1).unwrap(), std::fs::read(&out2).unwrap());
    assert_eq!(t1, t2);
    let s = atam::systems::keystone_system();
    let rec: ExplorationRecord = serde_json::from_slice(&t1).unwrap();
    let expected = atam::explore(&s, 12, atam::explore::DEFAULT_NODE_BUDGET);
    let got = rec.assemblies(&s).unwrap();
    assert_eq!(got.len(), expected.len());
    assert!(got.iter().all(|a| expected.contains(a)));
}

#[test]
fn splice_line_pump() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert!(atam(&["fixture", "line-pump", "--out-dir", path(d)]).status.success());
    let out = d.join("g.json");
    let j = |f: &str| d.join(f).to_str().unwrap().to_string();
    let o = atam(&[
        "splice", "--system", &j("system.json"), "--a", &j("a.json"), "--wa", &j("wa.json"), "--b", &j("b.json"),
        "--wb", &j("wb.json"), "--offset", "-1,0", "--out", path(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = atam::systems::line_system();
    let g = format::sequence_from_json(&s, &std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(atam::is_valid_sequence(&s, &g).is_valid());
    assert_eq!(g.result().len(), 4);
}

#[test]
fn render_keystone_terminal_roles() {
    let dir = TempDir::new().unwrap();
    let sys = fixture_file(&dir, "keystone", "keystone.json");
    let asm = fixture_file(&dir, "keystone-terminal", "terminal.json");
    let out = dir.path().join("svg");
    let o = atam(&["render", "--system", path(&sys), "--assembly", path(&asm), "--out-dir", path(&out)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);
    let svg = std::fs::read_to_string(out.join("terminal_z0.svg")).unwrap();
    let tiles = atam::systems::keystone_terminal(&atam::systems::keystone_system(), 2, 2).len();
    assert_eq!(svg.matches("<rect class=\"tile ").count(), tiles);
    for role in ["seed", "arm", "finger", "keystone", "flagpole", "flag"] {
        assert!(svg.contains(&format!("class=\"tile {role}\"")), "{role}");
    }
}

#[test]
fn gadget_renders_two_planes() {
    let dir = TempDir::new().unwrap();
    let (sys, term) = (dir.path().join("g.json"), dir.path().join("t.json"));
    let o = atam(&["gadget", "--bits", "101", "--emit", path(&sys), "--emit-terminal", path(&term)]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["read"][0], "101");
    let o = atam(&["render", "--system", path(&sys), "--assembly", path(&term), "--out-dir", path(dir.path())]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(atam(&["explore"]).status.code(), Some(2));
    assert_eq!(atam(&["layout", "--tiles", "0"]).status.code(), Some(1));
    assert_eq!(atam(&["gadget", "--bits", "012"]).status.code(), Some(1));
    let dir = TempDir::new().unwrap();
    for (name, code) in [("premature-simulator", 1), ("scaled-keystone", 0)] {
        let d = dir.path().join(name);
        assert!(atam(&["fixture", name, "--out-dir", path(&d)]).status.success());
        let bound: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join("bound.json")).unwrap()).unwrap();
        let j = |f: &str| d.join(f).to_str().unwrap().to_string();
        let o = atam(&[
            "check-sim", "--simulated", &j("simulated.json"), "--simulator", &j("simulator.json"), "--rep",
            &j("rep.json"), "--bound", &bound["simulator"].to_string(), "--simulated-bound",
            &bound["simulated"].to_string(),
        ]);
        assert_eq!(o.status.code(), Some(code), "{name}: {}", stdout(&o));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["verdict"], if code == 0 { "Pass" } else { "Fail" });
    }
}
