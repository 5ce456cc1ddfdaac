use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use quasimatroid::bias::BiasedGraph;
use quasimatroid::bracelets::{enumerate_bracelets, BraceletFunction, BraceletValue};
use quasimatroid::graph::{CycleSpace, Multigraph, DEFAULT_CYCLE_LIMIT};
use quasimatroid::io::chi_to_json;
use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quasimatroid"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    cmd.env_remove("QUASIMATROID_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(s) = stdin {
        pipe.write_all(s.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("quasimatroid-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

const K4_ALL_BALANCED: &str =
    r#"{"graph":{"vertices":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]},"bias":{"rule":"all_balanced"}}"#;

#[test]
fn generated_parity_passes_the_fast_suite() {
    let generated = run(&["gen", "four-cycle-parity", "--n", "8"], None);
    assert!(generated.status.success());
    let verified = run(&["verify", "--suite", "fast"], Some(&stdout(&generated)));
    assert_eq!(verified.status.code(), Some(0), "{}", stdout(&verified));
    let reports = json_lines(&verified);
    assert!(!reports.is_empty());
    for r in &reports {
        for key in ["name", "instance", "result", "witness", "seed", "elapsed_ms"] {
            assert!(r.get(key).is_some(), "{key} missing in {r}");
        }
        assert_ne!(r["result"], "fail");
    }
}

#[test]
fn rank_of_graphic_k4() {
    let o = run(&["rank"], Some(K4_ALL_BALANCED));
    assert!(o.status.success());
    assert_eq!(json_lines(&o)[0]["rank"], 3);
    let o = run(&["rank", "--set", "0,1,3"], Some(K4_ALL_BALANCED));
    assert_eq!(json_lines(&o)[0]["rank"], 2);
    let o = run(&["rank", "--set", "9"], Some(K4_ALL_BALANCED));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn meet_violation_is_an_input_error() {
    let fixture = r#"{"graph":{"vertices":6,"edges":[[0,1],[1,2],[0,2],[3,4],[4,5],[3,5],[2,3]]},
        "tripartition":{"B":[],"L":[[0,1,2]],"F":[[3,4,5]]}}"#;
    let o = run(&["validate"], Some(fixture));
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).unwrap();
    assert_eq!(err["error"], "meet_violation");
}

#[test]
fn distinct_diagnostics() {
    let kind = |o: &Output| -> String {
        let v: Value = serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).unwrap();
        v["error"].as_str().unwrap().to_owned()
    };
    let o = run(&["circuits"], Some("{not json"));
    assert_eq!((o.status.code(), kind(&o).as_str()), (Some(2), "malformed_input"));
    let ds = stdout(&run(&["gen", "doubled-square"], None));
    let o = run_env(&["bases"], Some(&ds), &[("QUASIMATROID_CAP", "4")]);
    assert_eq!((o.status.code(), kind(&o).as_str()), (Some(2), "cap_exceeded"));
    let o = run(&["circuits"], Some(r#"{"vertices":2,"edges":[[0,5]]}"#));
    assert_eq!((o.status.code(), kind(&o).as_str()), (Some(2), "invalid_graph"));
}

#[test]
fn output_is_deterministic() {
    let args = ["gen", "random", "--n", "4", "--m", "7", "--seed", "11", "--signed"];
    let a = run(&args, None);
    assert_eq!(a.stdout, run(&args, None).stdout);
    let bundle = stdout(&a);
    let strip = |o: &Output| -> Vec<Value> {
        json_lines(o)
            .into_iter()
            .map(|mut v| {
                v.as_object_mut().unwrap().remove("elapsed_ms");
                v
            })
            .collect()
    };
    let v1 = run(&["verify", "--seed", "5"], Some(&bundle));
    let v2 = run(&["verify", "--seed", "5"], Some(&bundle));
    assert_eq!(strip(&v1), strip(&v2));
}

#[test]
fn circuits_are_sorted_lists() {
    let o = run(&["circuits"], Some(K4_ALL_BALANCED));
    let v: Vec<Vec<usize>> = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v.len(), 7);
    assert!(v.windows(2).all(|w| w[0] < w[1]));
    assert!(v.iter().all(|c| c.windows(2).all(|p| p[0] < p[1])));
    let co = run(&["cocircuits"], Some(K4_ALL_BALANCED));
    let v: Vec<Vec<usize>> = serde_json::from_str(stdout(&co).trim()).unwrap();
    assert_eq!(v.len(), 7);
}

#[test]
fn separate_files_and_minor_round_trip() {
    let ds: Value = serde_json::from_str(&stdout(&run(&["gen", "doubled-square"], None))).unwrap();
    let graph = temp_file("graph.json", &ds["graph"].to_string());
    let tri = temp_file("tri.json", &ds["tripartition"].to_string());
    let files = [graph.to_str().unwrap(), tri.to_str().unwrap()];
    let o = run(&["validate", files[0], files[1]], None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json_lines(&o)[0]["classification"], "neither");

    let m = run(&["minor", files[0], files[1], "--delete", "0", "--contract", "2"], None);
    assert!(m.status.success());
    let doc = &json_lines(&m)[0];
    assert_eq!(doc["edge_map"][0], Value::Null);
    assert_eq!(doc["edge_map"][1], 0);
    // The minor is itself a valid input.
    assert!(run(&["circuits"], Some(&doc.to_string())).status.success());
    let o = run(&["minor", files[0], files[1], "--delete", "1", "--contract", "1"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sums() {
    let c4 = temp_file("c4.json", &stdout(&run(&["gen", "complete", "--n", "4"], None)));
    let tri = temp_file("tri3.json", r#"{"vertices":3,"edges":[[0,1],[1,2],[0,2]]}"#);
    let o = run(
        &[
            "sum",
            "link",
            c4.to_str().unwrap(),
            tri.to_str().unwrap(),
            "--e1",
            "0",
            "--e2",
            "0",
        ],
        None,
    );
    assert!(o.status.success());
    let doc = &json_lines(&o)[0];
    assert_eq!(doc["graph"]["vertices"], 5);
    assert_eq!(doc["edge_map"]["second"][1], 5);

    let looped = temp_file(
        "loops.json",
        r#"{"graph":{"vertices":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3],[0,0]]},"tripartition":{"rule":"lift"}}"#,
    );
    let p = looped.to_str().unwrap();
    let o = run(&["sum", "loop", p, p, "--e1", "6", "--e2", "6"], None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = &json_lines(&o)[0];
    assert_eq!(doc["graph"]["vertices"], 7);
    assert!(!doc["circuits"].as_array().unwrap().is_empty());
    let o = run(&["sum", "loop", p, p, "--e1", "0", "--e2", "6"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ingleton_on_the_doubled_square() {
    let ds = stdout(&run(&["gen", "doubled-square"], None));
    let o = run(&["ingleton"], Some(&ds));
    assert_eq!(json_lines(&o)[0]["violation"]["value"], -1);
}

/// A triangle joined by an edge to a K_4: the two bracelets through the
/// triangle are adjacent, so flipping one of them breaks elimination.
fn improper_chi_files() -> (PathBuf, PathBuf) {
    let mut edges = vec![(0, 1), (1, 2), (2, 0)];
    edges.extend(Multigraph::complete(4).edges().iter().map(|&(u, v)| (u + 3, v + 3)));
    edges.push((2, 3));
    let g = Multigraph::new(7, edges).unwrap();
    let bg = BiasedGraph::empty_bias(CycleSpace::new(g.clone(), DEFAULT_CYCLE_LIMIT).unwrap());
    let mut chi = BraceletFunction::constant(&bg, BraceletValue::Dependent);
    chi.set(enumerate_bracelets(&bg)[0].clone(), BraceletValue::Independent);
    let graph = temp_file("chi-graph.json", &serde_json::to_string(&g).unwrap());
    let chi = temp_file("chi.json", &serde_json::to_string(&chi_to_json(&chi)).unwrap());
    (graph, chi)
}

#[test]
fn improper_chi_fails_verification() {
    let (graph, chi) = improper_chi_files();
    let o = run(&["verify", graph.to_str().unwrap(), chi.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let reports = json_lines(&o);
    let axioms = reports.iter().find(|r| r["name"] == "circuit_axioms").unwrap();
    assert_eq!(axioms["result"], "fail");
    assert_eq!(axioms["witness"]["kind"], "elimination");
    let proper = reports.iter().find(|r| r["name"] == "proper_chi").unwrap();
    assert_eq!(proper["result"], "fail");
    // Circuits of an improper χ are refused outright.
    let o = run(&["circuits", graph.to_str().unwrap(), chi.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn torus_bundle_uses_the_contractible_rule() {
    let o = run(&["gen", "torus", "--m", "2"], None);
    let doc = &json_lines(&o)[0];
    assert_eq!(doc["bias"]["rule"], "contractible");
    let v = run(&["validate"], Some(&stdout(&o)));
    let report = &json_lines(&v)[0];
    assert_eq!(report["cycles"], 14704);
    assert!(report["bracelet_components"].as_u64().unwrap() >= 4);
}

#[test]
fn pretty_output_parses() {
    let o = run(&["--pretty", "gen", "doubled-square"], None);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["graph"].is_object());
    assert!(stdout(&o).lines().count() > 1);
}
