use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use synchro::catalog::{self, CatalogObject};
use synchro::{io, search};

fn synchro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_synchro")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = synchro(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn fixture(name: &str) -> String {
    format!("{}/../core/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn line_graph() -> synchro::Graph {
    match catalog::entry("tutte-coxeter-line-graph").unwrap().build().unwrap() {
        CatalogObject::Graph(g) => g,
        CatalogObject::Group(_) => unreachable!(),
    }
}

#[test]
fn latin_spectrum_of_order_three() {
    let r = report(&["latin", "spectrum", "-k", "3"]);
    assert_eq!(r["result"]["achievable"], serde_json::json!([3, 9]));
    assert_eq!(r["result"]["exhaustive"], Value::Bool(true));
}

#[test]
fn endomorphism_census_of_the_line_graph() {
    let r = report(&["--jobs", "4", "graph", "endos", "--proper", "--count-only", "@tutte-coxeter-line-graph"]);
    let res = &r["result"];
    assert_eq!(res["total"], 103_680);
    assert_eq!(res["by_rank"]["3"], 25_920);
    assert_eq!(res["by_rank"]["5"], 51_840);
    assert_eq!(res["by_rank"]["7"], 25_920);
    assert_eq!(res["complete"], Value::Bool(true));
}

#[test]
fn emitted_maps_round_trip() {
    let path = scratch("rank3.txt");
    let p = path.to_str().unwrap();
    let r = report(&["graph", "endos", "--ranks", "3", "--emit", p, "@tutte-coxeter-line-graph"]);
    assert_eq!(r["result"]["total"], 25_920);
    let text = fs::read_to_string(&path).unwrap();
    let g = line_graph();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 25_920);
    for line in lines.iter().step_by(97) {
        let f = io::parse_transformation(line).unwrap();
        assert_eq!(f.rank(), 3);
        assert!(search::is_endomorphism(&g, &f).unwrap());
        assert_eq!(io::format_image_list(f.images()), *line);
    }
}

#[test]
fn emitted_rank_seven_map_is_not_synchronized() {
    let path = scratch("rank7.txt");
    let p = path.to_str().unwrap();
    report(&["graph", "endos", "--ranks", "7", "--emit", p, "@tutte-coxeter-line-graph"]);
    let first = fs::read_to_string(&path).unwrap().lines().next().unwrap().to_string();
    let map = scratch("rank7-first.txt");
    fs::write(&map, &first).unwrap();
    let r = report(&["sync", "check", "-g", "@pgammal-2-9", "-f", map.to_str().unwrap()]);
    assert_eq!(r["result"]["synchronizes"], Value::Bool(false));
    assert_eq!(r["result"]["kernel_type"], serde_json::json!([10, 10, 5, 5, 5, 5, 5]));
    let m = report(&["sync", "minrank", "-g", "@pgammal-2-9", "-f", map.to_str().unwrap()]);
    assert_eq!(m["result"]["min_rank"], 3);
    assert_eq!(m["result"]["graph_stats"]["omega"], m["result"]["graph_stats"]["chi"]);
}

#[test]
fn reference_map_has_the_stated_kernel() {
    let r = report(&["sync", "check", "-g", "@pgammal-2-9", "-f", &fixture("t45.txt")]);
    assert_eq!(r["result"]["rank"], 7);
    assert_eq!(r["result"]["kernel_type"], serde_json::json!([10, 10, 5, 5, 5, 5, 5]));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let args = ["sync", "scan", "-g", "@s5-on-pairs", "--ranks", "3,5,7", "--samples", "20", "--seed", "11"];
    let mut a = report(&args);
    let mut b = report(&args);
    for r in [&mut a, &mut b] {
        r.as_object_mut().unwrap().remove("elapsed_ms");
    }
    assert_eq!(a, b);
    assert_eq!(a["seed"], 11);
    assert!(a["inputs"]["@s5-on-pairs"].is_string());
}

#[test]
fn catalog_build_and_reload() {
    let path = scratch("tc.g6");
    let p = path.to_str().unwrap();
    let built = report(&["catalog", "build", "tutte-coxeter", "--out", p]);
    assert_eq!(built["result"]["vertices"], 30);
    let clique = report(&["graph", "clique", p]);
    assert_eq!(clique["result"]["clique_number"], 2);
    let adj = scratch("rook3.adj");
    report(&["catalog", "build", "rook-3", "--format", "adjacency", "--out", adj.to_str().unwrap()]);
    let s = report(&["srg", "analyze", adj.to_str().unwrap()]);
    let params = &s["result"]["params"];
    assert_eq!((params["n"].clone(), params["k"].clone()), (9.into(), 4.into()));
    assert_eq!(s["result"]["conference"], Value::Bool(true));
}

#[test]
fn constructions() {
    let c = report(&["construct", "cayley", "-p", "11"]);
    assert_eq!(c["result"]["rank"], 6);
    assert_eq!(c["result"]["endomorphism_valid"], Value::Bool(true));
    assert_eq!(c["result"]["primitive"], Value::Bool(true));
    let t = report(&["construct", "triangular", "-m", "5"]);
    assert_eq!(t["result"]["rank"], 10);
    let b = report(&[
        "construct",
        "boxpower",
        "--latin",
        &fixture("homs_rank6_first.txt"),
        &fixture("homs_rank6_second.txt"),
    ]);
    assert_eq!(b["result"]["degree"], 256);
    assert_eq!(b["result"]["rank"], 6);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(synchro(&["bogus"]).status.code(), Some(2));
    assert_eq!(synchro(&["graph", "clique", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(synchro(&["graph", "clique", "@no-such-entry"]).status.code(), Some(2));
    assert_eq!(synchro(&["graph", "clique", "@pgammal-2-9"]).status.code(), Some(2));
    assert_eq!(synchro(&["construct", "cayley", "-p", "4"]).status.code(), Some(2));
}

#[test]
fn budget_overrun_gives_partial_report() {
    let out = synchro(&["--budget", "0.001", "graph", "endos", "--proper", "--count-only", "@tutte-coxeter-line-graph"]);
    assert_eq!(out.status.code(), Some(3));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["result"]["partial"], Value::Bool(true));
}
