//! End-to-end tests of the `diamcrit` binary: flag surface, exit-code
//! taxonomy, file formats, and output determinism.

use std::path::Path;
use std::process::{Command, Output};

use diamcrit::families::{gen_elementary, gen_g3m, Elementary, Matching};
use diamcrit::formats::{read_edge_list, read_graph6};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_diamcrit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn gen_verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("g.g6");
    let out = run(&[
        "gen", "--family", "g3m", "--n", "12", "--matching", "0-1,2-3",
        "--format", "graph6", "-o", g6.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{out:?}");

    let text = std::fs::read_to_string(&g6).unwrap();
    assert_eq!(text.lines().count(), 1);
    let graph = read_graph6(text.trim()).unwrap();
    assert_eq!(graph.vertex_count(), 12);
    assert_eq!(graph.edge_count(), 21);
    let matching = Matching::new(&[(0, 1), (2, 3)], 6).unwrap();
    assert_eq!(graph, gen_g3m(12, &matching).unwrap());

    let out = run(&["verify", "-k", "3", g6.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("diameter-3-critical: yes"));

    let out = run(&["verify", "-k", "2", g6.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("wrong_diameter(3)"));
}

#[test]
fn verify_reports_non_critical_edges() {
    let dir = tempfile::tempdir().unwrap();
    let el = dir.path().join("chorded.el");
    std::fs::write(&el, "4 5\n0 1\n1 2\n2 3\n3 0\n0 2\n").unwrap();
    let out = run(&["verify", "-k", "2", el.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("non_critical_edge("));
}

#[test]
fn gen_round_trips_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let el = dir.path().join("c.el");
    let g6 = dir.path().join("c.g6");
    assert_eq!(code(&run(&["gen", "--family", "cycle", "--n", "7", "-o", el.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["gen", "--family", "cycle", "--n", "7", "-o", g6.to_str().unwrap()])), 0);
    let expected = gen_elementary(Elementary::Cycle, 7).unwrap();
    let from_el = read_edge_list(&std::fs::read_to_string(&el).unwrap()).unwrap();
    let from_g6 = read_graph6(std::fs::read_to_string(&g6).unwrap().trim()).unwrap();
    assert_eq!(from_el, expected);
    assert_eq!(from_g6, expected);
}

#[test]
fn analyze_writes_schema_stable_json() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("g.g6");
    run(&[
        "gen", "--family", "g3m", "--n", "12", "--matching", "0-1,2-3",
        "--format", "graph6", "-o", g6.to_str().unwrap(),
    ]);
    let r1 = dir.path().join("r1.json");
    let r2 = dir.path().join("r2.json");
    for r in [&r1, &r2] {
        let out = run(&[
            "analyze", "-k", "3", "-t", "3", g6.to_str().unwrap(),
            "--json", r.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{out:?}");
    }
    let b1 = std::fs::read(&r1).unwrap();
    let b2 = std::fs::read(&r2).unwrap();
    assert_eq!(b1, b2, "identical command lines must produce identical JSON");

    let value: serde_json::Value = serde_json::from_slice(&b1).unwrap();
    for field in [
        "n", "m", "k", "t", "diameter", "is_critical", "witness",
        "critical_pair_count", "multiplicity_histogram", "heavy_edge_count",
        "t_edge_count", "g0_edge_count", "lemma_checks", "degree_square_sum",
        "degree_square_ratio",
    ] {
        assert!(value.get(field).is_some(), "missing field {field}");
    }
    for field in ["l31", "l41", "l42", "l43", "e_g0_bound"] {
        assert!(value["lemma_checks"].get(field).is_some(), "missing {field}");
    }
    assert_eq!(value["n"], 12);
    assert_eq!(value["is_critical"], true);

    // parses back into the typed report
    let report: diamcrit::report::AnalysisReport = serde_json::from_slice(&b1).unwrap();
    assert_eq!(report.m, 21);
}

#[test]
fn analyze_threads_flag_is_output_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("g.g6");
    run(&["gen", "--family", "g30", "--n", "14", "--format", "graph6", "-o", g6.to_str().unwrap()]);
    let a = run(&["analyze", "-k", "3", g6.to_str().unwrap(), "--threads", "1"]);
    let b = run(&["analyze", "-k", "3", g6.to_str().unwrap(), "--threads", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn hyper_writes_hypergraph_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("g.g6");
    run(&["gen", "--family", "g30", "--n", "10", "--format", "graph6", "-o", g6.to_str().unwrap()]);
    let h4 = dir.path().join("h4.txt");
    let out = run(&[
        "hyper", "-k", "3", "-t", "3", "-i", "2", g6.to_str().unwrap(),
        "-o", h4.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{out:?}");
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["level"], 2);
    assert_eq!(report["h2_linear"], true);
    let text = std::fs::read_to_string(&h4).unwrap();
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("10 "));
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("h4.txt.json")).unwrap())
            .unwrap();
    assert!(sidecar.get("annotations").is_some());
}

#[test]
fn search_reports_extremal_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("s.json");
    let wit = dir.path().join("w.g6");
    let out = run(&[
        "search", "--n", "5", "--k", "2",
        "--json", json.to_str().unwrap(), "-o", wit.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(value["max_edges"], 6);
    assert_eq!(value["extremal_graph6"], serde_json::json!(["D]o"]));
    assert_eq!(std::fs::read_to_string(&wit).unwrap(), "D]o\n");

    // n = 7 needs the opt-in
    let out = run(&["search", "--n", "7", "--k", "2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn conjecture_prints_ratios() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("k33.g6");
    run(&["gen", "--family", "bipartite", "--n", "6", "--format", "graph6", "-o", g6.to_str().unwrap()]);
    let out = run(&["conjecture", g6.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("degree_square: lhs=54 rhs=54 ratio=1.000000 holds=true"));
    assert!(text.contains("furedi: lhs=18 bound=18 ratio=1.000000 holds=true"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["verify", "-k", "3", "/nonexistent/g.g6"])), 2);
    assert_eq!(code(&run(&["gen", "--family", "nosuch", "--n", "5"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let odd = dir.path().join("graph.weird");
    std::fs::write(&odd, "3 1\n0 1\n").unwrap();
    // unknown extension without --format
    assert_eq!(code(&run(&["verify", "-k", "1", odd.to_str().unwrap()])), 2);
    // with an explicit format it loads
    let out = run(&["verify", "-k", "1", "--format", "edgelist", odd.to_str().unwrap()]);
    assert_eq!(code(&out), 1); // P2 plus an isolated vertex is not critical
}

#[test]
fn every_subcommand_has_help() {
    for sub in ["gen", "verify", "analyze", "hyper", "search", "conjecture"] {
        let out = run(&[sub, "--help"]);
        assert_eq!(code(&out), 0, "{sub} --help failed");
        assert!(!stdout(&out).is_empty());
    }
    let help = stdout(&run(&["gen", "--help"]));
    for flag in ["--family", "--n", "--matching", "--format", "--seed"] {
        assert!(help.contains(flag), "gen help missing {flag}");
    }
    let help = stdout(&run(&["analyze", "--help"]));
    for flag in ["--strict-p-membership", "--json", "--threads"] {
        assert!(help.contains(flag), "analyze help missing {flag}");
    }
    let help = stdout(&run(&["search", "--help"]));
    assert!(help.contains("--exhaustive"));
}

#[test]
fn gen_seeded_matching_is_reproducible() {
    let a = run(&["gen", "--family", "g3m", "--n", "14", "--seed", "9", "--format", "graph6"]);
    let b = run(&["gen", "--family", "g3m", "--n", "14", "--seed", "9", "--format", "graph6"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let g = read_graph6(stdout(&a).trim()).unwrap();
    assert_eq!(g.edge_count(), (14 * 14 + 2 * 14) / 8);
}

#[test]
fn gk_shorthand_from_n() {
    let out = run(&["gen", "--family", "gk", "--k", "3", "--n", "8", "--format", "graph6"]);
    assert_eq!(code(&out), 0);
    let g = read_graph6(stdout(&out).trim()).unwrap();
    assert_eq!(g.vertex_count(), 8);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gk.g6");
    std::fs::write(&path, stdout(&out)).unwrap();
    assert_eq!(code(&run(&["verify", "-k", "3", path.to_str().unwrap()])), 0);
}

fn _assert_file_exists(p: &Path) {
    assert!(p.exists());
}
