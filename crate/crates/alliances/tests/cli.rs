//! End-to-end tests of the command-line interface, run in-process against
//! `cli::run` so output bytes and exit codes are checked exactly.

use std::io::Write;
use std::path::Path;

use alliances::cli;

fn run(args: &[&str]) -> (i32, String) {
    let argv: Vec<String> = std::iter::once("alliances".to_string())
        .chain(args.iter().map(|s| s.to_string()))
        .collect();
    let mut out: Vec<u8> = Vec::new();
    let code = cli::run(argv, &mut out);
    (code, String::from_utf8(out).expect("utf8 output"))
}

fn write_file(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path.to_str().unwrap().to_string()
}

fn path_graph(n: usize) -> String {
    (1..n)
        .map(|i| format!("v{i} v{}\n", i + 1))
        .collect::<String>()
}

#[test]
fn count_gmda_on_path_four_with_tree_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_file(dir.path(), "p4.el", &path_graph(4));
    let (code, out) = run(&["count", &p4, "--kind", "gmda", "--algorithm", "tree"]);
    assert_eq!((code, out.as_str()), (0, "3\n"));
}

#[test]
fn enumerate_lmda_on_path_five() {
    let dir = tempfile::tempdir().unwrap();
    let p5 = write_file(dir.path(), "p5.el", &path_graph(5));
    let (code, out) = run(&["enumerate", &p5, "--kind", "lmda", "--algorithm", "brute"]);
    assert_eq!(code, 0);
    assert_eq!(out, "v1\nv5\nv2,v3\nv3,v4\n");
}

#[test]
fn extend_reports_none_when_blocked() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_file(dir.path(), "p4.el", &path_graph(4));
    let (code, out) = run(&["extend", &p4, "--forced", "v2", "--forbidden", "v3"]);
    assert_eq!((code, out.as_str()), (0, "NONE\n"));
    let (code, out) = run(&["extend", &p4, "--forced", "v2"]);
    assert_eq!((code, out.as_str()), (0, "v2,v3\n"));
}

#[test]
fn check_prints_one_line_classifications() {
    let dir = tempfile::tempdir().unwrap();
    let p5 = write_file(dir.path(), "p5.el", &path_graph(5));
    let (code, out) = run(&["check", &p5, "--set", "v2,v3"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "defensive=true locally_minimal=true globally_minimal=true\n"
    );
    let (_, out) = run(&["check", &p5, "--set", "v2,v3,v4"]);
    assert_eq!(
        out,
        "defensive=true locally_minimal=false globally_minimal=false suballiance=v3,v4\n"
    );
    let (_, out) = run(&["check", &p5, "--set", "v2"]);
    assert_eq!(
        out,
        "defensive=false locally_minimal=false globally_minimal=false violator=v2\n"
    );
}

#[test]
fn brute_and_tree_agree_as_line_sets() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..20u64 {
        let t = alliances::random_tree(9, seed).unwrap();
        let file = write_file(dir.path(), &format!("t{seed}.el"), &t.to_edge_list());
        let (code_b, brute) = run(&["enumerate", &file, "--kind", "gmda", "--algorithm", "brute"]);
        let (code_t, tree) = run(&["enumerate", &file, "--kind", "gmda", "--algorithm", "tree"]);
        assert_eq!((code_b, code_t), (0, 0));
        let to_set = |s: &str| {
            s.lines()
                .map(str::to_string)
                .collect::<std::collections::BTreeSet<String>>()
        };
        assert_eq!(to_set(&brute), to_set(&tree), "seed {seed}");
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let t = alliances::random_tree(10, 99).unwrap();
    let file = write_file(dir.path(), "t.el", &t.to_edge_list());
    for args in [
        vec!["enumerate", file.as_str(), "--kind", "gmda", "--algorithm", "tree"],
        vec!["enumerate", file.as_str(), "--kind", "da", "--algorithm", "brute"],
        vec!["delay-stats", file.as_str()],
        vec!["generate", "--family", "spider", "--param", "6", "--table"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first, second);
    }
}

#[test]
fn generate_emits_canonical_edge_lists() {
    let (code, out) = run(&["generate", "--family", "spider", "--param", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "r u1\nu1 w1\n");
    let (code, out) = run(&["generate", "--family", "path", "--param", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "v1 v2\nv2 v3\n");
}

#[test]
fn generate_table_reports_formula_and_measured() {
    let (code, out) = run(&[
        "generate", "--family", "spider", "--param", "5", "--table",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "# spider\tparam\tformula\tmeasured");
    assert_eq!(lines[1], "2\t4\t4");
    assert_eq!(lines[4], "5\t15\t15");

    let (code, out) = run(&[
        "generate", "--family", "path", "--param", "6", "--table", "--kind", "gmda",
    ]);
    assert_eq!(code, 0);
    // the closed form undercounts the single edge; the table shows it
    assert!(out.contains("2\t1\t2"));
    assert!(out.contains("6\t5\t5"));
}

#[test]
fn reduce_emits_edge_list_with_forced_markers() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write_file(
        dir.path(),
        "phi.cnf",
        "p cnf 3 3\n1 2 3 0\n1 2 3 0\n1 2 3 0\n",
    );
    let (code, out) = run(&["reduce", &cnf]);
    assert_eq!(code, 0);
    let forced: Vec<&str> = out.lines().filter(|l| l.starts_with("U ")).collect();
    assert_eq!(
        forced,
        ["U c1", "U c2", "U c3", "U e1", "U e2", "U e3", "U f1", "U f2", "U f3"]
    );
    let edges = out.lines().filter(|l| !l.starts_with("U ")).count();
    // 14 edges per clause block plus 4 pendant edges per variable
    assert_eq!(edges, 14 * 3 + 4 * 3);
}

#[test]
fn delay_stats_emit_the_documented_json() {
    let dir = tempfile::tempdir().unwrap();
    let sp = alliances::families::generate(alliances::families::FamilySpec {
        family: alliances::families::Family::Spider,
        parameter: 4,
    })
    .unwrap();
    let file = write_file(dir.path(), "sp4.el", &sp.to_edge_list());
    let (code, out) = run(&["delay-stats", &file]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["emissions"].as_u64(), Some(10));
    assert_eq!(json["per_gap"].as_array().unwrap().len(), 10);
}

#[test]
fn exit_codes_for_usage_format_and_cap_errors() {
    let dir = tempfile::tempdir().unwrap();
    // usage: tree algorithm only supports gmda
    let p4 = write_file(dir.path(), "p4.el", &path_graph(4));
    let (code, _) = run(&["enumerate", &p4, "--kind", "lmda", "--algorithm", "tree"]);
    assert_eq!(code, 2);
    // usage: overlapping forced/forbidden
    let (code, _) = run(&["extend", &p4, "--forced", "v2", "--forbidden", "v2"]);
    assert_eq!(code, 2);
    // usage: unknown subcommand
    let (code, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    // format: malformed edge line
    let bad = write_file(dir.path(), "bad.el", "a b c\n");
    let (code, _) = run(&["count", &bad, "--kind", "da"]);
    assert_eq!(code, 3);
    // format: missing file
    let (code, _) = run(&["count", "/nonexistent/graph.el", "--kind", "da"]);
    assert_eq!(code, 3);
    // format: self-loop
    let loopy = write_file(dir.path(), "loop.el", "x x\n");
    let (code, _) = run(&["check", &loopy, "--set", "x"]);
    assert_eq!(code, 3);
    // cap: a 35-vertex tree exceeds the subset scan
    let t = alliances::random_tree(35, 5).unwrap();
    let big = write_file(dir.path(), "big.el", &t.to_edge_list());
    let (code, _) = run(&["count", &big, "--kind", "gmda", "--algorithm", "brute"]);
    assert_eq!(code, 4);
    // ... but the tree algorithm handles it
    let (code, out) = run(&["count", &big, "--kind", "gmda", "--algorithm", "tree"]);
    assert_eq!(code, 0);
    assert!(out.trim().parse::<u64>().unwrap() > 0);
}

#[test]
fn include_empty_adds_a_blank_line_for_da() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write_file(dir.path(), "p3.el", &path_graph(3));
    let (_, without) = run(&["enumerate", &p3, "--kind", "da"]);
    let (_, with) = run(&["enumerate", &p3, "--kind", "da", "--include-empty"]);
    assert_eq!(with.lines().count(), without.lines().count() + 1);
    assert_eq!(with.lines().next(), Some(""));
}

#[test]
fn graph_round_trips_through_the_cli_formats() {
    let dir = tempfile::tempdir().unwrap();
    let (_, doc) = run(&["generate", "--family", "caterpillar", "--param", "4"]);
    let file = write_file(dir.path(), "cat.el", &doc);
    let parsed = alliances::parse_graph(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(parsed.to_edge_list(), doc);
}
