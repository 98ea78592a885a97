//! Read a graph from a file (edge-list format) and classify a vertex set
//! given on the command line; the library-level twin of `alliances check`.
//!
//! Run with: cargo run --example parse_and_check -- <graph.el> v1,v2,...

use alliances::graph::{parse_graph, VertexSet};

fn main() {
    let mut args = std::env::args().skip(1);
    let (path, spec) = match (args.next(), args.next()) {
        (Some(p), Some(s)) => (p, s),
        _ => {
            // no arguments: demonstrate on a built-in path
            let g = parse_graph("v1 v2\nv2 v3\nv3 v4").unwrap();
            let set = VertexSet::from_labels(&g, &["v2", "v3"]).unwrap();
            let report = alliances::classify(&g, &set);
            println!(
                "built-in P4, {{v2,v3}}: defensive={} locally_minimal={} globally_minimal={}",
                report.is_defensive, report.is_locally_minimal, report.is_globally_minimal
            );
            return;
        }
    };
    let text = std::fs::read_to_string(&path).expect("readable graph file");
    let g = parse_graph(&text).expect("valid edge list");
    let labels: Vec<&str> = spec.split(',').filter(|s| !s.is_empty()).collect();
    let set = VertexSet::from_labels(&g, &labels).expect("labels exist in the graph");
    let report = alliances::classify(&g, &set);
    println!(
        "defensive={} locally_minimal={} globally_minimal={}",
        report.is_defensive, report.is_locally_minimal, report.is_globally_minimal
    );
}
