//! Classify vertex sets of a small graph: defensive, locally minimal,
//! globally minimal, with witnesses for the failing cases.
//!
//! Run with: cargo run --example classify_set

use alliances::graph::{parse_graph, VertexSet};

fn main() {
    let g = parse_graph("v1 v2\nv2 v3\nv3 v4\nv4 v5").expect("valid edge list");

    for labels in [
        vec!["v2", "v3"],
        vec!["v2", "v3", "v4"],
        vec!["v2"],
        vec!["v1"],
    ] {
        let set = VertexSet::from_labels(&g, &labels).expect("labels exist");
        let report = alliances::classify(&g, &set);
        print!(
            "{{{}}}: defensive={} locally_minimal={} globally_minimal={}",
            set.to_canonical_string(&g),
            report.is_defensive,
            report.is_locally_minimal,
            report.is_globally_minimal
        );
        if let Some(v) = report.witness_violator {
            print!("  (violator: {})", g.label(v));
        }
        if let Some(sub) = &report.witness_suballiance {
            print!("  (contained alliance: {})", sub.to_canonical_string(&g));
        }
        println!();
    }
}
