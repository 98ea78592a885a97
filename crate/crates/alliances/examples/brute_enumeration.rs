//! Enumerate all defensive, locally minimal and globally minimal alliances
//! of a small graph by scanning every vertex subset.
//!
//! Run with: cargo run --example brute_enumeration

use alliances::brute::{enumerate, AllianceKind};
use alliances::graph::parse_graph;

fn main() {
    // the complete bipartite graph K_{2,4}
    let mut doc = String::new();
    for i in 1..=4 {
        doc.push_str(&format!("u1 v{i}\nu2 v{i}\n"));
    }
    let g = parse_graph(&doc).expect("valid edge list");

    for (kind, name) in [
        (AllianceKind::Defensive, "defensive"),
        (AllianceKind::LocallyMinimal, "locally minimal"),
        (AllianceKind::GloballyMinimal, "globally minimal"),
    ] {
        let sets: Vec<String> = enumerate(&g, kind)
            .expect("well under the subset cap")
            .map(|s| format!("{{{}}}", s.to_canonical_string(&g)))
            .collect();
        println!("{name} ({} sets):", sets.len());
        for s in &sets {
            println!("  {s}");
        }
    }
}
