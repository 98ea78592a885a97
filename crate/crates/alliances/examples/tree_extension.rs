//! Solve extension queries on a tree: given forced and forbidden vertices,
//! find a globally minimal defensive alliance through the forced set, and
//! cross-check each answer against the exhaustive scan.
//!
//! Run with: cargo run --example tree_extension

use alliances::brute::brute_extension;
use alliances::graph::{parse_graph, VertexSet};
use alliances::tree::{extend_gmda, ExtensionInstance};

fn main() {
    // a spider: root r with four legs of length two
    let mut doc = String::new();
    for i in 1..=4 {
        doc.push_str(&format!("r u{i}\nu{i} w{i}\n"));
    }
    let t = parse_graph(&doc).expect("valid edge list");

    let queries: Vec<(Vec<&str>, Vec<&str>)> = vec![
        (vec!["r"], vec![]),
        (vec!["r"], vec!["u1"]),
        (vec!["r"], vec!["u1", "u2", "u3"]),
        (vec!["u1", "u2"], vec![]),
        (vec![], vec!["r"]),
    ];
    for (forced, forbidden) in queries {
        let forced = VertexSet::from_labels(&t, &forced).expect("labels exist");
        let forbidden = VertexSet::from_labels(&t, &forbidden).expect("labels exist");
        let inst = ExtensionInstance::new(t.clone(), forced.clone(), forbidden.clone());
        let fast = extend_gmda(&inst).expect("input is a tree");
        let oracle = brute_extension(&t, &forced, &forbidden).expect("disjoint inputs");
        assert_eq!(fast.is_some(), oracle.is_some(), "solver disagrees with oracle");
        println!(
            "forced {{{}}} forbidden {{{}}} -> {}",
            forced.to_canonical_string(&t),
            forbidden.to_canonical_string(&t),
            match &fast {
                Some(set) => format!("{{{}}}", set.to_canonical_string(&t)),
                None => "NONE".to_string(),
            }
        );
    }
}
