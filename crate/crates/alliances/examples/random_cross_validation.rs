//! Cross-validate the structured tree algorithms against the exhaustive
//! subset scan on a corpus of random trees.
//!
//! Run with: cargo run --example random_cross_validation

use std::collections::BTreeSet;

use alliances::brute::{enumerate, AllianceKind};
use alliances::graph::{random_tree, VertexSet};
use alliances::tree::enumerate_gmda;

fn main() {
    let mut trees = 0u64;
    let mut alliances_seen = 0u64;
    for n in 1..=12 {
        for seed in 0..200 {
            let t = random_tree(n, seed ^ (n as u64) << 32).expect("n >= 1");
            let expected: BTreeSet<VertexSet> = enumerate(&t, AllianceKind::GloballyMinimal)
                .expect("small graph")
                .collect();
            let got: BTreeSet<VertexSet> = enumerate_gmda(&t).expect("tree input").collect();
            assert_eq!(got, expected, "mismatch on n={n} seed={seed}");
            trees += 1;
            alliances_seen += got.len() as u64;
        }
    }
    println!("{trees} random trees validated, {alliances_seen} alliances matched exactly");
}
