//! Stream all globally minimal defensive alliances of a tree and summarize
//! the delay instrumentation: the number of extension-solver calls between
//! consecutive emissions stays below 2(|I|+1) even as the output grows
//! exponentially.
//!
//! Run with: cargo run --example tree_enumeration [legs]

use alliances::families::{generate, Family, FamilySpec};
use alliances::tree::enumerate_gmda;

fn main() {
    let legs: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(12);
    let t = generate(FamilySpec {
        family: Family::Spider,
        parameter: legs,
    })
    .expect("legs >= 1");

    let mut stream = enumerate_gmda(&t).expect("spiders are trees");
    let mut shown = 0;
    for set in stream.by_ref() {
        if shown < 8 {
            println!("{{{}}}", set.to_canonical_string(&t));
            shown += 1;
        } else if shown == 8 {
            println!("...");
            shown += 1;
        }
    }
    let stats = stream.stats();
    println!(
        "spider with {legs} legs: {} alliances, max gap {} solver calls (bound {}), max gap {} adjacency reads",
        stats.emissions,
        stats.max_solver_calls_gap(),
        2 * (stream.interior_size() + 1),
        stats.max_ticks_gap(),
    );
}
