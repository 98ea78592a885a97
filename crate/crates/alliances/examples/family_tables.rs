//! Compare the closed-form (or lower-bound) alliance counts of each graph
//! family against measured values.
//!
//! Run with: cargo run --example family_tables

use alliances::brute::{count, AllianceKind};
use alliances::families::{self, generate, Family, FamilySpec};
use alliances::tree::count_gmda;

fn main() {
    println!("path: locally minimal, recurrence vs subset scan");
    for n in 3..=14 {
        let g = generate(FamilySpec { family: Family::Path, parameter: n }).unwrap();
        println!(
            "  n={n:>2}  formula={:>5}  measured={:>5}",
            families::path_lmda_count(n).unwrap(),
            count(&g, AllianceKind::LocallyMinimal).unwrap()
        );
    }

    println!("spider: globally minimal, binomial formula vs tree enumerator");
    for k in 2..=16 {
        let g = generate(FamilySpec { family: Family::Spider, parameter: k }).unwrap();
        println!(
            "  k={k:>2}  formula={:>6}  measured={:>6}",
            families::spider_gmda_count(k).unwrap(),
            count_gmda(&g).unwrap()
        );
    }

    println!("caterpillar: locally minimal, lower bound vs subset scan");
    for k in 2..=12 {
        let g = generate(FamilySpec { family: Family::Caterpillar, parameter: k }).unwrap();
        println!(
            "  k={k:>2}  bound={:>4}  measured={:>4}",
            families::caterpillar_lmda_lower(k).unwrap(),
            count(&g, AllianceKind::LocallyMinimal).unwrap()
        );
    }

    println!("diamond: globally minimal, lower bound vs subset scan");
    for n in 4..=14 {
        let g = generate(FamilySpec { family: Family::Diamond, parameter: n }).unwrap();
        println!(
            "  n={n:>2}  bound={:>4}  measured={:>4}",
            families::diamond_gmda_lower(n).unwrap(),
            count(&g, AllianceKind::GloballyMinimal).unwrap()
        );
    }
}
