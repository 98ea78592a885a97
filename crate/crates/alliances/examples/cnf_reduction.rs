//! Compile a monotone cubic 3-CNF into an alliance extension instance and
//! verify that exactly-one satisfiability transfers: the formula has an
//! exactly-one assignment iff some globally minimal defensive alliance
//! contains every forced gadget vertex.
//!
//! Run with: cargo run --example cnf_reduction

use alliances::brute::brute_extension;
use alliances::reduction::{build_extension_instance, one_in_three_brute, parse_cnf};

fn main() {
    let satisfiable = "p cnf 3 3\n1 2 3 0\n1 2 3 0\n1 2 3 0\n";
    let unsatisfiable = "p cnf 4 4\n1 2 3 0\n1 2 4 0\n1 3 4 0\n2 3 4 0\n";

    for (name, text) in [("triple", satisfiable), ("omit-one", unsatisfiable)] {
        let phi = parse_cnf(text).expect("valid cubic monotone formula");
        let inst = build_extension_instance(&phi);
        println!(
            "{name}: {} variables, {} clauses -> gadget with {} vertices, {} forced",
            phi.num_variables(),
            phi.clauses().len(),
            inst.graph.n(),
            inst.forced.len()
        );

        let assignment = one_in_three_brute(&phi).expect("within the scan cap");
        let witness = brute_extension(&inst.graph, &inst.forced, &inst.forbidden)
            .expect("disjoint forced/forbidden");
        println!(
            "  exactly-one satisfiable: {}; alliance through forced set: {}",
            assignment.is_some(),
            witness.is_some()
        );
        assert_eq!(assignment.is_some(), witness.is_some());
        if let Some(w) = witness {
            let true_vars: Vec<String> = (1..=phi.num_variables())
                .filter(|i| w.contains(inst.graph.vertex(&format!("v{i}")).unwrap()))
                .map(|i| format!("x{i}"))
                .collect();
            println!("  alliance encodes the assignment: {}", true_vars.join(", "));
        }
    }
}
