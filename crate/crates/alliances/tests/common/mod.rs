//! Shared test utilities: seeded random graphs and independent brute-force
//! oracles. The oracles re-implement the definitions from scratch (plain
//! neighbor counting over all subsets) so they share no code with the
//! library's peeling or branching algorithms.

#![allow(dead_code)]

use alliances::graph::{Graph, GraphBuilder, Vertex, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph with vertex labels `0..n`.
pub fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.vertex(&i.to_string());
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                b.edge(&i.to_string(), &j.to_string()).unwrap();
            }
        }
    }
    b.finish()
}

pub fn random_subset(n: usize, density: f64, rng: &mut ChaCha8Rng) -> VertexSet {
    (0..n as Vertex).filter(|_| rng.gen_bool(density)).collect()
}

fn defensive_by_definition(g: &Graph, members: &[Vertex]) -> bool {
    members.iter().all(|&v| {
        let inside = g
            .neighbors(v)
            .iter()
            .filter(|w| members.contains(w))
            .count();
        let outside = g.degree(v) - inside;
        inside + 1 >= outside
    })
}

/// Definition-level defensive check, independent of the library.
pub fn oracle_is_defensive(g: &Graph, a: &VertexSet) -> bool {
    let members: Vec<Vertex> = a.iter().collect();
    defensive_by_definition(g, &members)
}

/// Globally minimal by scanning every nonempty proper subset.
pub fn oracle_is_globally_minimal(g: &Graph, a: &VertexSet) -> bool {
    let members: Vec<Vertex> = a.iter().collect();
    let k = members.len();
    if k == 0 || !defensive_by_definition(g, &members) {
        return false;
    }
    for sub in 1..(1u64 << k) - 1 {
        let subset: Vec<Vertex> = members
            .iter()
            .enumerate()
            .filter(|(i, _)| sub >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        if defensive_by_definition(g, &subset) {
            return false;
        }
    }
    true
}

/// Locally minimal straight from the definition.
pub fn oracle_is_locally_minimal(g: &Graph, a: &VertexSet) -> bool {
    let members: Vec<Vertex> = a.iter().collect();
    if members.is_empty() || !defensive_by_definition(g, &members) {
        return false;
    }
    members.iter().all(|&v| {
        let rest: Vec<Vertex> = members.iter().copied().filter(|&w| w != v).collect();
        rest.is_empty() || !defensive_by_definition(g, &rest)
    })
}

/// Union of every defensive subset of `s`, by full subset scan.
pub fn oracle_defensive_union(g: &Graph, s: &VertexSet) -> VertexSet {
    let members: Vec<Vertex> = s.iter().collect();
    let k = members.len();
    let mut union: Vec<Vertex> = Vec::new();
    for sub in 0..(1u64 << k) {
        let subset: Vec<Vertex> = members
            .iter()
            .enumerate()
            .filter(|(i, _)| sub >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        if defensive_by_definition(g, &subset) {
            union.extend_from_slice(&subset);
        }
    }
    VertexSet::from_indices(union)
}
