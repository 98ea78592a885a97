//! The defensive-alliance predicate and both minimality notions.
//!
//! A set `A` is a defensive alliance if every member has at least as many
//! defenders (itself plus neighbors inside `A`) as attackers (neighbors
//! outside `A`). Defensive alliances are closed under union, so every ground
//! set has a unique maximal defensive subset — its *defensive core* — which
//! peeling computes and which reduces the globally-minimal check to `|A|`
//! core computations.

use crate::graph::{Graph, Vertex, VertexSet};

/// Classification of one vertex set.
///
/// `is_globally_minimal` implies `is_locally_minimal` implies
/// `is_defensive` (for nonempty sets). When the set is not defensive,
/// `witness_violator` names the lowest-index member with too few defenders;
/// when it is defensive but not globally minimal, `witness_suballiance`
/// holds a proper nonempty defensive subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllianceReport {
    pub is_defensive: bool,
    pub is_locally_minimal: bool,
    pub is_globally_minimal: bool,
    pub witness_violator: Option<Vertex>,
    pub witness_suballiance: Option<VertexSet>,
}

/// Number of neighbors of `v` inside and outside `a`. The two counts sum to
/// `deg(v)`.
pub fn boundary_degrees(g: &Graph, a: &VertexSet, v: Vertex) -> (usize, usize) {
    let inside = g.neighbors(v).iter().filter(|&&w| a.contains(w)).count();
    (inside, g.degree(v) - inside)
}

fn satisfies(g: &Graph, a: &VertexSet, v: Vertex) -> bool {
    let (inside, outside) = boundary_degrees(g, a, v);
    inside + 1 >= outside
}

/// True iff every `v` in `a` has `deg_a(v) + 1 >= deg_outside(v)`.
/// The empty set qualifies vacuously; connectivity is not required.
pub fn is_defensive_alliance(g: &Graph, a: &VertexSet) -> bool {
    a.iter().all(|v| satisfies(g, a, v))
}

/// The unique maximal defensive alliance contained in `s`, obtained by
/// peeling violators until none remain. The result does not depend on the
/// deletion order; the worklist is seeded with all violators in ascending
/// index order.
pub fn defensive_core(g: &Graph, s: &VertexSet) -> VertexSet {
    defensive_core_counted(g, s, &mut 0)
}

pub(crate) fn defensive_core_counted(g: &Graph, s: &VertexSet, ticks: &mut u64) -> VertexSet {
    let n = g.n();
    let mut in_set = vec![false; n];
    for v in s.iter() {
        in_set[v as usize] = true;
    }
    let mut deg_in = vec![0u32; n];
    for v in s.iter() {
        *ticks += 1;
        deg_in[v as usize] = g
            .neighbors(v)
            .iter()
            .filter(|&&w| in_set[w as usize])
            .count() as u32;
    }
    // violation: deg_in + 1 < deg - deg_in
    let violates =
        |deg_in: &[u32], v: Vertex| 2 * deg_in[v as usize] as usize + 1 < g.degree(v);
    let mut queue: std::collections::VecDeque<Vertex> =
        s.iter().filter(|&v| violates(&deg_in, v)).collect();
    let mut queued = vec![false; n];
    for &v in &queue {
        queued[v as usize] = true;
    }
    while let Some(v) = queue.pop_front() {
        queued[v as usize] = false;
        if !in_set[v as usize] || !violates(&deg_in, v) {
            continue;
        }
        in_set[v as usize] = false;
        *ticks += 1;
        for &w in g.neighbors(v) {
            if in_set[w as usize] {
                deg_in[w as usize] -= 1;
                if violates(&deg_in, w) && !queued[w as usize] {
                    queued[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    s.iter().filter(|&v| in_set[v as usize]).collect()
}

/// True iff `a` is a nonempty defensive alliance and removing any single
/// vertex leaves a set that is empty or no longer defensive.
pub fn is_locally_minimal(g: &Graph, a: &VertexSet) -> bool {
    if a.is_empty() || !is_defensive_alliance(g, a) {
        return false;
    }
    if a.len() == 1 {
        return true;
    }
    // Removing v only weakens its in-set neighbors, so a \ {v} stays
    // defensive unless some neighbor of v inside a tips over.
    a.iter().all(|v| {
        g.neighbors(v).iter().any(|&w| {
            if !a.contains(w) {
                return false;
            }
            let (inside, outside) = boundary_degrees(g, a, w);
            inside < outside + 1 // (inside - 1) + 1 < outside + 1
        })
    })
}

/// True iff `a` is a nonempty defensive alliance with no nonempty proper
/// defensive subset. Any such subset misses some `v` in `a` and therefore
/// sits inside the defensive core of `a \ {v}`, so checking the `|a|` cores
/// for emptiness decides the question.
pub fn is_globally_minimal(g: &Graph, a: &VertexSet) -> bool {
    is_globally_minimal_counted(g, a, &mut 0)
}

pub(crate) fn is_globally_minimal_counted(g: &Graph, a: &VertexSet, ticks: &mut u64) -> bool {
    if a.is_empty() || !is_defensive_alliance(g, a) {
        return false;
    }
    a.iter().all(|v| {
        let mut rest = a.clone();
        rest.remove(v);
        defensive_core_counted(g, &rest, ticks).is_empty()
    })
}

/// Runs all three predicates and populates witnesses: the lowest-index
/// violator when not defensive, or the core of `a` minus its lowest-index
/// removable vertex when defensive but not globally minimal.
pub fn classify(g: &Graph, a: &VertexSet) -> AllianceReport {
    let violator = a.iter().find(|&v| !satisfies(g, a, v));
    let is_defensive = violator.is_none();
    let is_locally_minimal = is_defensive && !a.is_empty() && is_locally_minimal(g, a);
    let mut witness_suballiance = None;
    let is_globally_minimal = is_defensive && !a.is_empty() && {
        let mut minimal = true;
        for v in a.iter() {
            let mut rest = a.clone();
            rest.remove(v);
            let core = defensive_core(g, &rest);
            if !core.is_empty() {
                witness_suballiance = Some(core);
                minimal = false;
                break;
            }
        }
        minimal
    };
    AllianceReport {
        is_defensive,
        is_locally_minimal,
        is_globally_minimal,
        witness_violator: violator,
        witness_suballiance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, random_tree, GraphBuilder};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path(n: usize) -> Graph {
        let mut b = GraphBuilder::new();
        for i in 1..n {
            b.edge(&format!("v{i}"), &format!("v{}", i + 1)).unwrap();
        }
        if n == 1 {
            b.vertex("v1");
        }
        b.finish()
    }

    fn k2m(m: usize) -> Graph {
        let mut b = GraphBuilder::new();
        for i in 1..=m {
            b.edge("u1", &format!("v{i}")).unwrap();
            b.edge("u2", &format!("v{i}")).unwrap();
        }
        b.finish()
    }

    fn set(g: &Graph, labels: &[&str]) -> VertexSet {
        VertexSet::from_labels(g, labels).unwrap()
    }

    fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
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

    fn random_subset(n: usize, rng: &mut ChaCha8Rng) -> VertexSet {
        (0..n as Vertex).filter(|_| rng.gen_bool(0.5)).collect()
    }

    #[test]
    fn boundary_degree_examples() {
        let p4 = path(4);
        let a = set(&p4, &["v2", "v3"]);
        assert_eq!(
            boundary_degrees(&p4, &a, p4.vertex("v2").unwrap()),
            (1, 1)
        );

        let g = k2m(4);
        let a = set(&g, &["u1", "v1", "v2"]);
        assert_eq!(boundary_degrees(&g, &a, g.vertex("u1").unwrap()), (2, 2));

        let empty = VertexSet::new();
        let v = g.vertex("u2").unwrap();
        assert_eq!(boundary_degrees(&g, &empty, v), (0, g.degree(v)));
    }

    #[test]
    fn defensive_examples() {
        let p4 = path(4);
        assert!(is_defensive_alliance(&p4, &set(&p4, &["v2", "v3"])));
        assert!(is_defensive_alliance(&p4, &VertexSet::new()));
        let p3 = path(3);
        assert!(!is_defensive_alliance(&p3, &set(&p3, &["v2"])));
    }

    #[test]
    fn core_fixpoint_on_defensive_set() {
        let p4 = path(4);
        let a = set(&p4, &["v2", "v3"]);
        assert_eq!(defensive_core(&p4, &a), a);
    }

    #[test]
    fn core_peels_single_violator() {
        let p3 = path(3);
        assert!(defensive_core(&p3, &set(&p3, &["v2"])).is_empty());
    }

    #[test]
    fn core_cascade_in_diamond() {
        // u1 violates (1+1 < 3), then v1 is left alone and violates too
        let g = k2m(4);
        assert!(defensive_core(&g, &set(&g, &["u1", "v1"])).is_empty());
    }

    #[test]
    fn locally_minimal_examples() {
        let p4 = path(4);
        assert!(is_locally_minimal(&p4, &set(&p4, &["v1"])));

        // caterpillar k=4: path a-b-c plus leaves v1..v4 on a
        let cat = parse_graph("a b\nb c\na v1\na v2\na v3\na v4").unwrap();
        assert!(is_locally_minimal(&cat, &set(&cat, &["a", "b", "v1"])));

        let p5 = path(5);
        assert!(!is_locally_minimal(&p5, &set(&p5, &["v2", "v3", "v4"])));
    }

    #[test]
    fn globally_minimal_examples() {
        let spider = parse_graph("r u1\nu1 w1\nr u2\nu2 w2\nr u3\nu3 w3").unwrap();
        assert!(is_globally_minimal(&spider, &set(&spider, &["r", "u1"])));

        let p4 = path(4);
        assert!(is_globally_minimal(&p4, &set(&p4, &["v2", "v3"])));

        let p5 = path(5);
        assert!(!is_globally_minimal(&p5, &set(&p5, &["v2", "v3", "v4"])));
    }

    #[test]
    fn classify_examples() {
        let p4 = path(4);
        let r = classify(&p4, &set(&p4, &["v2", "v3"]));
        assert!(r.is_defensive && r.is_locally_minimal && r.is_globally_minimal);
        assert_eq!(r.witness_violator, None);
        assert_eq!(r.witness_suballiance, None);

        let p5 = path(5);
        let r = classify(&p5, &set(&p5, &["v2", "v3", "v4"]));
        assert!(r.is_defensive && !r.is_locally_minimal && !r.is_globally_minimal);
        // removing the lowest-index vertex v2 leaves {v3,v4}, already defensive
        assert_eq!(r.witness_suballiance, Some(set(&p5, &["v3", "v4"])));

        let p3 = path(3);
        let r = classify(&p3, &set(&p3, &["v2"]));
        assert!(!r.is_defensive && !r.is_locally_minimal && !r.is_globally_minimal);
        assert_eq!(r.witness_violator, p3.vertex("v2"));
        assert_eq!(r.witness_suballiance, None);
    }

    #[test]
    fn classify_witness_is_a_real_suballiance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let g = gnp(3 + rng.gen_range(0..8), 0.4, &mut rng);
            let a = random_subset(g.n(), &mut rng);
            let r = classify(&g, &a);
            if let Some(w) = &r.witness_suballiance {
                assert!(r.is_defensive && !r.is_globally_minimal);
                assert!(!w.is_empty() && w.len() < a.len() && w.is_subset(&a));
                assert!(is_defensive_alliance(&g, w));
            }
            if let Some(v) = r.witness_violator {
                assert!(!r.is_defensive);
                assert!(!satisfies(&g, &a, v));
            }
        }
    }

    #[test]
    fn unions_of_defensive_alliances_are_defensive() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut seen = 0;
        while seen < 200 {
            let g = gnp(4 + rng.gen_range(0..9), 0.45, &mut rng);
            let b1 = defensive_core(&g, &random_subset(g.n(), &mut rng));
            let b2 = defensive_core(&g, &random_subset(g.n(), &mut rng));
            if b1.is_empty() && b2.is_empty() {
                continue;
            }
            assert!(is_defensive_alliance(&g, &b1.union(&b2)));
            seen += 1;
        }
    }

    #[test]
    fn core_equals_union_of_defensive_subsets_exhaustively() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in 1..=5usize {
            for _ in 0..20 {
                let g = gnp(n, 0.5, &mut rng);
                for mask in 0u32..(1 << n) {
                    let s: VertexSet =
                        (0..n as Vertex).filter(|&v| mask >> v & 1 == 1).collect();
                    let mut union = VertexSet::new();
                    for sub in 0u32..(1 << n) {
                        if sub & mask != sub {
                            continue;
                        }
                        let cand: VertexSet =
                            (0..n as Vertex).filter(|&v| sub >> v & 1 == 1).collect();
                        if is_defensive_alliance(&g, &cand) {
                            union = union.union(&cand);
                        }
                    }
                    assert_eq!(defensive_core(&g, &s), union);
                }
            }
        }
    }

    // test-only peel with a shuffled deletion order
    fn peel_random_order(g: &Graph, s: &VertexSet, rng: &mut ChaCha8Rng) -> VertexSet {
        let mut current = s.clone();
        loop {
            let mut violators: Vec<Vertex> = current
                .iter()
                .filter(|&v| !satisfies(g, &current, v))
                .collect();
            if violators.is_empty() {
                return current;
            }
            violators.shuffle(rng);
            current.remove(violators[0]);
        }
    }

    #[test]
    fn peeling_is_order_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..40 {
            let g = gnp(4 + rng.gen_range(0..7), 0.5, &mut rng);
            let s = random_subset(g.n(), &mut rng);
            let reference = defensive_core(&g, &s);
            for _ in 0..100 {
                assert_eq!(peel_random_order(&g, &s, &mut rng), reference);
            }
        }
    }

    #[test]
    fn globally_minimal_alliances_are_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..400 {
            let g = if rng.gen_bool(0.5) {
                gnp(3 + rng.gen_range(0..8), 0.4, &mut rng)
            } else {
                random_tree(3 + rng.gen_range(0..8), rng.gen()).unwrap()
            };
            let a = random_subset(g.n(), &mut rng);
            if !is_globally_minimal(&g, &a) {
                continue;
            }
            let mut seen = VertexSet::singleton(a.as_slice()[0]);
            let mut stack = vec![a.as_slice()[0]];
            while let Some(v) = stack.pop() {
                for &w in g.neighbors(v) {
                    if a.contains(w) && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            assert_eq!(seen, a);
        }
    }
}
