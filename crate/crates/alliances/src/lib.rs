//! Enumerate, count, check and extend minimal defensive alliances in
//! undirected graphs.
//!
//! A *defensive alliance* is a vertex set whose every member has at least
//! as many defenders (itself plus in-set neighbors) as attackers (out-of-set
//! neighbors). The crate distinguishes *locally minimal* alliances (no
//! single removal stays defensive) from *globally minimal* ones (no
//! nonempty proper subset is defensive) and provides:
//!
//! - [`alliance`] — the predicates, the peeling-based defensive core, and
//!   witness-producing classification;
//! - [`brute`] — exhaustive subset-scan enumeration, counting and extension,
//!   the ground-truth oracle for everything else;
//! - [`tree`] — a polynomial-time extension solver and a polynomial-delay
//!   enumerator of globally minimal alliances on trees, with delay
//!   instrumentation;
//! - [`families`] — extremal graph families (diamond, spider, caterpillar,
//!   path) and their closed-form or lower-bound counts;
//! - [`reduction`] — the monotone cubic 1-in-3-SAT to extension-instance
//!   compiler;
//! - [`cli`] — the `alliances` command-line tool.
//!
//! The `examples/` directory holds one runnable program per capability;
//! start with `cargo run --example brute_enumeration`.

pub mod alliance;
pub mod brute;
pub mod cli;
pub mod families;
pub mod graph;
pub mod reduction;
pub mod tree;

pub use alliance::{classify, is_defensive_alliance, is_globally_minimal, is_locally_minimal, AllianceReport};
pub use brute::AllianceKind;
pub use graph::{parse_graph, random_tree, Graph, GraphBuilder, Vertex, VertexSet};
pub use tree::{extend_gmda, ExtensionInstance};
