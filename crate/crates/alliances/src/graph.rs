//! Undirected simple graphs with stable external labels, plus the tree
//! primitives (connected closure, interior-edge split) the enumeration
//! algorithms build on.

use std::collections::{BinaryHeap, HashMap, HashSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Internal vertex index, `0..n`.
pub type Vertex = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("line {line}: expected `v <label>` or `<a> <b>`, got {got} token(s)")]
    Malformed { line: usize, got: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown vertex label `{0}`")]
pub struct UnknownLabel(pub String);

/// Errors of the tree-structural operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("graph is not a tree")]
    NotATree,
    #[error("connected closure of the empty set is undefined")]
    EmptySet,
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(String, String),
    #[error("vertex `{0}` has degree {1}, expected 2 or 3")]
    NotInterior(String, usize),
}

/// An immutable, undirected, simple graph.
///
/// Vertices carry external string labels which survive every induced
/// subgraph or split operation, so results can always be reported in the
/// input's vocabulary. Neighbor lists are sorted ascending by internal
/// index. Values are plain data and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<Vec<Vertex>>,
    index_of: HashMap<String, Vertex>,
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v as usize]
    }

    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.index_of.get(label).copied()
    }

    /// Neighbors of `v`, sorted ascending by index.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adjacency[a as usize].binary_search(&b).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n() as Vertex
    }

    /// All edges as `(a, b)` with `a < b` (by internal index).
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |a| {
            self.neighbors(a)
                .iter()
                .copied()
                .filter(move |&b| a < b)
                .map(move |b| (a, b))
        })
    }

    /// True iff the graph is connected and has exactly `n - 1` edges.
    /// The empty graph and the one-vertex graph count as trees.
    pub fn is_tree(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        if self.edge_count() != n - 1 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0 as Vertex];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == n
    }

    /// Canonical edge-list document: each edge once, smaller label first,
    /// lines sorted; isolated vertices as trailing `v <label>` lines.
    ///
    /// The one exception to "smaller label first": a vertex literally
    /// labeled `v` is printed second, because a leading `v` token marks an
    /// isolated-vertex declaration.
    pub fn to_edge_list(&self) -> String {
        let mut lines: Vec<(String, String)> = self
            .edges()
            .map(|(a, b)| {
                let (x, y) = (self.label(a), self.label(b));
                if x <= y {
                    (x.to_owned(), y.to_owned())
                } else {
                    (y.to_owned(), x.to_owned())
                }
            })
            .collect();
        lines.sort();
        let mut out = String::new();
        for (x, y) in lines {
            if x == "v" {
                out.push_str(&format!("{y} {x}\n"));
            } else {
                out.push_str(&format!("{x} {y}\n"));
            }
        }
        let mut isolated: Vec<&str> = self
            .vertices()
            .filter(|&v| self.degree(v) == 0)
            .map(|v| self.label(v))
            .collect();
        isolated.sort();
        for l in isolated {
            out.push_str(&format!("v {l}\n"));
        }
        out
    }
}

/// Incremental graph construction with validation.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index_of: HashMap<String, Vertex>,
    adjacency: Vec<Vec<Vertex>>,
    edge_set: HashSet<(Vertex, Vertex)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the index of `label`, creating the vertex if new.
    pub fn vertex(&mut self, label: &str) -> Vertex {
        if let Some(&v) = self.index_of.get(label) {
            return v;
        }
        let v = self.labels.len() as Vertex;
        self.labels.push(label.to_owned());
        self.index_of.insert(label.to_owned(), v);
        self.adjacency.push(Vec::new());
        v
    }

    pub fn edge(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a.to_owned()));
        }
        let (u, v) = (self.vertex(a), self.vertex(b));
        let key = (u.min(v), u.max(v));
        if !self.edge_set.insert(key) {
            return Err(GraphError::DuplicateEdge(a.to_owned(), b.to_owned()));
        }
        self.adjacency[u as usize].push(v);
        self.adjacency[v as usize].push(u);
        Ok(())
    }

    pub fn finish(mut self) -> Graph {
        for list in &mut self.adjacency {
            list.sort_unstable();
        }
        Graph {
            labels: self.labels,
            adjacency: self.adjacency,
            index_of: self.index_of,
        }
    }
}

/// Parses the edge-list format: one edge per line as two whitespace-separated
/// labels, `#` comment lines, and `v <label>` lines declaring isolated
/// vertices. Self-loops and repeated edges are rejected with line numbers.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut b = GraphBuilder::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(ParseError::Malformed {
                line,
                got: tokens.len(),
            });
        }
        if tokens[0] == "v" {
            b.vertex(tokens[1]);
        } else {
            b.edge(tokens[0], tokens[1])
                .map_err(|source| ParseError::Graph { line, source })?;
        }
    }
    Ok(b.finish())
}

/// A subset of the vertices of some graph, kept sorted by internal index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet {
    members: Vec<Vertex>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: Vertex) -> Self {
        Self { members: vec![v] }
    }

    pub fn from_indices(mut members: Vec<Vertex>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn from_labels<S: AsRef<str>>(g: &Graph, labels: &[S]) -> Result<Self, UnknownLabel> {
        let mut members = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            members.push(g.vertex(l).ok_or_else(|| UnknownLabel(l.to_owned()))?);
        }
        Ok(Self::from_indices(members))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.members
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        match self.members.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        match self.members.binary_search(&v) {
            Ok(pos) => {
                self.members.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        Self::from_indices(members)
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self {
            members: self.iter().filter(|&v| !other.contains(v)).collect(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            members: self.iter().filter(|&v| other.contains(v)).collect(),
        }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Member labels sorted lexicographically (the canonical form).
    pub fn labels<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        let mut ls: Vec<&str> = self.iter().map(|v| g.label(v)).collect();
        ls.sort_unstable();
        ls
    }

    /// Canonical rendering: comma-separated labels in lexicographic order.
    pub fn to_canonical_string(&self, g: &Graph) -> String {
        self.labels(g).join(",")
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<T: IntoIterator<Item = Vertex>>(iter: T) -> Self {
        Self::from_indices(iter.into_iter().collect())
    }
}

/// The two sides of an interior-edge split of a tree, each an induced
/// subtree, with maps from split-graph indices back to the original.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSplit {
    pub left: Graph,
    pub right: Graph,
    /// `left_map[i]` is the original index of left's vertex `i`.
    pub left_map: Vec<Vertex>,
    pub right_map: Vec<Vertex>,
}

/// Smallest connected vertex set of the tree `t` containing `u`; equals the
/// union of the unique `t`-paths between all pairs of `u`. Linear time.
pub fn connected_closure(t: &Graph, u: &VertexSet) -> Result<VertexSet, StructureError> {
    connected_closure_counted(t, u, &mut 0)
}

pub(crate) fn connected_closure_counted(
    t: &Graph,
    u: &VertexSet,
    ticks: &mut u64,
) -> Result<VertexSet, StructureError> {
    if !t.is_tree() {
        return Err(StructureError::NotATree);
    }
    if u.is_empty() {
        return Err(StructureError::EmptySet);
    }
    let n = t.n();
    let root = u.as_slice()[0];
    // Rooted at a member of u, the closure is exactly the set of vertices
    // whose subtree contains a member of u.
    let mut order = Vec::with_capacity(n);
    let mut parent: Vec<Option<Vertex>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[root as usize] = true;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        *ticks += 1;
        for &w in t.neighbors(v) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                parent[w as usize] = Some(v);
                order.push(w);
            }
        }
    }
    let mut marked = vec![false; n];
    for v in u.iter() {
        marked[v as usize] = true;
    }
    for &v in order.iter().rev() {
        if marked[v as usize] {
            if let Some(p) = parent[v as usize] {
                marked[p as usize] = true;
            }
        }
    }
    Ok((0..n as Vertex).filter(|&v| marked[v as usize]).collect())
}

/// Splits the tree `t` at the edge `{v, u}`, both endpoints of degree 2
/// or 3. The left side is the component of `v` once every other edge at `u`
/// is removed (so `u` survives as a leaf of the left side), and
/// symmetrically for the right side.
pub fn split_at_interior_edge(
    t: &Graph,
    v: Vertex,
    u: Vertex,
) -> Result<EdgeSplit, StructureError> {
    if !t.is_tree() {
        return Err(StructureError::NotATree);
    }
    if !t.has_edge(v, u) {
        return Err(StructureError::NotAnEdge(
            t.label(v).to_owned(),
            t.label(u).to_owned(),
        ));
    }
    for x in [v, u] {
        let d = t.degree(x);
        if !(d == 2 || d == 3) {
            return Err(StructureError::NotInterior(t.label(x).to_owned(), d));
        }
    }
    let (left, left_map) = split_side(t, v, u);
    let (right, right_map) = split_side(t, u, v);
    Ok(EdgeSplit {
        left,
        right,
        left_map,
        right_map,
    })
}

/// Component of `keep` in `t` with the vertex `cut` reduced to a pendant
/// neighbor of `keep`, as an induced standalone graph plus index map.
fn split_side(t: &Graph, keep: Vertex, cut: Vertex) -> (Graph, Vec<Vertex>) {
    let n = t.n();
    let mut in_side = vec![false; n];
    in_side[keep as usize] = true;
    in_side[cut as usize] = true;
    let mut stack = vec![keep];
    while let Some(x) = stack.pop() {
        for &w in t.neighbors(x) {
            if w != cut && !in_side[w as usize] {
                in_side[w as usize] = true;
                stack.push(w);
            }
        }
    }
    let map: Vec<Vertex> = (0..n as Vertex).filter(|&x| in_side[x as usize]).collect();
    let mut b = GraphBuilder::new();
    for &orig in &map {
        b.vertex(t.label(orig));
    }
    for &orig in &map {
        for &w in t.neighbors(orig) {
            if orig < w && in_side[w as usize] {
                // cut's only surviving edge is {keep, cut}
                if (orig == cut && w != keep) || (w == cut && orig != keep) {
                    continue;
                }
                b.edge(t.label(orig), t.label(w))
                    .expect("induced subgraph edges are unique");
            }
        }
    }
    (b.finish(), map)
}

/// Uniformly random labeled tree on `n` vertices (labels `0..n`), decoded
/// from a random Prüfer sequence. Deterministic for a fixed `(n, seed)`.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, StructureError> {
    if n == 0 {
        return Err(StructureError::EmptySet);
    }
    let mut b = GraphBuilder::new();
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    for l in &labels {
        b.vertex(l);
    }
    if n >= 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e3779b97f4a7c15));
        let prufer: Vec<usize> = (0..n.saturating_sub(2))
            .map(|_| rng.gen_range(0..n))
            .collect();
        for (a, b2) in decode_prufer(n, &prufer) {
            b.edge(&labels[a], &labels[b2]).expect("tree edges unique");
        }
    }
    Ok(b.finish())
}

fn decode_prufer(n: usize, prufer: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(prufer.len() + 2, n);
    let mut degree = vec![1u32; n];
    for &a in prufer {
        degree[a] += 1;
    }
    let mut leaves: BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&i| degree[i] == 1)
        .map(std::cmp::Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &a in prufer {
        let u = leaves.pop().expect("prufer decode invariant").0;
        degree[u] -= 1;
        degree[a] -= 1;
        edges.push((u, a));
        if degree[a] == 1 {
            leaves.push(std::cmp::Reverse(a));
        }
    }
    let u = leaves.pop().expect("two leaves remain").0;
    let v = leaves.pop().expect("two leaves remain").0;
    edges.push((u, v));
    edges
}
