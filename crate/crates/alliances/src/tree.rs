//! Tree-specific algorithms: a polynomial-time extension solver for
//! globally minimal defensive alliances and a polynomial-delay enumerator
//! built on top of it.
//!
//! The enumerator works in three phases. Singleton alliances (vertices of
//! degree at most one) are emitted first. While some edge joins two
//! *interior* vertices (degree 2 or 3), the tree is split at that edge into
//! two overlapping subtrees whose alliance sets partition the multi-vertex
//! answers, with the edge's own pair emitted once at the split. On each
//! split-free piece the enumerator branches over interior-vertex membership
//! and calls the extension solver after every decision, so each explored
//! branch is guaranteed to produce output — that is what bounds the delay.

use serde::Serialize;
use thiserror::Error;

use crate::alliance;
use crate::graph::{
    connected_closure_counted, split_at_interior_edge, Graph, StructureError, Vertex, VertexSet,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// An extension query: find a globally minimal defensive alliance that
/// contains `forced` and avoids `forbidden`. Callers are expected to pass
/// disjoint sets; an overlap (also one created by taking the connected
/// closure of `forced`) simply makes the instance unsatisfiable.
#[derive(Debug, Clone)]
pub struct ExtensionInstance {
    pub graph: Graph,
    pub forced: VertexSet,
    pub forbidden: VertexSet,
}

impl ExtensionInstance {
    pub fn new(graph: Graph, forced: VertexSet, forbidden: VertexSet) -> Self {
        Self {
            graph,
            forced,
            forbidden,
        }
    }
}

/// Vertices of degree 2 or 3, the only vertices that can appear with
/// exactly one in-set neighbor in a multi-vertex globally minimal alliance.
pub fn interior_set(t: &Graph) -> Result<VertexSet, StructureError> {
    if !t.is_tree() {
        return Err(StructureError::NotATree);
    }
    Ok(t.vertices()
        .filter(|&v| matches!(t.degree(v), 2 | 3))
        .collect())
}

/// Degree-one vertices.
pub fn leaf_set(t: &Graph) -> Result<VertexSet, StructureError> {
    if !t.is_tree() {
        return Err(StructureError::NotATree);
    }
    Ok(t.vertices().filter(|&v| t.degree(v) == 1).collect())
}

#[derive(Debug, Default)]
pub(crate) struct Instr {
    pub solver_calls: u64,
    pub ticks: u64,
}

/// Decides an extension instance on a tree and returns an accepting
/// alliance as witness.
///
/// The search replaces `forced` by its connected closure, rejects on
/// overlap with `forbidden`, accepts when the closed set is itself a
/// globally minimal defensive alliance, and otherwise repairs the
/// lowest-index under-defended vertex by trying each of its undecided
/// neighbors in ascending order, adding failed choices to `forbidden` for
/// the remaining sibling branches. An empty `forced` set asks whether any
/// admissible alliance exists at all and is answered by scanning the
/// single-vertex starts in ascending order.
pub fn extend_gmda(inst: &ExtensionInstance) -> Result<Option<VertexSet>, TreeError> {
    if !inst.graph.is_tree() {
        return Err(StructureError::NotATree.into());
    }
    let mut instr = Instr::default();
    if let Some(bits) = BitsetTree::new(&inst.graph) {
        let forced = bits.mask_of(&inst.forced);
        let forbidden = bits.mask_of(&inst.forbidden);
        return Ok(bits
            .solve(forced, forbidden, &mut instr)
            .map(mask_to_vertex_set));
    }
    Ok(solve_extension(
        &inst.graph,
        &inst.forced,
        &inst.forbidden,
        &mut instr,
    ))
}

fn mask_to_vertex_set(mask: u64) -> VertexSet {
    let mut members = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        members.push(m.trailing_zeros() as Vertex);
        m &= m - 1;
    }
    VertexSet::from_indices(members)
}

/// Bitmask representation of a tree on at most 64 vertices, rooted once so
/// connected closures reduce to ancestor-mask arithmetic. Hot path of the
/// enumerator: the search state fits in two machine words and the solver
/// allocates nothing.
pub(crate) struct BitsetTree {
    adj: Vec<u64>,
    deg: Vec<u32>,
    depth: Vec<u32>,
    /// `anc[v]` has a bit for every vertex on the root path of `v`,
    /// including `v` itself.
    anc: Vec<u64>,
    root: usize,
}

impl BitsetTree {
    /// `None` when the tree is empty or too large for machine words.
    pub(crate) fn new(t: &Graph) -> Option<Self> {
        let n = t.n();
        if n == 0 || n > 64 {
            return None;
        }
        let adj: Vec<u64> = t
            .vertices()
            .map(|v| {
                t.neighbors(v)
                    .iter()
                    .fold(0u64, |m, &w| m | (1u64 << w))
            })
            .collect();
        let deg: Vec<u32> = t.vertices().map(|v| t.degree(v) as u32).collect();
        let mut depth = vec![0u32; n];
        let mut anc = vec![0u64; n];
        let mut seen = vec![false; n];
        let root = 0usize;
        seen[root] = true;
        anc[root] = 1;
        let mut order = vec![root as Vertex];
        let mut head = 0;
        while head < order.len() {
            let v = order[head] as usize;
            head += 1;
            for &w in t.neighbors(v as Vertex) {
                let w = w as usize;
                if !seen[w] {
                    seen[w] = true;
                    depth[w] = depth[v] + 1;
                    anc[w] = anc[v] | (1u64 << w);
                    order.push(w as Vertex);
                }
            }
        }
        Some(Self {
            adj,
            deg,
            depth,
            anc,
            root,
        })
    }

    pub(crate) fn mask_of(&self, set: &VertexSet) -> u64 {
        set.iter().fold(0u64, |m, v| m | (1u64 << v))
    }

    /// Union of the tree paths from the lowest member to every other
    /// member, which is the minimal connected superset.
    fn closure(&self, forced: u64, instr: &mut Instr) -> u64 {
        let first = forced.trailing_zeros() as usize;
        let mut closed = 1u64 << first;
        let mut rest = forced & (forced - 1);
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            instr.ticks += 1;
            let common = self.anc[first] & self.anc[b];
            let mut lca = self.root;
            let mut best = self.depth[self.root];
            let mut m = common;
            while m != 0 {
                let x = m.trailing_zeros() as usize;
                m &= m - 1;
                if self.depth[x] >= best {
                    best = self.depth[x];
                    lca = x;
                }
            }
            closed |= (self.anc[first] ^ self.anc[b]) | (1u64 << lca);
        }
        closed
    }

    fn violates(&self, s: u64, v: usize) -> bool {
        2 * (self.adj[v] & s).count_ones() + 1 < self.deg[v]
    }

    fn core(&self, mut s: u64, instr: &mut Instr) -> u64 {
        loop {
            let mut removed = false;
            let mut m = s;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                instr.ticks += 1;
                if self.violates(s, v) {
                    s &= !(1u64 << v);
                    removed = true;
                }
            }
            if !removed {
                return s;
            }
        }
    }

    fn is_globally_minimal(&self, u: u64, instr: &mut Instr) -> bool {
        let mut m = u;
        while m != 0 {
            let v = m.trailing_zeros();
            m &= m - 1;
            if self.core(u & !(1u64 << v), instr) != 0 {
                return false;
            }
        }
        true
    }

    /// Same contract and same answer as [`solve_extension`], in mask form.
    pub(crate) fn solve(&self, forced: u64, forbidden: u64, instr: &mut Instr) -> Option<u64> {
        instr.solver_calls += 1;
        if forced & forbidden != 0 {
            return None;
        }
        if forced == 0 {
            let mut blocked = forbidden;
            for w in 0..self.adj.len() {
                if blocked >> w & 1 == 1 {
                    continue;
                }
                if let Some(hit) = self.solve_from(1u64 << w, blocked, instr) {
                    return Some(hit);
                }
                blocked |= 1u64 << w;
            }
            return None;
        }
        self.solve_from(forced, forbidden, instr)
    }

    fn solve_from(&self, forced: u64, forbidden: u64, instr: &mut Instr) -> Option<u64> {
        let closed = self.closure(forced, instr);
        if closed & forbidden != 0 {
            return None;
        }
        self.recurse(closed, forbidden, instr)
    }

    fn recurse(&self, u: u64, n: u64, instr: &mut Instr) -> Option<u64> {
        let mut violator = None;
        let mut m = u;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            instr.ticks += 1;
            if self.violates(u, v) {
                violator = Some(v);
                break;
            }
        }
        let Some(v) = violator else {
            if self.is_globally_minimal(u, instr) {
                return Some(u);
            }
            return None;
        };
        // failed choices block the remaining sibling branches; the mask
        // copies give each recursive call its own view, matching the
        // rollback-on-return discipline of the general solver
        let mut n = n;
        let mut free = self.adj[v] & !u & !n;
        while free != 0 {
            let w = free.trailing_zeros();
            free &= free - 1;
            if let Some(hit) = self.recurse(u | (1u64 << w), n, instr) {
                return Some(hit);
            }
            n |= 1u64 << w;
        }
        None
    }
}

pub(crate) fn solve_extension(
    t: &Graph,
    forced: &VertexSet,
    forbidden: &VertexSet,
    instr: &mut Instr,
) -> Option<VertexSet> {
    instr.solver_calls += 1;
    if !forced.is_disjoint(forbidden) {
        return None;
    }
    if forced.is_empty() {
        let mut blocked = forbidden.clone();
        for w in t.vertices() {
            if blocked.contains(w) {
                continue;
            }
            if let Some(hit) = solve_nonempty(t, &VertexSet::singleton(w), &blocked, instr) {
                return Some(hit);
            }
            blocked.insert(w);
        }
        return None;
    }
    solve_nonempty(t, forced, forbidden, instr)
}

fn solve_nonempty(
    t: &Graph,
    forced: &VertexSet,
    forbidden: &VertexSet,
    instr: &mut Instr,
) -> Option<VertexSet> {
    let closed = connected_closure_counted(t, forced, &mut instr.ticks)
        .expect("caller guarantees a tree and a nonempty forced set");
    if !closed.is_disjoint(forbidden) {
        return None;
    }
    let mut state = SolverState::new(t, &closed, forbidden);
    state.recurse(instr)
}

struct SolverState<'g> {
    t: &'g Graph,
    in_u: Vec<bool>,
    in_n: Vec<bool>,
    members: Vec<Vertex>,
    deg_u: Vec<u32>,
}

impl<'g> SolverState<'g> {
    fn new(t: &'g Graph, u: &VertexSet, n: &VertexSet) -> Self {
        let size = t.n();
        let mut state = Self {
            t,
            in_u: vec![false; size],
            in_n: vec![false; size],
            members: Vec::new(),
            deg_u: vec![0; size],
        };
        for v in n.iter() {
            state.in_n[v as usize] = true;
        }
        for v in u.iter() {
            state.in_u[v as usize] = true;
            state.members.push(v);
        }
        for v in u.iter() {
            state.deg_u[v as usize] = t
                .neighbors(v)
                .iter()
                .filter(|&&w| state.in_u[w as usize])
                .count() as u32;
        }
        state
    }

    fn violates(&self, v: Vertex) -> bool {
        2 * self.deg_u[v as usize] as usize + 1 < self.t.degree(v)
    }

    fn lowest_violator(&self) -> Option<Vertex> {
        self.members.iter().copied().filter(|&v| self.violates(v)).min()
    }

    fn add_u(&mut self, v: Vertex, instr: &mut Instr) {
        self.in_u[v as usize] = true;
        self.members.push(v);
        instr.ticks += 1;
        let mut d = 0;
        for &w in self.t.neighbors(v) {
            if self.in_u[w as usize] && w != v {
                d += 1;
                self.deg_u[w as usize] += 1;
            }
        }
        self.deg_u[v as usize] = d;
    }

    fn remove_u(&mut self, v: Vertex) {
        self.in_u[v as usize] = false;
        let popped = self.members.pop();
        debug_assert_eq!(popped, Some(v));
        for &w in self.t.neighbors(v) {
            if self.in_u[w as usize] {
                self.deg_u[w as usize] -= 1;
            }
        }
    }

    fn recurse(&mut self, instr: &mut Instr) -> Option<VertexSet> {
        let Some(v) = self.lowest_violator() else {
            // U is a defensive alliance; it extends to a globally minimal
            // one exactly when it already is one.
            let u_set = VertexSet::from_indices(self.members.clone());
            if alliance::is_globally_minimal_counted(self.t, &u_set, &mut instr.ticks) {
                return Some(u_set);
            }
            return None;
        };
        // additions to the forbidden set are shared across the sibling
        // branches below but rolled back when this activation gives up
        let mut added_n: Vec<Vertex> = Vec::new();
        instr.ticks += 1;
        let neighbors: Vec<Vertex> = self.t.neighbors(v).to_vec();
        for u in neighbors {
            if self.in_u[u as usize] || self.in_n[u as usize] {
                continue;
            }
            self.add_u(u, instr);
            if let Some(hit) = self.recurse(instr) {
                return Some(hit);
            }
            self.remove_u(u);
            self.in_n[u as usize] = true;
            added_n.push(u);
        }
        for u in added_n {
            self.in_n[u as usize] = false;
        }
        None
    }
}

/// Delay instrumentation for one enumeration run: one entry per emission,
/// counting the extension-solver invocations and the adjacency-list
/// accesses since the previous emission (the first entry covers the lead-in
/// before any output).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DelayStats {
    pub emissions: u64,
    pub solver_calls_between: Vec<u64>,
    pub ticks_between: Vec<u64>,
}

#[derive(Serialize)]
struct GapJson {
    solver_calls: u64,
    ticks: u64,
}

#[derive(Serialize)]
struct DelayStatsJson {
    emissions: u64,
    max_solver_calls_gap: u64,
    max_ticks_gap: u64,
    per_gap: Vec<GapJson>,
}

impl DelayStats {
    pub fn max_solver_calls_gap(&self) -> u64 {
        self.solver_calls_between.iter().copied().max().unwrap_or(0)
    }

    pub fn max_ticks_gap(&self) -> u64 {
        self.ticks_between.iter().copied().max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        let shadow = DelayStatsJson {
            emissions: self.emissions,
            max_solver_calls_gap: self.max_solver_calls_gap(),
            max_ticks_gap: self.max_ticks_gap(),
            per_gap: self
                .solver_calls_between
                .iter()
                .zip(&self.ticks_between)
                .map(|(&solver_calls, &ticks)| GapJson {
                    solver_calls,
                    ticks,
                })
                .collect(),
        };
        serde_json::to_string(&shadow).expect("plain data serializes")
    }
}

struct PieceTask {
    graph: Graph,
    to_orig: Vec<Vertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Decision {
    Exclude,
    Include,
}

enum Witness {
    Mask(u64),
    Set(VertexSet),
}

impl Witness {
    fn into_piece_set(self) -> VertexSet {
        match self {
            Witness::Mask(mask) => mask_to_vertex_set(mask),
            Witness::Set(set) => set,
        }
    }
}

struct BranchState {
    piece: Graph,
    bitset: Option<BitsetTree>,
    to_orig: Vec<Vertex>,
    interior: Vec<Vertex>,
    blocked_leaves: Vec<Vertex>,
    path: Vec<Decision>,
    chosen: Vec<Vertex>,
    rejected: Vec<Vertex>,
    chosen_mask: u64,
    rejected_mask: u64,
    leaves_mask: u64,
    last_witness: Option<Witness>,
    unwinding: bool,
    done: bool,
    full_assignments: u64,
}

impl BranchState {
    fn new(task: PieceTask, interior: Vec<Vertex>) -> Self {
        let blocked_leaves: Vec<Vertex> = task
            .graph
            .vertices()
            .filter(|&v| task.graph.degree(v) <= 1)
            .collect();
        let bitset = BitsetTree::new(&task.graph);
        let leaves_mask = blocked_leaves
            .iter()
            .fold(0u64, |m, &v| m | 1u64.checked_shl(v).unwrap_or(0));
        Self {
            piece: task.graph,
            bitset,
            to_orig: task.to_orig,
            interior,
            blocked_leaves,
            path: Vec::new(),
            chosen: Vec::new(),
            rejected: Vec::new(),
            chosen_mask: 0,
            rejected_mask: 0,
            leaves_mask,
            last_witness: None,
            unwinding: false,
            done: false,
            full_assignments: 0,
        }
    }

    fn try_decision(&mut self, v: Vertex, decision: Decision, instr: &mut Instr) -> bool {
        match decision {
            Decision::Include => {
                self.chosen.push(v);
                self.chosen_mask |= 1u64.checked_shl(v).unwrap_or(0);
            }
            Decision::Exclude => {
                self.rejected.push(v);
                self.rejected_mask |= 1u64.checked_shl(v).unwrap_or(0);
            }
        }
        let witness = match &self.bitset {
            Some(bits) => bits
                .solve(self.chosen_mask, self.rejected_mask | self.leaves_mask, instr)
                .map(Witness::Mask),
            None => {
                let forced = VertexSet::from_indices(self.chosen.clone());
                let mut blocked = self.rejected.clone();
                blocked.extend_from_slice(&self.blocked_leaves);
                let forbidden = VertexSet::from_indices(blocked);
                solve_extension(&self.piece, &forced, &forbidden, instr).map(Witness::Set)
            }
        };
        match witness {
            Some(witness) => {
                self.path.push(decision);
                self.last_witness = Some(witness);
                true
            }
            None => {
                match decision {
                    Decision::Include => {
                        self.chosen.pop();
                        self.chosen_mask &= !(1u64.checked_shl(v).unwrap_or(0));
                    }
                    Decision::Exclude => {
                        self.rejected.pop();
                        self.rejected_mask &= !(1u64.checked_shl(v).unwrap_or(0));
                    }
                };
                false
            }
        }
    }

    /// Runs the membership branching until the next emission (in piece
    /// indices) or exhaustion.
    fn advance(&mut self, instr: &mut Instr) -> Option<VertexSet> {
        loop {
            if self.done {
                return None;
            }
            if !self.unwinding && self.path.len() == self.interior.len() {
                self.full_assignments += 1;
                self.unwinding = true;
                if !self.chosen.is_empty() {
                    let witness = self
                        .last_witness
                        .take()
                        .expect("a full assignment is only reached through a yes")
                        .into_piece_set();
                    debug_assert_eq!(
                        witness
                            .iter()
                            .filter(|&v| self.interior.contains(&v))
                            .collect::<Vec<_>>(),
                        {
                            let mut sorted = self.chosen.clone();
                            sorted.sort_unstable();
                            sorted
                        },
                        "witness trace on the interior set must equal the assignment"
                    );
                    return Some(witness);
                }
                continue;
            }
            if self.unwinding {
                match self.path.pop() {
                    None => {
                        self.done = true;
                        return None;
                    }
                    Some(Decision::Include) => {
                        let v = self.chosen.pop().expect("include frame has a vertex");
                        self.chosen_mask &= !(1u64.checked_shl(v).unwrap_or(0));
                    }
                    Some(Decision::Exclude) => {
                        let v = self.rejected.pop().expect("exclude frame has a vertex");
                        self.rejected_mask &= !(1u64.checked_shl(v).unwrap_or(0));
                        if self.try_decision(v, Decision::Include, instr) {
                            self.unwinding = false;
                        }
                    }
                }
                continue;
            }
            let v = self.interior[self.path.len()];
            if !self.try_decision(v, Decision::Exclude, instr)
                && !self.try_decision(v, Decision::Include, instr)
            {
                self.unwinding = true;
            }
        }
    }
}

/// Streaming enumeration of all globally minimal defensive alliances of a
/// tree. Implements `Iterator`; sets are reported in the original tree's
/// vertex indices. Delay counters accumulate as the iteration proceeds.
pub struct TreeEnumeration {
    singletons: std::collections::VecDeque<VertexSet>,
    pieces: Vec<PieceTask>,
    branch: Option<BranchState>,
    instr: Instr,
    stats: DelayStats,
    calls_mark: u64,
    ticks_mark: u64,
    interior_size: usize,
    full_assignments: u64,
    max_branch_interior: usize,
}

/// Starts the tree enumerator on `t`.
pub fn enumerate_gmda(t: &Graph) -> Result<TreeEnumeration, TreeError> {
    if !t.is_tree() {
        return Err(StructureError::NotATree.into());
    }
    let mut singles: Vec<Vertex> = t.vertices().filter(|&v| t.degree(v) <= 1).collect();
    singles.sort_by(|&a, &b| t.label(a).cmp(t.label(b)));
    let singletons = singles.into_iter().map(VertexSet::singleton).collect();
    let mut pieces = Vec::new();
    if t.n() > 0 {
        pieces.push(PieceTask {
            graph: t.clone(),
            to_orig: t.vertices().collect(),
        });
    }
    let interior_size = t
        .vertices()
        .filter(|&v| matches!(t.degree(v), 2 | 3))
        .count();
    Ok(TreeEnumeration {
        singletons,
        pieces,
        branch: None,
        instr: Instr::default(),
        stats: DelayStats::default(),
        calls_mark: 0,
        ticks_mark: 0,
        interior_size,
        full_assignments: 0,
        max_branch_interior: 0,
    })
}

/// Number of globally minimal defensive alliances of the tree, via the
/// enumerator, without materializing the alliance list.
pub fn count_gmda(t: &Graph) -> Result<u64, TreeError> {
    let mut stream = enumerate_gmda(t)?;
    let mut count = 0;
    while stream.next().is_some() {
        count += 1;
    }
    Ok(count)
}

impl TreeEnumeration {
    /// `|I(T)|` of the input tree; the delay never exceeds
    /// `2 * (interior_size + 1)` solver calls between emissions.
    pub fn interior_size(&self) -> usize {
        self.interior_size
    }

    /// Full interior assignments explored so far (bounded by
    /// `2^interior_size`).
    pub fn full_assignments(&self) -> u64 {
        self.full_assignments
    }

    /// Largest interior set among the branched pieces so far.
    pub fn max_branch_interior(&self) -> usize {
        self.max_branch_interior
    }

    pub fn stats(&self) -> &DelayStats {
        &self.stats
    }

    pub fn into_stats(self) -> DelayStats {
        self.stats
    }

    fn record_emission(&mut self) {
        self.stats.emissions += 1;
        self.stats
            .solver_calls_between
            .push(self.instr.solver_calls - self.calls_mark);
        self.stats
            .ticks_between
            .push(self.instr.ticks - self.ticks_mark);
        self.calls_mark = self.instr.solver_calls;
        self.ticks_mark = self.instr.ticks;
    }

    fn first_interior_edge(&mut self, g: &Graph) -> Option<(Vertex, Vertex)> {
        let interior = |x: Vertex| matches!(g.degree(x), 2 | 3);
        for v in g.vertices() {
            self.instr.ticks += 1;
            for &u in g.neighbors(v) {
                if v < u && interior(v) && interior(u) {
                    return Some((v, u));
                }
            }
        }
        None
    }
}

impl Iterator for TreeEnumeration {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if let Some(s) = self.singletons.pop_front() {
            self.record_emission();
            return Some(s);
        }
        loop {
            if let Some(branch) = &mut self.branch {
                if let Some(piece_set) = branch.advance(&mut self.instr) {
                    let mapped: VertexSet = piece_set
                        .iter()
                        .map(|v| branch.to_orig[v as usize])
                        .collect();
                    self.record_emission();
                    return Some(mapped);
                }
                self.full_assignments += branch.full_assignments;
                self.branch = None;
            }
            let task = self.pieces.pop()?;
            if let Some((v, u)) = self.first_interior_edge(&task.graph) {
                let split = split_at_interior_edge(&task.graph, v, u)
                    .expect("both endpoints are interior by construction");
                let pair = VertexSet::from_indices(vec![
                    task.to_orig[v as usize],
                    task.to_orig[u as usize],
                ]);
                let right = PieceTask {
                    to_orig: split
                        .right_map
                        .iter()
                        .map(|&i| task.to_orig[i as usize])
                        .collect(),
                    graph: split.right,
                };
                let left = PieceTask {
                    to_orig: split
                        .left_map
                        .iter()
                        .map(|&i| task.to_orig[i as usize])
                        .collect(),
                    graph: split.left,
                };
                self.pieces.push(right);
                self.pieces.push(left);
                self.record_emission();
                return Some(pair);
            }
            let interior: Vec<Vertex> = task
                .graph
                .vertices()
                .filter(|&x| matches!(task.graph.degree(x), 2 | 3))
                .collect();
            // a split-free piece has few interior vertices; this is what
            // keeps the branching at or below 2^(n/2)
            assert!(
                2 * interior.len() < task.graph.n(),
                "split-free piece with |I| >= n/2"
            );
            self.max_branch_interior = self.max_branch_interior.max(interior.len());
            self.branch = Some(BranchState::new(task, interior));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute;
    use crate::graph::{parse_graph, random_tree, GraphBuilder};
    use std::collections::BTreeSet;

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

    fn spider(k: usize) -> Graph {
        let mut b = GraphBuilder::new();
        b.vertex("r");
        for i in 1..=k {
            b.edge("r", &format!("u{i}")).unwrap();
            b.edge(&format!("u{i}"), &format!("w{i}")).unwrap();
        }
        b.finish()
    }

    fn set(g: &Graph, labels: &[&str]) -> VertexSet {
        VertexSet::from_labels(g, labels).unwrap()
    }

    fn collect_sets(t: &Graph) -> BTreeSet<VertexSet> {
        enumerate_gmda(t).unwrap().collect()
    }

    #[test]
    fn interior_examples() {
        let p5 = path(5);
        assert_eq!(
            interior_set(&p5).unwrap(),
            set(&p5, &["v2", "v3", "v4"])
        );
        let sp = spider(3);
        assert_eq!(
            interior_set(&sp).unwrap(),
            set(&sp, &["r", "u1", "u2", "u3"])
        );
        let star = parse_graph("c l1\nc l2\nc l3\nc l4\nc l5").unwrap();
        assert!(interior_set(&star).unwrap().is_empty());
        assert_eq!(
            leaf_set(&star).unwrap(),
            set(&star, &["l1", "l2", "l3", "l4", "l5"])
        );
        let cyc = parse_graph("0 1\n1 2\n2 0").unwrap();
        assert_eq!(interior_set(&cyc), Err(StructureError::NotATree));
    }

    #[test]
    fn extend_examples_on_path_four() {
        let g = path(4);
        let yes = extend_gmda(&ExtensionInstance::new(
            g.clone(),
            set(&g, &["v2"]),
            VertexSet::new(),
        ))
        .unwrap();
        assert_eq!(yes, Some(set(&g, &["v2", "v3"])));

        let no = extend_gmda(&ExtensionInstance::new(
            g.clone(),
            set(&g, &["v2"]),
            set(&g, &["v3"]),
        ))
        .unwrap();
        assert_eq!(no, None);
    }

    #[test]
    fn extend_on_spider_returns_first_leg() {
        let g = spider(3);
        let hit = extend_gmda(&ExtensionInstance::new(
            g.clone(),
            set(&g, &["r"]),
            VertexSet::new(),
        ))
        .unwrap();
        assert_eq!(hit, Some(set(&g, &["r", "u1"])));
    }

    #[test]
    fn extend_rejects_non_tree_and_overlap() {
        let cyc = parse_graph("0 1\n1 2\n2 0").unwrap();
        let inst = ExtensionInstance::new(cyc, VertexSet::new(), VertexSet::new());
        assert!(matches!(
            extend_gmda(&inst),
            Err(TreeError::Structure(StructureError::NotATree))
        ));

        let g = path(4);
        let overlap = ExtensionInstance::new(
            g.clone(),
            set(&g, &["v2"]),
            set(&g, &["v2", "v4"]),
        );
        assert_eq!(extend_gmda(&overlap).unwrap(), None);

        // closure-induced overlap is also a rejection
        let closed_out = ExtensionInstance::new(
            g.clone(),
            set(&g, &["v1", "v3"]),
            set(&g, &["v2"]),
        );
        assert_eq!(extend_gmda(&closed_out).unwrap(), None);
    }

    #[test]
    fn enumerate_small_trees() {
        let p4 = path(4);
        assert_eq!(
            collect_sets(&p4),
            [
                set(&p4, &["v1"]),
                set(&p4, &["v4"]),
                set(&p4, &["v2", "v3"])
            ]
            .into_iter()
            .collect()
        );

        let k1 = path(1);
        assert_eq!(collect_sets(&k1), [set(&k1, &["v1"])].into_iter().collect());

        let sp = spider(3);
        let brute: BTreeSet<VertexSet> = brute::enumerate(&sp, brute::AllianceKind::GloballyMinimal)
            .unwrap()
            .collect();
        let tree = collect_sets(&sp);
        assert_eq!(tree.len(), 6);
        assert_eq!(tree, brute);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_gmda(&path(50)).unwrap(), 49);
        assert_eq!(count_gmda(&path(1)).unwrap(), 1);
        // k legs plus the central-choice binomial
        assert_eq!(count_gmda(&spider(10)).unwrap(), 262);
    }

    #[test]
    fn matches_brute_oracle_on_random_trees() {
        for seed in 0..150u64 {
            let n = 1 + (seed as usize % 10);
            let t = random_tree(n, 900 + seed).unwrap();
            let expected: BTreeSet<VertexSet> =
                brute::enumerate(&t, brute::AllianceKind::GloballyMinimal)
                    .unwrap()
                    .collect();
            let got = collect_sets(&t);
            assert_eq!(got, expected, "mismatch on seed {seed}");
        }
    }

    #[test]
    fn extension_matches_brute_on_random_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..300 {
            let n = 1 + rng.gen_range(0..10);
            let t = random_tree(n, rng.gen()).unwrap();
            let mut forced = VertexSet::new();
            let mut forbidden = VertexSet::new();
            for v in t.vertices() {
                match rng.gen_range(0..5) {
                    0 => {
                        forced.insert(v);
                    }
                    1 => {
                        forbidden.insert(v);
                    }
                    _ => {}
                }
            }
            if !forced.is_disjoint(&forbidden) {
                continue;
            }
            let expected = brute::brute_extension(&t, &forced, &forbidden).unwrap();
            let got = extend_gmda(&ExtensionInstance::new(t.clone(), forced.clone(), forbidden.clone()))
                .unwrap();
            assert_eq!(got.is_some(), expected.is_some());
            if let Some(w) = got {
                assert!(alliance::is_globally_minimal(&t, &w));
                if !forced.is_empty() {
                    let closure = crate::graph::connected_closure(&t, &forced).unwrap();
                    assert!(closure.is_subset(&w));
                }
                assert!(w.is_disjoint(&forbidden));
            }
        }
    }

    #[test]
    fn emitted_multi_alliances_obey_the_interior_trace_law() {
        for seed in 0..80u64 {
            let t = random_tree(2 + (seed as usize % 12), 4242 + seed).unwrap();
            let interior = interior_set(&t).unwrap();
            for a in enumerate_gmda(&t).unwrap() {
                if a.len() <= 1 {
                    continue;
                }
                let one_inside: VertexSet = a
                    .iter()
                    .filter(|&v| {
                        t.neighbors(v).iter().filter(|&&w| a.contains(w)).count() == 1
                    })
                    .collect();
                assert_eq!(one_inside, interior.intersection(&a));
            }
        }
    }

    #[test]
    fn delay_and_branch_counters_within_bounds() {
        for k in [4usize, 5, 6, 7] {
            let sp = spider(k);
            let mut stream = enumerate_gmda(&sp).unwrap();
            let mut total = 0u64;
            while stream.next().is_some() {
                total += 1;
            }
            let bound = 2 * (stream.interior_size() as u64 + 1);
            assert!(stream
                .stats()
                .solver_calls_between
                .iter()
                .all(|&g| g <= bound));
            assert_eq!(stream.stats().emissions, total);
            assert_eq!(
                stream.stats().solver_calls_between.len() as u64,
                total
            );
            assert!(stream.full_assignments() <= 1 << stream.max_branch_interior());
        }
    }

    #[test]
    fn delay_stats_serialize_to_the_documented_shape() {
        let sp = spider(4);
        let mut stream = enumerate_gmda(&sp).unwrap();
        while stream.next().is_some() {}
        let json: serde_json::Value =
            serde_json::from_str(&stream.stats().to_json()).unwrap();
        assert_eq!(json["emissions"].as_u64().unwrap(), 10);
        assert!(json["max_solver_calls_gap"].is_u64());
        assert!(json["max_ticks_gap"].is_u64());
        assert_eq!(json["per_gap"].as_array().unwrap().len(), 10);
        assert!(json["per_gap"][0]["solver_calls"].is_u64());
        assert!(json["per_gap"][0]["ticks"].is_u64());
    }

    #[test]
    fn two_vertex_tree_has_only_singletons() {
        let p2 = path(2);
        assert_eq!(
            collect_sets(&p2),
            [set(&p2, &["v1"]), set(&p2, &["v2"])].into_iter().collect()
        );
    }
}
