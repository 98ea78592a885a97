//! Exhaustive subset-scan enumeration, counting and extension over all
//! vertex subsets. Quadratically slower than anything clever and completely
//! trustworthy, this module is the ground-truth oracle the structured
//! algorithms are validated against.

use std::collections::VecDeque;

use thiserror::Error;

use crate::alliance;
use crate::graph::{Graph, Vertex, VertexSet};

/// Default bound on the subset-scan exponent.
pub const DEFAULT_SUBSET_CAP: usize = 30;

/// How many mask bits we can represent at all.
const HARD_CAP: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AllianceKind {
    Defensive,
    LocallyMinimal,
    GloballyMinimal,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BruteError {
    #[error("graph order {n} exceeds the subset-scan cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("graph order {n} exceeds the subset-scan cap {cap}; for globally minimal alliances on this tree use the polynomial-delay tree enumerator instead")]
    CapExceededOnTree { n: usize, cap: usize },
    #[error("{free} undecided vertices exceed the extension scan cap {cap}")]
    ExtensionCapExceeded { free: usize, cap: usize },
    #[error("forced and forbidden sets overlap")]
    ForcedForbiddenOverlap,
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    /// Emit the empty set for `AllianceKind::Defensive` (it is vacuously
    /// defensive). Minimal kinds never include it.
    pub include_empty: bool,
    /// Subset-scan exponent bound; values above 63 are clamped.
    pub cap: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self {
            include_empty: false,
            cap: DEFAULT_SUBSET_CAP,
        }
    }
}

/// Bitmask view of a small graph for fast defensive-condition filtering.
struct MaskView {
    adj: Vec<u64>,
    degree: Vec<u32>,
}

impl MaskView {
    fn new(g: &Graph) -> Self {
        let adj: Vec<u64> = g
            .vertices()
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .fold(0u64, |m, &w| m | (1u64 << w))
            })
            .collect();
        let degree = g.vertices().map(|v| g.degree(v) as u32).collect();
        Self { adj, degree }
    }

    fn is_defensive(&self, mask: u64) -> bool {
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let inside = (self.adj[v] & mask).count_ones();
            if 2 * inside + 1 < self.degree[v] {
                return false;
            }
        }
        true
    }
}

fn mask_to_set(mask: u64) -> VertexSet {
    let mut members = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        members.push(m.trailing_zeros() as Vertex);
        m &= m - 1;
    }
    VertexSet::from_indices(members)
}

/// Next bit pattern with the same popcount (Gosper's hack), or `None` once
/// the combination space is exhausted.
fn gosper_next(mask: u64) -> Option<u64> {
    if mask == 0 {
        return None;
    }
    let c = mask & mask.wrapping_neg();
    let r = mask.checked_add(c)?;
    Some((((r ^ mask) >> 2) / c) | r)
}

fn check_cap(g: &Graph, kind: AllianceKind, cap: usize) -> Result<usize, BruteError> {
    let cap = cap.min(HARD_CAP);
    let n = g.n();
    if n > cap {
        if kind == AllianceKind::GloballyMinimal && g.is_tree() {
            return Err(BruteError::CapExceededOnTree { n, cap });
        }
        return Err(BruteError::CapExceeded { n, cap });
    }
    Ok(cap)
}

/// Lazily yields exactly the subsets passing `kind`'s predicate, in
/// canonical order: ascending size, then lexicographic by sorted labels.
/// Size classes are scanned with Gosper's hack and re-sorted per class, so
/// the order is deterministic for a fixed graph.
pub struct EnumerationStream<'g> {
    graph: &'g Graph,
    kind: AllianceKind,
    include_empty: bool,
    view: MaskView,
    next_size: usize,
    buffer: VecDeque<VertexSet>,
    emitted: u64,
    ticks: u64,
    gap_ticks: u64,
    last_gap_ticks: u64,
}

impl<'g> EnumerationStream<'g> {
    fn new(g: &'g Graph, kind: AllianceKind, opts: EnumerateOptions) -> Result<Self, BruteError> {
        check_cap(g, kind, opts.cap)?;
        Ok(Self {
            graph: g,
            kind,
            include_empty: opts.include_empty,
            view: MaskView::new(g),
            next_size: 0,
            buffer: VecDeque::new(),
            emitted: 0,
            ticks: 0,
            gap_ticks: 0,
            last_gap_ticks: 0,
        })
    }

    /// Sets emitted so far.
    pub fn emissions(&self) -> u64 {
        self.emitted
    }

    /// Candidate subsets examined so far (the basic-operation tick).
    pub fn ticks(&self) -> u64 {
        self.ticks
    }

    /// Ticks spent between the two most recent emissions.
    pub fn last_gap_ticks(&self) -> u64 {
        self.last_gap_ticks
    }

    fn passes(&self, mask: u64) -> bool {
        if !self.view.is_defensive(mask) {
            return false;
        }
        let set = mask_to_set(mask);
        match self.kind {
            AllianceKind::Defensive => {
                debug_assert!(alliance::is_defensive_alliance(self.graph, &set));
                alliance::is_defensive_alliance(self.graph, &set)
            }
            AllianceKind::LocallyMinimal => alliance::is_locally_minimal(self.graph, &set),
            AllianceKind::GloballyMinimal => alliance::is_globally_minimal(self.graph, &set),
        }
    }

    fn fill_next_class(&mut self) {
        let n = self.graph.n();
        let k = self.next_size;
        self.next_size += 1;
        if k == 0 {
            if self.kind == AllianceKind::Defensive && self.include_empty {
                self.ticks += 1;
                self.gap_ticks += 1;
                self.buffer.push_back(VertexSet::new());
            }
            return;
        }
        let limit: u64 = if n == 0 { 1 } else { 1u64 << n };
        let mut hits: Vec<VertexSet> = Vec::new();
        let mut mask = (1u64 << k) - 1;
        while mask < limit {
            self.ticks += 1;
            self.gap_ticks += 1;
            if self.passes(mask) {
                hits.push(mask_to_set(mask));
            }
            match gosper_next(mask) {
                Some(next) => mask = next,
                None => break,
            }
        }
        hits.sort_by(|a, b| a.labels(self.graph).cmp(&b.labels(self.graph)));
        self.buffer.extend(hits);
    }
}

impl Iterator for EnumerationStream<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        loop {
            if let Some(set) = self.buffer.pop_front() {
                self.emitted += 1;
                self.last_gap_ticks = self.gap_ticks;
                self.gap_ticks = 0;
                return Some(set);
            }
            if self.next_size > self.graph.n() {
                return None;
            }
            self.fill_next_class();
        }
    }
}

/// Scans all `2^n` subsets of `g` and yields those of the requested kind.
/// Errors when `n` exceeds the cap (default 30).
pub fn enumerate<'g>(
    g: &'g Graph,
    kind: AllianceKind,
) -> Result<EnumerationStream<'g>, BruteError> {
    enumerate_with(g, kind, EnumerateOptions::default())
}

pub fn enumerate_with<'g>(
    g: &'g Graph,
    kind: AllianceKind,
    opts: EnumerateOptions,
) -> Result<EnumerationStream<'g>, BruteError> {
    EnumerationStream::new(g, kind, opts)
}

/// `|enumerate(g, kind)|` without materializing or ordering the sets.
pub fn count(g: &Graph, kind: AllianceKind) -> Result<u64, BruteError> {
    count_with(g, kind, EnumerateOptions::default())
}

pub fn count_with(g: &Graph, kind: AllianceKind, opts: EnumerateOptions) -> Result<u64, BruteError> {
    check_cap(g, kind, opts.cap)?;
    let n = g.n();
    let view = MaskView::new(g);
    let mut total = 0u64;
    let limit: u64 = if n == 0 { 1 } else { 1u64 << n };
    let mut mask = 0u64;
    loop {
        let include = if mask == 0 {
            kind == AllianceKind::Defensive && opts.include_empty
        } else if view.is_defensive(mask) {
            let set = mask_to_set(mask);
            match kind {
                AllianceKind::Defensive => true,
                AllianceKind::LocallyMinimal => alliance::is_locally_minimal(g, &set),
                AllianceKind::GloballyMinimal => alliance::is_globally_minimal(g, &set),
            }
        } else {
            false
        };
        if include {
            total += 1;
        }
        mask += 1;
        if mask >= limit {
            break;
        }
    }
    Ok(total)
}

/// Canonically-first globally minimal defensive alliance `A` with
/// `u ⊆ A ⊆ V \ n_set`, or `None`. Two exact prunings keep the scan small:
/// a multi-vertex globally minimal alliance can never contain a vertex of
/// degree at most one (such a vertex is a defensive alliance by itself), and
/// singletons are globally minimal exactly when their degree is at most one.
pub fn brute_extension(
    g: &Graph,
    u: &VertexSet,
    n_set: &VertexSet,
) -> Result<Option<VertexSet>, BruteError> {
    brute_extension_with_cap(g, u, n_set, DEFAULT_SUBSET_CAP)
}

pub fn brute_extension_with_cap(
    g: &Graph,
    u: &VertexSet,
    n_set: &VertexSet,
    cap: usize,
) -> Result<Option<VertexSet>, BruteError> {
    if !u.is_disjoint(n_set) {
        return Err(BruteError::ForcedForbiddenOverlap);
    }
    let mut best: Option<VertexSet> = None;
    let mut consider = |candidate: VertexSet, g: &Graph| {
        let better = match &best {
            None => true,
            Some(b) => {
                (candidate.len(), candidate.labels(g)) < (b.len(), b.labels(g))
            }
        };
        if better {
            best = Some(candidate);
        }
    };

    // singletons
    for w in g.vertices() {
        if g.degree(w) <= 1 && !n_set.contains(w) && (u.is_empty() || *u == VertexSet::singleton(w))
        {
            consider(VertexSet::singleton(w), g);
        }
    }

    // multi-vertex candidates exclude every degree <= 1 vertex
    if u.iter().all(|v| g.degree(v) >= 2) {
        let free: Vec<Vertex> = g
            .vertices()
            .filter(|&v| g.degree(v) >= 2 && !u.contains(v) && !n_set.contains(v))
            .collect();
        let cap = cap.min(HARD_CAP);
        if free.len() > cap {
            return Err(BruteError::ExtensionCapExceeded {
                free: free.len(),
                cap,
            });
        }
        let view = MaskView::new(g);
        let u_mask = u.iter().fold(0u64, |m, v| m | (1u64 << v));
        let limit = 1u64 << free.len();
        for choice in 0..limit {
            let mut mask = u_mask;
            for (bit, &v) in free.iter().enumerate() {
                if choice >> bit & 1 == 1 {
                    mask |= 1u64 << v;
                }
            }
            if mask.count_ones() < 2 || !view.is_defensive(mask) {
                continue;
            }
            let set = mask_to_set(mask);
            if alliance::is_globally_minimal(g, &set) {
                consider(set, g);
            }
        }
    }
    Ok(best)
}
