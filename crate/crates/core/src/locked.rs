//! Locked subgraphs: the vertex sets whose subtour constraints survive in a
//! minimal description.
//!
//! A vertex set `U` is locked when
//!
//! * (a) the subgraph induced by `U` is 2-connected,
//! * (b) `3 ≤ |U| ≤ n − 1`, and
//! * (c) the graph obtained by deleting `U` is connected.
//!
//! Condition (c) is the vertex-counting form: the edges outside `E(U)` can
//! only be split into two classes sharing a vertex outside `U`. The matroid
//! definition (both `M|E(U)` and `M*|(E \ E(U))` connected with rank at least
//! two) is implemented independently in [`is_locked_matroid_oracle`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DisjointSets, EdgeSet, Graph, VertexSet};

/// Largest vertex count accepted by [`enumerate_locked`].
pub const MAX_ENUMERATION_VERTICES: usize = 24;

/// Largest edge count accepted by the matroid oracle.
pub const MAX_ORACLE_EDGES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LockedCondition {
    /// The induced subgraph is not 2-connected.
    #[serde(rename = "a")]
    InducedTwoConnected,
    /// `|U|` lies outside `3..=n−1`.
    #[serde(rename = "b")]
    SizeRange,
    /// Deleting `U` disconnects the rest of the graph.
    #[serde(rename = "c")]
    ComplementConnected,
}

impl LockedCondition {
    pub fn letter(self) -> char {
        match self {
            LockedCondition::InducedTwoConnected => 'a',
            LockedCondition::SizeRange => 'b',
            LockedCondition::ComplementConnected => 'c',
        }
    }
}

impl fmt::Display for LockedCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            LockedCondition::InducedTwoConnected => "induced subgraph is not 2-connected",
            LockedCondition::SizeRange => "size outside 3..=n-1",
            LockedCondition::ComplementConnected => "remaining vertices are disconnected",
        };
        write!(f, "({}) {}", self.letter(), text)
    }
}

/// Outcome of [`is_locked`]; `failed` names the first failing condition,
/// checked in the order (b), (a), (c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LockedVerdict {
    pub locked: bool,
    pub failed: Option<LockedCondition>,
}

impl LockedVerdict {
    fn pass() -> Self {
        LockedVerdict { locked: true, failed: None }
    }

    fn fail(condition: LockedCondition) -> Self {
        LockedVerdict {
            locked: false,
            failed: Some(condition),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LockedSubgraph {
    #[serde(rename = "U")]
    pub vertices: VertexSet,
    #[serde(rename = "eH")]
    pub edges: EdgeSet,
    #[serde(rename = "nH")]
    pub n_h: usize,
    #[serde(rename = "mH")]
    pub m_h: usize,
}

impl LockedSubgraph {
    fn new(g: &Graph, vertices: VertexSet) -> Self {
        let edges = g.induced_edges(&vertices);
        LockedSubgraph {
            n_h: vertices.len(),
            m_h: edges.len(),
            vertices,
            edges,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LockedEnumeration {
    pub subgraphs: Vec<LockedSubgraph>,
    /// False when the enumeration stopped at the caller's limit.
    pub complete: bool,
}

/// Rejects graphs with loops, parallel edges, or a cut vertex.
///
/// Degree-two vertices are allowed so that cycles and small examples can be
/// inspected without preprocessing.
pub fn check_locked_domain(g: &Graph) -> Result<()> {
    if g.has_loops() || g.has_parallel_edges() {
        return Err(Error::domain("locked subgraphs need a simple loopless graph; run preprocessing first"));
    }
    if !g.is_two_connected(&g.all_edges()) {
        return Err(Error::domain("locked subgraphs need a 2-connected graph; run preprocessing first"));
    }
    Ok(())
}

pub fn is_locked(g: &Graph, u: &VertexSet) -> Result<LockedVerdict> {
    check_locked_domain(g)?;
    if u.as_slice().last().is_some_and(|&v| v >= g.n()) {
        return Err(Error::domain("vertex set refers to a vertex outside the graph"));
    }
    Ok(locked_verdict_unchecked(g, u))
}

fn locked_verdict_unchecked(g: &Graph, u: &VertexSet) -> LockedVerdict {
    let n = g.n();
    if u.len() < 3 || u.len() + 1 > n {
        return LockedVerdict::fail(LockedCondition::SizeRange);
    }
    let inside = g.induced_edges(u);
    if g.covered_vertices(&inside).len() != u.len() || !g.is_two_connected(&inside) {
        return LockedVerdict::fail(LockedCondition::InducedTwoConnected);
    }
    if !complement_connected(g, u) {
        return LockedVerdict::fail(LockedCondition::ComplementConnected);
    }
    LockedVerdict::pass()
}

/// Whether `G − U` is nonempty and connected.
pub fn complement_connected(g: &Graph, u: &VertexSet) -> bool {
    let rest = u.complement(g.n());
    !rest.is_empty() && g.induced_components(&rest).len() == 1
}

/// Whether `(V(E \ E(U)), E \ E(U))` is connected.
///
/// This edge-induced reading is weaker than [`complement_connected`]: two
/// parts of `G − U` joined only through vertices of `U` count as connected
/// here. It is kept for comparison and is not used by [`is_locked`].
pub fn complementary_subgraph_connected(g: &Graph, u: &VertexSet) -> bool {
    let rest = g.induced_edges(u).complement(g.m());
    g.connected_components(&rest).len() == 1
}

/// Vertex-counting test for a bipartition `(L1, L2)` of `E \ E(U)`: returns
/// whether `|U| + n < |U ∪ V(L1)| + |U ∪ V(L2)|`.
pub fn complement_connectivity_counting_check(g: &Graph, u: &VertexSet, l1: &EdgeSet, l2: &EdgeSet) -> Result<bool> {
    let inside = g.induced_edges(u);
    if !g.is_two_connected(&inside) || g.covered_vertices(&inside) != *u {
        return Err(Error::domain("the subgraph induced by U must be 2-connected"));
    }
    let rest = inside.complement(g.m());
    if l1.is_empty() || l2.is_empty() {
        return Err(Error::domain("both partition classes must be nonempty"));
    }
    if !l1.union(l2).eq(&rest) || l1.len() + l2.len() != rest.len() {
        return Err(Error::domain("L1 and L2 must partition the edges outside E(U)"));
    }
    let spanned = |l: &EdgeSet| u.union(&g.covered_vertices(l)).len();
    Ok(u.len() + g.n() < spanned(l1) + spanned(l2))
}

/// Locked test straight from the matroid definition: `M|L` and
/// `M*|(E \ L)` are connected matroids and `r(L) ≥ 2`, `r*(E \ L) ≥ 2`.
///
/// Matroid connectivity is decided from fundamental circuits of a basis,
/// which only needs rank queries.
pub fn is_locked_matroid_oracle(g: &Graph, l: &EdgeSet) -> Result<bool> {
    let m = g.m();
    if m > MAX_ORACLE_EDGES {
        return Err(Error::scale(format!("matroid oracle limited to {MAX_ORACLE_EDGES} edges, graph has {m}")));
    }
    if l.iter().any(|e| e >= m) {
        return Err(Error::domain("edge set refers to an edge outside the graph"));
    }
    let oracle = GraphicOracle::new(g);
    let full: u32 = if m == 0 { 0 } else { u32::MAX >> (32 - m) };
    let inside = l.mask() as u32;
    let outside = full & !inside;

    let rank = |x: u32| oracle.rank(x);
    let dual_rank = |x: u32| x.count_ones() as usize + oracle.rank(full & !x) - oracle.rank(full);
    if rank(inside) < 2 || dual_rank(outside) < 2 {
        return Ok(false);
    }
    Ok(matroid_connected(inside, rank) && matroid_connected(outside, dual_rank))
}

struct GraphicOracle {
    n: usize,
    ends: Vec<(usize, usize)>,
}

impl GraphicOracle {
    fn new(g: &Graph) -> Self {
        GraphicOracle {
            n: g.n(),
            ends: g.edges().iter().map(|e| (e.u, e.v)).collect(),
        }
    }

    fn rank(&self, mask: u32) -> usize {
        let mut dsu = DisjointSets::new(self.n);
        bits(mask as u64).filter(|&e| dsu.union(self.ends[e].0, self.ends[e].1)).count()
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Connectivity of the restriction of a matroid (given by its rank
/// function) to `ground`. Two elements are related when they lie on a common
/// fundamental circuit of a fixed basis; the classes of the generated
/// equivalence are the connected components.
fn matroid_connected(ground: u32, rank: impl Fn(u32) -> usize) -> bool {
    if ground == 0 {
        return false;
    }
    let mut basis = 0u32;
    let mut r = 0;
    for e in bits(ground as u64) {
        let grown = rank(basis | 1 << e);
        if grown > r {
            basis |= 1 << e;
            r = grown;
        }
    }
    let mut dsu = DisjointSets::new(32);
    for g in bits((ground & !basis) as u64) {
        for b in bits(basis as u64) {
            if rank((basis & !(1 << b)) | 1 << g) == r {
                dsu.union(g, b);
            }
        }
    }
    let mut elements = bits(ground as u64);
    let first = elements.next().expect("ground is nonempty");
    let root = dsu.find(first);
    elements.all(|e| dsu.find(e) == root)
}

/// All locked subgraphs, ordered by `(|U|, U)`.
///
/// Connected vertex sets are grown one neighbour at a time from every start
/// vertex, with a visited bitmap over all `2^n` subsets so each set is
/// examined once. With `limit = Some(k)` the search stops after `k` locked
/// sets and the result is flagged incomplete.
pub fn enumerate_locked(g: &Graph, limit: Option<usize>) -> Result<LockedEnumeration> {
    check_locked_domain(g)?;
    let n = g.n();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::scale(format!(
            "locked enumeration limited to {MAX_ENUMERATION_VERTICES} vertices, graph has {n}"
        )));
    }
    let adj = adjacency_masks(g);
    let all = (1u64 << n) - 1;
    let mut seen = vec![0u64; (1usize << n).div_ceil(64)];
    let mut found: Vec<u64> = Vec::new();
    let mut complete = true;
    let mut stack: Vec<u64> = (0..n).rev().map(|v| 1u64 << v).collect();

    'search: while let Some(mask) = stack.pop() {
        let idx = mask as usize;
        if seen[idx / 64] >> (idx % 64) & 1 == 1 {
            continue;
        }
        seen[idx / 64] |= 1 << (idx % 64);

        let size = mask.count_ones() as usize;
        if size >= 3 && size < n && two_connected_mask(mask, &adj) && connected_mask(all & !mask, &adj) {
            if limit.is_some_and(|k| found.len() >= k) {
                complete = false;
                break 'search;
            }
            found.push(mask);
        }
        if size + 1 >= n {
            continue;
        }
        let frontier = bits(mask).fold(0u64, |acc, v| acc | adj[v]) & !mask;
        for v in bits(frontier) {
            let next = (mask | 1 << v) as usize;
            if seen[next / 64] >> (next % 64) & 1 == 0 {
                stack.push(mask | 1 << v);
            }
        }
    }

    let mut sets: Vec<VertexSet> = found.into_iter().map(VertexSet::from_mask).collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(LockedEnumeration {
        subgraphs: sets.into_iter().map(|u| LockedSubgraph::new(g, u)).collect(),
        complete,
    })
}

/// Vertex sets of all locked subgraphs; fails if the enumeration is capped.
pub fn locked_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    let all = enumerate_locked(g, None)?;
    Ok(all.subgraphs.into_iter().map(|s| s.vertices).collect())
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    let mut adj = vec![0u64; g.n()];
    for e in g.edges() {
        if !e.is_loop() {
            adj[e.u] |= 1 << e.v;
            adj[e.v] |= 1 << e.u;
        }
    }
    adj
}

fn connected_mask(mask: u64, adj: &[u64]) -> bool {
    if mask == 0 {
        return false;
    }
    let mut reached = 1u64 << mask.trailing_zeros();
    let mut frontier = reached;
    while frontier != 0 {
        let next = bits(frontier).fold(0u64, |acc, v| acc | adj[v]) & mask & !reached;
        reached |= next;
        frontier = next;
    }
    reached == mask
}

fn two_connected_mask(mask: u64, adj: &[u64]) -> bool {
    mask.count_ones() >= 3 && connected_mask(mask, adj) && bits(mask).all(|v| connected_mask(mask & !(1 << v), adj))
}
