//! Undirected multigraphs with stable edge ids.
//!
//! Vertices are `0..n` internally; the edge-list text format and every
//! user-facing document use 1-based vertex labels. Edge ids are dense
//! `0..m` in file order.

use std::collections::BTreeSet;
use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, QPoint, Rational};

/// A set of vertices in canonical (sorted, duplicate free) form.
///
/// Serialises as an array of 1-based labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(d)?;
        if labels.contains(&0) {
            return Err(serde::de::Error::custom("vertex labels are 1-based"));
        }
        Ok(VertexSet::new(labels.into_iter().map(|l| l - 1).collect()))
    }
}

/// Serde adapter writing a single vertex index as its 1-based label.
pub(crate) mod serde_label {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &usize, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(*v as u64 + 1)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
        let label = usize::deserialize(d)?;
        label.checked_sub(1).ok_or_else(|| serde::de::Error::custom("vertex labels are 1-based"))
    }
}

impl VertexSet {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        VertexSet(vertices)
    }

    pub fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        VertexSet(vertices)
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSet((0..64).filter(|v| mask >> v & 1 == 1).collect())
    }

    /// Bitmask form; only valid for vertex indices below 64.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &v| m | 1u64 << v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.clone()
    }

    pub fn complement(&self, n: usize) -> VertexSet {
        VertexSet((0..n).filter(|v| !self.contains(*v)).collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    /// The representative of `{U, V \ U}` that contains vertex 0.
    pub fn canonical_side(&self, n: usize) -> VertexSet {
        if self.contains(0) {
            self.clone()
        } else {
            self.complement(n)
        }
    }

    /// 1-based labels, as written in files and documents.
    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    pub fn from_labels(labels: &[usize], n: usize) -> Result<Self> {
        let mut out = Vec::with_capacity(labels.len());
        for &l in labels {
            if l == 0 || l > n {
                return Err(Error::domain(format!("vertex label {l} outside 1..={n}")));
            }
            out.push(l - 1);
        }
        Ok(VertexSet::new(out))
    }

    /// `1_2_3` style tag used in constraint names.
    pub fn label_string(&self) -> String {
        self.labels()
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join("_")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

/// A set of edge ids in sorted form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeSet(Vec<usize>);

impl EdgeSet {
    pub fn new(mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        EdgeSet(edges)
    }

    pub fn from_sorted(edges: Vec<usize>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        EdgeSet(edges)
    }

    pub fn all(m: usize) -> Self {
        EdgeSet((0..m).collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        EdgeSet((0..64).filter(|e| mask >> e & 1 == 1).collect())
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &e| m | 1u64 << e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.clone()
    }

    pub fn complement(&self, m: usize) -> EdgeSet {
        EdgeSet((0..m).filter(|e| !self.contains(*e)).collect())
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.iter().copied().filter(|e| !other.contains(*e)).collect())
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.iter().all(|e| other.contains(*e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }
}

/// An undirected multigraph. Loops and parallel edges are representable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    weights: Vec<Rational>,
    // (neighbour, edge id) per vertex, loops listed once
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph with unit weights. Panics on out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let weights = vec![Rational::one(); edges.len()];
        Self::with_weights(n, edges, weights).expect("invalid edge list")
    }

    pub fn with_weights(n: usize, edges: &[(usize, usize)], weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != edges.len() {
            return Err(Error::DimensionMismatch {
                expected: edges.len(),
                found: weights.len(),
            });
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut list = Vec::with_capacity(edges.len());
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::domain(format!("edge {id} has an endpoint outside 0..{n}")));
            }
            adjacency[u].push((v, id));
            if u != v {
                adjacency[v].push((u, id));
            }
            list.push(Edge { u, v });
        }
        Ok(Graph {
            n,
            edges: list,
            weights,
            adjacency,
        })
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges)
    }

    /// Triangular prism: triangles 0-1-2 and 3-4-5 joined by 0-3, 1-4, 2-5.
    pub fn prism() -> Self {
        Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    }

    /// Wheel with hub 0 and `rim` rim vertices.
    pub fn wheel(rim: usize) -> Self {
        let mut edges = Vec::new();
        for i in 1..=rim {
            edges.push((0, i));
        }
        for i in 1..=rim {
            edges.push((i, i % rim + 1));
        }
        Graph::new(rim + 1, &edges)
    }

    /// Petersen graph: outer cycle 0..5, spokes i–i+5, inner pentagram.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
        }
        for i in 0..5 {
            edges.push((i, i + 5));
        }
        for i in 0..5 {
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight_vector(&self) -> QPoint {
        QPoint::new(self.weights.clone())
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::from_sorted((0..self.n).collect())
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::all(self.m())
    }

    /// Number of edge ends at `v`; a loop contributes 2.
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v]
            .iter()
            .map(|&(w, _)| if w == v { 2 } else { 1 })
            .sum()
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.adjacency[v].iter().filter(|&&(w, _)| w == v).count()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges
            .iter()
            .filter(|e| !e.is_loop())
            .any(|e| !seen.insert((e.u.min(e.v), e.u.max(e.v))))
    }

    pub fn is_simple(&self) -> bool {
        !self.has_loops() && !self.has_parallel_edges()
    }

    fn check_vertices(&self, u: &VertexSet) -> Result<()> {
        match u.as_slice().last() {
            Some(&v) if v >= self.n => Err(Error::domain(format!("vertex index {v} outside 0..{}", self.n))),
            _ => Ok(()),
        }
    }

    /// Edges with exactly one endpoint in `u`.
    pub fn delta(&self, u: &VertexSet) -> Result<EdgeSet> {
        self.check_vertices(u)?;
        if u.is_empty() || u.len() == self.n {
            return Err(Error::domain("cut side must be nonempty and proper"));
        }
        Ok(self.delta_unchecked(u))
    }

    pub(crate) fn delta_unchecked(&self, u: &VertexSet) -> EdgeSet {
        let inside = self.membership(u);
        EdgeSet::from_sorted(
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, e)| inside[e.u] != inside[e.v])
                .map(|(id, _)| id)
                .collect(),
        )
    }

    /// Edges with both endpoints in `u` (loops at vertices of `u` included).
    pub fn induced_edges(&self, u: &VertexSet) -> EdgeSet {
        let inside = self.membership(u);
        EdgeSet::from_sorted(
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, e)| inside[e.u] && inside[e.v])
                .map(|(id, _)| id)
                .collect(),
        )
    }

    fn membership(&self, u: &VertexSet) -> Vec<bool> {
        let mut inside = vec![false; self.n];
        for v in u.iter().filter(|&v| v < self.n) {
            inside[v] = true;
        }
        inside
    }

    /// Vertices covered by an edge set.
    pub fn covered_vertices(&self, f: &EdgeSet) -> VertexSet {
        VertexSet::new(f.iter().flat_map(|e| [self.edges[e].u, self.edges[e].v]).collect())
    }

    /// Components of `(V(restrict), restrict)`, ordered by smallest vertex.
    pub fn connected_components(&self, restrict: &EdgeSet) -> Vec<VertexSet> {
        let mut dsu = DisjointSets::new(self.n);
        let mut covered = vec![false; self.n];
        for e in restrict.iter() {
            let Edge { u, v } = self.edges[e];
            covered[u] = true;
            covered[v] = true;
            dsu.union(u, v);
        }
        group_by_root(&mut dsu, (0..self.n).filter(|&v| covered[v]))
    }

    /// Components of the subgraph induced by `u`, isolated vertices included.
    pub fn induced_components(&self, u: &VertexSet) -> Vec<VertexSet> {
        let inside = self.membership(u);
        let mut dsu = DisjointSets::new(self.n);
        for e in &self.edges {
            if inside[e.u] && inside[e.v] {
                dsu.union(e.u, e.v);
            }
        }
        group_by_root(&mut dsu, u.iter())
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.induced_components(&self.all_vertices()).len() == 1
    }

    /// 2-connectivity of `(V(restrict), restrict)`: at least three vertices,
    /// connected, and no cut vertex. A lone edge is not 2-connected.
    pub fn is_two_connected(&self, restrict: &EdgeSet) -> bool {
        let covered = self.covered_vertices(restrict);
        if covered.len() < 3 {
            return false;
        }
        if self.connected_components(restrict).len() != 1 {
            return false;
        }
        self.articulation_points(restrict).is_empty()
    }

    /// Cut vertices of `(V(restrict), restrict)`.
    pub fn articulation_points(&self, restrict: &EdgeSet) -> VertexSet {
        let adj = self.restricted_adjacency(restrict);
        let mut state = LowLink::new(self.n);
        for root in 0..self.n {
            if state.order[root] == usize::MAX && !adj[root].is_empty() {
                state.visit(&adj, root, usize::MAX);
            }
        }
        let mut children = vec![0usize; self.n];
        let mut cut = Vec::new();
        for w in 0..self.n {
            if let Some(pe) = state.parent_edge[w] {
                let p = self.edges[pe].other(w);
                children[p] += 1;
                if state.parent_edge[p].is_some() && state.low[w] >= state.order[p] {
                    cut.push(p);
                }
            }
        }
        for (root, &count) in children.iter().enumerate() {
            if state.order[root] != usize::MAX && state.parent_edge[root].is_none() && count >= 2 {
                cut.push(root);
            }
        }
        VertexSet::new(cut)
    }

    /// Cut edges of the whole graph; parallel copies are never bridges.
    pub fn bridges(&self) -> EdgeSet {
        let adj = self.restricted_adjacency(&self.all_edges());
        let mut state = LowLink::new(self.n);
        for root in 0..self.n {
            if state.order[root] == usize::MAX {
                state.visit(&adj, root, usize::MAX);
            }
        }
        let mut out = Vec::new();
        for v in 0..self.n {
            if let Some(pe) = state.parent_edge[v] {
                let parent = self.edges[pe].other(v);
                if state.low[v] > state.order[parent] {
                    out.push(pe);
                }
            }
        }
        EdgeSet::new(out)
    }

    fn restricted_adjacency(&self, restrict: &EdgeSet) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in restrict.iter() {
            let Edge { u, v } = self.edges[e];
            if u != v {
                adj[u].push((v, e));
                adj[v].push((u, e));
            }
        }
        adj
    }

    /// Rank of `f` in the cycle matroid: `|V(F)| − c(F)`.
    pub fn graphic_rank(&self, f: &EdgeSet) -> usize {
        let mut dsu = DisjointSets::new(self.n);
        f.iter()
            .filter(|&e| {
                let Edge { u, v } = self.edges[e];
                dsu.union(u, v)
            })
            .count()
    }

    /// Rank of `f` in the dual matroid: `|F| − r(E) + r(E \ F)`.
    pub fn dual_rank(&self, f: &EdgeSet) -> usize {
        let rest = f.complement(self.m());
        f.len() + self.graphic_rank(&rest) - self.graphic_rank(&self.all_edges())
    }

    /// Whether `f` is the edge set of a spanning tree.
    pub fn is_spanning_tree(&self, f: &EdgeSet) -> bool {
        self.n >= 1 && f.len() == self.n - 1 && self.graphic_rank(f) == self.n - 1
    }

    /// Edge-list text in the same format accepted by [`Graph::parse`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for (e, w) in self.edges.iter().zip(&self.weights) {
            if w.is_one() {
                out.push_str(&format!("{} {}\n", e.u + 1, e.v + 1));
            } else {
                out.push_str(&format!("{} {} {}\n", e.u + 1, e.v + 1, format_rational(w)));
            }
        }
        out
    }

    /// Parses the edge-list format: a header `n m`, then `m` lines `u v [w]`
    /// with 1-based vertices and an optional rational weight. Lines starting
    /// with `#` and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "empty document, expected header `n m`".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let parse_count = |s: &str, what: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: header_line,
                message: format!("{what} must be a nonnegative integer, found {s:?}"),
            })
        };
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: header_line,
                message: "header must be `n m`".into(),
            });
        }
        let n = parse_count(fields[0], "vertex count")?;
        let m = parse_count(fields[1], "edge count")?;

        let mut edges = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        let mut last_line = header_line;
        for (line, body) in lines {
            last_line = line;
            if edges.len() == m {
                return Err(Error::Parse {
                    line,
                    message: format!("more than the declared {m} edges"),
                });
            }
            let parts: Vec<&str> = body.split_whitespace().collect();
            if parts.len() != 2 && parts.len() != 3 {
                return Err(Error::Parse {
                    line,
                    message: "expected `u v` or `u v w`".into(),
                });
            }
            let mut ends = [0usize; 2];
            for (slot, raw) in ends.iter_mut().zip(&parts[..2]) {
                let label: usize = raw.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("vertex {raw:?} is not a positive integer"),
                })?;
                if label == 0 || label > n {
                    return Err(Error::Parse {
                        line,
                        message: format!("vertex {label} out of range 1..={n}"),
                    });
                }
                *slot = label - 1;
            }
            let w = match parts.get(2) {
                Some(raw) => parse_rational(raw).map_err(|_| Error::Parse {
                    line,
                    message: format!("weight {raw:?} is not a rational"),
                })?,
                None => Rational::one(),
            };
            edges.push((ends[0], ends[1]));
            weights.push(w);
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: last_line,
                message: format!("declared {m} edges but found {}", edges.len()),
            });
        }
        Graph::with_weights(n, &edges, weights)
    }

    /// Same graph with a different weight vector.
    pub fn reweighted(&self, weights: &QPoint) -> Result<Graph> {
        weights.check_dim(self.m())?;
        let mut g = self.clone();
        g.weights = weights.coords().to_vec();
        Ok(g)
    }

    /// Total weight `w(F)`.
    pub fn weight_of(&self, f: &EdgeSet) -> Rational {
        f.iter().fold(Rational::zero(), |acc, e| acc + &self.weights[e])
    }
}

struct LowLink {
    order: Vec<usize>,
    low: Vec<usize>,
    parent_edge: Vec<Option<usize>>,
    clock: usize,
}

impl LowLink {
    fn new(n: usize) -> Self {
        LowLink {
            order: vec![usize::MAX; n],
            low: vec![usize::MAX; n],
            parent_edge: vec![None; n],
            clock: 0,
        }
    }

    // iterative DFS; `via` is the edge used to reach `root` (usize::MAX for roots)
    fn visit(&mut self, adj: &[Vec<(usize, usize)>], root: usize, via: usize) {
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, via, 0)];
        self.order[root] = self.clock;
        self.low[root] = self.clock;
        self.clock += 1;
        while let Some(&mut (v, in_edge, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let (w, e) = adj[v][*next];
                *next += 1;
                if e == in_edge {
                    continue;
                }
                if self.order[w] == usize::MAX {
                    self.order[w] = self.clock;
                    self.low[w] = self.clock;
                    self.clock += 1;
                    self.parent_edge[w] = Some(e);
                    stack.push((w, e, 0));
                } else {
                    self.low[v] = self.low[v].min(self.order[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    self.low[parent] = self.low[parent].min(self.low[v]);
                }
            }
        }
    }
}

/// Union–find with path halving.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the two elements were in different sets.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

fn group_by_root(dsu: &mut DisjointSets, vertices: impl Iterator<Item = usize>) -> Vec<VertexSet> {
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for v in vertices {
        let r = dsu.find(v);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, members)) => members.push(v),
            None => groups.push((r, vec![v])),
        }
    }
    let mut out: Vec<VertexSet> = groups.into_iter().map(|(_, m)| VertexSet::new(m)).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn k4() -> Graph {
        Graph::parse("4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n").unwrap()
    }

    fn vs(labels: &[usize]) -> VertexSet {
        VertexSet::new(labels.iter().map(|l| l - 1).collect())
    }

    #[test]
    fn parse_complete_graph_and_triangle() {
        let g = k4();
        assert_eq!((g.n(), g.m()), (4, 6));
        assert_eq!(g.edge(5), Edge { u: 2, v: 3 });
        let tri = Graph::parse("# triangle\n3 3\n\n1 2\n2 3\n1 3\n").unwrap();
        assert_eq!((tri.n(), tri.m()), (3, 3));
    }

    #[test]
    fn parse_accepts_parallel_edges_and_weights() {
        let g = Graph::parse("2 2\n1 2 3/4\n1 2\n").unwrap();
        assert_eq!(g.m(), 2);
        assert!(g.has_parallel_edges());
        assert_eq!(g.weights()[0], ratio(3, 4));
        assert_eq!(g.weights()[1], ratio(1, 1));
    }

    #[test]
    fn parse_errors_name_the_line() {
        match Graph::parse("3 2\n1 2\n1 4\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match Graph::parse("3 3\n1 2\n2 3\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match Graph::parse("3 1\n1 2 x\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(Graph::parse("3\n").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::parse("3 4\n1 2 1/2\n2 3\n1 3 7\n2 2\n").unwrap();
        assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn delta_examples() {
        let g = k4();
        assert_eq!(g.delta(&vs(&[1])).unwrap().to_vec(), vec![0, 1, 2]);
        // 13, 14, 23, 24
        assert_eq!(g.delta(&vs(&[1, 2])).unwrap().to_vec(), vec![1, 2, 3, 4]);
        assert!(g.delta(&VertexSet::default()).is_err());
        assert!(g.delta(&g.all_vertices()).is_err());

        let looped = Graph::new(3, &[(0, 1), (1, 2), (0, 2), (0, 0)]);
        assert_eq!(looped.delta(&vs(&[1])).unwrap().to_vec(), vec![0, 2]);
    }

    #[test]
    fn induced_edges_examples() {
        let g = k4();
        assert_eq!(g.induced_edges(&vs(&[1, 2, 3])).to_vec(), vec![0, 1, 3]);
        assert_eq!(g.induced_edges(&g.all_vertices()), g.all_edges());
        assert!(g.induced_edges(&vs(&[1])).is_empty());
    }

    #[test]
    fn components_examples() {
        let g = k4();
        let comps = g.connected_components(&EdgeSet::new(vec![0, 5]));
        assert_eq!(comps, vec![vs(&[1, 2]), vs(&[3, 4])]);
        assert_eq!(g.connected_components(&g.all_edges()).len(), 1);
        assert!(g.connected_components(&EdgeSet::default()).is_empty());
    }

    #[test]
    fn two_connectivity_examples() {
        let g = k4();
        assert!(g.is_two_connected(&EdgeSet::new(vec![0, 1, 3])));
        let path = Graph::new(3, &[(0, 1), (1, 2)]);
        assert!(!path.is_two_connected(&path.all_edges()));
        let bowtie = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        assert!(!bowtie.is_two_connected(&bowtie.all_edges()));
        assert_eq!(bowtie.articulation_points(&bowtie.all_edges()), vs(&[3]));
        let single = Graph::new(2, &[(0, 1)]);
        assert!(!single.is_two_connected(&single.all_edges()));
        assert!(Graph::petersen().is_two_connected(&Graph::petersen().all_edges()));
    }

    #[test]
    fn bridge_examples() {
        let two_triangles = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]);
        assert_eq!(two_triangles.bridges().to_vec(), vec![6]);
        assert!(k4().bridges().is_empty());
        let tree = Graph::new(4, &[(0, 1), (1, 2), (1, 3)]);
        assert_eq!(tree.bridges().to_vec(), vec![0, 1, 2]);
        let doubled = Graph::new(2, &[(0, 1), (0, 1)]);
        assert!(doubled.bridges().is_empty());
    }

    #[test]
    fn rank_examples() {
        let g = k4();
        assert_eq!(g.graphic_rank(&EdgeSet::new(vec![0, 1, 2])), 3);
        let triangle = EdgeSet::new(vec![0, 1, 3]);
        assert_eq!(g.graphic_rank(&triangle), 2);
        // r*(F) = |F| - r(E) + r(E \ F) = 3 - 3 + 3
        assert_eq!(g.dual_rank(&triangle), 3);
        assert_eq!(g.graphic_rank(&EdgeSet::default()), 0);
    }

    fn brute_rank(g: &Graph, mask: u64) -> usize {
        // |V(F)| − c(F) computed by component counting
        let f = EdgeSet::from_mask(mask);
        g.covered_vertices(&f).len() - g.connected_components(&f).len()
    }

    #[test]
    fn graphic_rank_matroid_axioms_exhaustive() {
        for g in [k4(), Graph::wheel(4), Graph::new(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 3), (0, 1)])] {
            let m = g.m();
            for a in 0u64..1 << m {
                let ra = g.graphic_rank(&EdgeSet::from_mask(a));
                assert_eq!(ra, brute_rank(&g, a));
                assert!(ra <= a.count_ones() as usize);
                for e in 0..m {
                    let with = g.graphic_rank(&EdgeSet::from_mask(a | 1 << e));
                    assert!(with == ra || with == ra + 1);
                }
                for b in 0u64..1 << m {
                    let rb = g.graphic_rank(&EdgeSet::from_mask(b));
                    let union = g.graphic_rank(&EdgeSet::from_mask(a | b));
                    let inter = g.graphic_rank(&EdgeSet::from_mask(a & b));
                    assert!(union + inter <= ra + rb, "submodularity");
                    if a & b == a {
                        assert!(ra <= rb, "monotone");
                    }
                }
            }
        }
    }
}
