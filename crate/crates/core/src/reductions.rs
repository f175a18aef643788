//! Reduction of an arbitrary multigraph to a 2-connected simple graph with
//! minimum degree three, with a trace that lifts points back.
//!
//! One round applies, in order: loop deletion, the connectivity and bridge
//! test, deletion of parallel copies, and a single series contraction. Rounds
//! repeat until nothing changes.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{serde_label, DisjointSets, Graph};
use crate::rational::{QPoint, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReductionStep {
    DeleteLoop {
        edge: usize,
    },
    /// `deleted` ran parallel to `kept`, the lowest id of its class.
    DeleteParallel {
        kept: usize,
        deleted: usize,
    },
    /// `contracted` met `kept` at the degree-two vertex `series_vertex`.
    /// Contracting it merged its endpoints and removed the higher-numbered
    /// label.
    ContractSeries {
        kept: usize,
        contracted: usize,
        #[serde(with = "serde_label")]
        series_vertex: usize,
        #[serde(with = "serde_label")]
        removed_vertex: usize,
        #[serde(with = "serde_label")]
        merged_into: usize,
    },
    /// A cut vertex survived every other reduction.
    SplitBlock {
        #[serde(with = "serde_label")]
        cut_vertex: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionStatus {
    Reduced,
    /// A bridge was found, or the graph is disconnected. The polytope is empty.
    InfeasibleBridge,
    /// A cut vertex remains; every cut around it forces degree four there, so
    /// the polytope is empty.
    InfeasibleCutVertex,
    /// Fewer than three vertices remain (a cycle collapses this way).
    DegenerateSmall,
}

impl ReductionStatus {
    pub fn is_infeasible(self) -> bool {
        matches!(self, ReductionStatus::InfeasibleBridge | ReductionStatus::InfeasibleCutVertex)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub original_n: usize,
    pub original_m: usize,
    pub steps: Vec<ReductionStep>,
    pub status: ReductionStatus,
    /// Original edge id of each edge of the reduced graph.
    pub edge_map: Vec<usize>,
    /// Original vertex index of each vertex of the reduced graph.
    #[serde(serialize_with = "labels_out", deserialize_with = "labels_in")]
    pub vertex_map: Vec<usize>,
}

fn labels_out<S: serde::Serializer>(v: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(|x| x + 1).collect::<Vec<_>>().serialize(s)
}

fn labels_in<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<usize>, D::Error> {
    let raw = Vec::<usize>::deserialize(d)?;
    raw.into_iter()
        .map(|l| l.checked_sub(1).ok_or_else(|| serde::de::Error::custom("vertex labels are 1-based")))
        .collect()
}

struct Working {
    alive: Vec<bool>,
    // current endpoints per original edge id, None once deleted
    ends: Vec<Option<(usize, usize)>>,
    weights: Vec<Rational>,
}

impl Working {
    fn alive_count(&self) -> usize {
        self.alive.iter().filter(|a| **a).count()
    }

    fn snapshot(&self) -> (Graph, Vec<usize>, Vec<usize>) {
        let vertex_map: Vec<usize> = (0..self.alive.len()).filter(|&v| self.alive[v]).collect();
        let mut index = vec![usize::MAX; self.alive.len()];
        for (i, &v) in vertex_map.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        let mut edge_map = Vec::new();
        for (id, end) in self.ends.iter().enumerate() {
            if let Some((u, v)) = end {
                edges.push((index[*u], index[*v]));
                weights.push(self.weights[id].clone());
                edge_map.push(id);
            }
        }
        let g = Graph::with_weights(vertex_map.len(), &edges, weights).expect("reduced graph is well formed");
        (g, edge_map, vertex_map)
    }

    fn degree_edges(&self, v: usize) -> Vec<usize> {
        self.ends
            .iter()
            .enumerate()
            .filter_map(|(id, end)| match end {
                Some((a, b)) if *a == v || *b == v => Some(id),
                _ => None,
            })
            .collect()
    }
}

/// Runs the reduction pipeline to a fixpoint.
///
/// Weights follow the edges: a kept parallel edge takes the minimum weight of
/// its class and a kept series edge absorbs the weight of the contracted one.
pub fn preprocess(g: &Graph) -> (Graph, ReductionTrace) {
    let mut w = Working {
        alive: vec![true; g.n()],
        ends: g.edges().iter().map(|e| Some((e.u, e.v))).collect(),
        weights: g.weights().to_vec(),
    };
    let mut steps = Vec::new();

    let status = loop {
        if w.alive_count() < 3 {
            break ReductionStatus::DegenerateSmall;
        }

        for id in 0..w.ends.len() {
            if matches!(w.ends[id], Some((u, v)) if u == v) {
                w.ends[id] = None;
                steps.push(ReductionStep::DeleteLoop { edge: id });
            }
        }

        let (current, edge_map, vertex_map) = w.snapshot();
        if !current.is_connected() || !current.bridges().is_empty() {
            break ReductionStatus::InfeasibleBridge;
        }

        let mut deleted_any = false;
        for i in 0..edge_map.len() {
            let Some((a, b)) = w.ends[edge_map[i]] else { continue };
            for &other in &edge_map[i + 1..] {
                if let Some((c, d)) = w.ends[other] {
                    if (a, b) == (c, d) || (a, b) == (d, c) {
                        let kept = edge_map[i];
                        if w.weights[other] < w.weights[kept] {
                            w.weights[kept] = w.weights[other].clone();
                        }
                        w.ends[other] = None;
                        steps.push(ReductionStep::DeleteParallel { kept, deleted: other });
                        deleted_any = true;
                    }
                }
            }
        }
        if deleted_any {
            continue;
        }

        let series = vertex_map.iter().copied().find(|&v| w.degree_edges(v).len() == 2);
        if let Some(v) = series {
            let pair = w.degree_edges(v);
            let (kept, contracted) = (pair[0], pair[1]);
            let (p, q) = w.ends[contracted].expect("live edge");
            let far = if p == v { q } else { p };
            let (survivor, removed) = (v.min(far), v.max(far));
            w.ends[contracted] = None;
            let extra = w.weights[contracted].clone();
            w.weights[kept] += extra;
            for end in w.ends.iter_mut().flatten() {
                if end.0 == removed {
                    end.0 = survivor;
                }
                if end.1 == removed {
                    end.1 = survivor;
                }
            }
            w.alive[removed] = false;
            steps.push(ReductionStep::ContractSeries {
                kept,
                contracted,
                series_vertex: v,
                removed_vertex: removed,
                merged_into: survivor,
            });
            continue;
        }

        let cut = current.articulation_points(&current.all_edges());
        if let Some(c) = cut.iter().next() {
            steps.push(ReductionStep::SplitBlock {
                cut_vertex: vertex_map[c],
            });
            break ReductionStatus::InfeasibleCutVertex;
        }
        break ReductionStatus::Reduced;
    };

    let (reduced, edge_map, vertex_map) = w.snapshot();
    let trace = ReductionTrace {
        original_n: g.n(),
        original_m: g.m(),
        steps,
        status,
        edge_map,
        vertex_map,
    };
    (reduced, trace)
}

/// Whether `g` is already a fixpoint of [`preprocess`] with status `Reduced`.
pub fn is_reduced(g: &Graph) -> bool {
    let (_, trace) = preprocess(g);
    trace.status == ReductionStatus::Reduced && trace.steps.is_empty()
}

/// Maps a point on the reduced graph back to the original edge set.
///
/// Contracted series edges copy their kept partner; deleted parallel edges
/// and loops are set to zero.
pub fn lift_point(trace: &ReductionTrace, x: &QPoint) -> Result<QPoint> {
    if trace.status != ReductionStatus::Reduced {
        return Err(Error::domain("only a Reduced trace can lift points"));
    }
    x.check_dim(trace.edge_map.len())?;
    let mut lifted = QPoint::zeros(trace.original_m);
    for (e, &orig) in trace.edge_map.iter().enumerate() {
        lifted[orig] = x[e].clone();
    }
    for step in trace.steps.iter().rev() {
        match step {
            ReductionStep::ContractSeries { kept, contracted, .. } => {
                lifted[*contracted] = lifted[*kept].clone();
            }
            ReductionStep::DeleteParallel { deleted, .. } => lifted[*deleted] = Rational::zero(),
            ReductionStep::DeleteLoop { edge } => lifted[*edge] = Rational::zero(),
            ReductionStep::SplitBlock { .. } => {}
        }
    }
    Ok(lifted)
}

/// Original vertices whose degree sums are carried over exactly by
/// [`lift_point`]. A contracted edge copies the value of the edge it was
/// contracted into, so a vertex with two surviving edges in the same copy
/// class (an interior vertex of a contracted series chain) sums to twice
/// that value and is excluded.
pub fn degree_preserving_vertices(g: &Graph, trace: &ReductionTrace) -> Vec<usize> {
    let mut classes = DisjointSets::new(trace.original_m);
    for step in &trace.steps {
        if let ReductionStep::ContractSeries { kept, contracted, .. } = step {
            classes.union(*kept, *contracted);
        }
    }
    (0..trace.original_n)
        .filter(|&v| {
            let mut roots: Vec<usize> = g
                .neighbors(v)
                .iter()
                .filter(|&&(w, _)| w != v)
                .map(|&(_, e)| classes.find(e))
                .collect();
            let before = roots.len();
            roots.sort_unstable();
            roots.dedup();
            roots.len() == before
        })
        .collect()
}

/// `x(δ(v)) = 2` on every listed original vertex.
pub fn degrees_are_two(g: &Graph, x: &QPoint, vertices: &[usize]) -> bool {
    let two = Rational::one() + Rational::one();
    vertices.iter().all(|&v| {
        let star = g.delta_unchecked(&crate::graph::VertexSet::new(vec![v]));
        x.sum_over(&star) == two
    })
}
