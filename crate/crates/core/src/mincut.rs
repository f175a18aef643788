//! Stoer–Wagner global minimum cut in exact arithmetic.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rational::{QPoint, Rational};

/// A minimum cut: the side containing vertex 0 and the value `w(δ(U))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCut {
    pub side: VertexSet,
    pub value: Rational,
}

/// Minimises `w(δ(U))` over nonempty proper `U`.
///
/// Ties between phase cuts of equal value resolve to the lexicographically
/// smallest canonical side. The support of `w` need not be connected.
pub fn global_min_cut(g: &Graph, w: &QPoint) -> Result<MinCut> {
    let n = g.n();
    if n < 2 {
        return Err(Error::domain("minimum cut needs at least two vertices"));
    }
    w.check_dim(g.m())?;
    if !w.is_nonnegative() {
        return Err(Error::domain("cut weights must be nonnegative"));
    }

    let mut adj = vec![vec![Rational::zero(); n]; n];
    for (e, edge) in g.edges().iter().enumerate() {
        if edge.is_loop() {
            continue;
        }
        adj[edge.u][edge.v] += &w[e];
        adj[edge.v][edge.u] += &w[e];
    }
    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best: Option<MinCut> = None;

    while active.len() > 1 {
        // maximum adjacency order, ties by smallest vertex
        let mut in_a = vec![false; n];
        let mut key = vec![Rational::zero(); n];
        let mut prev = active[0];
        let mut last = active[0];
        in_a[last] = true;
        for &v in &active {
            if v != last {
                key[v] = adj[last][v].clone();
            }
        }
        for _ in 1..active.len() {
            let next = active
                .iter()
                .copied()
                .filter(|&v| !in_a[v])
                .fold(None::<usize>, |acc, v| match acc {
                    Some(a) if key[a] >= key[v] => Some(a),
                    _ => Some(v),
                })
                .expect("an unvisited vertex remains");
            in_a[next] = true;
            prev = last;
            last = next;
            for &v in &active {
                if !in_a[v] {
                    let add = adj[next][v].clone();
                    key[v] += add;
                }
            }
        }
        let value = key[last].clone();
        let side = VertexSet::new(groups[last].clone()).canonical_side(n);
        let better = match &best {
            None => true,
            Some(b) => value < b.value || (value == b.value && side < b.side),
        };
        if better {
            best = Some(MinCut { side, value });
        }

        // merge `last` into `prev`
        let moved = std::mem::take(&mut groups[last]);
        groups[prev].extend(moved);
        for &v in &active {
            if v != prev && v != last {
                let add = adj[last][v].clone();
                adj[prev][v] += &add;
                adj[v][prev] += add;
            }
        }
        active.retain(|&v| v != last);
    }
    let best = best.expect("at least one phase ran");
    debug_assert!(!best.value.is_negative());
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    // independent oracle: every canonical side, evaluated directly
    fn brute_min_cut(g: &Graph, w: &QPoint) -> Rational {
        let n = g.n();
        let mut best: Option<Rational> = None;
        for mask in 1u64..1 << n {
            if mask & 1 == 0 || mask == (1 << n) - 1 {
                continue;
            }
            let u = VertexSet::from_mask(mask);
            let value = w.sum_over(&g.delta(&u).unwrap());
            if best.as_ref().is_none_or(|b| value < *b) {
                best = Some(value);
            }
        }
        best.unwrap()
    }

    #[test]
    fn complete_graph_unit_weights() {
        let g = Graph::complete(4);
        let cut = global_min_cut(&g, &QPoint::from_ints(&[1; 6])).unwrap();
        assert_eq!(cut.value, int(3));
        assert!(cut.side.len() == 1 || cut.side.len() == 3);
    }

    #[test]
    fn disconnected_support_gives_zero() {
        let g = Graph::complete(6);
        let mut w = QPoint::zeros(g.m());
        for (e, edge) in g.edges().iter().enumerate() {
            if (edge.u < 3) == (edge.v < 3) {
                w[e] = int(1);
            }
        }
        let cut = global_min_cut(&g, &w).unwrap();
        assert_eq!(cut.value, int(0));
        assert_eq!(cut.side, VertexSet::new(vec![0, 1, 2]));
    }

    #[test]
    fn petersen_two_thirds() {
        let g = Graph::petersen();
        let w = QPoint::new(vec![ratio(2, 3); g.m()]);
        let cut = global_min_cut(&g, &w).unwrap();
        // frozen from the exhaustive oracle over 2^9 canonical sides
        assert_eq!(brute_min_cut(&g, &w), int(2));
        assert_eq!(cut.value, int(2));
    }

    #[test]
    fn rejects_tiny_graphs() {
        let g = Graph::new(1, &[]);
        assert!(global_min_cut(&g, &QPoint::zeros(0)).is_err());
    }

    fn arb_weighted_graph() -> impl Strategy<Value = (Graph, QPoint)> {
        (2usize..=9).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let k = pairs.len();
            (proptest::collection::vec(any::<bool>(), k), proptest::collection::vec(0i64..6, k), proptest::collection::vec(1i64..4, k))
                .prop_map(move |(keep, num, den)| {
                    let mut edges = Vec::new();
                    let mut w = Vec::new();
                    for i in 0..k {
                        if keep[i] {
                            edges.push(pairs[i]);
                            w.push(ratio(num[i], den[i]));
                        }
                    }
                    (Graph::new(n, &edges), QPoint::new(w))
                })
        })
    }

    proptest! {
        #[test]
        fn matches_exhaustive_enumeration((g, w) in arb_weighted_graph()) {
            let cut = global_min_cut(&g, &w).unwrap();
            prop_assert_eq!(&cut.value, &brute_min_cut(&g, &w));
            prop_assert_eq!(w.sum_over(&g.delta(&cut.side).unwrap()), cut.value);
            prop_assert!(cut.side.contains(0));
        }
    }
}
