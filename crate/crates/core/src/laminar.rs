//! Laminar families of vertex sets and the uncrossing of tight sets.
//!
//! A set `U` is tight for `x` when `x(E(U)) = |U| − 1`. For points of the
//! spanning-tree polytope, crossing tight sets `U`, `W` have tight
//! intersection and union, and on the support of `x` the incidence rows obey
//! `χ(E(U)) + χ(E(W)) = χ(E(U ∩ W)) + χ(E(U ∪ W))`. A maximal laminar
//! subfamily of the closure therefore spans every input row there.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::linalg;
use crate::graph::{Graph, VertexSet};
use crate::rational::{int, QPoint, Rational};

/// Upper bound on the number of sets generated while closing a family under
/// tight intersections and unions.
pub const MAX_CLOSURE_SETS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaminarFamily {
    /// Size of the ground set `X = {0, …, ground − 1}`.
    pub ground: usize,
    pub sets: Vec<VertexSet>,
}

impl LaminarFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

fn crosses(a: &VertexSet, b: &VertexSet) -> bool {
    !a.is_subset(b) && !b.is_subset(a) && !a.intersection(b).is_empty()
}

/// Every two members are nested or disjoint.
pub fn is_laminar(sets: &[VertexSet]) -> bool {
    sets.iter()
        .enumerate()
        .all(|(i, a)| sets[i + 1..].iter().all(|b| !crosses(a, b)))
}

/// The size bound for laminar families that exclude the ground set itself.
pub fn laminar_bound_check(fam: &LaminarFamily, ground_size: usize) -> bool {
    fam.len() < 2 * ground_size.max(1)
}

/// Whether `x(E(U)) = |U| − 1`.
pub fn is_tight(g: &Graph, x: &QPoint, u: &VertexSet) -> bool {
    !u.is_empty() && x.sum_over(&g.induced_edges(u)) == int(u.len() as i64 - 1)
}

/// Incidence rows `χ(E(U))` restricted to the coordinates in the support of `x`.
pub fn support_rows(g: &Graph, x: &QPoint, sets: &[VertexSet]) -> Vec<Vec<Rational>> {
    let support = x.nonzero_support();
    sets.iter()
        .map(|u| {
            let inside = g.induced_edges(u);
            support.iter().map(|e| if inside.contains(e) { int(1) } else { int(0) }).collect()
        })
        .collect()
}

/// Rank of the support-restricted incidence rows.
pub fn support_rank(g: &Graph, x: &QPoint, sets: &[VertexSet]) -> usize {
    linalg::rank(&support_rows(g, x, sets))
}

/// Replaces a family of tight sets by a laminar family of tight sets with the
/// same span on the support of `x`.
///
/// A laminar input is returned unchanged. Otherwise the family is closed
/// under tight intersections and unions (singletons and duplicates dropped),
/// a maximal laminar subfamily is chosen with input sets first, and a
/// minimal independent subset of it spanning the input rows is returned,
/// ordered by size and then lexicographically. Its rank is at least the
/// input rank; it can exceed it when crossing inputs have no laminar basis
/// of their own span.
pub fn uncross(g: &Graph, family: &[VertexSet], x: &QPoint) -> Result<LaminarFamily> {
    x.check_dim(g.m())?;
    if !x.is_nonnegative() {
        return Err(Error::domain("uncrossing needs a nonnegative point"));
    }
    for u in family {
        if u.as_slice().last().is_some_and(|&v| v >= g.n()) {
            return Err(Error::domain(format!("set {u} refers to a vertex outside the graph")));
        }
        if !is_tight(g, x, u) {
            return Err(Error::domain(format!("set {u} is not tight: x(E(U)) != |U| - 1")));
        }
    }
    if is_laminar(family) {
        return Ok(LaminarFamily {
            ground: g.n(),
            sets: family.to_vec(),
        });
    }

    let mut pool: Vec<VertexSet> = Vec::new();
    for u in family {
        if u.len() > 1 && !pool.contains(u) {
            pool.push(u.clone());
        }
    }
    let target_rows = support_rows(g, x, &pool);
    let target_rank = linalg::rank(&target_rows);

    let mut i = 0;
    while i < pool.len() {
        for j in 0..i {
            if !crosses(&pool[i], &pool[j]) {
                continue;
            }
            for candidate in [pool[i].intersection(&pool[j]), pool[i].union(&pool[j])] {
                if candidate.len() > 1 && is_tight(g, x, &candidate) && !pool.contains(&candidate) {
                    pool.push(candidate);
                }
            }
            if pool.len() > MAX_CLOSURE_SETS {
                return Err(Error::scale(format!("uncrossing closure exceeded {MAX_CLOSURE_SETS} sets")));
            }
        }
        i += 1;
    }

    let mut laminar: Vec<VertexSet> = Vec::new();
    for u in &pool {
        if laminar.iter().all(|w| !crosses(u, w)) {
            laminar.push(u.clone());
        }
    }
    // independent sets of the laminar family, then drop any set the input
    // rows do not need
    let mut chosen: Vec<VertexSet> = Vec::new();
    for u in laminar {
        let mut trial = chosen.clone();
        trial.push(u);
        if support_rank(g, x, &trial) == trial.len() {
            chosen = trial;
        }
    }
    let spans_target = |sets: &[VertexSet]| {
        let mut rows = support_rows(g, x, sets);
        let own = linalg::rank(&rows);
        rows.extend(target_rows.iter().cloned());
        linalg::rank(&rows) == own
    };
    if !spans_target(&chosen) {
        return Err(Error::Contradiction(format!(
            "no laminar family of tight sets spans the input rows (rank {target_rank}); x is likely outside the spanning-tree polytope"
        )));
    }
    for i in (0..chosen.len()).rev() {
        let mut trial = chosen.clone();
        trial.remove(i);
        if spans_target(&trial) {
            chosen = trial;
        }
    }
    chosen.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(LaminarFamily {
        ground: g.n(),
        sets: chosen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::random_spanning_tree;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(labels: &[usize]) -> VertexSet {
        VertexSet::new(labels.iter().map(|l| l - 1).collect())
    }

    fn spans(g: &Graph, x: &QPoint, sets: &[VertexSet], target: &[VertexSet]) -> bool {
        let mut rows = support_rows(g, x, sets);
        let own = linalg::rank(&rows);
        rows.extend(support_rows(g, x, target));
        linalg::rank(&rows) == own
    }

    #[test]
    fn crossing_triples_need_a_third_set() {
        // average of the path 1-2-3-4 and the tree 1-2, 2-3, 2-4
        let g = Graph::complete(4);
        let path = QPoint::indicator(6, &crate::graph::EdgeSet::new(vec![0, 3, 5]));
        let star = QPoint::indicator(6, &crate::graph::EdgeSet::new(vec![0, 3, 4]));
        let x = (&path + &star).scale(&crate::rational::ratio(1, 2));
        let family = [set(&[1, 2, 3]), set(&[2, 3, 4])];
        assert!(family.iter().all(|u| is_tight(&g, &x, u)));
        let out = uncross(&g, &family, &x).unwrap();
        assert!(is_laminar(&out.sets));
        assert!(spans(&g, &x, &out.sets, &family));
    }

    #[test]
    fn laminarity_and_bound() {
        assert!(is_laminar(&[set(&[1, 2]), set(&[1, 2, 3]), set(&[4])]));
        assert!(!is_laminar(&[set(&[1, 2]), set(&[2, 3])]));
        let mut sets: Vec<VertexSet> = (1..=4).map(|v| set(&[v])).collect();
        sets.extend([set(&[1, 2]), set(&[1, 2, 3])]);
        sets.push(set(&[1, 2, 3, 4]));
        let fam = LaminarFamily { ground: 4, sets };
        assert!(is_laminar(&fam.sets));
        assert_eq!(fam.len(), 7);
        assert!(laminar_bound_check(&fam, 4));
        assert!(laminar_bound_check(&LaminarFamily { ground: 4, sets: vec![] }, 4));
    }

    #[test]
    fn tour_on_k4_uncrosses_two_paths() {
        let g = Graph::complete(4);
        // tour 1-2-3-4-1 uses edges 12, 23, 34, 14 (ids 0, 3, 5, 2)
        let x = QPoint::from_ints(&[1, 0, 1, 1, 0, 1]);
        let family = [set(&[1, 2]), set(&[2, 3])];
        let out = uncross(&g, &family, &x).unwrap();
        assert!(is_laminar(&out.sets));
        assert!(out.sets.iter().all(|u| is_tight(&g, &x, u)));
        assert!(out.sets.contains(&set(&[1, 2, 3])));
        assert_eq!(support_rank(&g, &x, &out.sets), support_rank(&g, &x, &family));
        assert_eq!(support_rank(&g, &x, &family), 2);
    }

    #[test]
    fn laminar_input_is_unchanged() {
        let g = Graph::complete(4);
        let x = QPoint::from_ints(&[1, 0, 1, 1, 0, 1]);
        let nested = [set(&[1, 2]), set(&[1, 2, 3])];
        assert_eq!(uncross(&g, &nested, &x).unwrap().sets, nested.to_vec());
        assert_eq!(uncross(&g, &[], &x).unwrap().sets, vec![]);
    }

    #[test]
    fn rejects_loose_sets() {
        let g = Graph::complete(4);
        let x = QPoint::from_ints(&[1, 0, 1, 1, 0, 1]);
        assert!(uncross(&g, &[set(&[1, 3])], &x).is_err());
    }

    #[test]
    fn random_tree_averages_uncross_cleanly() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for round in 0..60 {
            let n = rng.gen_range(4..=7);
            let g = Graph::complete(n);
            let k = rng.gen_range(1..=3);
            let mut x = QPoint::zeros(g.m());
            for _ in 0..k {
                x = &x + &QPoint::indicator(g.m(), &random_spanning_tree(&g, &mut rng));
            }
            let x = x.scale(&crate::rational::ratio(1, k));
            let tight: Vec<VertexSet> = (1u64..(1 << n))
                .map(VertexSet::from_mask)
                .filter(|u| u.len() >= 2 && is_tight(&g, &x, u))
                .collect();
            let pick = rng.gen_range(1..=tight.len().min(6));
            let family: Vec<VertexSet> = (0..pick).map(|_| tight[rng.gen_range(0..tight.len())].clone()).collect();
            let out = uncross(&g, &family, &x).unwrap_or_else(|e| panic!("round {round}: {e}"));
            assert!(is_laminar(&out.sets));
            assert!(out.sets.iter().all(|u| is_tight(&g, &x, u)));
            let distinct: Vec<VertexSet> = {
                let mut d = family.clone();
                d.sort();
                d.dedup();
                d
            };
            assert!(spans(&g, &x, &out.sets, &distinct), "round {round}");
            assert!(support_rank(&g, &x, &out.sets) >= support_rank(&g, &x, &distinct));
            assert!(laminar_bound_check(&out, n));
        }
    }
}
