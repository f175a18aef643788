//! Cutting-plane lower bound over the subtour elimination polytope.
//!
//! The loop starts from the bound and degree rows, separates `x(δ(U)) ≥ 2`
//! exactly with a minimum cut, and adds the single most violated cut per
//! round. Every added cut is classified against the locked characterisation
//! of facets; classification is reporting only.

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::descriptions::{cut_row, degree_row, nonneg_row, ub1_row};
use crate::error::{Error, Result};
use crate::geometry::constraint::ConstraintSystem;
use crate::geometry::simplex::{lp_solve, Direction, LpOutcome};
use crate::graph::{DisjointSets, Graph, VertexSet};
use crate::locked::{check_locked_domain, is_locked, LockedCondition};
use crate::mincut::global_min_cut;
use crate::rational::{int, serde_rational, QPoint, Rational};

pub const BOUND_SCHEMA: &str = "subtour/bound/v1";

/// A violated subtour constraint: `x(δ(U)) = cut_value < 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub set: VertexSet,
    #[serde(with = "serde_rational")]
    pub cut_value: Rational,
    /// `2 − cut_value`
    #[serde(with = "serde_rational")]
    pub violation: Rational,
}

/// Finds a violated cut for `x ≥ 0`, or `None` when every cut carries at
/// least 2. A disconnected support yields the zero cut of the component of
/// vertex 0.
pub fn separate(g: &Graph, x: &QPoint) -> Result<Option<Separation>> {
    x.check_dim(g.m())?;
    if !x.is_nonnegative() {
        return Err(Error::domain("separation needs a nonnegative point"));
    }
    let n = g.n();
    if n < 2 {
        return Ok(None);
    }
    let mut dsu = DisjointSets::new(n);
    for e in x.nonzero_support().iter() {
        let ed = g.edge(e);
        dsu.union(ed.u, ed.v);
    }
    let root = dsu.find(0);
    let component = VertexSet::from_sorted((0..n).filter(|&v| dsu.find(v) == root).collect());
    if component.len() < n {
        return Ok(Some(Separation {
            set: component,
            cut_value: Rational::zero(),
            violation: int(2),
        }));
    }
    let cut = global_min_cut(g, x)?;
    if cut.value < int(2) {
        return Ok(Some(Separation {
            violation: int(2) - &cut.value,
            set: cut.side,
            cut_value: cut.value,
        }));
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum CutClass {
    /// One side is locked with `3 ≤ |side| ≤ n − 2`.
    FacetLocked,
    /// Neither side qualifies; `failed` is the first failing condition of the
    /// side containing vertex 0, or `None` when only the `n − 2` cap fails.
    RedundantNonLocked { failed: Option<LockedCondition> },
    /// The graph has loops, parallel edges or a cut vertex, so locked sets
    /// are not defined on it.
    Unclassified,
}

/// Classifies `x(δ(U)) ≥ 2`. Both sides of the cut are tried because the
/// row is the same for `U` and `V \ U`.
pub fn classify_cut(g: &Graph, u: &VertexSet) -> Result<CutClass> {
    let n = g.n();
    if u.is_empty() || u.len() >= n {
        return Err(Error::domain("a cut needs a nonempty proper vertex subset"));
    }
    let canonical = u.canonical_side(n);
    let other = canonical.complement(n);
    let qualifies = |side: &VertexSet| -> Result<bool> {
        Ok(side.len() >= 3 && side.len() + 2 <= n && is_locked(g, side)?.locked)
    };
    if qualifies(&canonical)? || qualifies(&other)? {
        return Ok(CutClass::FacetLocked);
    }
    let verdict = is_locked(g, &canonical)?;
    let failed = match verdict.failed {
        Some(c) => Some(c),
        None if canonical.len() + 2 > n => Some(LockedCondition::SizeRange),
        None => None,
    };
    Ok(CutClass::RedundantNonLocked { failed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    /// No violated cut remains; the bound is the subtour LP optimum.
    Optimal,
    /// The iteration budget ran out; the bound is still valid.
    IterationLimit,
    /// The degree system has no solution, so `P(G)` is empty.
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PooledCut {
    pub name: String,
    pub set: VertexSet,
    #[serde(with = "serde_rational")]
    pub violation: Rational,
    pub iteration: usize,
    pub classification: CutClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub schema: String,
    pub status: BoundStatus,
    #[serde(with = "opt_rational")]
    pub bound: Option<Rational>,
    pub iterations: usize,
    /// LP value after each solve, non-decreasing.
    pub history: Vec<String>,
    pub cuts: Vec<PooledCut>,
    pub point: Option<QPoint>,
}

mod opt_rational {
    use super::*;
    use crate::rational::{format_rational, parse_rational};
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        value.as_ref().map(format_rational).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_rational(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// The starting system: `0 ≤ x ≤ 1` and `x(δ(v)) = 2`.
pub fn initial_system(g: &Graph) -> Result<ConstraintSystem> {
    let mut sys = ConstraintSystem::new(g.m());
    for e in 0..g.m() {
        sys.push(nonneg_row(e))?;
    }
    for e in 0..g.m() {
        sys.push(ub1_row(e))?;
    }
    for v in 0..g.n() {
        sys.push(degree_row(g, v))?;
    }
    Ok(sys)
}

/// Minimises `weights·x` over the subtour polytope by cutting planes.
/// `max_iter` defaults to `10·m` LP solves.
pub fn bound(g: &Graph, weights: &QPoint, max_iter: Option<usize>) -> Result<BoundReport> {
    weights.check_dim(g.m())?;
    let max_iter = max_iter.unwrap_or(10 * g.m()).max(1);
    let mut sys = initial_system(g)?;
    let domain_ok = check_locked_domain(g).is_ok();
    let mut history: Vec<Rational> = Vec::new();
    let mut cuts: Vec<PooledCut> = Vec::new();
    let mut point = None;
    let mut status = BoundStatus::IterationLimit;

    for iteration in 1..=max_iter {
        let (value, x) = match lp_solve(&sys, weights, Direction::Minimize)? {
            LpOutcome::Optimal { value, point } => (value, point),
            LpOutcome::Infeasible => {
                status = BoundStatus::Infeasible;
                point = None;
                break;
            }
            LpOutcome::Unbounded => unreachable!("the system is bounded by 0 ≤ x ≤ 1"),
        };
        if let Some(last) = history.last() {
            if &value < last {
                return Err(Error::Contradiction(format!("LP value dropped from {last} to {value} after adding a cut")));
            }
        }
        history.push(value);
        point = Some(x.clone());
        match separate(g, &x)? {
            None => {
                status = BoundStatus::Optimal;
                break;
            }
            Some(sep) => {
                let row = cut_row(g, &sep.set);
                let classification = if domain_ok { classify_cut(g, &sep.set)? } else { CutClass::Unclassified };
                let name = row.name.clone();
                sys.push_renamed(row)?;
                cuts.push(PooledCut {
                    name: sys.constraints().last().map(|c| c.name.clone()).unwrap_or(name),
                    set: sep.set,
                    violation: sep.violation,
                    iteration,
                    classification,
                });
            }
        }
    }

    Ok(BoundReport {
        schema: BOUND_SCHEMA.to_string(),
        status,
        bound: if status == BoundStatus::Infeasible { None } else { history.last().cloned() },
        iterations: history.len(),
        history: history.iter().map(crate::rational::format_rational).collect(),
        cuts,
        point,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptions::full_p;
    use crate::rational::ratio;

    #[test]
    fn zero_cut_on_disjoint_triangles() {
        let k6 = Graph::complete(6);
        let mut x = QPoint::zeros(k6.m());
        for (e, ed) in k6.edges().iter().enumerate() {
            if (ed.u < 3) == (ed.v < 3) {
                x[e] = int(1);
            }
        }
        let sep = separate(&k6, &x).unwrap().unwrap();
        assert_eq!(sep.set, VertexSet::new(vec![0, 1, 2]));
        assert_eq!(sep.violation, int(2));
    }

    #[test]
    fn nothing_to_separate() {
        let p = Graph::petersen();
        assert!(separate(&p, &QPoint::new(vec![ratio(2, 3); 15])).unwrap().is_none());
        let k4 = Graph::complete(4);
        let tour = QPoint::from_ints(&[1, 0, 1, 1, 0, 1]);
        assert!(is_tour(&k4, &tour));
        assert!(separate(&k4, &tour).unwrap().is_none());
    }

    fn is_tour(g: &Graph, x: &QPoint) -> bool {
        crate::decomposition::is_hamilton_circuit(g, x)
    }

    #[test]
    fn fractional_min_cut() {
        // two triangles joined by a light matching on the prism
        let g = Graph::prism();
        let mut x = QPoint::zeros(g.m());
        for (e, ed) in g.edges().iter().enumerate() {
            x[e] = if (ed.u < 3) == (ed.v < 3) { int(1) } else { ratio(1, 4) };
        }
        let sep = separate(&g, &x).unwrap().unwrap();
        assert_eq!(sep.cut_value, ratio(3, 4));
        assert_eq!(sep.set.len(), 3);
    }

    #[test]
    fn classification() {
        let k5 = Graph::complete(5);
        assert_eq!(classify_cut(&k5, &VertexSet::new(vec![0, 1, 2])).unwrap(), CutClass::FacetLocked);
        assert_eq!(classify_cut(&k5, &VertexSet::new(vec![3, 4])).unwrap(), CutClass::FacetLocked);
        assert!(matches!(
            classify_cut(&k5, &VertexSet::new(vec![2])).unwrap(),
            CutClass::RedundantNonLocked { failed: Some(LockedCondition::SizeRange) }
        ));
        // two triangles sharing vertex 2, both attached to a path 5-6
        let g = Graph::new(7, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (0, 5), (5, 6), (6, 4), (1, 6), (3, 5)]);
        assert!(matches!(
            classify_cut(&g, &VertexSet::new(vec![0, 1, 2, 3, 4])).unwrap(),
            CutClass::RedundantNonLocked { failed: Some(LockedCondition::InducedTwoConnected) }
        ));
    }

    #[test]
    fn unit_weights_give_n() {
        for g in [Graph::complete(4), Graph::complete(5), Graph::prism()] {
            let r = bound(&g, &QPoint::new(vec![int(1); g.m()]), None).unwrap();
            assert_eq!(r.status, BoundStatus::Optimal);
            assert_eq!(r.bound, Some(int(g.n() as i64)));
        }
    }

    #[test]
    fn heavy_edge_matches_full_description() {
        let k5 = Graph::complete(5);
        let mut w = QPoint::new(vec![int(1); 10]);
        w[0] = int(10);
        let r = bound(&k5, &w, None).unwrap();
        let full = lp_solve(&full_p(&k5).unwrap(), &w, Direction::Minimize).unwrap();
        assert_eq!(r.bound.as_ref(), full.value());
        assert!(full_p(&k5).unwrap().contains(r.point.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn cuts_are_added_on_two_triangles() {
        // the degree LP prefers two unit triangles; the loop must cut them
        let g = Graph::prism();
        let mut w = QPoint::zeros(g.m());
        for (e, ed) in g.edges().iter().enumerate() {
            w[e] = if (ed.u < 3) == (ed.v < 3) { int(1) } else { int(5) };
        }
        let r = bound(&g, &w, None).unwrap();
        assert_eq!(r.status, BoundStatus::Optimal);
        assert!(!r.cuts.is_empty());
        assert_eq!(r.cuts[0].classification, CutClass::FacetLocked);
        let full = lp_solve(&full_p(&g).unwrap(), &w, Direction::Minimize).unwrap();
        assert_eq!(r.bound.as_ref(), full.value());
    }

    #[test]
    fn infeasible_degree_system() {
        // K4 minus an edge plus a pendant path has no 2-regular fractional point
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        let r = bound(&g, &QPoint::new(vec![int(1); 4]), None).unwrap();
        assert_eq!(r.status, BoundStatus::Infeasible);
        assert!(r.bound.is_none());
    }
}
