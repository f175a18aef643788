//! Builders for the linear descriptions of the subtour polytope `P(G)`, the
//! relaxation `Q(G)` and the spanning-tree polytope `K(G)`, plus their
//! certification.
//!
//! Row order within a system is fixed: nonnegativity, upper bounds, degree
//! rows, cut rows, subgraph rows, cardinality. Cut and subgraph rows follow
//! the `(|U|, U)` order. Only the full description folds `U` and `V \ U`
//! into one row; the locked-set descriptions list every locked `U` as is.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::certify::{certify_system, CertificationReport};
use crate::geometry::constraint::{ConstraintSystem, ConstraintTag, LinearConstraint, Sense};
use crate::geometry::vertices::MAX_VERTEX_DIM;
use crate::graph::{Graph, VertexSet};
use crate::locked::{check_locked_domain, locked_sets};
use crate::rational::{int, Rational};

/// Largest vertex count for which every cut is listed.
pub const MAX_FULL_CUT_VERTICES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DescriptionKind {
    #[serde(rename = "P-full")]
    PFull,
    #[serde(rename = "P-refined")]
    PRefined,
    #[serde(rename = "P-minimal")]
    PMinimal,
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "Q-prime")]
    QPrime,
    #[serde(rename = "K")]
    K,
}

impl DescriptionKind {
    pub const ALL: [DescriptionKind; 6] = [
        DescriptionKind::PFull,
        DescriptionKind::PRefined,
        DescriptionKind::PMinimal,
        DescriptionKind::Q,
        DescriptionKind::QPrime,
        DescriptionKind::K,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DescriptionKind::PFull => "P-full",
            DescriptionKind::PRefined => "P-refined",
            DescriptionKind::PMinimal => "P-minimal",
            DescriptionKind::Q => "Q",
            DescriptionKind::QPrime => "Q-prime",
            DescriptionKind::K => "K",
        }
    }
}

impl fmt::Display for DescriptionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DescriptionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DescriptionKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::domain(format!("unknown description kind {s:?}; expected one of P-full, P-refined, P-minimal, Q, Q-prime, K")))
    }
}

/// Options for [`build`]; `v0` is the vertex whose degree row the refined
/// description omits, `keep_ub` keeps the upper bounds in the minimal one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub v0: usize,
    pub keep_ub: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { v0: 0, keep_ub: true }
    }
}

pub fn build(g: &Graph, kind: DescriptionKind, options: BuildOptions) -> Result<ConstraintSystem> {
    match kind {
        DescriptionKind::PFull => full_p(g),
        DescriptionKind::PRefined => refined_p(g, options.v0),
        DescriptionKind::PMinimal => minimal_p(g, options.keep_ub),
        DescriptionKind::Q => q_description(g),
        DescriptionKind::QPrime => q_prime_description(g),
        DescriptionKind::K => k_description(g),
    }
}

fn ones(edges: impl IntoIterator<Item = usize>) -> impl Iterator<Item = (usize, Rational)> {
    edges.into_iter().map(|e| (e, int(1)))
}

pub fn nonneg_row(e: usize) -> LinearConstraint {
    LinearConstraint::tagged(ConstraintTag::Nonneg { edge: e }, ones([e]), Sense::Ge, int(0))
}

pub fn ub1_row(e: usize) -> LinearConstraint {
    LinearConstraint::tagged(ConstraintTag::Ub1 { edge: e }, ones([e]), Sense::Le, int(1))
}

pub fn degree_row(g: &Graph, v: usize) -> LinearConstraint {
    let star = g.delta_unchecked(&VertexSet::new(vec![v]));
    LinearConstraint::tagged(ConstraintTag::Degree { vertex: v }, ones(star.iter()), Sense::Eq, int(2))
}

/// `x(δ(U)) ≥ 2`, named after `U` as given.
pub fn cut_row(g: &Graph, u: &VertexSet) -> LinearConstraint {
    let cut = g.delta_unchecked(u);
    LinearConstraint::tagged(ConstraintTag::Cut { set: u.clone() }, ones(cut.iter()), Sense::Ge, int(2))
}

pub fn subgraph_row(g: &Graph, u: &VertexSet) -> LinearConstraint {
    let inside = g.induced_edges(u);
    LinearConstraint::tagged(
        ConstraintTag::Subgraph { set: u.clone() },
        ones(inside.iter()),
        Sense::Le,
        int(u.len() as i64 - 1),
    )
}

pub fn card_row(g: &Graph, value: usize) -> LinearConstraint {
    LinearConstraint::tagged(ConstraintTag::Card { value }, ones(0..g.m()), Sense::Eq, int(value as i64))
}

fn push_all(sys: &mut ConstraintSystem, rows: impl IntoIterator<Item = LinearConstraint>) -> Result<()> {
    rows.into_iter().try_for_each(|r| sys.push(r))
}

fn push_bounds(sys: &mut ConstraintSystem, g: &Graph, keep_ub: bool) -> Result<()> {
    push_all(sys, (0..g.m()).map(nonneg_row))?;
    if keep_ub {
        push_all(sys, (0..g.m()).map(ub1_row))?;
    }
    Ok(())
}

/// Canonical sides of the given sets, deduplicated, in `(|U|, U)` order.
fn canonical_cut_sides(n: usize, sets: impl IntoIterator<Item = VertexSet>) -> Vec<VertexSet> {
    let mut sides: Vec<VertexSet> = sets.into_iter().map(|u| u.canonical_side(n)).collect();
    sides.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sides.dedup();
    sides
}

/// Trivial, degree and all subtour rows; one cut per pair `{U, V \ U}`.
pub fn full_p(g: &Graph) -> Result<ConstraintSystem> {
    let n = g.n();
    if n < 2 {
        return Err(Error::domain("the subtour polytope needs at least two vertices"));
    }
    if n > MAX_FULL_CUT_VERTICES {
        return Err(Error::scale(format!(
            "listing every cut is limited to {MAX_FULL_CUT_VERTICES} vertices, graph has {n}"
        )));
    }
    let mut sys = ConstraintSystem::new(g.m());
    push_bounds(&mut sys, g, true)?;
    push_all(&mut sys, (0..n).map(|v| degree_row(g, v)))?;
    let proper = (1u64..(1 << n) - 1).filter(|m| m & 1 == 1).map(VertexSet::from_mask);
    push_all(&mut sys, canonical_cut_sides(n, proper).iter().map(|u| cut_row(g, u)))?;
    Ok(sys)
}

/// Degree rows except at `v0`, cuts over locked sets only, and `x(E) = n`.
pub fn refined_p(g: &Graph, v0: usize) -> Result<ConstraintSystem> {
    check_locked_domain(g)?;
    if v0 >= g.n() {
        return Err(Error::domain(format!("vertex {} outside the graph", v0 + 1)));
    }
    let locked = locked_sets(g)?;
    let mut sys = ConstraintSystem::new(g.m());
    push_bounds(&mut sys, g, true)?;
    push_all(&mut sys, (0..g.n()).filter(|&v| v != v0).map(|v| degree_row(g, v)))?;
    push_all(&mut sys, locked.iter().map(|u| cut_row(g, u)))?;
    sys.push(card_row(g, g.n()))?;
    Ok(sys)
}

/// Trivial and degree rows with cuts over locked sets of size `3..=n−2`.
pub fn minimal_p(g: &Graph, keep_ub: bool) -> Result<ConstraintSystem> {
    check_locked_domain(g)?;
    let n = g.n();
    let locked = locked_sets(g)?.into_iter().filter(|u| u.len() >= 3 && u.len() + 2 <= n);
    let mut sys = ConstraintSystem::new(g.m());
    push_bounds(&mut sys, g, keep_ub)?;
    push_all(&mut sys, (0..n).map(|v| degree_row(g, v)))?;
    push_all(&mut sys, locked.map(|u| cut_row(g, &u)))?;
    Ok(sys)
}

/// `0 ≤ x ≤ 1`, `x(E) = n` and `x(E(U)) ≤ |U| − 1` over locked `U`.
pub fn q_description(g: &Graph) -> Result<ConstraintSystem> {
    check_locked_domain(g)?;
    let mut sys = ConstraintSystem::new(g.m());
    push_bounds(&mut sys, g, true)?;
    sys.push(card_row(g, g.n()))?;
    push_all(&mut sys, locked_sets(g)?.iter().map(|u| subgraph_row(g, u)))?;
    Ok(sys)
}

/// `0 ≤ x ≤ 1`, `x(E) = n`, cuts over locked sets and the degree lower
/// bounds `x(δ(v)) ≥ 2`. Contains `Q(G)`.
pub fn q_prime_description(g: &Graph) -> Result<ConstraintSystem> {
    check_locked_domain(g)?;
    let n = g.n();
    let mut sys = ConstraintSystem::new(g.m());
    push_bounds(&mut sys, g, true)?;
    sys.push(card_row(g, n))?;
    push_all(&mut sys, locked_sets(g)?.iter().map(|u| cut_row(g, u)))?;
    for v in 0..n {
        let star = g.delta_unchecked(&VertexSet::new(vec![v]));
        sys.push(LinearConstraint::new(
            format!("degree_lb_{}", v + 1),
            ConstraintTag::Degree { vertex: v },
            ones(star.iter()),
            Sense::Ge,
            int(2),
        ))?;
    }
    Ok(sys)
}

/// Spanning-tree polytope: `0 ≤ x ≤ 1`, `x(E(U)) ≤ |U| − 1` over locked `U`,
/// and `x(E) = n − 1`.
pub fn k_description(g: &Graph) -> Result<ConstraintSystem> {
    check_locked_domain(g)?;
    let mut sys = ConstraintSystem::new(g.m());
    push_bounds(&mut sys, g, true)?;
    push_all(&mut sys, locked_sets(g)?.iter().map(|u| subgraph_row(g, u)))?;
    sys.push(card_row(g, g.n() - 1))?;
    Ok(sys)
}

/// Classifies every row of `sys` (built over `g`) as facet, redundant, etc.
pub fn certify(g: &Graph, sys: &ConstraintSystem) -> Result<CertificationReport> {
    if sys.dim() != g.m() {
        return Err(Error::DimensionMismatch {
            expected: g.m(),
            found: sys.dim(),
        });
    }
    if g.m() > MAX_VERTEX_DIM {
        return Err(Error::scale(format!(
            "certification limited to {MAX_VERTEX_DIM} edges, graph has {}",
            g.m()
        )));
    }
    certify_system(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{brute_force_tours, is_hamilton_circuit};
    use crate::geometry::certify::Verdict;
    use crate::geometry::simplex::{lp_solve, Direction};
    use crate::geometry::vertices::enumerate_vertices;
    use crate::rational::QPoint;

    fn tours(g: &Graph) -> Vec<QPoint> {
        let mut t: Vec<QPoint> = brute_force_tours(g).iter().map(|t| QPoint::indicator(g.m(), t)).collect();
        t.sort();
        t
    }

    #[test]
    fn row_counts() {
        let k4 = Graph::complete(4);
        assert_eq!(full_p(&k4).unwrap().len(), 23);
        assert_eq!(full_p(&Graph::complete(3)).unwrap().len(), 12);
        assert_eq!(refined_p(&k4, 0).unwrap().len(), 20);
        assert_eq!(q_description(&k4).unwrap().len(), 17);
        assert_eq!(minimal_p(&k4, true).unwrap().len(), 16);
        let k5 = Graph::complete(5);
        let min5 = minimal_p(&k5, true).unwrap();
        assert_eq!(min5.iter().filter(|c| matches!(c.tag, ConstraintTag::Cut { .. })).count(), 10);
        assert!(full_p(&Graph::complete(13)).is_err());
    }

    #[test]
    fn names_encode_tags() {
        let sys = full_p(&Graph::complete(4)).unwrap();
        assert!(sys.get("nonneg_e0").is_some());
        assert!(sys.get("ub1_e5").is_some());
        assert!(sys.get("degree_4").is_some());
        assert!(sys.get("cut_1_2").is_some());
        assert!(sys.get("cut_1_2_3").is_some());
        assert!(sys.get("cut_2_3").is_none());
    }

    #[test]
    fn k4_descriptions_share_vertices() {
        let k4 = Graph::complete(4);
        let full = enumerate_vertices(&full_p(&k4).unwrap()).unwrap();
        assert_eq!(full, tours(&k4));
        for v0 in 0..4 {
            assert_eq!(enumerate_vertices(&refined_p(&k4, v0).unwrap()).unwrap(), full);
        }
        assert_eq!(enumerate_vertices(&minimal_p(&k4, true).unwrap()).unwrap(), full);
        // dropping the upper bounds admits x(e) = 2 on a perfect matching
        let loose = enumerate_vertices(&minimal_p(&k4, false).unwrap()).unwrap();
        assert!(loose.iter().any(|v| v.iter().any(|c| *c == int(2))));
    }

    #[test]
    fn four_cycle_has_one_point() {
        let c4 = Graph::cycle(4);
        assert_eq!(enumerate_vertices(&full_p(&c4).unwrap()).unwrap(), vec![QPoint::from_ints(&[1; 4])]);
    }

    #[test]
    fn spanning_tree_polytope_of_k4() {
        let k4 = Graph::complete(4);
        let verts = enumerate_vertices(&k_description(&k4).unwrap()).unwrap();
        assert_eq!(verts.len(), 16);
        assert!(verts.iter().all(|v| v.is_integral() && k4.is_spanning_tree(&v.nonzero_support())));
        let tri = Graph::complete(3);
        let k = k_description(&tri).unwrap();
        assert!(k.iter().all(|c| !matches!(c.tag, ConstraintTag::Subgraph { .. })));
        assert_eq!(enumerate_vertices(&k).unwrap().len(), 3);
        let sum = lp_solve(&k_description(&k4).unwrap(), &QPoint::from_ints(&[1; 6]), Direction::Maximize).unwrap();
        assert_eq!(sum.value(), Some(&int(3)));
    }

    #[test]
    fn tours_lie_in_q_and_p_inside_q() {
        for g in [Graph::complete(4), Graph::complete(5), Graph::prism()] {
            let q = q_description(&g).unwrap();
            let qp = q_prime_description(&g).unwrap();
            for t in tours(&g) {
                assert!(q.contains(&t).unwrap());
            }
            for v in enumerate_vertices(&full_p(&g).unwrap()).unwrap() {
                assert!(q.contains(&v).unwrap());
                assert!(qp.contains(&v).unwrap());
            }
            for v in enumerate_vertices(&q).unwrap() {
                assert!(qp.contains(&v).unwrap());
                if v.is_integral() {
                    assert!(is_hamilton_circuit(&g, &v));
                }
            }
        }
    }

    #[test]
    fn k5_cut_facets_match_complete_graph_rule() {
        let k5 = Graph::complete(5);
        let rep = certify(&k5, &full_p(&k5).unwrap()).unwrap();
        assert_eq!(rep.dimension, 5);
        for v in &rep.verdicts {
            if let ConstraintTag::Cut { set } = &v.tag {
                let facet = (2..=3).contains(&set.len());
                assert_eq!(v.verdict == Verdict::Facet, facet, "{}", v.name);
                if !facet {
                    assert!(matches!(v.verdict, Verdict::Redundant | Verdict::ImpliedEquality));
                }
            }
        }
    }

    #[test]
    fn duplicated_row_flags_one_redundant() {
        let k4 = Graph::complete(4);
        let mut sys = k_description(&k4).unwrap();
        let mut copy = sys.constraints()[0].clone();
        copy.name = "copy".into();
        sys.push(copy).unwrap();
        let base = certify(&k4, &k_description(&k4).unwrap()).unwrap();
        let rep = certify(&k4, &sys).unwrap();
        assert_eq!(rep.count(Verdict::Redundant), base.count(Verdict::Redundant) + 1);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("p-full".parse::<DescriptionKind>().unwrap(), DescriptionKind::PFull);
        assert_eq!("Q".parse::<DescriptionKind>().unwrap(), DescriptionKind::Q);
        assert!("R".parse::<DescriptionKind>().is_err());
    }
}
