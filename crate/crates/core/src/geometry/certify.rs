//! Face dimensions, redundancy certificates and per-row classification of a
//! bounded constraint system.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::constraint::{ConstraintSystem, ConstraintTag, LinearConstraint, Sense};
use crate::geometry::linalg;
use crate::geometry::simplex::{lp_solve, Direction, LpOutcome};
use crate::geometry::vertices::enumerate_vertices;
use crate::rational::{serde_rational, QPoint, Rational};

pub const REPORT_SCHEMA: &str = "subtour/certification/v1";

/// Affine dimension of the face `{x ∈ sys : c tight}`, `-1` when empty.
///
/// `vertices` must be the vertex set of `sys`.
pub fn face_dim_from_vertices(vertices: &[QPoint], c: &LinearConstraint) -> i64 {
    let tight: Vec<QPoint> = vertices.iter().filter(|v| c.is_tight(v)).cloned().collect();
    match linalg::affine_dim(&tight) {
        Ok(d) => d as i64,
        Err(_) => -1,
    }
}

/// Dimension of the face defined by `c`; `c` must be valid for `sys`.
pub fn face_dim(sys: &ConstraintSystem, c: &LinearConstraint) -> Result<i64> {
    if !is_valid(sys, c)? {
        return Err(Error::domain(format!("{} is not valid for the system", c.name)));
    }
    let vertices = enumerate_vertices(sys)?;
    Ok(face_dim_from_vertices(&vertices, c))
}

/// Affine dimension of a polytope; errors when it is empty.
pub fn polytope_dim(sys: &ConstraintSystem) -> Result<usize> {
    let vertices = enumerate_vertices(sys)?;
    if vertices.is_empty() {
        return Err(Error::Infeasible);
    }
    linalg::affine_dim(&vertices)
}

/// Whether every point of `sys` satisfies `c` (decided by LP).
pub fn is_valid(sys: &ConstraintSystem, c: &LinearConstraint) -> Result<bool> {
    Ok(redundancy(sys, c)?.redundant)
}

/// Certificate for the redundancy question of one row against a system.
///
/// `extremes` holds the optimum of the row's left-hand side over the system in
/// each direction that matters for its sense; `witness` is a point of the
/// system violating the row when one exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedundancyCertificate {
    pub redundant: bool,
    pub minimum: Option<Bound>,
    pub maximum: Option<Bound>,
    pub witness: Option<QPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Bound {
    Finite {
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    Unbounded,
    Infeasible,
}

fn optimise(sys: &ConstraintSystem, c: &LinearConstraint, direction: Direction) -> Result<(Bound, Option<QPoint>)> {
    let objective = QPoint::new(c.dense_row(sys.dim()));
    Ok(match lp_solve(sys, &objective, direction)? {
        LpOutcome::Optimal { value, point } => (Bound::Finite { value }, Some(point)),
        LpOutcome::Unbounded => (Bound::Unbounded, None),
        LpOutcome::Infeasible => (Bound::Infeasible, None),
    })
}

/// Decides whether `c` is implied by `sys`, by optimising its left-hand side.
pub fn redundancy(sys: &ConstraintSystem, c: &LinearConstraint) -> Result<RedundancyCertificate> {
    if let Some(e) = c.max_index().filter(|&e| e >= sys.dim()) {
        return Err(Error::DimensionMismatch {
            expected: sys.dim(),
            found: e + 1,
        });
    }
    let need_min = matches!(c.sense, Sense::Ge | Sense::Eq);
    let need_max = matches!(c.sense, Sense::Le | Sense::Eq);
    let mut cert = RedundancyCertificate {
        redundant: true,
        minimum: None,
        maximum: None,
        witness: None,
    };
    if need_min {
        let (bound, point) = optimise(sys, c, Direction::Minimize)?;
        match &bound {
            Bound::Finite { value } if *value < c.rhs => {
                cert.redundant = false;
                cert.witness = point;
            }
            Bound::Unbounded => {
                cert.redundant = false;
            }
            _ => {}
        }
        cert.minimum = Some(bound);
    }
    if need_max {
        let (bound, point) = optimise(sys, c, Direction::Maximize)?;
        match &bound {
            Bound::Finite { value } if *value > c.rhs => {
                cert.redundant = false;
                if cert.witness.is_none() {
                    cert.witness = point;
                }
            }
            Bound::Unbounded => {
                cert.redundant = false;
            }
            _ => {}
        }
        cert.maximum = Some(bound);
    }
    Ok(cert)
}

/// Whether removing row `index` leaves the feasible set unchanged.
pub fn is_redundant(sys: &ConstraintSystem, index: usize) -> Result<RedundancyCertificate> {
    let c = sys
        .constraints()
        .get(index)
        .ok_or_else(|| Error::domain(format!("row {index} not in the system")))?;
    redundancy(&sys.without(&[index]), c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Inequality defining a face of dimension `dim − 1`.
    Facet,
    /// Inequality needed by the system whose face is smaller than a facet.
    IrredundantNonFacet,
    /// Row implied by the rows that remain after earlier removals.
    Redundant,
    /// Inequality tight on the whole polytope.
    ImpliedEquality,
    /// Equality row that the remaining rows do not imply.
    Equation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintVerdict {
    pub name: String,
    pub tag: ConstraintTag,
    pub verdict: Verdict,
    /// Dimension of the face the row defines; `None` for equality rows.
    pub face_dim: Option<i64>,
    /// Whether the row was implied by the rows kept so far.
    pub redundant: bool,
    /// Affinely independent tight vertices spanning the face (facets only).
    pub witnesses: Vec<QPoint>,
    pub certificate: Option<RedundancyCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub schema: String,
    pub ambient_dimension: usize,
    pub dimension: usize,
    pub vertex_count: usize,
    pub verdicts: Vec<ConstraintVerdict>,
    pub equalities_independent: bool,
    /// No redundant rows, every inequality a facet, independent equalities.
    pub minimal: bool,
}

impl CertificationReport {
    pub fn verdict(&self, name: &str) -> Option<&ConstraintVerdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.verdicts.iter().filter(|v| v.verdict == verdict).count()
    }
}

/// Classifies every row of a bounded, nonempty system.
///
/// Rows are examined in order against the system minus the rows already
/// found redundant, so exactly one copy of a duplicated row is flagged.
pub fn certify_system(sys: &ConstraintSystem) -> Result<CertificationReport> {
    let vertices = enumerate_vertices(sys)?;
    if vertices.is_empty() {
        return Err(Error::Infeasible);
    }
    let dim = linalg::affine_dim(&vertices)?;
    let mut removed: Vec<usize> = Vec::new();
    let mut verdicts = Vec::with_capacity(sys.len());

    for (i, c) in sys.iter().enumerate() {
        let mut skip = removed.clone();
        skip.push(i);
        let rest = sys.without(&skip);
        let cert = redundancy(&rest, c)?;
        let redundant = cert.redundant;
        if redundant {
            removed.push(i);
        }
        let (verdict, face_dim, witnesses) = if c.sense == Sense::Eq {
            (if redundant { Verdict::Redundant } else { Verdict::Equation }, None, Vec::new())
        } else {
            let tight: Vec<QPoint> = vertices.iter().filter(|v| c.is_tight(v)).cloned().collect();
            let fd = linalg::affine_dim(&tight).map(|d| d as i64).unwrap_or(-1);
            if tight.len() == vertices.len() {
                (Verdict::ImpliedEquality, Some(fd), Vec::new())
            } else if redundant {
                (Verdict::Redundant, Some(fd), Vec::new())
            } else if fd == dim as i64 - 1 {
                let chosen = linalg::affinely_independent_subset(&tight);
                (Verdict::Facet, Some(fd), chosen.into_iter().map(|k| tight[k].clone()).collect())
            } else {
                (Verdict::IrredundantNonFacet, Some(fd), Vec::new())
            }
        };
        verdicts.push(ConstraintVerdict {
            name: c.name.clone(),
            tag: c.tag.clone(),
            verdict,
            face_dim,
            redundant,
            witnesses,
            certificate: Some(cert),
        });
    }

    let eq_rows: Vec<Vec<Rational>> = sys.iter().filter(|c| c.sense == Sense::Eq).map(|c| c.dense_row(sys.dim())).collect();
    let equalities_independent = linalg::rank(&eq_rows) == eq_rows.len();
    let minimal = equalities_independent
        && verdicts
            .iter()
            .all(|v| !v.redundant && matches!(v.verdict, Verdict::Facet | Verdict::Equation));
    Ok(CertificationReport {
        schema: REPORT_SCHEMA.to_string(),
        ambient_dimension: sys.dim(),
        dimension: dim,
        vertex_count: vertices.len(),
        verdicts,
        equalities_independent,
        minimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn row(name: &str, terms: &[(usize, i64)], sense: Sense, rhs: i64) -> LinearConstraint {
        LinearConstraint::new(name, ConstraintTag::Other, terms.iter().map(|&(e, c)| (e, int(c))), sense, int(rhs))
    }

    fn triangle_simplex() -> ConstraintSystem {
        ConstraintSystem::from_constraints(
            2,
            vec![
                row("x", &[(0, 1)], Sense::Ge, 0),
                row("y", &[(1, 1)], Sense::Ge, 0),
                row("s", &[(0, 1), (1, 1)], Sense::Le, 1),
                row("loose", &[(0, 1), (1, 1)], Sense::Le, 3),
                row("s_copy", &[(0, 1), (1, 1)], Sense::Le, 1),
                row("corner", &[(0, 1), (1, -1)], Sense::Le, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn classifies_facets_and_redundant_rows() {
        let rep = certify_system(&triangle_simplex()).unwrap();
        assert_eq!(rep.dimension, 2);
        assert_eq!(rep.verdict("x").unwrap().verdict, Verdict::Facet);
        assert_eq!(rep.verdict("loose").unwrap().verdict, Verdict::Redundant);
        // the first copy is implied by the second; the second then stays
        assert_eq!(rep.verdict("s").unwrap().verdict, Verdict::Redundant);
        assert_eq!(rep.verdict("s_copy").unwrap().verdict, Verdict::Facet);
        // x − y ≤ 1 touches the simplex only at (1, 0)
        assert_eq!(rep.verdict("corner").unwrap().verdict, Verdict::Redundant);
        assert_eq!(rep.verdict("corner").unwrap().face_dim, Some(0));
        assert!(!rep.minimal);
        let facet = rep.verdict("x").unwrap();
        assert_eq!(facet.witnesses.len(), 2);
    }

    #[test]
    fn implied_equalities_and_equations() {
        let sys = ConstraintSystem::from_constraints(
            2,
            vec![
                row("x", &[(0, 1)], Sense::Ge, 0),
                row("xu", &[(0, 1)], Sense::Le, 1),
                row("sum", &[(0, 1), (1, 1)], Sense::Eq, 1),
                row("sum_ge", &[(0, 1), (1, 1)], Sense::Ge, 1),
                row("y", &[(1, 1)], Sense::Ge, 0),
            ],
        )
        .unwrap();
        let rep = certify_system(&sys).unwrap();
        assert_eq!(rep.dimension, 1);
        assert_eq!(rep.verdict("sum").unwrap().verdict, Verdict::Equation);
        assert_eq!(rep.verdict("sum_ge").unwrap().verdict, Verdict::ImpliedEquality);
        assert!(rep.verdict("sum_ge").unwrap().redundant);
        assert_eq!(rep.verdict("x").unwrap().verdict, Verdict::Facet);
        // y ≥ 0 is x ≤ 1 again once x + y = 1 holds
        assert_eq!(rep.verdict("xu").unwrap().verdict, Verdict::Redundant);
        assert_eq!(rep.verdict("y").unwrap().verdict, Verdict::Facet);
    }

    #[test]
    fn face_dimension_requires_validity() {
        let sys = triangle_simplex();
        let bad = row("bad", &[(0, 1)], Sense::Le, 0);
        assert!(face_dim(&sys, &bad).is_err());
        let ok = row("ok", &[(0, 1)], Sense::Ge, 0);
        assert_eq!(face_dim(&sys, &ok).unwrap(), 1);
        assert_eq!(polytope_dim(&sys).unwrap(), 2);
        assert!(is_redundant(&sys, 3).unwrap().redundant);
        assert!(!is_redundant(&sys, 0).unwrap().redundant);
    }
}
