//! Bundled cross-module checks behind the `verify` subcommand.
//!
//! Each suite runs an executable form of one structural fact on the given
//! graph and returns the counterexamples it met.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::decomposition::{
    brute_force_tours, decompose_extreme_point, random_spanning_tree, satisfies_uc, verify_sum_in_q,
};
use crate::descriptions::{certify, full_p, q_description, refined_p};
use crate::error::{Error, Result};
use crate::geometry::certify::Verdict;
use crate::geometry::constraint::ConstraintTag;
use crate::geometry::vertices::enumerate_vertices;
use crate::graph::{Graph, VertexSet};
use crate::locked::{is_locked, is_locked_matroid_oracle, MAX_ORACLE_EDGES};
use crate::rational::QPoint;

pub const VERIFY_SCHEMA: &str = "subtour/verify/v1";

/// Number of random tree families tried by the tree-sum suite.
pub const TREE_FAMILY_SAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Locked vertex sets agree with the brute-force matroid definition.
    LockedOracle,
    /// In the full description a cut row is a facet iff `2 ≤ |U| ≤ n − 2`.
    CutFacets,
    /// Omitting one degree row and all non-locked cuts keeps the vertex set.
    RefinedEquivalence,
    /// Integral vertices of `Q` are exactly the Hamilton circuits.
    HamiltonVertices,
    /// Every row of the `Q` description is a facet or its equation.
    QFacets,
    /// Extreme points of `Q` decompose into trees; tree sums land in `Q`.
    TreeDecomposition,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::LockedOracle,
        Suite::CutFacets,
        Suite::RefinedEquivalence,
        Suite::HamiltonVertices,
        Suite::QFacets,
        Suite::TreeDecomposition,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::LockedOracle => "locked-oracle",
            Suite::CutFacets => "cut-facets",
            Suite::RefinedEquivalence => "refined-equivalence",
            Suite::HamiltonVertices => "hamilton-vertices",
            Suite::QFacets => "q-facets",
            Suite::TreeDecomposition => "tree-decomposition",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|k| k.as_str().eq_ignore_ascii_case(s)).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|k| k.as_str()).collect();
            Error::domain(format!("unknown suite {s:?}; expected one of {} or all", names.join(", ")))
        })
    }
}

/// Parses a suite selector: one suite name or `all`.
pub fn parse_selector(s: &str) -> Result<Vec<Suite>> {
    if s.eq_ignore_ascii_case("all") {
        Ok(Suite::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub n: usize,
    pub m: usize,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

pub fn run_suites(g: &Graph, suites: &[Suite]) -> Result<VerifyReport> {
    let results = suites.iter().map(|&s| run_suite(g, s)).collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        schema: VERIFY_SCHEMA.to_string(),
        n: g.n(),
        m: g.m(),
        passed: results.iter().all(|r| r.passed),
        suites: results,
    })
}

pub fn run_suite(g: &Graph, suite: Suite) -> Result<SuiteResult> {
    let (checked, failures) = match suite {
        Suite::LockedOracle => locked_oracle(g)?,
        Suite::CutFacets => cut_facets(g)?,
        Suite::RefinedEquivalence => refined_equivalence(g)?,
        Suite::HamiltonVertices => hamilton_vertices(g)?,
        Suite::QFacets => q_facets(g)?,
        Suite::TreeDecomposition => tree_decomposition(g)?,
    };
    Ok(SuiteResult {
        suite,
        passed: failures.is_empty(),
        checked,
        failures,
    })
}

type Outcome = (usize, Vec<Value>);

fn locked_oracle(g: &Graph) -> Result<Outcome> {
    if g.m() > MAX_ORACLE_EDGES || g.n() > 20 {
        return Err(Error::scale(format!("the matroid oracle handles at most {MAX_ORACLE_EDGES} edges")));
    }
    let mut failures = Vec::new();
    let mut checked = 0;
    for mask in 1u64..(1u64 << g.n()) {
        let u = VertexSet::from_mask(mask);
        let inside = g.induced_edges(&u);
        // with an isolated vertex in G[U] the edges describe a smaller set
        if g.covered_vertices(&inside) != u {
            continue;
        }
        let verdict = is_locked(g, &u)?;
        let oracle = is_locked_matroid_oracle(g, &inside)?;
        checked += 1;
        if verdict.locked != oracle {
            failures.push(json!({"U": u, "locked": verdict.locked, "oracle": oracle}));
        }
    }
    Ok((checked, failures))
}

fn cut_facets(g: &Graph) -> Result<Outcome> {
    let n = g.n();
    let report = certify(g, &full_p(g)?)?;
    let mut failures = Vec::new();
    let mut checked = 0;
    for v in &report.verdicts {
        if let ConstraintTag::Cut { set } = &v.tag {
            checked += 1;
            let expect_facet = set.len() >= 2 && set.len() + 2 <= n;
            if (v.verdict == Verdict::Facet) != expect_facet {
                failures.push(json!({"row": v.name, "size": set.len(), "verdict": v.verdict, "face_dim": v.face_dim}));
            }
        }
    }
    Ok((checked, failures))
}

fn refined_equivalence(g: &Graph) -> Result<Outcome> {
    let reference = enumerate_vertices(&full_p(g)?)?;
    let mut failures = Vec::new();
    for v0 in 0..g.n() {
        let refined = enumerate_vertices(&refined_p(g, v0)?)?;
        if refined != reference {
            failures.push(json!({"v0": v0 + 1, "full": reference.len(), "refined": refined.len()}));
        }
    }
    Ok((g.n(), failures))
}

fn hamilton_vertices(g: &Graph) -> Result<Outcome> {
    let integral: Vec<QPoint> = enumerate_vertices(&q_description(g)?)?.into_iter().filter(|v| v.is_integral()).collect();
    let tours: Vec<QPoint> = brute_force_tours(g).iter().map(|t| QPoint::indicator(g.m(), t)).collect();
    let mut failures = Vec::new();
    for v in integral.iter().filter(|v| !tours.contains(v)) {
        failures.push(json!({"integral_vertex_not_a_tour": v}));
    }
    for t in tours.iter().filter(|t| !integral.contains(t)) {
        failures.push(json!({"tour_not_a_vertex": t}));
    }
    Ok((integral.len().max(tours.len()), failures))
}

fn q_facets(g: &Graph) -> Result<Outcome> {
    let report = certify(g, &q_description(g)?)?;
    let expected_dim = g.m() as i64 - 2;
    let mut failures = Vec::new();
    for v in &report.verdicts {
        let ok = match v.verdict {
            Verdict::Equation => true,
            Verdict::Facet => !matches!(v.tag, ConstraintTag::Subgraph { .. }) || v.face_dim == Some(expected_dim),
            _ => false,
        };
        if !ok {
            failures.push(json!({"row": v.name, "verdict": v.verdict, "face_dim": v.face_dim}));
        }
    }
    if report.dimension + 1 != g.m() {
        failures.push(json!({"dimension": report.dimension, "expected": g.m() - 1}));
    }
    Ok((report.verdicts.len(), failures))
}

fn tree_decomposition(g: &Graph) -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for x in enumerate_vertices(&q_description(g)?)? {
        checked += 1;
        match decompose_extreme_point(g, &x) {
            Ok(d) if d.residual.is_zero() && d.intersection_condition && d.members_in_k => {}
            Ok(d) => failures.push(json!({"point": x, "residual": d.residual, "ic": d.intersection_condition})),
            Err(Error::Contradiction(msg)) => failures.push(json!({"point": x, "error": msg})),
            Err(e) => return Err(e),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut samples = 0;
    let mut attempts = 0;
    while samples < TREE_FAMILY_SAMPLES && attempts < 100 * TREE_FAMILY_SAMPLES {
        attempts += 1;
        let fam: Vec<QPoint> = (0..g.n())
            .map(|_| QPoint::indicator(g.m(), &random_spanning_tree(g, &mut rng)))
            .collect();
        if !satisfies_uc(&fam)? {
            continue;
        }
        samples += 1;
        checked += 1;
        let check = verify_sum_in_q(g, &fam)?;
        if !check.implication_holds {
            failures.push(json!({"family": fam, "sum": check.sum, "violated": check.violated}));
        }
    }
    Ok((checked, failures))
}
