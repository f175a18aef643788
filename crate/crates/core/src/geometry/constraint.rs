//! Named rational constraints and constraint systems over `R^E`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{serde_label, VertexSet};
use crate::rational::{format_rational, serde_rational, QPoint, Rational};

pub const SYSTEM_SCHEMA: &str = "subtour/constraint-system/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        })
    }
}

/// Structured origin of a constraint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstraintTag {
    /// `x(e) ≥ 0`
    Nonneg { edge: usize },
    /// `x(e) ≤ 1`
    Ub1 { edge: usize },
    /// `x(δ(v)) = 2`
    Degree {
        #[serde(with = "serde_label")]
        vertex: usize,
    },
    /// `x(δ(U)) ≥ 2`
    Cut { set: VertexSet },
    /// `x(E(U)) ≤ |U| − 1`
    Subgraph { set: VertexSet },
    /// `x(E) = c`
    Card { value: usize },
    /// Anything built by hand.
    Other,
}

impl ConstraintTag {
    /// Stable row name encoding the tag, with 1-based vertex labels.
    pub fn default_name(&self) -> String {
        match self {
            ConstraintTag::Nonneg { edge } => format!("nonneg_e{edge}"),
            ConstraintTag::Ub1 { edge } => format!("ub1_e{edge}"),
            ConstraintTag::Degree { vertex } => format!("degree_{}", vertex + 1),
            ConstraintTag::Cut { set } => format!("cut_{}", set.label_string()),
            ConstraintTag::Subgraph { set } => format!("subgraph_{}", set.label_string()),
            ConstraintTag::Card { value } => format!("card_{value}"),
            ConstraintTag::Other => "row".to_string(),
        }
    }
}

mod coefficient_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(map: &BTreeMap<usize, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text: BTreeMap<usize, String> = map.iter().map(|(k, v)| (*k, format_rational(v))).collect();
        text.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<usize, Rational>, D::Error> {
        let raw = BTreeMap::<usize, serde_rational::RationalRepr>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| v.into_rational().map(|r| (k, r)))
            .collect::<Result<_>>()
            .map_err(serde::de::Error::custom)
    }
}

/// `Σ coefficients[e]·x(e)  sense  rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearConstraint {
    pub name: String,
    pub tag: ConstraintTag,
    #[serde(with = "coefficient_serde")]
    coefficients: BTreeMap<usize, Rational>,
    pub sense: Sense,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
}

impl LinearConstraint {
    /// Builds a constraint, summing repeated indices and dropping zeros.
    pub fn new(
        name: impl Into<String>,
        tag: ConstraintTag,
        terms: impl IntoIterator<Item = (usize, Rational)>,
        sense: Sense,
        rhs: Rational,
    ) -> Self {
        let mut coefficients: BTreeMap<usize, Rational> = BTreeMap::new();
        for (e, c) in terms {
            *coefficients.entry(e).or_insert_with(Rational::zero) += c;
        }
        coefficients.retain(|_, c| !c.is_zero());
        LinearConstraint {
            name: name.into(),
            tag,
            coefficients,
            sense,
            rhs,
        }
    }

    /// Like [`LinearConstraint::new`], named after its tag.
    pub fn tagged(tag: ConstraintTag, terms: impl IntoIterator<Item = (usize, Rational)>, sense: Sense, rhs: Rational) -> Self {
        let name = tag.default_name();
        LinearConstraint::new(name, tag, terms, sense, rhs)
    }

    pub fn coefficients(&self) -> &BTreeMap<usize, Rational> {
        &self.coefficients
    }

    pub fn coefficient(&self, e: usize) -> Rational {
        self.coefficients.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coefficients.keys().next_back().copied()
    }

    pub fn dense_row(&self, dim: usize) -> Vec<Rational> {
        let mut row = vec![Rational::zero(); dim];
        for (&e, c) in &self.coefficients {
            row[e] = c.clone();
        }
        row
    }

    pub fn lhs(&self, x: &QPoint) -> Rational {
        self.coefficients.iter().fold(Rational::zero(), |acc, (&e, c)| acc + c * &x[e])
    }

    pub fn is_satisfied(&self, x: &QPoint) -> bool {
        let lhs = self.lhs(x);
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }

    pub fn is_tight(&self, x: &QPoint) -> bool {
        self.lhs(x) == self.rhs
    }

    /// Whether this row reads `x(e) ≥ 0` for a single index `e`.
    pub fn as_nonnegativity(&self) -> Option<usize> {
        if self.sense != Sense::Ge || !self.rhs.is_zero() || self.coefficients.len() != 1 {
            return None;
        }
        let (&e, c) = self.coefficients.iter().next()?;
        c.is_positive().then_some(e)
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.name)?;
        if self.coefficients.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.coefficients.iter().enumerate() {
            let sign = match (i, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mag = c.abs();
            let coef = if mag.is_one() { String::new() } else { format!("{} ", format_rational(&mag)) };
            write!(f, "{sign}{coef}x{e}")?;
        }
        write!(f, " {} {}", self.sense, format_rational(&self.rhs))
    }
}

/// Result of a membership test; `violated` is the first failing row in
/// system order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    pub violated: Option<String>,
    pub violated_index: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSystem {
    dim: usize,
    constraints: Vec<LinearConstraint>,
}

#[derive(Serialize, Deserialize)]
struct SystemDocument {
    schema: String,
    dimension: usize,
    constraints: Vec<LinearConstraint>,
}

impl ConstraintSystem {
    pub fn new(dim: usize) -> Self {
        ConstraintSystem {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn from_constraints(dim: usize, constraints: Vec<LinearConstraint>) -> Result<Self> {
        let mut sys = ConstraintSystem::new(dim);
        for c in constraints {
            sys.push(c)?;
        }
        Ok(sys)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn iter(&self) -> impl Iterator<Item = &LinearConstraint> {
        self.constraints.iter()
    }

    pub fn get(&self, name: &str) -> Option<&LinearConstraint> {
        self.constraints.iter().find(|c| c.name == name)
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.constraints.iter().position(|c| c.name == name)
    }

    /// Appends a row; names must be unique and indices inside the dimension.
    pub fn push(&mut self, c: LinearConstraint) -> Result<()> {
        if let Some(e) = c.max_index().filter(|&e| e >= self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: e + 1,
            });
        }
        if self.constraints.iter().any(|d| d.name == c.name) {
            return Err(Error::domain(format!("duplicate constraint name {:?}", c.name)));
        }
        self.constraints.push(c);
        Ok(())
    }

    /// Appends a row, renaming it with a numeric suffix if the name is taken.
    pub fn push_renamed(&mut self, mut c: LinearConstraint) -> Result<()> {
        let taken: HashSet<&str> = self.constraints.iter().map(|d| d.name.as_str()).collect();
        if taken.contains(c.name.as_str()) {
            let base = c.name.clone();
            let mut k = 2;
            while taken.contains(format!("{base}_{k}").as_str()) {
                k += 1;
            }
            c.name = format!("{base}_{k}");
        }
        self.push(c)
    }

    /// The system with the rows at `skip` removed.
    pub fn without(&self, skip: &[usize]) -> ConstraintSystem {
        ConstraintSystem {
            dim: self.dim,
            constraints: self
                .constraints
                .iter()
                .enumerate()
                .filter(|(i, _)| !skip.contains(i))
                .map(|(_, c)| c.clone())
                .collect(),
        }
    }

    /// The subsystem of rows selected by `keep`.
    pub fn select(&self, keep: impl Fn(usize, &LinearConstraint) -> bool) -> ConstraintSystem {
        ConstraintSystem {
            dim: self.dim,
            constraints: self
                .constraints
                .iter()
                .enumerate()
                .filter(|(i, c)| keep(*i, c))
                .map(|(_, c)| c.clone())
                .collect(),
        }
    }

    pub fn membership(&self, x: &QPoint) -> Result<Membership> {
        x.check_dim(self.dim)?;
        let first = self.constraints.iter().position(|c| !c.is_satisfied(x));
        Ok(Membership {
            member: first.is_none(),
            violated: first.map(|i| self.constraints[i].name.clone()),
            violated_index: first,
        })
    }

    pub fn contains(&self, x: &QPoint) -> Result<bool> {
        self.membership(x).map(|m| m.member)
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = SystemDocument {
            schema: SYSTEM_SCHEMA.to_string(),
            dimension: self.dim,
            constraints: self.constraints.clone(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SystemDocument = serde_json::from_str(text)?;
        if doc.schema != SYSTEM_SCHEMA {
            return Err(Error::Document(format!("unsupported schema {:?}", doc.schema)));
        }
        ConstraintSystem::from_constraints(doc.dimension, doc.constraints)
    }
}
