//! Exact linear descriptions of the subtour elimination polytope of an
//! undirected graph, indexed by locked subgraphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] and [`mincut`]: multigraph primitives (cuts, blocks, bridges,
//!   graphic rank, Stoer–Wagner minimum cut).
//! * [`reductions`]: the loop / bridge / parallel / series preprocessing
//!   pipeline with a liftable trace.
//! * [`locked`] and [`laminar`]: locked subgraphs, a brute-force matroid oracle
//!   and the uncrossing of tight set families.
//! * [`geometry`]: exact rational LP, vertex enumeration, dimensions and
//!   redundancy certificates.
//! * [`descriptions`], [`tsp_bound`], [`decomposition`]: the polytope
//!   descriptions, the cutting-plane lower bound and the spanning-tree
//!   decomposition of extreme points.
//! * [`verify`]: bundled cross-module checks used by the `verify` subcommand.

pub mod decomposition;
pub mod descriptions;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod laminar;
pub mod locked;
pub mod lp_format;
pub mod mincut;
pub mod rational;
pub mod reductions;
pub mod tsp_bound;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{EdgeSet, Graph, VertexSet};
pub use rational::{QPoint, Rational};
