//! Exact polyhedral computations at desk scale.

pub mod certify;
pub mod constraint;
pub mod linalg;
pub mod simplex;
pub mod vertices;

pub use certify::{certify_system, face_dim, is_redundant, polytope_dim, CertificationReport, ConstraintVerdict, Verdict};
pub use constraint::{ConstraintSystem, ConstraintTag, LinearConstraint, Membership, Sense};
pub use linalg::affine_dim;
pub use simplex::{lp_solve, Direction, LpOutcome};
pub use vertices::enumerate_vertices;
