//! Multicriteria discrete optimization built around reference points.
//!
//! The crate provides, over exact rational arithmetic:
//!
//! - weighted norm families (infinity, l^p, cornered p) and the reference
//!   point objective `r(y) = ||y^r|| + ||y - y^r||` (minimization) or
//!   `||y^r|| - ||y^r - y||` (maximization);
//! - brute-force reference point / compromise programming solvers and an
//!   exact Gap oracle over explicit finite instances, used as ground truth;
//! - the reduction toolbox connecting Pareto set approximation, reference
//!   point approximation, compromise programming and the Gap problem,
//!   including the geometric grid construction of approximate Pareto sets
//!   and the weight construction that makes any Pareto point the unique
//!   reference point optimum;
//! - a label-correcting bicriteria shortest path solver and the cost-scaling
//!   FPTAS built on it;
//! - an exact rational simplex solver, reference point programs over
//!   polyhedra, and oblivious LP rounding for covering problems;
//! - maximization counterparts and the counterexample fixtures separating
//!   maximization from minimization.
//!
//! See the `examples/` directory for runnable walkthroughs of each
//! capability, and the `refpoint` binary for batch runs over JSON instances.

pub mod corpus;
pub mod covering;
pub mod error;
pub mod explicit;
pub mod graph;
pub mod lp;
pub mod max;
pub mod norm;
pub mod rational;
pub mod reductions;
pub mod run;
pub mod scaling;
pub mod simplex;
pub mod vector;

pub use error::{Error, Result};
pub use norm::{Norm, NormCmp, NormKind, NormValue, ReferenceContext};
pub use rational::Rat;
pub use vector::{ObjectiveVector, Sense};
