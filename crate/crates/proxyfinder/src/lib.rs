//! proxyfinder discovers API-proxy relationships: given finite attributes, a
//! joint distribution over their values, and a set of functions (APIs) over
//! attribute subsets, it finds function subsets that reduce the uncertainty
//! of a target attribute below a threshold.
//!
//! The library provides:
//!
//! - a validated domain model (schemas, tabular/product/reduction
//!   distributions with seeded sampling and exact enumeration, deterministic
//!   functions) in [`model`];
//! - entropy, conditional entropy, and mutual information estimators, both
//!   exact and sampling-based, in [`estimation`];
//! - a vertex-cover instance encoder plus an independent vertex-cover oracle
//!   for cross-validation in [`reductions`];
//! - exhaustive decision/minimization solvers, the greedy
//!   mutual-information heuristic, and a greedy-vs-exact comparison harness
//!   in [`solvers`];
//! - synthetic scenario builders (display size, location, user identity) in
//!   [`scenarios`] and small didactic instances in [`fixtures`];
//! - a JSON scenario format in [`scenario_io`] and report types in
//!   [`report`], surfaced by the `proxyfinder` binary defined on [`cli`].
//!
//! Start with the runnable examples (`cargo run --example xor_pair`, etc.),
//! which walk through each capability end to end.

pub mod cli;
mod combos;
pub mod error;
pub mod estimation;
pub mod fixtures;
pub mod model;
pub mod reductions;
pub mod report;
pub mod scenario_io;
pub mod scenarios;
pub mod solvers;

pub(crate) mod rng;

pub use error::{Error, Result};
pub use estimation::{EstimatorConfig, EstimatorKind, EstimatorMode, UncertaintyReport};
pub use model::{
    Assignment, Attribute, AttributeSchema, FunctionBody, FunctionDef, JointDistribution,
    ProxyInstance,
};
pub use reductions::{encode_vertex_cover, Graph, VcReductionInstance};
pub use solvers::{solve_decision, solve_exact_min, solve_greedy, SolveResult, SolverOptions};
