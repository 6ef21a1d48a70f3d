//! Core domain model: attribute schemas, joint distributions with exact
//! enumeration and seeded sampling, deterministic functions over attribute
//! subsets, and the assembled proxy-discovery instance.
//!
//! Everything here is immutable after validated construction and safe for
//! concurrent reads; samplers are the only stateful objects and each caller
//! owns its own.

mod distribution;
mod function;
mod instance;
mod schema;

pub use distribution::{
    JointDistribution, Sampler, SupportTable, DEFAULT_STATE_CAP, NORMALIZATION_TOLERANCE,
};
pub use function::{FunctionBody, FunctionDef};
pub use instance::ProxyInstance;
pub use schema::{Assignment, Attribute, AttributeSchema, SchemaRef, StateIter};
