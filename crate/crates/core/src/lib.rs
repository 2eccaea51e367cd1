//! Turn a pair of semantically annotated network datasets (a node table and an
//! edge table, each carrying a Turtle prelude) into an analytics dashboard bundle.
//!
//! The pipeline stages map onto modules:
//!
//! - [`dataset`]: split the annotation prelude from the CSV body, parse both, and
//!   resolve which column carries which semantic role.
//! - [`kg`]: merge annotation triples into a small triple store, answer basic graph
//!   patterns, detect the mobility domain and decide which indicators apply.
//! - [`network`]: materialize the weighted network the metrics run on.
//! - [`metrics`]: degree statistics, density, entropy, components, modularity and
//!   Louvain communities, and shortest-path metrics for route-bearing networks.
//! - [`dashboard`]: indicator catalog, conceptual model, customization, bundle
//!   emission and validation.
//! - [`pipeline`]: the end-to-end orchestration the CLI drives.

pub mod dashboard;
pub mod dataset;
pub mod kg;
pub mod metrics;
pub mod network;
pub mod pipeline;
pub mod term;
pub mod vocab;

pub use term::{Term, Triple};
