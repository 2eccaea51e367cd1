//! Annotation triples as a queryable knowledge graph: basic graph pattern
//! matching, domain detection and indicator discovery.

mod discovery;
mod domain;
mod pattern;
mod query;
mod store;

pub use discovery::{
    capability_facts, discover_indicators, evaluate_indicators, Applicability, Capability,
    CapabilitySet,
};
pub use domain::{classify_roles, detect_domain, DomainClass, RoleConflict, ValidatedPair};
pub use pattern::{Pattern, PatternError, PatternTerm, Solution, TriplePattern};
pub use query::{ask, match_pattern};
pub use store::KnowledgeGraph;
