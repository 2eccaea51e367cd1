//! Which indicators can be computed for a dataset pair.
//!
//! Facts that only exist once the network has been built and validated (geo
//! coordinates present, weights known, edges that represent routes, connection
//! counts available) are asserted into the graph as capability triples, so
//! every indicator requirement is answered the same way: an `ask` over
//! annotations plus capabilities.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::query::ask;
use super::store::KnowledgeGraph;
use crate::dashboard::{IndicatorId, IndicatorSpec};
use crate::term::{Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Capability {
    HasGeo,
    HasWeights,
    RepresentsPaths,
    HasConnectionCounts,
}

impl Capability {
    pub const ALL: [Capability; 4] = [
        Capability::HasGeo,
        Capability::HasWeights,
        Capability::RepresentsPaths,
        Capability::HasConnectionCounts,
    ];

    pub fn class_iri(self) -> &'static str {
        match self {
            Capability::HasGeo => vocab::HAS_GEO,
            Capability::HasWeights => vocab::HAS_WEIGHTS,
            Capability::RepresentsPaths => vocab::REPRESENTS_PATHS,
            Capability::HasConnectionCounts => vocab::CONNECTIONS,
        }
    }
}

impl fmt::Display for Capability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Capability::HasGeo => "has-geo",
            Capability::HasWeights => "has-weights",
            Capability::RepresentsPaths => "represents-paths",
            Capability::HasConnectionCounts => "has-connection-counts",
        })
    }
}

pub type CapabilitySet = BTreeSet<Capability>;

/// `<graph> a <capability class>` for each capability.
pub fn capability_facts(capabilities: &CapabilitySet, graph: &Term) -> Vec<Triple> {
    capabilities
        .iter()
        .map(|c| {
            Triple::new(
                graph.clone(),
                Term::iri(vocab::RDF_TYPE),
                Term::iri(c.class_iri()),
            )
        })
        .collect()
}

/// Outcome of checking one catalog entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Applicability {
    pub id: IndicatorId,
    pub applicable: bool,
    /// Names of the requirements that did not hold.
    pub failed: Vec<String>,
}

pub fn evaluate_indicators(
    kg: &KnowledgeGraph,
    capabilities: &CapabilitySet,
    graph: &Term,
    catalog: &[IndicatorSpec],
) -> Vec<Applicability> {
    let mut facts = kg.clone();
    facts.extend(capability_facts(capabilities, graph));
    catalog
        .iter()
        .map(|spec| {
            let failed: Vec<String> = spec
                .requirements
                .iter()
                .filter(|r| !ask(&facts, &r.pattern))
                .map(|r| r.name.to_string())
                .collect();
            Applicability {
                id: spec.id,
                applicable: failed.is_empty(),
                failed,
            }
        })
        .collect()
}

/// Ids of the applicable indicators, in catalog order.
pub fn discover_indicators(
    kg: &KnowledgeGraph,
    capabilities: &CapabilitySet,
    graph: &Term,
    catalog: &[IndicatorSpec],
) -> Vec<IndicatorId> {
    evaluate_indicators(kg, capabilities, graph, catalog)
        .into_iter()
        .filter(|a| a.applicable)
        .map(|a| a.id)
        .collect()
}
