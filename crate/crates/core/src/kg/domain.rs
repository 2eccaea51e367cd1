use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::pattern::Pattern;
use super::query::ask;
use super::store::KnowledgeGraph;
use crate::dataset::{AnnotatedDataset, DatasetRole};
use crate::term::Term;

/// Mobility system a dataset pair describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DomainClass {
    BicycleShare,
    Bus,
    Subway,
    Unknown,
}

impl DomainClass {
    /// Portuguese system name used in dashboard titles.
    pub fn label(self) -> &'static str {
        match self {
            DomainClass::BicycleShare => "Bicicletas Compartilhadas",
            DomainClass::Bus => "Ônibus",
            DomainClass::Subway => "Metrô",
            DomainClass::Unknown => "Rede",
        }
    }
}

impl fmt::Display for DomainClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainClass::BicycleShare => "BicycleShare",
            DomainClass::Bus => "Bus",
            DomainClass::Subway => "Subway",
            DomainClass::Unknown => "Unknown",
        })
    }
}

/// Node classes checked in priority order; the first that some typed resource
/// carries decides the domain.
const DOMAIN_BRANCHES: &[(&str, DomainClass)] = &[
    ("qoe-m:Bicycle-Share_Station", DomainClass::BicycleShare),
    ("qoe-m:Bus_Stop", DomainClass::Bus),
    ("qoe-m:Subway_Station", DomainClass::Subway),
];

pub fn detect_domain(kg: &KnowledgeGraph) -> DomainClass {
    for (class, domain) in DOMAIN_BRANCHES {
        let pattern = Pattern::standard(&format!("?type a ?any . EXISTS {{ ?type a {class} }}"))
            .expect("built-in domain pattern");
        if ask(kg, &pattern) {
            return *domain;
        }
    }
    DomainClass::Unknown
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoleConflict {
    #[error("both datasets are node sets; one node set and one edge set are required")]
    TwoNodeSets,
    #[error("both datasets are edge sets; one node set and one edge set are required")]
    TwoEdgeSets,
    #[error("the {0} does not name the graph it belongs to")]
    MissingGraphId(DatasetRole),
    #[error("node set describes graph {nodes} but edge set describes graph {edges}")]
    GraphMismatch { nodes: Term, edges: Term },
}

/// A node set and an edge set that describe the same graph.
#[derive(Debug, Clone)]
pub struct ValidatedPair {
    pub nodes: AnnotatedDataset,
    pub edges: AnnotatedDataset,
    pub graph: Term,
}

impl ValidatedPair {
    /// Both annotation sets merged into one store.
    pub fn knowledge_graph(&self) -> KnowledgeGraph {
        let mut kg = KnowledgeGraph::from_triples(&self.nodes.triples);
        kg.extend(self.edges.triples.iter().cloned());
        kg
    }
}

/// Accepts the two datasets in either order.
pub fn classify_roles(
    first: AnnotatedDataset,
    second: AnnotatedDataset,
) -> Result<ValidatedPair, RoleConflict> {
    let (nodes, edges) = match (first.role(), second.role()) {
        (DatasetRole::NodeSet, DatasetRole::EdgeSet) => (first, second),
        (DatasetRole::EdgeSet, DatasetRole::NodeSet) => (second, first),
        (DatasetRole::NodeSet, DatasetRole::NodeSet) => return Err(RoleConflict::TwoNodeSets),
        (DatasetRole::EdgeSet, DatasetRole::EdgeSet) => return Err(RoleConflict::TwoEdgeSets),
    };
    let node_graph = nodes
        .bindings
        .graph
        .clone()
        .ok_or(RoleConflict::MissingGraphId(DatasetRole::NodeSet))?;
    let edge_graph = edges
        .bindings
        .graph
        .clone()
        .ok_or(RoleConflict::MissingGraphId(DatasetRole::EdgeSet))?;
    if node_graph != edge_graph {
        return Err(RoleConflict::GraphMismatch {
            nodes: node_graph,
            edges: edge_graph,
        });
    }
    Ok(ValidatedPair {
        nodes,
        edges,
        graph: node_graph,
    })
}
