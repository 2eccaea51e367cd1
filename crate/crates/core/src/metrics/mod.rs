//! Network metrics: degree statistics, components, modularity and Louvain
//! communities, and shortest-path measures.
//!
//! Degree-based metrics and communities use the undirected view. Path metrics
//! follow edge direction and only run on networks whose edges represent routes.

mod community;
mod compute;
mod degree;
mod enrich;
mod paths;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::network::NodeId;

pub use community::{detect_communities, modularity, Partition};
pub use compute::{compute_metrics, ComputeOptions, MetricResults};
pub use degree::{
    average_degree, bottom_k_degree, connected_components, degree_centrality, degrees, density,
    entropy, node_weighted_degrees, weighted_average_degree, Components,
};
pub use enrich::{enrich_tables, format_float, round9, EnrichError, EnrichedTables, COLUMN_PREFIX};
pub use paths::{
    analyze_paths, average_path_length, betweenness, diameter, eccentricity, shortest_path,
    top_k_longest_min_paths, Path, PathAnalysis,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("the network has no edges")]
    EmptyEdgeSet,
    #[error("the network has fewer than two nodes")]
    SingletonNetwork,
    #[error("partition has {found} labels for {expected} nodes")]
    InvalidPartition { expected: usize, found: usize },
    #[error("path metrics need edges that represent routes")]
    PathMetricNotApplicable,
    #[error("no path from {0} to {1}")]
    Unreachable(NodeId, NodeId),
    #[error("no pair of distinct nodes is connected")]
    NoFinitePairs,
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("the time criterion needs travel times, which the input format does not carry")]
    TimeCriterionUnsupported,
}

/// What a shortest path minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PathCriterion {
    #[default]
    Hops,
    Weight,
    /// Parsed but never computable from the supported inputs.
    Time,
}

impl FromStr for PathCriterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hops" => Ok(PathCriterion::Hops),
            "weight" => Ok(PathCriterion::Weight),
            "time" => Ok(PathCriterion::Time),
            other => Err(format!(
                "unknown path criterion {other:?} (expected hops, weight or time)"
            )),
        }
    }
}

impl fmt::Display for PathCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathCriterion::Hops => "hops",
            PathCriterion::Weight => "weight",
            PathCriterion::Time => "time",
        })
    }
}
