use std::collections::BTreeMap;

use super::community::{detect_communities, Partition};
use super::degree::{
    average_degree, bottom_k_degree, connected_components, degree_centrality, degrees, density,
    entropy, node_weighted_degrees, weighted_average_degree, Components,
};
use super::paths::{analyze_paths, PathAnalysis};
use super::{MetricError, PathCriterion};
use crate::network::{Network, NodeId};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComputeOptions {
    pub criterion: PathCriterion,
    /// Length of the top-k / bottom-k lists.
    pub k: usize,
    pub include_paths: bool,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        Self {
            criterion: PathCriterion::Hops,
            k: 10,
            include_paths: false,
        }
    }
}

/// Everything the dashboard can draw from one network.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricResults {
    /// Named scalar results; metrics that are undefined for this network are absent.
    pub scalars: BTreeMap<&'static str, f64>,
    pub degree: Vec<usize>,
    pub weighted_degree: Vec<f64>,
    pub degree_centrality: Option<Vec<f64>>,
    pub communities: Option<Partition>,
    pub components: Components,
    pub lowest_offer: Vec<(NodeId, usize)>,
    pub paths: Option<PathAnalysis>,
    pub warnings: Vec<String>,
}

fn note(warnings: &mut Vec<String>, name: &str, err: MetricError) {
    warnings.push(format!("{name} not computed: {err}"));
}

pub fn compute_metrics(
    net: &Network,
    options: &ComputeOptions,
) -> Result<MetricResults, MetricError> {
    let mut scalars = BTreeMap::new();
    let mut warnings = Vec::new();

    scalars.insert("nodes", net.v() as f64);
    scalars.insert("edges", net.m() as f64);
    scalars.insert("average_degree", average_degree(net));
    scalars.insert("entropy", entropy(net));
    match weighted_average_degree(net) {
        Ok(w) => {
            scalars.insert("weighted_average_degree", w);
        }
        Err(e) => note(&mut warnings, "weighted average degree", e),
    }
    match density(net) {
        Ok(d) => {
            scalars.insert("density", d);
        }
        Err(e) => note(&mut warnings, "density", e),
    }
    let degree_centrality = degree_centrality(net)
        .map_err(|e| note(&mut warnings, "degree centrality", e))
        .ok();
    let communities = detect_communities(net)
        .map_err(|e| note(&mut warnings, "communities", e))
        .ok();
    if let Some(p) = &communities {
        scalars.insert("modularity", p.q);
        scalars.insert("communities", p.count as f64);
    }
    let components = connected_components(net);
    scalars.insert("components", components.count as f64);

    let paths = if options.include_paths {
        let analysis = analyze_paths(net, options.criterion, options.k)?;
        scalars.insert("diameter", analysis.diameter);
        match analysis.average_path_length {
            Some(l) => {
                scalars.insert("average_path_length", l);
            }
            None => note(
                &mut warnings,
                "average path length",
                MetricError::NoFinitePairs,
            ),
        }
        warnings.extend(analysis.warnings());
        Some(analysis)
    } else {
        None
    };

    Ok(MetricResults {
        scalars,
        degree: degrees(net),
        weighted_degree: node_weighted_degrees(net),
        degree_centrality,
        communities,
        components,
        lowest_offer: bottom_k_degree(net, options.k),
        paths,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_only_on_request() {
        let net = Network::from_index_edges(3, &[(0, 1, 1.0), (1, 2, 1.0)], false, true);
        let r = compute_metrics(&net, &ComputeOptions::default()).unwrap();
        assert!(r.paths.is_none());
        assert!(!r.scalars.contains_key("diameter"));
        let r = compute_metrics(
            &net,
            &ComputeOptions {
                include_paths: true,
                ..ComputeOptions::default()
            },
        )
        .unwrap();
        assert_eq!(r.scalars["diameter"], 2.0);
        assert_eq!(r.paths.unwrap().betweenness, [0.0, 1.0, 0.0]);
    }

    #[test]
    fn degenerate_network_warns_instead_of_failing() {
        let net = Network::from_index_edges(1, &[], false, false);
        let r = compute_metrics(&net, &ComputeOptions::default()).unwrap();
        assert!(r.communities.is_none());
        assert!(r.degree_centrality.is_none());
        assert_eq!(r.warnings.len(), 4);
    }
}
