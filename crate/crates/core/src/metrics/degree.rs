use std::collections::BTreeMap;

use super::MetricError;
use crate::network::{Network, NodeId};

/// Neighbor count per node in the undirected view.
pub fn degrees(net: &Network) -> Vec<usize> {
    let mut deg = vec![0; net.v()];
    for e in net.undirected_view().edges() {
        deg[e.src] += 1;
        deg[e.dst] += 1;
    }
    deg
}

pub fn average_degree(net: &Network) -> f64 {
    if net.v() == 0 {
        return 0.0;
    }
    degrees(net).iter().sum::<usize>() as f64 / net.v() as f64
}

/// Mean edge weight.
pub fn weighted_average_degree(net: &Network) -> Result<f64, MetricError> {
    if net.m() == 0 {
        return Err(MetricError::EmptyEdgeSet);
    }
    Ok(net.edges().iter().map(|e| e.weight).sum::<f64>() / net.m() as f64)
}

/// Sum of incident edge weights per node.
pub fn node_weighted_degrees(net: &Network) -> Vec<f64> {
    let mut w = vec![0.0; net.v()];
    for e in net.edges() {
        w[e.src] += e.weight;
        w[e.dst] += e.weight;
    }
    w
}

/// `d_v / (v - 1)`.
pub fn degree_centrality(net: &Network) -> Result<Vec<f64>, MetricError> {
    if net.v() < 2 {
        return Err(MetricError::SingletonNetwork);
    }
    let denom = (net.v() - 1) as f64;
    Ok(degrees(net).into_iter().map(|d| d as f64 / denom).collect())
}

/// Edges over the maximum possible: ordered pairs when directed, unordered otherwise.
pub fn density(net: &Network) -> Result<f64, MetricError> {
    let v = net.v();
    if v < 2 {
        return Err(MetricError::SingletonNetwork);
    }
    let pairs = (v * (v - 1)) as f64;
    Ok(if net.is_directed() {
        net.m() as f64 / pairs
    } else {
        net.m() as f64 / (pairs / 2.0)
    })
}

/// Shannon entropy (base 2) of the degree distribution.
pub fn entropy(net: &Network) -> f64 {
    if net.v() == 0 {
        return 0.0;
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for d in degrees(net) {
        *counts.entry(d).or_default() += 1;
    }
    let n = net.v() as f64;
    let h: f64 = counts
        .values()
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum();
    // A single degree class gives -1 * log2(1) = -0.0.
    h.max(0.0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    /// Contiguous from 0, in order of each component's smallest node.
    pub labels: Vec<usize>,
}

/// Weakly connected components.
pub fn connected_components(net: &Network) -> Components {
    let adj = net.undirected_view().out_adjacency();
    let mut labels = vec![usize::MAX; net.v()];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..net.v() {
        if labels[start] != usize::MAX {
            continue;
        }
        labels[start] = count;
        stack.push(start);
        while let Some(u) = stack.pop() {
            for (w, _) in adj.neighbors(u) {
                if labels[w] == usize::MAX {
                    labels[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    Components { count, labels }
}

/// The `k` lowest-degree nodes, ascending, ties by id.
pub fn bottom_k_degree(net: &Network, k: usize) -> Vec<(NodeId, usize)> {
    let deg = degrees(net);
    let mut order: Vec<usize> = (0..net.v()).collect();
    // Indexes already follow id order, so a stable sort by degree breaks ties by id.
    order.sort_by_key(|&i| deg[i]);
    order
        .into_iter()
        .take(k)
        .map(|i| (net.id(i).clone(), deg[i]))
        .collect()
}
