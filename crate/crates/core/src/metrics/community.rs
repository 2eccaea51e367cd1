use std::collections::BTreeMap;

use super::MetricError;
use crate::network::Network;

/// Weighted Newman modularity of `labels` on the undirected view.
pub fn modularity(net: &Network, labels: &[usize]) -> Result<f64, MetricError> {
    if labels.len() != net.v() {
        return Err(MetricError::InvalidPartition {
            expected: net.v(),
            found: labels.len(),
        });
    }
    let view = net.undirected_view();
    let total: f64 = view.edges().iter().map(|e| e.weight).sum();
    if total == 0.0 {
        return Err(MetricError::EmptyEdgeSet);
    }
    let mut internal: BTreeMap<usize, f64> = BTreeMap::new();
    let mut strength: BTreeMap<usize, f64> = BTreeMap::new();
    for e in view.edges() {
        if labels[e.src] == labels[e.dst] {
            *internal.entry(labels[e.src]).or_default() += e.weight;
        }
        *strength.entry(labels[e.src]).or_default() += e.weight;
        *strength.entry(labels[e.dst]).or_default() += e.weight;
    }
    Ok(strength
        .iter()
        .map(|(c, d)| {
            let e = internal.get(c).copied().unwrap_or(0.0);
            e / total - (d / (2.0 * total)).powi(2)
        })
        .sum())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    /// Community per node, contiguous from 0 in order of each community's smallest node.
    pub labels: Vec<usize>,
    pub count: usize,
    pub q: f64,
    /// Modularity after each aggregation level.
    pub phase_q: Vec<f64>,
}

/// Symmetric weighted graph used at each Louvain level. Self-loops hold the
/// weight internal to an aggregated community, stored as `2w` on the diagonal.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    strength: Vec<f64>,
}

impl Level {
    fn from_network(net: &Network) -> Self {
        let mut adj = vec![Vec::new(); net.v()];
        for e in net.undirected_view().edges() {
            adj[e.src].push((e.dst, e.weight));
            adj[e.dst].push((e.src, e.weight));
        }
        Self::finish(adj)
    }

    fn finish(mut adj: Vec<Vec<(usize, f64)>>) -> Self {
        for row in &mut adj {
            row.sort_by_key(|&(v, _)| v);
        }
        let strength = adj
            .iter()
            .map(|row| row.iter().map(|&(_, w)| w).sum())
            .collect();
        Self { adj, strength }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Local moving until a full pass moves nothing. Returns the community of
    /// each level node and whether anything moved at all.
    fn local_moves(&self, m2: f64) -> (Vec<usize>, bool) {
        let n = self.len();
        let eps = 1e-13 * m2;
        let mut community: Vec<usize> = (0..n).collect();
        let mut total: Vec<f64> = self.strength.clone();
        let mut moved_any = false;
        let mut links: BTreeMap<usize, f64> = BTreeMap::new();
        loop {
            let mut moved = false;
            for i in 0..n {
                let own = community[i];
                let k = self.strength[i];
                links.clear();
                links.insert(own, 0.0);
                for &(j, w) in &self.adj[i] {
                    if j != i {
                        *links.entry(community[j]).or_default() += w;
                    }
                }
                total[own] -= k;
                let gain = |c: usize, link: f64| link - total[c] * k / m2;
                let own_gain = gain(own, links[&own]);
                let best = links
                    .iter()
                    .map(|(&c, &l)| gain(c, l))
                    .fold(f64::NEG_INFINITY, f64::max);
                let target = if best > own_gain + eps {
                    // Smallest community id among the (near-)maximal gains.
                    *links
                        .iter()
                        .find(|(&c, &l)| gain(c, l) >= best - eps)
                        .map(|(c, _)| c)
                        .expect("maximum is attained")
                } else {
                    own
                };
                total[target] += k;
                if target != own {
                    community[i] = target;
                    moved = true;
                    moved_any = true;
                }
            }
            if !moved {
                break;
            }
        }
        (relabel(&community), moved_any)
    }

    fn aggregate(&self, community: &[usize], count: usize) -> Level {
        let mut merged: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); count];
        for (i, row) in self.adj.iter().enumerate() {
            for &(j, w) in row {
                *merged[community[i]].entry(community[j]).or_default() += w;
            }
        }
        // Each internal edge was seen from both ends, which is exactly the `2w` diagonal.
        Level::finish(
            merged
                .into_iter()
                .map(|row| row.into_iter().collect())
                .collect(),
        )
    }
}

/// Renumber labels contiguously in order of first appearance.
fn relabel(labels: &[usize]) -> Vec<usize> {
    let mut map = BTreeMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}

/// Louvain modularity maximization with a fixed node order: nodes are visited
/// by ascending index, a node only moves for a strictly larger gain, and ties
/// between candidate communities go to the smallest community id.
pub fn detect_communities(net: &Network) -> Result<Partition, MetricError> {
    let mut level = Level::from_network(net);
    let m2: f64 = level.strength.iter().sum();
    if m2 == 0.0 {
        return Err(MetricError::EmptyEdgeSet);
    }
    let mut labels: Vec<usize> = (0..net.v()).collect();
    let mut phase_q = Vec::new();
    loop {
        let (community, moved) = level.local_moves(m2);
        if !moved {
            break;
        }
        for l in labels.iter_mut() {
            *l = community[*l];
        }
        phase_q.push(modularity(net, &labels)?);
        let count = community.iter().max().map_or(0, |&c| c + 1);
        level = level.aggregate(&community, count);
    }
    let labels = relabel(&labels);
    let q = modularity(net, &labels)?;
    if phase_q.is_empty() {
        phase_q.push(q);
    }
    Ok(Partition {
        count: labels.iter().max().map_or(0, |&c| c + 1),
        labels,
        q,
        phase_q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangles(bridge: bool) -> Network {
        let mut edges = vec![
            (0, 1, 1.0),
            (1, 2, 1.0),
            (0, 2, 1.0),
            (3, 4, 1.0),
            (4, 5, 1.0),
            (3, 5, 1.0),
        ];
        if bridge {
            edges.push((2, 3, 1.0));
        }
        Network::from_index_edges(6, &edges, false, false)
    }

    #[test]
    fn modularity_examples() {
        let q = modularity(&triangles(false), &[0, 0, 0, 1, 1, 1]).unwrap();
        assert!((q - 0.5).abs() < 1e-12);
        let k3 =
            Network::from_index_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)], false, false);
        assert!(modularity(&k3, &[0, 0, 0]).unwrap().abs() < 1e-12);
        assert!((modularity(&k3, &[0, 1, 2]).unwrap() + 1.0 / 3.0).abs() < 1e-12);
        assert!(matches!(
            modularity(&k3, &[0]),
            Err(MetricError::InvalidPartition { .. })
        ));
    }

    #[test]
    fn bridge_splits_into_triangles() {
        let p = detect_communities(&triangles(true)).unwrap();
        assert_eq!(p.labels, [0, 0, 0, 1, 1, 1]);
        assert!((p.q - 5.0 / 14.0).abs() < 1e-12);
    }

    #[test]
    fn disjoint_triangles() {
        let p = detect_communities(&triangles(false)).unwrap();
        assert_eq!(p.count, 2);
        assert!((p.q - 0.5).abs() < 1e-12);
    }

    #[test]
    fn clique_stays_whole() {
        let k4 = Network::from_index_edges(
            4,
            &[
                (0, 1, 1.0),
                (0, 2, 1.0),
                (0, 3, 1.0),
                (1, 2, 1.0),
                (1, 3, 1.0),
                (2, 3, 1.0),
            ],
            false,
            false,
        );
        let p = detect_communities(&k4).unwrap();
        assert_eq!(p.count, 1);
        assert!(p.q.abs() < 1e-12);
    }

    #[test]
    fn phases_never_decrease() {
        let p = detect_communities(&triangles(true)).unwrap();
        assert!(p.phase_q.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        assert_eq!(*p.phase_q.last().unwrap(), p.q);
    }

    #[test]
    fn edgeless_is_an_error() {
        let net = Network::from_index_edges(3, &[], false, false);
        assert_eq!(detect_communities(&net), Err(MetricError::EmptyEdgeSet));
    }
}
