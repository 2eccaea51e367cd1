//! The weighted network metrics run on.
//!
//! Nodes are kept sorted by id, so node indexes order the same way ids do and
//! every traversal in index order is deterministic. Edges are collapsed per
//! ordered pair (directed) or unordered pair (undirected) and sorted by
//! `(src, dst)`.

mod build;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use build::{
    build_network, resolve_node_ref, BuildError, BuildOptions, BuiltNetwork, CoordinateScaling,
    NodeIndex,
};

/// Node key: integer when the id cell parses as one, text otherwise.
/// Integers order before text.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeId {
    Int(i64),
    Text(String),
}

impl NodeId {
    pub fn parse(cell: &str) -> Self {
        let cell = cell.trim();
        cell.parse::<i64>()
            .map(NodeId::Int)
            .unwrap_or_else(|_| NodeId::Text(cell.to_string()))
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeId::Int(i) => write!(f, "{i}"),
            NodeId::Text(s) => f.write_str(s),
        }
    }
}

impl From<i64> for NodeId {
    fn from(i: i64) -> Self {
        NodeId::Int(i)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId::parse(s)
    }
}

impl Serialize for NodeId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            NodeId::Int(i) => s.serialize_i64(*i),
            NodeId::Text(t) => s.serialize_str(t),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub label: Option<String>,
    /// Degrees, after scaling.
    pub lat: Option<f64>,
    pub lon: Option<f64>,
    /// Unbound columns, kept verbatim.
    pub attrs: BTreeMap<String, String>,
}

impl Node {
    pub fn new(id: impl Into<NodeId>) -> Self {
        Self {
            id: id.into(),
            label: None,
            lat: None,
            lon: None,
            attrs: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    /// Index into [`Network::nodes`].
    pub src: usize,
    pub dst: usize,
    pub weight: f64,
    /// Number of source records collapsed into this edge.
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("duplicate node id {0}")]
    DuplicateNodeId(NodeId),
    #[error("edge references unknown node {0}")]
    UnknownNode(NodeId),
    #[error("edge {src} -> {dst} has weight {weight}; weights must be positive and finite")]
    InvalidWeight {
        src: NodeId,
        dst: NodeId,
        weight: f64,
    },
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    directed: bool,
    represents_paths: bool,
    index: HashMap<NodeId, usize>,
}

impl Network {
    /// Build from nodes in any order and edge records keyed by node id. Records on
    /// the same pair are collapsed: weights add up, multiplicity counts records.
    pub fn from_records(
        mut nodes: Vec<Node>,
        records: &[(NodeId, NodeId, f64)],
        directed: bool,
        represents_paths: bool,
    ) -> Result<Self, NetworkError> {
        nodes.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = nodes.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(NetworkError::DuplicateNodeId(w[0].id.clone()));
        }
        let index: HashMap<NodeId, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id.clone(), i))
            .collect();

        let mut collapsed: BTreeMap<(usize, usize), (f64, usize)> = BTreeMap::new();
        for (src, dst, weight) in records {
            let s = *index
                .get(src)
                .ok_or_else(|| NetworkError::UnknownNode(src.clone()))?;
            let d = *index
                .get(dst)
                .ok_or_else(|| NetworkError::UnknownNode(dst.clone()))?;
            if s == d {
                return Err(NetworkError::SelfLoop(src.clone()));
            }
            if !(weight.is_finite() && *weight > 0.0) {
                return Err(NetworkError::InvalidWeight {
                    src: src.clone(),
                    dst: dst.clone(),
                    weight: *weight,
                });
            }
            let key = if directed {
                (s, d)
            } else {
                (s.min(d), s.max(d))
            };
            let entry = collapsed.entry(key).or_insert((0.0, 0));
            entry.0 += weight;
            entry.1 += 1;
        }
        let edges = collapsed
            .into_iter()
            .map(|((src, dst), (weight, multiplicity))| Edge {
                src,
                dst,
                weight,
                multiplicity,
            })
            .collect();
        Ok(Self {
            nodes,
            edges,
            directed,
            represents_paths,
            index,
        })
    }

    /// Nodes with integer ids `0..n` and edges given by those ids.
    pub fn from_index_edges(
        n: usize,
        edges: &[(usize, usize, f64)],
        directed: bool,
        represents_paths: bool,
    ) -> Self {
        let nodes = (0..n as i64).map(Node::new).collect();
        let records: Vec<_> = edges
            .iter()
            .map(|&(u, v, w)| (NodeId::Int(u as i64), NodeId::Int(v as i64), w))
            .collect();
        Self::from_records(nodes, &records, directed, represents_paths)
            .expect("valid index edge list")
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn represents_paths(&self) -> bool {
        self.represents_paths
    }

    /// Node count.
    pub fn v(&self) -> usize {
        self.nodes.len()
    }

    /// Edge count after collapsing.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, id: &NodeId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn id(&self, index: usize) -> &NodeId {
        &self.nodes[index].id
    }

    pub fn has_geo(&self) -> bool {
        self.nodes
            .iter()
            .any(|n| n.lat.is_some() && n.lon.is_some())
    }

    /// Symmetric closure: reciprocal edges merge with weights and multiplicities summed.
    pub fn undirected_view(&self) -> Network {
        if !self.directed {
            return self.clone();
        }
        let mut collapsed: BTreeMap<(usize, usize), (f64, usize)> = BTreeMap::new();
        for e in &self.edges {
            let entry = collapsed
                .entry((e.src.min(e.dst), e.src.max(e.dst)))
                .or_insert((0.0, 0));
            entry.0 += e.weight;
            entry.1 += e.multiplicity;
        }
        Network {
            nodes: self.nodes.clone(),
            edges: collapsed
                .into_iter()
                .map(|((src, dst), (weight, multiplicity))| Edge {
                    src,
                    dst,
                    weight,
                    multiplicity,
                })
                .collect(),
            directed: false,
            represents_paths: self.represents_paths,
            index: self.index.clone(),
        }
    }

    /// Outgoing arcs; both directions of every edge when undirected.
    pub fn out_adjacency(&self) -> Adjacency {
        Adjacency::build(self.v(), self.arcs(false))
    }

    /// Incoming arcs (reverse of `out_adjacency`); identical to it when undirected.
    pub fn in_adjacency(&self) -> Adjacency {
        Adjacency::build(self.v(), self.arcs(true))
    }

    fn arcs(&self, reverse: bool) -> Vec<(usize, usize, f64)> {
        let mut arcs = Vec::with_capacity(self.edges.len() * 2);
        for e in &self.edges {
            let (a, b) = if reverse {
                (e.dst, e.src)
            } else {
                (e.src, e.dst)
            };
            arcs.push((a, b, e.weight));
            if !self.directed {
                arcs.push((b, a, e.weight));
            }
        }
        arcs
    }
}

/// Compressed adjacency rows, neighbors sorted by index.
#[derive(Debug, Clone)]
pub struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
}

impl Adjacency {
    fn build(n: usize, mut arcs: Vec<(usize, usize, f64)>) -> Self {
        arcs.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut offsets = vec![0; n + 1];
        for &(u, _, _) in &arcs {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Self {
            offsets,
            targets: arcs.iter().map(|a| a.1).collect(),
            weights: arcs.iter().map(|a| a.2).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.offsets[u]..self.offsets[u + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    /// Weight of arc `u -> v`, if present.
    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        let range = self.offsets[u]..self.offsets[u + 1];
        let row = &self.targets[range.clone()];
        row.binary_search(&v)
            .ok()
            .map(|i| self.weights[range.start + i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_edges_merge_in_undirected_view() {
        let net = Network::from_index_edges(2, &[(0, 1, 2.0), (1, 0, 3.0)], true, false);
        let u = net.undirected_view();
        assert!(!u.is_directed());
        assert_eq!(u.edges().len(), 1);
        assert_eq!(u.edges()[0].weight, 5.0);
        assert_eq!(u.edges()[0].multiplicity, 2);
    }

    #[test]
    fn undirected_view_is_idempotent() {
        let net = Network::from_index_edges(3, &[(0, 1, 2.0), (2, 1, 1.0)], false, false);
        assert_eq!(net.undirected_view(), net);
        let d = Network::from_index_edges(2, &[(0, 1, 2.0)], true, false);
        assert_eq!(d.undirected_view().edges()[0].weight, 2.0);
        assert_eq!(d.undirected_view().undirected_view(), d.undirected_view());
    }

    #[test]
    fn records_collapse_per_pair() {
        let net =
            Network::from_index_edges(2, &[(0, 1, 1.0), (0, 1, 1.0), (0, 1, 1.0)], true, false);
        assert_eq!(net.m(), 1);
        assert_eq!(net.edges()[0].weight, 3.0);
        assert_eq!(net.edges()[0].multiplicity, 3);
    }

    #[test]
    fn ids_sort_integers_first() {
        let nodes = vec![Node::new("b"), Node::new(10), Node::new(2)];
        let net = Network::from_records(nodes, &[], false, false).unwrap();
        let ids: Vec<String> = net.nodes().iter().map(|n| n.id.to_string()).collect();
        assert_eq!(ids, ["2", "10", "b"]);
    }

    #[test]
    fn rejects_bad_records() {
        let nodes = || vec![Node::new(1), Node::new(2)];
        assert!(matches!(
            Network::from_records(vec![Node::new(1), Node::new(1)], &[], false, false),
            Err(NetworkError::DuplicateNodeId(_))
        ));
        assert!(matches!(
            Network::from_records(nodes(), &[(1.into(), 3.into(), 1.0)], false, false),
            Err(NetworkError::UnknownNode(_))
        ));
        assert!(matches!(
            Network::from_records(nodes(), &[(1.into(), 2.into(), -1.0)], false, false),
            Err(NetworkError::InvalidWeight { .. })
        ));
    }

    #[test]
    fn adjacency_rows_sorted() {
        let net =
            Network::from_index_edges(4, &[(3, 0, 1.0), (0, 2, 2.0), (1, 0, 1.0)], false, false);
        let adj = net.out_adjacency();
        let row: Vec<usize> = adj.neighbors(0).map(|(v, _)| v).collect();
        assert_eq!(row, [1, 2, 3]);
        assert_eq!(adj.weight(0, 2), Some(2.0));
        assert_eq!(adj.weight(2, 0), Some(2.0));
        assert_eq!(adj.weight(1, 2), None);

        let d = Network::from_index_edges(3, &[(0, 1, 1.0), (2, 1, 1.0)], true, false);
        assert_eq!(
            d.in_adjacency()
                .neighbors(1)
                .map(|(v, _)| v)
                .collect::<Vec<_>>(),
            [0, 2]
        );
        assert_eq!(d.out_adjacency().degree(1), 0);
    }
}
