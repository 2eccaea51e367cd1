use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

use super::{Network, NetworkError, Node, NodeId};
use crate::dataset::{AnnotatedDataset, BindingRole};
use crate::term::Term;
use crate::vocab;

/// How raw coordinate cells become degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoordinateScaling {
    /// Values with magnitude above 1000 are micro-degrees and get divided by 10^6.
    Auto,
    /// Every value is divided by this.
    Divisor(f64),
}

impl CoordinateScaling {
    fn apply(self, raw: f64) -> f64 {
        match self {
            CoordinateScaling::Auto if raw.abs() > 1000.0 => raw / 1e6,
            CoordinateScaling::Auto => raw,
            CoordinateScaling::Divisor(d) => raw / d,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BuildOptions {
    pub coordinates: CoordinateScaling,
    /// Edge record classes whose edges are traversable route segments.
    pub route_classes: BTreeSet<String>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            coordinates: CoordinateScaling::Auto,
            route_classes: BTreeSet::from([vocab::BUS_ROUTE.to_string()]),
        }
    }
}

/// Row numbers are 1-based data rows (the header is not counted).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BuildError {
    #[error("edge row {row}: node reference {cell:?} matches no node")]
    UnresolvedNodeRef { cell: String, row: usize },
    #[error("node row {row}: duplicate node id {id}")]
    DuplicateNodeId { id: NodeId, row: usize },
    #[error("node row {row}: empty node id")]
    EmptyNodeId { row: usize },
    #[error("edge row {row}: negative weight {value}")]
    NegativeWeight { row: usize, value: f64 },
    #[error("edge row {row}: weight {cell:?} is not a positive number")]
    InvalidWeight { row: usize, cell: String },
    #[error("node row {row}: {column} {cell:?} is not a valid coordinate")]
    InvalidCoordinate {
        row: usize,
        column: &'static str,
        cell: String,
    },
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// Lookup from the cell forms an edge row may use to name a node.
#[derive(Debug, Clone, Default)]
pub struct NodeIndex {
    ids: HashSet<NodeId>,
    labels: HashMap<String, Vec<NodeId>>,
}

impl NodeIndex {
    pub fn new<'a>(nodes: impl IntoIterator<Item = &'a Node>) -> Self {
        let mut index = Self::default();
        for node in nodes {
            index.ids.insert(node.id.clone());
            if let Some(label) = &node.label {
                index
                    .labels
                    .entry(label.trim().to_string())
                    .or_default()
                    .push(node.id.clone());
            }
        }
        index
    }

    /// Exact id, then a leading integer before `" - "`, then a unique label.
    pub fn resolve(&self, cell: &str) -> Option<NodeId> {
        let cell = cell.trim();
        let exact = NodeId::parse(cell);
        if self.ids.contains(&exact) {
            return Some(exact);
        }
        if let Some((head, _)) = cell.split_once(" - ") {
            if let Ok(i) = head.trim().parse::<i64>() {
                if self.ids.contains(&NodeId::Int(i)) {
                    return Some(NodeId::Int(i));
                }
            }
        }
        match self.labels.get(cell).map(Vec::as_slice) {
            Some([only]) => Some(only.clone()),
            _ => None,
        }
    }
}

pub fn resolve_node_ref(cell: &str, index: &NodeIndex, row: usize) -> Result<NodeId, BuildError> {
    index
        .resolve(cell)
        .ok_or_else(|| BuildError::UnresolvedNodeRef {
            cell: cell.to_string(),
            row,
        })
}

#[derive(Debug, Clone)]
pub struct BuiltNetwork {
    pub network: Network,
    /// Resolved endpoints of every edge row, in row order (self-loops included).
    pub record_endpoints: Vec<(NodeId, NodeId)>,
    pub warnings: Vec<String>,
}

fn optional_cell(ds: &AnnotatedDataset, role: BindingRole, row: usize) -> Option<&str> {
    let col = ds.bindings.column(role)?;
    let cell = ds.table.cell(row, col).trim();
    (!cell.is_empty()).then_some(cell)
}

fn coordinate(
    ds: &AnnotatedDataset,
    role: BindingRole,
    row: usize,
    scaling: CoordinateScaling,
) -> Result<Option<f64>, BuildError> {
    let (column, limit) = match role {
        BindingRole::Lat => ("latitude", 90.0),
        _ => ("longitude", 180.0),
    };
    let Some(cell) = optional_cell(ds, role, row) else {
        return Ok(None);
    };
    let invalid = || BuildError::InvalidCoordinate {
        row: row + 1,
        column,
        cell: cell.to_string(),
    };
    let raw: f64 = cell.parse().map_err(|_| invalid())?;
    let value = scaling.apply(raw);
    if !value.is_finite() || value.abs() > limit {
        return Err(invalid());
    }
    Ok(Some(value))
}

fn read_nodes(ds: &AnnotatedDataset, options: &BuildOptions) -> Result<Vec<Node>, BuildError> {
    let bound: HashSet<usize> = ds.bindings.columns().into_values().collect();
    let id_col = ds.bindings.column(BindingRole::Id);
    let mut seen = HashSet::new();
    let mut nodes = Vec::with_capacity(ds.table.row_count());
    for row in 0..ds.table.row_count() {
        let id_cell = id_col.map(|c| ds.table.cell(row, c).trim()).unwrap_or("");
        if id_cell.is_empty() {
            return Err(BuildError::EmptyNodeId { row: row + 1 });
        }
        let id = NodeId::parse(id_cell);
        if !seen.insert(id.clone()) {
            return Err(BuildError::DuplicateNodeId { id, row: row + 1 });
        }
        let mut node = Node::new(id);
        node.label = optional_cell(ds, BindingRole::Label, row).map(str::to_string);
        node.lat = coordinate(ds, BindingRole::Lat, row, options.coordinates)?;
        node.lon = coordinate(ds, BindingRole::Long, row, options.coordinates)?;
        for (col, name) in ds.table.header().iter().enumerate() {
            if !bound.contains(&col) {
                node.attrs
                    .insert(name.clone(), ds.table.cell(row, col).to_string());
            }
        }
        nodes.push(node);
    }
    Ok(nodes)
}

fn weight(ds: &AnnotatedDataset, col: usize, row: usize) -> Result<f64, BuildError> {
    let cell = ds.table.cell(row, col).trim();
    let invalid = || BuildError::InvalidWeight {
        row: row + 1,
        cell: cell.to_string(),
    };
    let value: f64 = cell.parse().map_err(|_| invalid())?;
    if value < 0.0 {
        return Err(BuildError::NegativeWeight {
            row: row + 1,
            value,
        });
    }
    if !value.is_finite() || value == 0.0 {
        return Err(invalid());
    }
    Ok(value)
}

/// Materialize the network described by a node set and an edge set.
pub fn build_network(
    nodes_ds: &AnnotatedDataset,
    edges_ds: &AnnotatedDataset,
    options: &BuildOptions,
) -> Result<BuiltNetwork, BuildError> {
    let nodes = read_nodes(nodes_ds, options)?;
    let index = NodeIndex::new(&nodes);

    let directed = edges_ds.bindings.has_class(vocab::DIRECTED_EDGE);
    let represents_paths = edges_ds
        .bindings
        .record_classes
        .iter()
        .filter_map(Term::as_iri)
        .any(|c| options.route_classes.contains(c));

    let source = edges_ds.bindings.column(BindingRole::Source);
    let target = edges_ds.bindings.column(BindingRole::Target);
    let weight_col = edges_ds.bindings.column(BindingRole::Weight);
    let mut warnings = Vec::new();
    let mut records = Vec::with_capacity(edges_ds.table.row_count());
    let mut record_endpoints = Vec::with_capacity(edges_ds.table.row_count());
    for row in 0..edges_ds.table.row_count() {
        let cell = |col: Option<usize>| col.map(|c| edges_ds.table.cell(row, c)).unwrap_or("");
        let src = resolve_node_ref(cell(source), &index, row + 1)?;
        let dst = resolve_node_ref(cell(target), &index, row + 1)?;
        let w = match weight_col {
            Some(col) => weight(edges_ds, col, row)?,
            None => 1.0,
        };
        record_endpoints.push((src.clone(), dst.clone()));
        if src == dst {
            let msg = format!("edge row {}: self-loop on node {src} dropped", row + 1);
            log::warn!("{msg}");
            warnings.push(msg);
            continue;
        }
        records.push((src, dst, w));
    }
    let network = Network::from_records(nodes, &records, directed, represents_paths)?;
    Ok(BuiltNetwork {
        network,
        record_endpoints,
        warnings,
    })
}
