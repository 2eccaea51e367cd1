use serde_json::{json, Map, Value};
use thiserror::Error;

use super::compute::MetricResults;
use super::PathCriterion;
use crate::dataset::DataTable;
use crate::network::{BuiltNetwork, NodeId};

/// Prefix of every appended column.
pub const COLUMN_PREFIX: &str = "sbi_";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnrichError {
    #[error("input table already has a column named {0:?}")]
    ColumnCollision(String),
    #[error("node row {row} has id {id}, which is not in the network")]
    UnknownRow { row: usize, id: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnrichedTables {
    pub nodes: DataTable,
    pub edges: DataTable,
    /// `{scalars, series, warnings}`.
    pub metrics: Value,
}

/// Round to 9 significant digits.
pub fn round9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

/// Shortest text that reads back as `round9(x)`; integral values print without a fraction.
pub fn format_float(x: f64) -> String {
    let r = round9(x);
    if r == 0.0 {
        "0".to_string()
    } else {
        r.to_string()
    }
}

pub(crate) fn json_float(x: f64) -> Value {
    let r = round9(x);
    if r.fract() == 0.0 && r.abs() < 1e15 {
        json!(r as i64)
    } else {
        json!(r)
    }
}

fn push(table: &mut DataTable, name: &str, values: Vec<String>) -> Result<(), EnrichError> {
    let name = format!("{COLUMN_PREFIX}{name}");
    if table.column_index(&name).is_some() {
        return Err(EnrichError::ColumnCollision(name));
    }
    table.push_column(name, values);
    Ok(())
}

fn label_of(built: &BuiltNetwork, id: &NodeId) -> Value {
    let net = &built.network;
    net.index_of(id)
        .and_then(|i| net.nodes()[i].label.clone())
        .map_or(Value::Null, Value::String)
}

/// Append per-node results as `sbi_` columns after the original header, resolved
/// edge endpoints to the edge table, and collect scalars and series for
/// `metrics.json`. Without results the tables come back unchanged.
pub fn enrich_tables(
    nodes: &DataTable,
    edges: &DataTable,
    id_column: usize,
    built: &BuiltNetwork,
    results: Option<&MetricResults>,
) -> Result<EnrichedTables, EnrichError> {
    let mut node_table = nodes.clone();
    let mut edge_table = edges.clone();
    let Some(results) = results else {
        return Ok(EnrichedTables {
            nodes: node_table,
            edges: edge_table,
            metrics: json!({"scalars": {}, "series": {}, "warnings": built.warnings}),
        });
    };
    let net = &built.network;

    let rows: Vec<usize> = (0..nodes.row_count())
        .map(|row| {
            let cell = nodes.cell(row, id_column);
            net.index_of(&NodeId::parse(cell))
                .ok_or_else(|| EnrichError::UnknownRow {
                    row: row + 1,
                    id: cell.to_string(),
                })
        })
        .collect::<Result<_, _>>()?;
    let column = |f: &dyn Fn(usize) -> String| rows.iter().map(|&i| f(i)).collect::<Vec<_>>();

    push(
        &mut node_table,
        "degree",
        column(&|i| results.degree[i].to_string()),
    )?;
    push(
        &mut node_table,
        "weighted_degree",
        column(&|i| format_float(results.weighted_degree[i])),
    )?;
    if let Some(c) = &results.degree_centrality {
        push(
            &mut node_table,
            "degree_centrality",
            column(&|i| format_float(c[i])),
        )?;
    }
    if let Some(p) = &results.communities {
        push(
            &mut node_table,
            "community",
            column(&|i| p.labels[i].to_string()),
        )?;
    }
    push(
        &mut node_table,
        "component",
        column(&|i| results.components.labels[i].to_string()),
    )?;
    if net.has_geo() {
        let coord = |v: Option<f64>| v.map(format_float).unwrap_or_default();
        push(
            &mut node_table,
            "lat",
            column(&|i| coord(net.nodes()[i].lat)),
        )?;
        push(
            &mut node_table,
            "lon",
            column(&|i| coord(net.nodes()[i].lon)),
        )?;
    }
    if let Some(paths) = &results.paths {
        push(
            &mut node_table,
            "betweenness",
            column(&|i| format_float(paths.betweenness[i])),
        )?;
        push(
            &mut node_table,
            "eccentricity",
            column(&|i| format_float(paths.eccentricity[i])),
        )?;
    }

    push(
        &mut edge_table,
        "source",
        built
            .record_endpoints
            .iter()
            .map(|(s, _)| s.to_string())
            .collect(),
    )?;
    push(
        &mut edge_table,
        "target",
        built
            .record_endpoints
            .iter()
            .map(|(_, t)| t.to_string())
            .collect(),
    )?;

    let scalars: Map<String, Value> = results
        .scalars
        .iter()
        .map(|(k, v)| (k.to_string(), json_float(*v)))
        .collect();

    let mut series = Map::new();
    series.insert(
        "lowest_offer".into(),
        results
            .lowest_offer
            .iter()
            .map(|(id, d)| json!({"node": id, "label": label_of(built, id), "degree": d}))
            .collect(),
    );
    if let Some(paths) = &results.paths {
        if let Some(route) = &paths.diameter_path {
            let adj = net.out_adjacency();
            let mut steps = vec![
                json!({"step": 0, "node": route.nodes[0], "label": label_of(built, &route.nodes[0]), "hop_cost": 0}),
            ];
            for (step, pair) in route.nodes.windows(2).enumerate() {
                let (u, v) = (net.index_of(&pair[0]), net.index_of(&pair[1]));
                let cost = match (paths.criterion, u, v) {
                    (PathCriterion::Weight, Some(u), Some(v)) => {
                        adj.weight(u, v).unwrap_or(f64::NAN)
                    }
                    _ => 1.0,
                };
                steps.push(json!({
                    "step": step + 1,
                    "node": pair[1],
                    "label": label_of(built, &pair[1]),
                    "hop_cost": json_float(cost),
                }));
            }
            series.insert("diameter_route".into(), Value::Array(steps));
        }
        series.insert(
            "express_routes".into(),
            paths
                .longest
                .iter()
                .enumerate()
                .map(|(rank, p)| {
                    json!({
                        "rank": rank + 1,
                        "route": format!("{} → {}", p.from(), p.to()),
                        "from": p.from(),
                        "to": p.to(),
                        "nodes": p.nodes.iter().map(ToString::to_string).collect::<Vec<_>>().join(" > "),
                        "length": json_float(p.length),
                    })
                })
                .collect(),
        );
    }

    let mut warnings = built.warnings.clone();
    warnings.extend(results.warnings.iter().cloned());
    Ok(EnrichedTables {
        nodes: node_table,
        edges: edge_table,
        metrics: json!({"scalars": scalars, "series": series, "warnings": warnings}),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{compute_metrics, ComputeOptions};
    use crate::network::Network;

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(2.0), "2");
        assert_eq!(format_float(1.0 / 3.0), "0.333333333");
        assert_eq!(format_float(-38.510134), "-38.510134");
        assert_eq!(format_float(0.8112781244591328), "0.811278124");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(json_float(3.0), json!(3));
        assert_eq!(json_float(0.5), json!(0.5));
    }

    fn fixture() -> (DataTable, DataTable, BuiltNetwork) {
        let nodes = DataTable::new(
            vec!["Id".into(), "Name".into()],
            vec![
                vec!["2".into(), "b".into()],
                vec!["1".into(), "a".into()],
                vec!["3".into(), "c".into()],
            ],
        )
        .unwrap();
        let edges = DataTable::new(
            vec!["From".into(), "To".into()],
            vec![vec!["1".into(), "2".into()], vec!["2".into(), "3".into()]],
        )
        .unwrap();
        let network = Network::from_index_edges(4, &[(1, 2, 1.0), (2, 3, 1.0)], false, true);
        let built = BuiltNetwork {
            network,
            record_endpoints: vec![(1.into(), 2.into()), (2.into(), 3.into())],
            warnings: vec![],
        };
        (nodes, edges, built)
    }

    #[test]
    fn no_results_leaves_tables_unchanged() {
        let (nodes, edges, built) = fixture();
        let out = enrich_tables(&nodes, &edges, 0, &built, None).unwrap();
        assert_eq!(out.nodes, nodes);
        assert_eq!(out.edges, edges);
    }

    #[test]
    fn appends_columns_in_row_order() {
        let (nodes, edges, built) = fixture();
        let opts = ComputeOptions {
            include_paths: true,
            ..ComputeOptions::default()
        };
        let results = compute_metrics(&built.network, &opts).unwrap();
        let out = enrich_tables(&nodes, &edges, 0, &built, Some(&results)).unwrap();
        assert_eq!(&out.nodes.header()[..2], nodes.header());
        assert_eq!(
            &out.nodes.header()[2..],
            [
                "sbi_degree",
                "sbi_weighted_degree",
                "sbi_degree_centrality",
                "sbi_community",
                "sbi_component",
                "sbi_betweenness",
                "sbi_eccentricity"
            ]
        );
        let degree = out.nodes.column_index("sbi_degree").unwrap();
        let col: Vec<&str> = (0..3).map(|r| out.nodes.cell(r, degree)).collect();
        assert_eq!(col, ["2", "1", "1"]);
        assert_eq!(out.edges.header()[2..], ["sbi_source", "sbi_target"]);
        assert_eq!(out.metrics["scalars"]["diameter"], json!(2));
        assert_eq!(
            out.metrics["series"]["diameter_route"]
                .as_array()
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn collision_is_reported() {
        let (mut nodes, edges, built) = fixture();
        nodes.push_column("sbi_degree", vec!["".into(); 3]);
        let results = compute_metrics(&built.network, &ComputeOptions::default()).unwrap();
        assert_eq!(
            enrich_tables(&nodes, &edges, 0, &built, Some(&results)).unwrap_err(),
            EnrichError::ColumnCollision("sbi_degree".into())
        );
    }
}
