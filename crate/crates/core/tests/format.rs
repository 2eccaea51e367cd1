use std::fs;
use std::path::PathBuf;

use netboard_core::dataset::{
    parse_turtle_subset, split_prelude, write_turtle, AnnotatedDataset, BindingRole, DatasetRole,
};
use netboard_core::network::{
    build_network, resolve_node_ref, BuildOptions, Node, NodeId, NodeIndex,
};
use netboard_core::{Term, Triple};
use proptest::prelude::*;

fn fixture(rel: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn excerpt_station_file_splits_at_quoted_header() {
    let text = fixture("excerpt/stations.csv");
    let (prelude, csv) = split_prelude(&text).unwrap();
    assert_eq!(prelude.lines().count(), 26);
    assert!(csv.starts_with("\"STATION NUMBER\""));
    assert_eq!(format!("{prelude}{csv}"), text);
}

#[test]
fn excerpt_station_bindings() {
    let ds = AnnotatedDataset::parse(&fixture("excerpt/stations.csv")).unwrap();
    assert_eq!(ds.role(), DatasetRole::NodeSet);
    let cols: Vec<_> = ds.bindings.columns().into_iter().collect();
    assert_eq!(
        cols,
        vec![
            (BindingRole::Id, 0),
            (BindingRole::Lat, 2),
            (BindingRole::Long, 1),
            (BindingRole::Label, 3)
        ]
    );
    assert_eq!(
        ds.table.header(),
        ["STATION NUMBER", "LONG", "LAT", "STATION NAME"]
    );
    assert_eq!(ds.table.row_count(), 6);
    assert_eq!(
        ds.table.rows()[0],
        ["1", "-38510134", "-3732294", "Praça Luiza Távora"]
    );
}

#[test]
fn excerpt_trip_bindings() {
    let ds = AnnotatedDataset::parse(&fixture("excerpt/trips.csv")).unwrap();
    assert_eq!(ds.role(), DatasetRole::EdgeSet);
    let b = &ds.bindings;
    assert_eq!(b.column(BindingRole::Source), Some(4));
    assert_eq!(b.column(BindingRole::Target), Some(7));
    assert_eq!(b.column(BindingRole::User), Some(1));
    assert_eq!(b.column(BindingRole::Record), Some(0));
    assert_eq!(b.columns().len(), 4);
    assert!(b.has_class("http://download.wikicrimes.org/ont/qoe-mBicycle-Share_Trip"));
}

#[test]
fn excerpt_node_reference_resolves_to_station() {
    let nodes = AnnotatedDataset::parse(&fixture("excerpt/stations.csv")).unwrap();
    let edges = AnnotatedDataset::parse(&fixture("excerpt/trips.csv")).unwrap();
    let stations: Vec<Node> = nodes
        .table
        .rows()
        .iter()
        .map(|r| Node {
            label: Some(r[3].clone()),
            ..Node::new(r[0].parse::<i64>().unwrap())
        })
        .collect();
    let index = NodeIndex::new(&stations);
    assert_eq!(
        resolve_node_ref("1 - Praça Luiza Távora", &index, 1).unwrap(),
        NodeId::Int(1)
    );
    assert_eq!(
        resolve_node_ref("José Vilar", &index, 1).unwrap(),
        NodeId::Int(2)
    );
    // the excerpt's later trips leave from stations outside the six listed
    let err = build_network(&nodes, &edges, &BuildOptions::default()).unwrap_err();
    assert!(err.to_string().contains("row 3"), "{err}");
}

#[test]
fn synthetic_fixtures_parse() {
    for rel in [
        "bike/stations.csv",
        "bike/trips.csv",
        "bike_nogeo/stations.csv",
        "bus/stops.csv",
        "bus/routes.csv",
        "bus_nogeo/stops.csv",
        "subway/stations.csv",
        "subway/segments.csv",
        "unknown/nodes.csv",
        "unknown/edges.csv",
    ] {
        let ds = AnnotatedDataset::parse(&fixture(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"));
        for (_, col) in ds.bindings.columns() {
            assert!(col < ds.table.col_count(), "{rel}");
        }
    }
}

fn iri() -> impl Strategy<Value = Term> {
    prop_oneof![
        "[a-z][a-z0-9_]{0,6}".prop_map(Term::iri),
        "[a-z]{1,5}".prop_map(|l| Term::iri(format!("http://example.org/ns#{l}"))),
    ]
}

fn object() -> impl Strategy<Value = Term> {
    prop_oneof![
        iri(),
        any::<i32>().prop_map(|i| Term::Integer(i as i64)),
        "[ -~áçõ\\n\\t\"\\\\]{0,12}".prop_map(Term::Str),
    ]
}

fn triple() -> impl Strategy<Value = Triple> {
    (iri(), iri(), object()).prop_map(|(s, p, o)| Triple::new(s, p, o))
}

/// A file with a prelude of `n` triples, optionally blank-line separated, and a CSV body.
fn annotated_file() -> impl Strategy<Value = String> {
    (
        prop::collection::vec(triple(), 1..8),
        any::<bool>(),
        prop::collection::vec("[a-z0-9 ]{0,6}", 1..4),
        0usize..4,
    )
        .prop_map(|(triples, blank, cells, rows)| {
            let mut text = write_turtle(
                &triples
                    .into_iter()
                    .collect::<std::collections::BTreeSet<_>>(),
            );
            let header: Vec<String> = if blank {
                text.push('\n');
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, _)| format!("c{i}"))
                    .collect()
            } else {
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, _)| format!("\"c{i}\""))
                    .collect()
            };
            text.push_str(&header.join(","));
            text.push('\n');
            for r in 0..rows {
                let row: Vec<String> = cells.iter().map(|c| format!("{c}{r}")).collect();
                text.push_str(&row.join(","));
                text.push('\n');
            }
            text
        })
}

proptest! {
    #[test]
    fn turtle_round_trip(triples in prop::collection::btree_set(triple(), 0..20)) {
        let text = write_turtle(&triples);
        let parsed = parse_turtle_subset(&text).unwrap();
        prop_assert_eq!(parsed, triples);
    }

    #[test]
    fn split_partitions_input(text in annotated_file()) {
        let (prelude, csv) = split_prelude(&text).unwrap();
        prop_assert_eq!(format!("{prelude}{csv}"), text.clone());
        prop_assert!(!prelude.trim().is_empty());
        prop_assert!(csv.trim_start().starts_with('"') || csv.starts_with('c'));
        prop_assert!(parse_turtle_subset(prelude).is_ok());
    }
}
