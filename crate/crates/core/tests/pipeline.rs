use std::fs;
use std::path::PathBuf;

use netboard_core::dashboard::{
    apply_customization, emit_bundle, validate_bundle, AvailableFields, CustomizationManifest,
    DiagnosticCode, IndicatorId, ManifestFormat, Severity,
};
use netboard_core::kg::DomainClass;
use netboard_core::pipeline::{PipelineConfig, Session};

fn fixture(rel: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn session(dir: &str, nodes: &str, edges: &str) -> Session {
    let n = fixture(&format!("{dir}/{nodes}.csv"));
    let e = fixture(&format!("{dir}/{edges}.csv"));
    Session::load((nodes, &n), (edges, &e), PipelineConfig::default()).unwrap()
}

fn bike() -> Session {
    session("bike", "stations", "trips")
}

fn bus() -> Session {
    session("bus", "stops", "routes")
}

const PATH_INDICATORS: [IndicatorId; 4] = [
    IndicatorId::DiameterRoute,
    IndicatorId::TerminalCandidates,
    IndicatorId::ExpressRoutes,
    IndicatorId::PathLengthDistribution,
];

const MAP_INDICATORS: [IndicatorId; 4] = [
    IndicatorId::CommunitiesMap,
    IndicatorId::CentralityMap,
    IndicatorId::DiameterRoute,
    IndicatorId::TerminalCandidates,
];

#[test]
fn domains() {
    assert_eq!(bike().domain, DomainClass::BicycleShare);
    assert_eq!(bus().domain, DomainClass::Bus);
    assert_eq!(
        session("subway", "stations", "segments").domain,
        DomainClass::Subway
    );
    assert_eq!(
        session("unknown", "nodes", "edges").domain,
        DomainClass::Unknown
    );
}

#[test]
fn bike_gets_no_path_indicators() {
    let applicable = bike().applicable();
    assert!(PATH_INDICATORS.iter().all(|i| !applicable.contains(i)));
    assert_eq!(applicable.len(), 5);
}

#[test]
fn bus_gets_every_path_indicator() {
    let applicable = bus().applicable();
    assert!(PATH_INDICATORS.iter().all(|i| applicable.contains(i)));
    assert_eq!(applicable, IndicatorId::ALL.to_vec());
}

#[test]
fn dropping_geo_removes_exactly_the_map_indicators() {
    for (with, without) in [
        (bike(), session("bike_nogeo", "stations", "trips")),
        (bus(), session("bus_nogeo", "stops", "routes")),
    ] {
        let a = with.applicable();
        let b = without.applicable();
        let removed: Vec<_> = a.iter().filter(|i| !b.contains(i)).copied().collect();
        let expected: Vec<_> = MAP_INDICATORS
            .iter()
            .filter(|i| a.contains(i))
            .copied()
            .collect();
        assert_eq!(removed, expected);
        assert!(b.iter().all(|i| a.contains(i)));
    }
}

#[test]
fn file_order_does_not_matter() {
    let n = fixture("bus/stops.csv");
    let e = fixture("bus/routes.csv");
    let a = Session::load(("n", &n), ("e", &e), PipelineConfig::default()).unwrap();
    let b = Session::load(("e", &e), ("n", &n), PipelineConfig::default()).unwrap();
    assert_eq!(a.applicable(), b.applicable());
    assert_eq!(a.built.network.edges(), b.built.network.edges());
}

#[test]
fn emitted_bundles_validate_clean() {
    for s in [
        bike(),
        bus(),
        session("bike_nogeo", "stations", "trips"),
        session("bus_nogeo", "stops", "routes"),
        session("subway", "stations", "segments"),
        session("unknown", "nodes", "edges"),
    ] {
        let dir = tempfile::tempdir().unwrap();
        let dash = s.build(None).unwrap();
        emit_bundle(&dash.model, &dash.tables, dir.path(), None).unwrap();
        assert_eq!(validate_bundle(dir.path()), vec![], "{:?}", s.domain);
    }
}

#[test]
fn non_route_bundles_carry_no_path_results() {
    for s in [
        bike(),
        session("subway", "stations", "segments"),
        session("unknown", "nodes", "edges"),
    ] {
        let dash = s.build(None).unwrap();
        let doc = serde_json::to_string(&dash.model.objects).unwrap();
        for needle in [
            "sbi_betweenness",
            "sbi_eccentricity",
            "diameter_route",
            "express_routes",
        ] {
            assert!(!doc.contains(needle), "{needle}");
        }
        assert!(dash.tables.nodes.column_index("sbi_betweenness").is_none());
        assert!(dash.tables.metrics["series"]
            .get("diameter_route")
            .is_none());
    }
}

#[test]
fn customization_is_idempotent() {
    let dash = bus().build(None).unwrap();
    let manifest = CustomizationManifest::parse(
        r#"
order = ["express_routes", "lowest_offer"]

[objects.lowest_offer]
title = "Paradas menos conectadas"
dimension = "label"

[[add]]
id = "betweenness_bars"
title = "Betweenness"
viz = "bar_chart"
dimension = { field = "STOP NAME" }
measure = { op = "direct", field = "sbi_betweenness" }
data = { source = "nodes" }
"#,
        ManifestFormat::Toml,
    )
    .unwrap();
    let fields = AvailableFields::new(&dash.tables.nodes, &dash.tables.edges, &dash.tables.metrics);
    let once = apply_customization(&dash.model, &manifest, &fields).unwrap();
    let twice = apply_customization(&once, &manifest, &fields).unwrap();
    assert_eq!(once, twice);
    assert_eq!(once.ids()[..2], ["express_routes", "lowest_offer"]);
    assert_eq!(once.objects.len(), dash.model.objects.len() + 1);
}

#[test]
fn damaged_bundles_are_reported() {
    let dash = bike().build(None).unwrap();
    let dir = tempfile::tempdir().unwrap();
    emit_bundle(&dash.model, &dash.tables, dir.path(), None).unwrap();

    let nodes = fs::read_to_string(dir.path().join("nodes.csv")).unwrap();
    let stripped: String = nodes
        .lines()
        .map(|l| {
            let mut cells: Vec<&str> = l.split(',').collect();
            cells.remove(7);
            cells.join(",") + "\n"
        })
        .collect();
    assert!(nodes.lines().next().unwrap().split(',').nth(7) == Some("sbi_community"));
    fs::write(dir.path().join("nodes.csv"), stripped).unwrap();
    let diags = validate_bundle(dir.path());
    assert!(diags
        .iter()
        .any(|d| d.code == DiagnosticCode::UnresolvedBinding && d.severity == Severity::Error));

    fs::remove_file(dir.path().join("dashboard.json")).unwrap();
    let diags = validate_bundle(dir.path());
    assert!(diags
        .iter()
        .any(|d| d.code == DiagnosticCode::MissingFile && d.severity == Severity::Fatal));
}

#[test]
fn edgeless_network_is_an_empty_dashboard() {
    let nodes = fixture("unknown/nodes.csv");
    let edges = fixture("unknown/edges.csv");
    let header_only: String = edges
        .lines()
        .take_while(|l| !l.starts_with("n"))
        .map(|l| format!("{l}\n"))
        .collect();
    let s = Session::load(
        ("n", &nodes),
        ("e", &header_only),
        PipelineConfig::default(),
    )
    .unwrap();
    assert!(s.applicable().is_empty());
    assert!(s.build(None).unwrap_err().is_empty_dashboard());
}
