use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::kg::{DomainClass, Pattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndicatorId {
    AverageInterconnections,
    ConnectionsVsUsage,
    CommunitiesMap,
    CentralityMap,
    LowestOffer,
    DiameterRoute,
    TerminalCandidates,
    ExpressRoutes,
    PathLengthDistribution,
}

impl IndicatorId {
    pub const ALL: [IndicatorId; 9] = [
        IndicatorId::AverageInterconnections,
        IndicatorId::ConnectionsVsUsage,
        IndicatorId::CommunitiesMap,
        IndicatorId::CentralityMap,
        IndicatorId::LowestOffer,
        IndicatorId::DiameterRoute,
        IndicatorId::TerminalCandidates,
        IndicatorId::ExpressRoutes,
        IndicatorId::PathLengthDistribution,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IndicatorId::AverageInterconnections => "average_interconnections",
            IndicatorId::ConnectionsVsUsage => "connections_vs_usage",
            IndicatorId::CommunitiesMap => "communities_map",
            IndicatorId::CentralityMap => "centrality_map",
            IndicatorId::LowestOffer => "lowest_offer",
            IndicatorId::DiameterRoute => "diameter_route",
            IndicatorId::TerminalCandidates => "terminal_candidates",
            IndicatorId::ExpressRoutes => "express_routes",
            IndicatorId::PathLengthDistribution => "path_length_distribution",
        }
    }

    /// Needs shortest-path results.
    pub fn uses_paths(self) -> bool {
        matches!(
            self,
            IndicatorId::DiameterRoute
                | IndicatorId::TerminalCandidates
                | IndicatorId::ExpressRoutes
                | IndicatorId::PathLengthDistribution
        )
    }
}

impl fmt::Display for IndicatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IndicatorId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IndicatorId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| format!("unknown indicator {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Visualization {
    Histogram,
    BarChart,
    ScatterPlot,
    MapPoints,
    MapPath,
}

impl Visualization {
    pub const ALL: [Visualization; 5] = [
        Visualization::Histogram,
        Visualization::BarChart,
        Visualization::ScatterPlot,
        Visualization::MapPoints,
        Visualization::MapPath,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Visualization::Histogram => "histogram",
            Visualization::BarChart => "bar_chart",
            Visualization::ScatterPlot => "scatter_plot",
            Visualization::MapPoints => "map_points",
            Visualization::MapPath => "map_path",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureOp {
    Sum,
    Average,
    Count,
    /// The field value itself, one mark per row.
    Direct,
}

impl MeasureOp {
    pub const ALL: [MeasureOp; 4] = [
        MeasureOp::Sum,
        MeasureOp::Average,
        MeasureOp::Count,
        MeasureOp::Direct,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MeasureOp::Sum => "sum",
            MeasureOp::Average => "average",
            MeasureOp::Count => "count",
            MeasureOp::Direct => "direct",
        }
    }
}

/// Where an object's rows come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataSource {
    Nodes,
    Edges,
    /// A named series in `metrics.json`.
    Metrics,
}

impl DataSource {
    pub fn as_str(self) -> &'static str {
        match self {
            DataSource::Nodes => "nodes",
            DataSource::Edges => "edges",
            DataSource::Metrics => "metrics",
        }
    }
}

/// One named predicate an indicator needs; the name is reported when it fails.
#[derive(Debug, Clone)]
pub struct Requirement {
    pub name: &'static str,
    pub pattern: Pattern,
}

/// Style filled in from results when the model is built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StyleTemplate {
    None,
    /// Reference line at the named scalar.
    ReferenceLine(&'static str),
    ColorBy(&'static str),
    /// Color by the field and highlight its top quantile.
    Highlight {
        field: &'static str,
        quantile: f64,
    },
}

#[derive(Debug, Clone)]
pub struct IndicatorSpec {
    pub id: IndicatorId,
    pub visualization: Visualization,
    pub source: DataSource,
    pub series: Option<&'static str>,
    pub dimension: Option<&'static str>,
    pub measure: (MeasureOp, &'static str),
    pub style: StyleTemplate,
    pub requirements: Vec<Requirement>,
}

impl IndicatorSpec {
    pub fn title(&self, domain: DomainClass) -> String {
        title(self.id, domain)
    }
}

fn nouns(domain: DomainClass) -> (&'static str, &'static str) {
    match domain {
        DomainClass::BicycleShare => ("estação de bicicleta", "estações de bicicleta"),
        DomainClass::Bus => ("parada de ônibus", "paradas de ônibus"),
        DomainClass::Subway => ("estação de metrô", "estações de metrô"),
        DomainClass::Unknown => ("nó", "nós"),
    }
}

/// Portuguese display name of an indicator for a domain.
pub fn title(id: IndicatorId, domain: DomainClass) -> String {
    let (one, many) = nouns(domain);
    match id {
        IndicatorId::AverageInterconnections => format!("Média de interligações entre {many}"),
        IndicatorId::ConnectionsVsUsage => format!("Conexões versus uso por {one}"),
        IndicatorId::CommunitiesMap => format!("Comunidades de {many}"),
        IndicatorId::CentralityMap => format!("Centralidade de grau por {one}"),
        IndicatorId::LowestOffer => format!("Menor oferta de conexões por {one}"),
        IndicatorId::DiameterRoute => format!("Maior rota mínima entre {many}"),
        IndicatorId::TerminalCandidates => {
            format!("Candidatas a terminal entre {many} (betweenness)")
        }
        IndicatorId::ExpressRoutes => format!("Rotas expressas candidatas entre {many}"),
        IndicatorId::PathLengthDistribution => format!("Excentricidade por {one}"),
    }
}

pub const REQUIRES_CONNECTIONS: &str = "requires connection counts";
pub const REQUIRES_WEIGHTS: &str = "requires edge weights";
pub const REQUIRES_GEO: &str = "requires geo bindings";
pub const REQUIRES_PATHS: &str = "requires represents-paths";

fn requirement(name: &'static str) -> Requirement {
    let text = match name {
        REQUIRES_CONNECTIONS => {
            "?e graph:hasSourceNode ?s . ?e graph:hasTargetNode ?t . ?g a qoe-m:conexoes"
        }
        REQUIRES_WEIGHTS => "?g a cap:HasWeights",
        REQUIRES_GEO => "?n geo:lat ?la . ?n geo:long ?lo . ?g a cap:HasGeo",
        REQUIRES_PATHS => "?g a cap:RepresentsPaths",
        other => unreachable!("no requirement named {other}"),
    };
    Requirement {
        name,
        pattern: Pattern::standard(text).expect("built-in requirement pattern"),
    }
}

fn requirements(names: &[&'static str]) -> Vec<Requirement> {
    std::iter::once(REQUIRES_CONNECTIONS)
        .chain(names.iter().copied())
        .map(requirement)
        .collect()
}

/// The fixed indicator inventory, in dashboard order.
pub fn builtin_catalog() -> Vec<IndicatorSpec> {
    use DataSource::*;
    use IndicatorId::*;
    use MeasureOp::*;
    use Visualization::*;
    vec![
        IndicatorSpec {
            id: AverageInterconnections,
            visualization: Histogram,
            source: Nodes,
            series: None,
            dimension: None,
            measure: (Average, "sbi_degree"),
            style: StyleTemplate::ReferenceLine("average_degree"),
            requirements: requirements(&[]),
        },
        IndicatorSpec {
            id: ConnectionsVsUsage,
            visualization: ScatterPlot,
            source: Nodes,
            series: None,
            dimension: Some("sbi_degree"),
            measure: (Direct, "sbi_weighted_degree"),
            style: StyleTemplate::None,
            requirements: requirements(&[REQUIRES_WEIGHTS]),
        },
        IndicatorSpec {
            id: CommunitiesMap,
            visualization: MapPoints,
            source: Nodes,
            series: None,
            dimension: Some("sbi_community"),
            measure: (Count, "sbi_community"),
            style: StyleTemplate::ColorBy("sbi_community"),
            requirements: requirements(&[REQUIRES_GEO]),
        },
        IndicatorSpec {
            id: CentralityMap,
            visualization: MapPoints,
            source: Nodes,
            series: None,
            dimension: Some("sbi_degree_centrality"),
            measure: (Direct, "sbi_degree_centrality"),
            style: StyleTemplate::Highlight {
                field: "sbi_degree_centrality",
                quantile: 0.9,
            },
            requirements: requirements(&[REQUIRES_GEO]),
        },
        IndicatorSpec {
            id: LowestOffer,
            visualization: BarChart,
            source: Metrics,
            series: Some("lowest_offer"),
            dimension: Some("node"),
            measure: (Direct, "degree"),
            style: StyleTemplate::None,
            requirements: requirements(&[]),
        },
        IndicatorSpec {
            id: DiameterRoute,
            visualization: MapPath,
            source: Metrics,
            series: Some("diameter_route"),
            dimension: Some("node"),
            measure: (Sum, "hop_cost"),
            style: StyleTemplate::ReferenceLine("diameter"),
            requirements: requirements(&[REQUIRES_PATHS, REQUIRES_GEO]),
        },
        IndicatorSpec {
            id: TerminalCandidates,
            visualization: MapPoints,
            source: Nodes,
            series: None,
            dimension: Some("sbi_betweenness"),
            measure: (Direct, "sbi_betweenness"),
            style: StyleTemplate::Highlight {
                field: "sbi_betweenness",
                quantile: 0.9,
            },
            requirements: requirements(&[REQUIRES_PATHS, REQUIRES_GEO]),
        },
        IndicatorSpec {
            id: ExpressRoutes,
            visualization: BarChart,
            source: Metrics,
            series: Some("express_routes"),
            dimension: Some("route"),
            measure: (Direct, "length"),
            style: StyleTemplate::None,
            requirements: requirements(&[REQUIRES_PATHS]),
        },
        IndicatorSpec {
            id: PathLengthDistribution,
            visualization: Histogram,
            source: Nodes,
            series: None,
            dimension: None,
            measure: (Average, "sbi_eccentricity"),
            style: StyleTemplate::ReferenceLine("average_path_length"),
            requirements: requirements(&[REQUIRES_PATHS]),
        },
    ]
}
