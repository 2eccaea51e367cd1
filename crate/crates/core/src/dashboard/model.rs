use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::catalog::{
    builtin_catalog, DataSource, IndicatorId, MeasureOp, StyleTemplate, Visualization,
};
use crate::kg::DomainClass;
use crate::metrics::MetricResults;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dimension {
    pub field: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Measure {
    pub op: MeasureOp,
    pub field: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataRef {
    pub source: DataSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Highlight {
    /// Always `top_quantile`.
    pub rule: String,
    pub quantile: f64,
    pub field: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Style {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_line: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color_by: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub highlight: Option<Highlight>,
}

/// One chart or map of the dashboard.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InteractiveObject {
    /// The indicator id for catalog objects; any unique name for user objects.
    pub id: String,
    pub title: String,
    pub viz: Visualization,
    pub dimension: Option<Dimension>,
    pub measure: Measure,
    pub data: DataRef,
    #[serde(default)]
    pub style: Style,
}

/// Where the model came from.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceInfo {
    pub graph: String,
    pub node_rows: usize,
    pub edge_rows: usize,
    pub directed: bool,
    pub represents_paths: bool,
    pub criterion: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConceptualModel {
    pub domain: DomainClass,
    pub objects: Vec<InteractiveObject>,
    pub source: SourceInfo,
}

impl ConceptualModel {
    pub fn object(&self, id: &str) -> Option<&InteractiveObject> {
        self.objects.iter().find(|o| o.id == id)
    }

    pub fn ids(&self) -> Vec<&str> {
        self.objects.iter().map(|o| o.id.as_str()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("no indicator applies to this dataset pair; the dashboard would be empty")]
    EmptyDashboard,
    #[error("indicator {0} is applicable but its results were not computed")]
    MissingResult(IndicatorId),
}

fn has_result(id: IndicatorId, results: &MetricResults) -> bool {
    let paths = results.paths.as_ref();
    match id {
        IndicatorId::AverageInterconnections
        | IndicatorId::ConnectionsVsUsage
        | IndicatorId::LowestOffer => true,
        IndicatorId::CommunitiesMap => results.communities.is_some(),
        IndicatorId::CentralityMap => results.degree_centrality.is_some(),
        IndicatorId::DiameterRoute => paths.is_some_and(|p| p.diameter_path.is_some()),
        IndicatorId::TerminalCandidates | IndicatorId::ExpressRoutes => paths.is_some(),
        IndicatorId::PathLengthDistribution => results.scalars.contains_key("average_path_length"),
    }
}

/// One object per applicable indicator, in catalog order, with titles for the
/// domain and style values taken from the results.
pub fn build_conceptual_model(
    applicable: &[IndicatorId],
    results: &MetricResults,
    domain: DomainClass,
    source: SourceInfo,
) -> Result<ConceptualModel, ModelError> {
    if applicable.is_empty() {
        return Err(ModelError::EmptyDashboard);
    }
    let mut objects = Vec::new();
    for spec in builtin_catalog()
        .into_iter()
        .filter(|s| applicable.contains(&s.id))
    {
        if !has_result(spec.id, results) {
            return Err(ModelError::MissingResult(spec.id));
        }
        let style = match spec.style {
            StyleTemplate::None => Style::default(),
            StyleTemplate::ReferenceLine(scalar) => Style {
                reference_line: Some(
                    results
                        .scalars
                        .get(scalar)
                        .copied()
                        .ok_or(ModelError::MissingResult(spec.id))?,
                ),
                ..Style::default()
            },
            StyleTemplate::ColorBy(field) => Style {
                color_by: Some(field.to_string()),
                ..Style::default()
            },
            StyleTemplate::Highlight { field, quantile } => Style {
                color_by: Some(field.to_string()),
                highlight: Some(Highlight {
                    rule: "top_quantile".into(),
                    quantile,
                    field: field.to_string(),
                }),
                ..Style::default()
            },
        };
        objects.push(InteractiveObject {
            id: spec.id.as_str().to_string(),
            title: spec.title(domain),
            viz: spec.visualization,
            dimension: spec.dimension.map(|f| Dimension {
                field: f.to_string(),
            }),
            measure: Measure {
                op: spec.measure.0,
                field: spec.measure.1.to_string(),
            },
            data: DataRef {
                source: spec.source,
                series: spec.series.map(str::to_string),
            },
            style,
        });
    }
    Ok(ConceptualModel {
        domain,
        objects,
        source,
    })
}
