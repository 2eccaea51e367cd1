use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use super::catalog::{DataSource, Visualization};
use super::model::{ConceptualModel, DataRef, Dimension, InteractiveObject, Measure};
use crate::dataset::DataTable;

/// User edits applied on top of the generated model.
///
/// ```toml
/// order = ["lowest_offer", "average_interconnections"]
///
/// [objects.lowest_offer]
/// title = "Estações menos conectadas"
///
/// [[add]]
/// id = "betweenness_bars"
/// title = "Betweenness"
/// viz = "bar_chart"
/// dimension = { field = "STATION NAME" }
/// measure = { op = "direct", field = "sbi_betweenness" }
/// data = { source = "nodes" }
/// ```
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomizationManifest {
    /// Listed objects move to the front in this order; the rest keep theirs.
    #[serde(default)]
    pub order: Vec<String>,
    #[serde(default)]
    pub objects: BTreeMap<String, ObjectOverride>,
    /// Appended, or replacing an existing object with the same id.
    #[serde(default)]
    pub add: Vec<InteractiveObject>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectOverride {
    pub title: Option<String>,
    pub viz: Option<Visualization>,
    /// An empty string removes the dimension.
    pub dimension: Option<String>,
    pub measure: Option<Measure>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ManifestFormat {
    Toml,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CustomizeError {
    #[error("invalid manifest: {0}")]
    Parse(String),
    #[error("manifest references unknown object {0:?}")]
    UnknownObjectId(String),
    #[error("object {object:?} references unknown column {field:?} in {source_name}")]
    UnknownColumn {
        object: String,
        field: String,
        source_name: String,
    },
    #[error("added object has an empty id")]
    EmptyObjectId,
}

impl CustomizationManifest {
    pub fn parse(text: &str, format: ManifestFormat) -> Result<Self, CustomizeError> {
        match format {
            ManifestFormat::Toml => {
                toml::from_str(text).map_err(|e| CustomizeError::Parse(e.to_string()))
            }
            ManifestFormat::Json => {
                serde_json::from_str(text).map_err(|e| CustomizeError::Parse(e.to_string()))
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty() && self.objects.is_empty() && self.add.is_empty()
    }
}

/// Field names each data source offers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AvailableFields {
    pub nodes: BTreeSet<String>,
    pub edges: BTreeSet<String>,
    /// Union of record keys per series.
    pub series: BTreeMap<String, BTreeSet<String>>,
}

impl AvailableFields {
    pub fn new(nodes: &DataTable, edges: &DataTable, metrics: &Value) -> Self {
        let series = metrics
            .get("series")
            .and_then(Value::as_object)
            .map(|s| {
                s.iter()
                    .map(|(name, records)| {
                        let keys = records
                            .as_array()
                            .into_iter()
                            .flatten()
                            .filter_map(Value::as_object)
                            .flat_map(|r| r.keys().cloned())
                            .collect();
                        (name.clone(), keys)
                    })
                    .collect()
            })
            .unwrap_or_default();
        Self {
            nodes: nodes.header().iter().cloned().collect(),
            edges: edges.header().iter().cloned().collect(),
            series,
        }
    }

    fn fields(&self, data: &DataRef) -> Option<&BTreeSet<String>> {
        match data.source {
            DataSource::Nodes => Some(&self.nodes),
            DataSource::Edges => Some(&self.edges),
            DataSource::Metrics => self.series.get(data.series.as_deref()?),
        }
    }

    /// Every field `object` names, paired with whether it resolves.
    pub fn check(&self, object: &InteractiveObject) -> Vec<(String, bool)> {
        let fields = self.fields(&object.data);
        referenced_fields(object)
            .into_iter()
            .map(|f| {
                let ok = fields.is_some_and(|set| set.contains(&f));
                (f, ok)
            })
            .collect()
    }
}

pub(crate) fn source_name(data: &DataRef) -> String {
    match (&data.source, &data.series) {
        (DataSource::Metrics, Some(series)) => format!("metrics series {series:?}"),
        (DataSource::Metrics, None) => "metrics (no series named)".to_string(),
        (source, _) => source.as_str().to_string(),
    }
}

/// Dimension, measure, color and highlight fields, in that order.
pub(crate) fn referenced_fields(object: &InteractiveObject) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(d) = &object.dimension {
        out.push(d.field.clone());
    }
    out.push(object.measure.field.clone());
    if let Some(c) = &object.style.color_by {
        out.push(c.clone());
    }
    if let Some(h) = &object.style.highlight {
        out.push(h.field.clone());
    }
    out
}

fn check_object(
    object: &InteractiveObject,
    fields: &AvailableFields,
) -> Result<(), CustomizeError> {
    match fields.check(object).into_iter().find(|(_, ok)| !ok) {
        Some((field, _)) => Err(CustomizeError::UnknownColumn {
            object: object.id.clone(),
            field,
            source_name: source_name(&object.data),
        }),
        None => Ok(()),
    }
}

/// Upsert added objects, apply overrides, then reorder. Applying the same
/// manifest twice gives the same model as applying it once.
pub fn apply_customization(
    model: &ConceptualModel,
    manifest: &CustomizationManifest,
    fields: &AvailableFields,
) -> Result<ConceptualModel, CustomizeError> {
    let mut objects = model.objects.clone();

    for added in &manifest.add {
        if added.id.trim().is_empty() {
            return Err(CustomizeError::EmptyObjectId);
        }
        check_object(added, fields)?;
        match objects.iter_mut().find(|o| o.id == added.id) {
            Some(existing) => *existing = added.clone(),
            None => objects.push(added.clone()),
        }
    }

    for (id, edit) in &manifest.objects {
        let object = objects
            .iter_mut()
            .find(|o| &o.id == id)
            .ok_or_else(|| CustomizeError::UnknownObjectId(id.clone()))?;
        if let Some(title) = &edit.title {
            object.title = title.clone();
        }
        if let Some(viz) = edit.viz {
            object.viz = viz;
        }
        if let Some(dimension) = &edit.dimension {
            object.dimension = (!dimension.is_empty()).then(|| Dimension {
                field: dimension.clone(),
            });
        }
        if let Some(measure) = &edit.measure {
            object.measure = measure.clone();
        }
        check_object(object, fields)?;
    }

    let mut front = Vec::new();
    for id in &manifest.order {
        if front.contains(id) {
            continue;
        }
        if !objects.iter().any(|o| &o.id == id) {
            return Err(CustomizeError::UnknownObjectId(id.clone()));
        }
        front.push(id.clone());
    }
    let mut ordered: Vec<InteractiveObject> = front
        .iter()
        .map(|id| {
            objects
                .iter()
                .find(|o| &o.id == id)
                .expect("checked above")
                .clone()
        })
        .collect();
    ordered.extend(objects.into_iter().filter(|o| !front.contains(&o.id)));

    Ok(ConceptualModel {
        domain: model.domain,
        objects: ordered,
        source: model.source.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dashboard::catalog::MeasureOp;
    use crate::dashboard::model::{SourceInfo, Style};
    use crate::kg::DomainClass;

    fn object(id: &str, field: &str) -> InteractiveObject {
        InteractiveObject {
            id: id.into(),
            title: id.to_uppercase(),
            viz: Visualization::BarChart,
            dimension: None,
            measure: Measure {
                op: MeasureOp::Average,
                field: field.into(),
            },
            data: DataRef {
                source: DataSource::Nodes,
                series: None,
            },
            style: Style::default(),
        }
    }

    fn model() -> ConceptualModel {
        ConceptualModel {
            domain: DomainClass::Bus,
            objects: vec![
                object("a", "sbi_degree"),
                object("b", "sbi_degree"),
                object("c", "sbi_degree"),
            ],
            source: SourceInfo::default(),
        }
    }

    fn fields() -> AvailableFields {
        AvailableFields {
            nodes: ["Name", "sbi_degree"].map(String::from).into(),
            ..AvailableFields::default()
        }
    }

    #[test]
    fn empty_manifest_is_identity() {
        assert_eq!(
            apply_customization(&model(), &CustomizationManifest::default(), &fields()).unwrap(),
            model()
        );
    }

    #[test]
    fn reorder_moves_listed_first() {
        let manifest = CustomizationManifest {
            order: vec!["c".into(), "a".into()],
            ..Default::default()
        };
        let out = apply_customization(&model(), &manifest, &fields()).unwrap();
        assert_eq!(out.ids(), ["c", "a", "b"]);
    }

    #[test]
    fn toml_manifest_round() {
        let text = r#"
            order = ["b"]
            [objects.a]
            title = "Primeiro"
            dimension = "Name"
            [[add]]
            id = "d"
            title = "Nomes"
            viz = "bar_chart"
            dimension = { field = "Name" }
            measure = { op = "count", field = "Name" }
            data = { source = "nodes" }
        "#;
        let manifest = CustomizationManifest::parse(text, ManifestFormat::Toml).unwrap();
        let once = apply_customization(&model(), &manifest, &fields()).unwrap();
        assert_eq!(once.ids(), ["b", "a", "c", "d"]);
        assert_eq!(once.objects[1].title, "Primeiro");
        assert_eq!(once.objects[1].dimension.as_ref().unwrap().field, "Name");
        let twice = apply_customization(&once, &manifest, &fields()).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn unknown_references() {
        let manifest = CustomizationManifest {
            order: vec!["zzz".into()],
            ..Default::default()
        };
        assert_eq!(
            apply_customization(&model(), &manifest, &fields()),
            Err(CustomizeError::UnknownObjectId("zzz".into()))
        );
        let manifest = CustomizationManifest {
            add: vec![object("x", "nope")],
            ..Default::default()
        };
        assert!(matches!(
            apply_customization(&model(), &manifest, &fields()),
            Err(CustomizeError::UnknownColumn { .. })
        ));
        assert!(CustomizationManifest::parse("{\"bogus\": 1}", ManifestFormat::Json).is_err());
    }
}
