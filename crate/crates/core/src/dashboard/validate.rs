use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::customize::{source_name, AvailableFields};
use super::model::{InteractiveObject, SourceInfo};
use super::{DASHBOARD_FILE, EDGES_FILE, METRICS_FILE, NODES_FILE, SCHEMA_VERSION};
use crate::dataset::{parse_csv, DataTable};
use crate::kg::DomainClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
    /// Validation could not proceed past this point.
    Fatal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticCode {
    MissingFile,
    InvalidJson,
    InvalidCsv,
    SchemaViolation,
    DuplicateObjectId,
    UnresolvedBinding,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: DiagnosticCode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    pub message: String,
}

impl Diagnostic {
    fn new(severity: Severity, code: DiagnosticCode, message: impl Into<String>) -> Self {
        Self {
            severity,
            code,
            object: None,
            message: message.into(),
        }
    }

    fn on(mut self, object: &str) -> Self {
        self.object = Some(object.to_string());
        self
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct DashboardDoc {
    version: u32,
    domain: DomainClass,
    #[serde(default)]
    generated_at: Option<String>,
    #[serde(default)]
    source: Option<SourceInfo>,
    objects: Vec<InteractiveObject>,
    data: DataFiles,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DataFiles {
    nodes: String,
    edges: String,
    metrics: String,
}

fn schema(message: impl Into<String>) -> Diagnostic {
    Diagnostic::new(Severity::Error, DiagnosticCode::SchemaViolation, message)
}

fn check_metrics(metrics: &Value, out: &mut Vec<Diagnostic>) {
    let Some(obj) = metrics.as_object() else {
        out.push(schema("metrics.json is not an object"));
        return;
    };
    for key in ["scalars", "series"] {
        if !obj.get(key).is_some_and(Value::is_object) {
            out.push(schema(format!("metrics.json lacks an object {key:?}")));
        }
    }
    if !obj.get("warnings").is_some_and(Value::is_array) {
        out.push(schema("metrics.json lacks an array \"warnings\""));
    }
    if let Some(extra) = obj
        .keys()
        .find(|k| !["scalars", "series", "warnings"].contains(&k.as_str()))
    {
        out.push(schema(format!("metrics.json has unknown key {extra:?}")));
    }
}

fn check_object(object: &InteractiveObject, fields: &AvailableFields, out: &mut Vec<Diagnostic>) {
    let id = object.id.as_str();
    if id.trim().is_empty() {
        out.push(schema("object with an empty id"));
    }
    if object.title.trim().is_empty() {
        out.push(schema("object has an empty title").on(id));
    }
    use super::catalog::DataSource;
    match (object.data.source, &object.data.series) {
        (DataSource::Metrics, None) => {
            out.push(schema("metrics data reference without a series").on(id))
        }
        (DataSource::Nodes | DataSource::Edges, Some(_)) => {
            out.push(schema("series is only allowed with the metrics source").on(id))
        }
        _ => {}
    }
    if let Some(h) = &object.style.highlight {
        if h.rule != "top_quantile" {
            out.push(schema(format!("unknown highlight rule {:?}", h.rule)).on(id));
        }
        if !(h.quantile > 0.0 && h.quantile < 1.0) {
            out.push(
                schema(format!(
                    "highlight quantile {} is outside (0, 1)",
                    h.quantile
                ))
                .on(id),
            );
        }
    }
    if object.style.reference_line.is_some_and(|v| !v.is_finite()) {
        out.push(schema("reference line is not a finite number").on(id));
    }
    for (field, ok) in fields.check(object) {
        if !ok {
            out.push(
                Diagnostic::new(
                    Severity::Error,
                    DiagnosticCode::UnresolvedBinding,
                    format!("field {field:?} is not in {}", source_name(&object.data)),
                )
                .on(id),
            );
        }
    }
}

/// Schema and referential checks over an in-memory bundle. Empty means valid.
pub fn validate_documents(
    dashboard: &Value,
    nodes: &DataTable,
    edges: &DataTable,
    metrics: &Value,
) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    check_metrics(metrics, &mut out);
    let doc: DashboardDoc = match serde_json::from_value(dashboard.clone()) {
        Ok(doc) => doc,
        Err(e) => {
            out.push(schema(format!("dashboard.json: {e}")));
            return out;
        }
    };
    if doc.version != SCHEMA_VERSION {
        out.push(schema(format!(
            "unsupported version {} (expected {SCHEMA_VERSION})",
            doc.version
        )));
    }
    for (key, value, expected) in [
        ("nodes", &doc.data.nodes, NODES_FILE),
        ("edges", &doc.data.edges, EDGES_FILE),
        ("metrics", &doc.data.metrics, METRICS_FILE),
    ] {
        if value != expected {
            out.push(schema(format!(
                "data.{key} is {value:?}; bundles name it {expected:?}"
            )));
        }
    }
    let fields = AvailableFields::new(nodes, edges, metrics);
    let mut seen = BTreeSet::new();
    for object in &doc.objects {
        if !seen.insert(object.id.as_str()) {
            out.push(
                Diagnostic::new(
                    Severity::Error,
                    DiagnosticCode::DuplicateObjectId,
                    "object id appears more than once",
                )
                .on(&object.id),
            );
        }
        check_object(object, &fields, &mut out);
    }
    out
}

fn read(dir: &Path, name: &str, out: &mut Vec<Diagnostic>) -> Option<String> {
    match fs::read_to_string(dir.join(name)) {
        Ok(text) => Some(text),
        Err(e) => {
            out.push(Diagnostic::new(
                Severity::Fatal,
                DiagnosticCode::MissingFile,
                format!("{name}: {e}"),
            ));
            None
        }
    }
}

fn read_json(dir: &Path, name: &str, out: &mut Vec<Diagnostic>) -> Option<Value> {
    let text = read(dir, name, out)?;
    serde_json::from_str(&text)
        .map_err(|e| {
            out.push(Diagnostic::new(
                Severity::Fatal,
                DiagnosticCode::InvalidJson,
                format!("{name}: {e}"),
            ))
        })
        .ok()
}

fn read_csv(dir: &Path, name: &str, out: &mut Vec<Diagnostic>) -> Option<DataTable> {
    let text = read(dir, name, out)?;
    parse_csv(&text)
        .map_err(|e| {
            out.push(Diagnostic::new(
                Severity::Fatal,
                DiagnosticCode::InvalidCsv,
                format!("{name}: {e}"),
            ))
        })
        .ok()
}

/// Validate a bundle directory on disk.
pub fn validate_bundle(dir: &Path) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let dashboard = read_json(dir, DASHBOARD_FILE, &mut out);
    let nodes = read_csv(dir, NODES_FILE, &mut out);
    let edges = read_csv(dir, EDGES_FILE, &mut out);
    let metrics = read_json(dir, METRICS_FILE, &mut out);
    if let (Some(d), Some(n), Some(e), Some(m)) = (dashboard, nodes, edges, metrics) {
        out.extend(validate_documents(&d, &n, &e, &m));
    }
    out
}
