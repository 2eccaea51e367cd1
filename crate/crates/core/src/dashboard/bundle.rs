use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use thiserror::Error;

use super::model::ConceptualModel;
use super::validate::{validate_documents, Diagnostic};
use super::{DASHBOARD_FILE, EDGES_FILE, METRICS_FILE, NODES_FILE, SCHEMA_VERSION};
use crate::metrics::{round9, EnrichedTables};

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("bundle failed its consistency check: {}", summarize(.0))]
    SchemaViolation(Vec<Diagnostic>),
}

fn summarize(diagnostics: &[Diagnostic]) -> String {
    diagnostics
        .iter()
        .map(|d| match &d.object {
            Some(o) => format!("{o}: {}", d.message),
            None => d.message.clone(),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// A bundle's file contents, ready to write.
#[derive(Debug, Clone, PartialEq)]
pub struct Bundle {
    pub dashboard: Value,
    pub nodes_csv: String,
    pub edges_csv: String,
    pub metrics: Value,
}

impl Bundle {
    /// `(file name, contents)` in write order.
    pub fn files(&self) -> [(&'static str, String); 4] {
        [
            (DASHBOARD_FILE, to_json_text(&self.dashboard)),
            (NODES_FILE, self.nodes_csv.clone()),
            (EDGES_FILE, self.edges_csv.clone()),
            (METRICS_FILE, to_json_text(&self.metrics)),
        ]
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json_text(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    text
}

fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                *value = json!(round9(x));
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// The `dashboard.json` document for a model.
pub fn dashboard_document(model: &ConceptualModel, generated_at: Option<&str>) -> Value {
    let mut doc = json!({
        "version": SCHEMA_VERSION,
        "domain": model.domain,
        "source": model.source,
        "objects": model.objects,
        "data": {"nodes": NODES_FILE, "edges": EDGES_FILE, "metrics": METRICS_FILE},
    });
    if let Some(ts) = generated_at {
        doc["generated_at"] = json!(ts);
    }
    round_floats(&mut doc);
    doc
}

/// Assemble and check a bundle without touching the disk.
pub fn render_bundle(
    model: &ConceptualModel,
    tables: &EnrichedTables,
    generated_at: Option<&str>,
) -> Result<Bundle, BundleError> {
    let dashboard = dashboard_document(model, generated_at);
    let mut metrics = tables.metrics.clone();
    round_floats(&mut metrics);
    let diagnostics = validate_documents(&dashboard, &tables.nodes, &tables.edges, &metrics);
    if !diagnostics.is_empty() {
        return Err(BundleError::SchemaViolation(diagnostics));
    }
    Ok(Bundle {
        dashboard,
        nodes_csv: tables.nodes.to_csv(),
        edges_csv: tables.edges.to_csv(),
        metrics,
    })
}

/// Check, then write `dashboard.json`, `nodes.csv`, `edges.csv` and
/// `metrics.json` into `out_dir` (created if needed).
pub fn emit_bundle(
    model: &ConceptualModel,
    tables: &EnrichedTables,
    out_dir: &Path,
    generated_at: Option<&str>,
) -> Result<Bundle, BundleError> {
    let bundle = render_bundle(model, tables, generated_at)?;
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| BundleError::Io { path, source }
    };
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    for (name, contents) in bundle.files() {
        let path = out_dir.join(name);
        fs::write(&path, contents).map_err(io_err(&path))?;
    }
    Ok(bundle)
}
