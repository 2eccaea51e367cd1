//! Indicator catalog, conceptual dashboard model, user customization and the
//! on-disk bundle (`dashboard.json`, enriched CSVs, `metrics.json`).

mod bundle;
mod catalog;
mod customize;
mod model;
mod validate;

pub use bundle::{
    dashboard_document, emit_bundle, render_bundle, to_json_text, Bundle, BundleError,
};
pub use catalog::{
    builtin_catalog, title, DataSource, IndicatorId, IndicatorSpec, MeasureOp, Requirement,
    StyleTemplate, Visualization, REQUIRES_CONNECTIONS, REQUIRES_GEO, REQUIRES_PATHS,
    REQUIRES_WEIGHTS,
};
pub use customize::{
    apply_customization, AvailableFields, CustomizationManifest, CustomizeError, ManifestFormat,
    ObjectOverride,
};
pub use model::{
    build_conceptual_model, ConceptualModel, DataRef, Dimension, Highlight, InteractiveObject,
    Measure, ModelError, SourceInfo, Style,
};
pub use validate::{validate_bundle, validate_documents, Diagnostic, DiagnosticCode, Severity};

pub const SCHEMA_VERSION: u32 = 1;
pub const DASHBOARD_FILE: &str = "dashboard.json";
pub const NODES_FILE: &str = "nodes.csv";
pub const EDGES_FILE: &str = "edges.csv";
pub const METRICS_FILE: &str = "metrics.json";
