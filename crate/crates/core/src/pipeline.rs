//! End-to-end orchestration: load a dataset pair, inspect it, decide which
//! indicators apply, and produce the dashboard model plus enriched tables.

use serde_json::{json, Value};
use thiserror::Error;

use crate::dashboard::{
    apply_customization, build_conceptual_model, builtin_catalog, title, AvailableFields,
    BundleError, ConceptualModel, CustomizationManifest, CustomizeError, IndicatorId, ModelError,
    SourceInfo,
};
use crate::dataset::{AnnotatedDataset, BindingRole, DatasetError};
use crate::kg::{
    capability_facts, classify_roles, detect_domain, evaluate_indicators, Applicability,
    Capability, CapabilitySet, DomainClass, KnowledgeGraph, RoleConflict, ValidatedPair,
};
use crate::metrics::{
    compute_metrics, enrich_tables, ComputeOptions, EnrichError, EnrichedTables, MetricError,
    PathCriterion,
};
use crate::network::{build_network, BuildError, BuildOptions, BuiltNetwork};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{label}: {source}")]
    Dataset {
        label: String,
        #[source]
        source: DatasetError,
    },
    #[error(transparent)]
    Roles(#[from] RoleConflict),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Enrich(#[from] EnrichError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Customize(#[from] CustomizeError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
}

impl PipelineError {
    pub fn is_empty_dashboard(&self) -> bool {
        matches!(self, PipelineError::Model(ModelError::EmptyDashboard))
    }

    /// Failures caused by the machine rather than the input.
    pub fn is_environment(&self) -> bool {
        matches!(self, PipelineError::Bundle(BundleError::Io { .. }))
    }
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub build: BuildOptions,
    pub k: usize,
    pub criterion: PathCriterion,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            build: BuildOptions::default(),
            k: 10,
            criterion: PathCriterion::Hops,
        }
    }
}

/// A validated dataset pair with its knowledge graph and network.
#[derive(Debug, Clone)]
pub struct Session {
    pub pair: ValidatedPair,
    pub kg: KnowledgeGraph,
    pub domain: DomainClass,
    pub built: BuiltNetwork,
    pub capabilities: CapabilitySet,
    pub config: PipelineConfig,
}

/// Output of a successful build.
#[derive(Debug, Clone)]
pub struct Dashboard {
    pub model: ConceptualModel,
    pub tables: EnrichedTables,
    pub applicable: Vec<IndicatorId>,
}

fn parse(label: &str, text: &str) -> Result<AnnotatedDataset, PipelineError> {
    AnnotatedDataset::parse(text).map_err(|source| PipelineError::Dataset {
        label: label.to_string(),
        source,
    })
}

/// Facts about the built network that indicator requirements ask for.
pub fn derive_capabilities(pair: &ValidatedPair, built: &BuiltNetwork) -> CapabilitySet {
    let net = &built.network;
    let edge_bindings = &pair.edges.bindings;
    let mut caps = CapabilitySet::new();
    if net.has_geo() {
        caps.insert(Capability::HasGeo);
    }
    // An explicit weight column, or one row per usage event (a bound user).
    if edge_bindings.get(BindingRole::Weight).is_some()
        || edge_bindings.get(BindingRole::User).is_some()
    {
        caps.insert(Capability::HasWeights);
    }
    if net.represents_paths() {
        caps.insert(Capability::RepresentsPaths);
    }
    if net.m() > 0 {
        caps.insert(Capability::HasConnectionCounts);
    }
    caps
}

impl Session {
    /// Parse both files (in either order), validate their roles and build the network.
    /// `labels` name the inputs in error messages.
    pub fn load(
        first: (&str, &str),
        second: (&str, &str),
        config: PipelineConfig,
    ) -> Result<Self, PipelineError> {
        let a = parse(first.0, first.1)?;
        let b = parse(second.0, second.1)?;
        let pair = classify_roles(a, b)?;
        let kg = pair.knowledge_graph();
        let domain = detect_domain(&kg);
        let built = build_network(&pair.nodes, &pair.edges, &config.build)?;
        let capabilities = derive_capabilities(&pair, &built);
        Ok(Self {
            pair,
            kg,
            domain,
            built,
            capabilities,
            config,
        })
    }

    pub fn evaluate(&self) -> Vec<Applicability> {
        evaluate_indicators(
            &self.kg,
            &self.capabilities,
            &self.pair.graph,
            &builtin_catalog(),
        )
    }

    pub fn applicable(&self) -> Vec<IndicatorId> {
        self.evaluate()
            .into_iter()
            .filter(|a| a.applicable)
            .map(|a| a.id)
            .collect()
    }

    fn dataset_report(ds: &AnnotatedDataset) -> Value {
        let bindings: serde_json::Map<String, Value> = ds
            .bindings
            .iter()
            .map(|(role, b)| (role.to_string(), json!(b.column)))
            .collect();
        json!({
            "dataset": ds.bindings.dataset,
            "record": ds.bindings.record,
            "record_classes": ds.bindings.record_classes,
            "bindings": bindings,
            "columns": ds.table.header(),
            "rows": ds.table.row_count(),
        })
    }

    /// Domain, dataset roles, column bindings and capability facts.
    pub fn inspect(&self) -> Value {
        let net = &self.built.network;
        json!({
            "domain": self.domain,
            "domain_label": self.domain.label(),
            "graph": self.pair.graph,
            "datasets": {
                "nodes": Self::dataset_report(&self.pair.nodes),
                "edges": Self::dataset_report(&self.pair.edges),
            },
            "capabilities": self.capabilities,
            "capability_facts": capability_facts(&self.capabilities, &self.pair.graph)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>(),
            "network": {
                "nodes": net.v(),
                "edges": net.m(),
                "directed": net.is_directed(),
                "represents_paths": net.represents_paths(),
                "has_geo": net.has_geo(),
            },
            "warnings": self.built.warnings,
        })
    }

    /// Every catalog indicator with its applicability and failed requirements.
    pub fn discover(&self) -> Value {
        let indicators: Vec<Value> = self
            .evaluate()
            .into_iter()
            .map(|a| {
                json!({
                    "id": a.id,
                    "title": title(a.id, self.domain),
                    "applicable": a.applicable,
                    "failed": a.failed,
                })
            })
            .collect();
        json!({"domain": self.domain, "indicators": indicators})
    }

    /// Compute metrics, enrich the tables and assemble the (customized) model.
    pub fn build(
        &self,
        manifest: Option<&CustomizationManifest>,
    ) -> Result<Dashboard, PipelineError> {
        let applicable = self.applicable();
        if applicable.is_empty() {
            return Err(ModelError::EmptyDashboard.into());
        }
        let net = &self.built.network;
        let options = ComputeOptions {
            criterion: self.config.criterion,
            k: self.config.k,
            include_paths: applicable.iter().any(|id| id.uses_paths()),
        };
        let results = compute_metrics(net, &options)?;
        let id_column = self
            .pair
            .nodes
            .bindings
            .column(BindingRole::Id)
            .expect("node sets always bind an id column");
        let tables = enrich_tables(
            &self.pair.nodes.table,
            &self.pair.edges.table,
            id_column,
            &self.built,
            Some(&results),
        )?;
        let source = SourceInfo {
            graph: self.pair.graph.as_iri().unwrap_or_default().to_string(),
            node_rows: self.pair.nodes.table.row_count(),
            edge_rows: self.pair.edges.table.row_count(),
            directed: net.is_directed(),
            represents_paths: net.represents_paths(),
            criterion: self.config.criterion.to_string(),
        };
        let mut model = build_conceptual_model(&applicable, &results, self.domain, source)?;
        if let Some(manifest) = manifest {
            let fields = AvailableFields::new(&tables.nodes, &tables.edges, &tables.metrics);
            model = apply_customization(&model, manifest, &fields)?;
        }
        Ok(Dashboard {
            model,
            tables,
            applicable,
        })
    }
}
