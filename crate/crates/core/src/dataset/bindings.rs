use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::turtle::TripleSet;
use crate::term::Term;
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DatasetRole {
    NodeSet,
    EdgeSet,
}

impl fmt::Display for DatasetRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DatasetRole::NodeSet => "NodeSet",
            DatasetRole::EdgeSet => "EdgeSet",
        })
    }
}

/// Semantic role a column plays, reached from the data record through a recognized property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BindingRole {
    /// The record's own column (edge id in an edge set).
    Record,
    Id,
    Lat,
    Long,
    Label,
    Source,
    Target,
    User,
    Weight,
}

impl fmt::Display for BindingRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

impl BindingRole {
    fn for_predicate(iri: &str) -> Option<Self> {
        Some(match iri {
            vocab::HAS_ID => BindingRole::Id,
            vocab::LAT => BindingRole::Lat,
            vocab::LONG => BindingRole::Long,
            vocab::LABEL => BindingRole::Label,
            vocab::HAS_SOURCE_NODE => BindingRole::Source,
            vocab::HAS_TARGET_NODE => BindingRole::Target,
            vocab::HAS_WEIGHT => BindingRole::Weight,
            vocab::HAS_BICYCLE_SHARE_USER | vocab::HAS_BUS_USER | vocab::HAS_SUBWAY_USER => {
                BindingRole::User
            }
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BindingError {
    #[error("annotations declare neither graph:NodeSet nor graph:EdgeSet")]
    MissingRole,
    #[error("annotations declare both graph:NodeSet and graph:EdgeSet")]
    AmbiguousRole,
    #[error("dataset {0} has no ccsv:hasDataRecord")]
    MissingDataRecord(Term),
    #[error("dataset {0} has more than one ccsv:hasDataRecord")]
    MultipleDataRecords(Term),
    #[error("entity {0} is referenced but has no ccsv:atColumn")]
    UnboundEntity(Term),
    #[error("entity {0} has more than one ccsv:atColumn")]
    ConflictingColumns(Term),
    #[error("entity {entity} has an invalid ccsv:atColumn value {value}")]
    InvalidColumn { entity: Term, value: Term },
    #[error("role '{0}' is bound more than once")]
    DuplicateRole(BindingRole),
    #[error("mandatory binding '{0}' is missing")]
    MissingMandatoryBinding(BindingRole),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnBinding {
    pub entity: Term,
    pub column: usize,
}

/// Column indexes for the semantic roles of one annotated dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnBindingMap {
    pub role: DatasetRole,
    pub dataset: Term,
    pub record: Term,
    pub graph: Option<Term>,
    /// `rdf:type` classes asserted on the data record.
    pub record_classes: Vec<Term>,
    bindings: BTreeMap<BindingRole, ColumnBinding>,
}

impl ColumnBindingMap {
    pub fn column(&self, role: BindingRole) -> Option<usize> {
        self.bindings.get(&role).map(|b| b.column)
    }

    pub fn get(&self, role: BindingRole) -> Option<&ColumnBinding> {
        self.bindings.get(&role)
    }

    pub fn iter(&self) -> impl Iterator<Item = (BindingRole, &ColumnBinding)> {
        self.bindings.iter().map(|(r, b)| (*r, b))
    }

    /// Role → column index, for reports.
    pub fn columns(&self) -> BTreeMap<BindingRole, usize> {
        self.bindings.iter().map(|(r, b)| (*r, b.column)).collect()
    }

    pub fn has_class(&self, iri: &str) -> bool {
        self.record_classes.iter().any(|c| c.as_iri() == Some(iri))
    }
}

fn rdf_type() -> Term {
    Term::iri(vocab::RDF_TYPE)
}

fn objects<'a>(
    triples: &'a TripleSet,
    subject: &'a Term,
    predicate: &'a str,
) -> impl Iterator<Item = &'a Term> + 'a {
    triples
        .iter()
        .filter(move |t| &t.subject == subject && t.predicate.as_iri() == Some(predicate))
        .map(|t| &t.object)
}

fn column_of(triples: &TripleSet, entity: &Term) -> Result<Option<usize>, BindingError> {
    let values: Vec<&Term> = objects(triples, entity, vocab::AT_COLUMN).collect();
    match values.as_slice() {
        [] => Ok(None),
        [v] => match v.as_integer() {
            Some(i) if i >= 0 => Ok(Some(i as usize)),
            _ => Err(BindingError::InvalidColumn {
                entity: entity.clone(),
                value: (*v).clone(),
            }),
        },
        _ => Err(BindingError::ConflictingColumns(entity.clone())),
    }
}

/// The dataset subject and its declared role.
pub fn dataset_role(triples: &TripleSet) -> Result<(Term, DatasetRole), BindingError> {
    let typed = |class: &str| {
        triples
            .iter()
            .find(|t| t.predicate == rdf_type() && t.object.as_iri() == Some(class))
            .map(|t| t.subject.clone())
    };
    match (typed(vocab::NODE_SET), typed(vocab::EDGE_SET)) {
        (Some(s), None) => Ok((s, DatasetRole::NodeSet)),
        (None, Some(s)) => Ok((s, DatasetRole::EdgeSet)),
        (Some(_), Some(_)) => Err(BindingError::AmbiguousRole),
        (None, None) => Err(BindingError::MissingRole),
    }
}

/// Resolve the column of every entity hanging off the data record through a
/// recognized property. Id is mandatory for node sets; source and target for edge sets.
pub fn extract_bindings(triples: &TripleSet) -> Result<ColumnBindingMap, BindingError> {
    let (dataset, role) = dataset_role(triples)?;
    let records: Vec<&Term> = objects(triples, &dataset, vocab::HAS_DATA_RECORD).collect();
    let record = match records.as_slice() {
        [] => return Err(BindingError::MissingDataRecord(dataset)),
        [r] => (*r).clone(),
        _ => return Err(BindingError::MultipleDataRecords(dataset)),
    };
    let graph_predicate = match role {
        DatasetRole::NodeSet => vocab::IS_NODE_SET_FOR,
        DatasetRole::EdgeSet => vocab::IS_EDGE_SET_FOR,
    };
    let graph = objects(triples, &dataset, graph_predicate).next().cloned();
    let record_classes = triples
        .iter()
        .filter(|t| t.subject == record && t.predicate == rdf_type())
        .map(|t| t.object.clone())
        .collect();

    let mut bindings = BTreeMap::new();
    if let Some(column) = column_of(triples, &record)? {
        bindings.insert(
            BindingRole::Record,
            ColumnBinding {
                entity: record.clone(),
                column,
            },
        );
    }
    for t in triples.iter().filter(|t| t.subject == record) {
        let Some(binding_role) = t.predicate.as_iri().and_then(BindingRole::for_predicate) else {
            continue;
        };
        let column = column_of(triples, &t.object)?
            .ok_or_else(|| BindingError::UnboundEntity(t.object.clone()))?;
        let previous = bindings.insert(
            binding_role,
            ColumnBinding {
                entity: t.object.clone(),
                column,
            },
        );
        if previous.is_some() {
            return Err(BindingError::DuplicateRole(binding_role));
        }
    }

    let mandatory: &[BindingRole] = match role {
        DatasetRole::NodeSet => &[BindingRole::Id],
        DatasetRole::EdgeSet => &[BindingRole::Source, BindingRole::Target],
    };
    for &m in mandatory {
        if !bindings.contains_key(&m) {
            return Err(BindingError::MissingMandatoryBinding(m));
        }
    }

    Ok(ColumnBindingMap {
        role,
        dataset,
        record,
        graph,
        record_classes,
        bindings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::turtle::parse_turtle_subset;

    const PREFIXES: &str = "@prefix graph: <http://download.wikicrimes.org/ont/graph> .\n\
        @prefix ccsv: <http://download.wikicrimes.org/ont/ccsv> .\n\
        @prefix geo: <http://www.w3.org/2003/01/geo/wgs84_pos> .\n";

    fn bindings(body: &str) -> Result<ColumnBindingMap, BindingError> {
        extract_bindings(&parse_turtle_subset(&format!("{PREFIXES}{body}")).unwrap())
    }

    #[test]
    fn unbound_entity() {
        let err = bindings(
            "<ds> a graph:NodeSet ; ccsv:hasDataRecord <node> .\n<node> graph:hasId <id> .",
        )
        .unwrap_err();
        assert_eq!(err, BindingError::UnboundEntity(Term::iri("id")));
    }

    #[test]
    fn missing_mandatory_id() {
        let err = bindings(
            "<ds> a graph:NodeSet ; ccsv:hasDataRecord <node> .\n<node> geo:lat <lat> .\n<lat> ccsv:atColumn 1 .",
        )
        .unwrap_err();
        assert_eq!(err, BindingError::MissingMandatoryBinding(BindingRole::Id));
    }

    #[test]
    fn edge_set_requires_both_endpoints() {
        let err = bindings(
            "<ds> a graph:EdgeSet ; ccsv:hasDataRecord <e> .\n<e> graph:hasSourceNode <s> .\n<s> ccsv:atColumn 1 .",
        )
        .unwrap_err();
        assert_eq!(
            err,
            BindingError::MissingMandatoryBinding(BindingRole::Target)
        );
    }

    #[test]
    fn conflicting_and_invalid_columns() {
        let base =
            "<ds> a graph:NodeSet ; ccsv:hasDataRecord <node> .\n<node> graph:hasId <id> .\n";
        assert_eq!(
            bindings(&format!("{base}<id> ccsv:atColumn 0, 1 .")).unwrap_err(),
            BindingError::ConflictingColumns(Term::iri("id"))
        );
        assert!(matches!(
            bindings(&format!("{base}<id> ccsv:atColumn -1 .")).unwrap_err(),
            BindingError::InvalidColumn { .. }
        ));
        assert!(matches!(
            bindings(&format!("{base}<id> ccsv:atColumn \"0\" .")).unwrap_err(),
            BindingError::InvalidColumn { .. }
        ));
    }

    #[test]
    fn role_must_be_unique() {
        assert_eq!(
            bindings("<ds> a graph:NodeSet, graph:EdgeSet .").unwrap_err(),
            BindingError::AmbiguousRole
        );
        assert_eq!(
            bindings("<ds> a <x> .").unwrap_err(),
            BindingError::MissingRole
        );
    }

    #[test]
    fn unknown_predicates_are_ignored() {
        let m = bindings(
            "<ds> a graph:NodeSet ; ccsv:hasDataRecord <node> .\n\
             <node> graph:hasId <id> ; <urn:x:color> <c> .\n<id> ccsv:atColumn 0 .",
        )
        .unwrap();
        assert_eq!(m.columns(), BTreeMap::from([(BindingRole::Id, 0)]));
    }
}
