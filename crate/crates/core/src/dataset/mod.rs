//! The annotated-dataset file format: a Turtle prelude describing the data,
//! followed by the CSV table it describes.

mod bindings;
pub(crate) mod lexer;
mod split;
mod table;
mod turtle;

use thiserror::Error;

pub use bindings::{
    dataset_role, extract_bindings, BindingError, BindingRole, ColumnBinding, ColumnBindingMap,
    DatasetRole,
};
pub use split::{split_prelude, SplitError};
pub use table::{parse_csv, CsvError, DataTable};
pub use turtle::{parse_turtle_subset, write_turtle, Prefixes, TripleSet, TurtleError};
pub(crate) use turtle::{resolve, Cursor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatasetError {
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error("annotation prelude: {0}")]
    Turtle(#[from] TurtleError),
    #[error("CSV table: {0}")]
    Csv(#[from] CsvError),
    #[error("column bindings: {0}")]
    Binding(#[from] BindingError),
    #[error("binding '{role}' points at column {column}, but the table has {col_count} columns")]
    ColumnOutOfRange {
        role: BindingRole,
        column: usize,
        col_count: usize,
    },
}

/// One parsed annotated file.
#[derive(Debug, Clone)]
pub struct AnnotatedDataset {
    pub triples: TripleSet,
    pub table: DataTable,
    pub bindings: ColumnBindingMap,
}

impl AnnotatedDataset {
    pub fn parse(text: &str) -> Result<Self, DatasetError> {
        let (prelude, csv_text) = split_prelude(text)?;
        let triples = parse_turtle_subset(prelude)?;
        let prelude_lines = prelude.matches('\n').count();
        let table = parse_csv(csv_text).map_err(|e| e.shift_lines(prelude_lines))?;
        let bindings = extract_bindings(&triples)?;
        for (role, b) in bindings.iter() {
            if b.column >= table.col_count() {
                return Err(DatasetError::ColumnOutOfRange {
                    role,
                    column: b.column,
                    col_count: table.col_count(),
                });
            }
        }
        Ok(Self {
            triples,
            table,
            bindings,
        })
    }

    pub fn role(&self) -> DatasetRole {
        self.bindings.role
    }
}
