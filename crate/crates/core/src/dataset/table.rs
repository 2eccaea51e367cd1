use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsvError {
    #[error("CSV body is empty; a header record is required")]
    Empty,
    #[error("row {row} (line {line}) has {found} cells, expected {expected}")]
    RaggedRow {
        row: usize,
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("unterminated quoted field starting at line {line}")]
    UnterminatedQuote { line: usize },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

impl CsvError {
    /// Re-anchor line numbers when the CSV text starts part way into a file.
    pub fn shift_lines(self, offset: usize) -> Self {
        match self {
            CsvError::RaggedRow {
                row,
                line,
                expected,
                found,
            } => CsvError::RaggedRow {
                row,
                line: line + offset,
                expected,
                found,
            },
            CsvError::UnterminatedQuote { line } => CsvError::UnterminatedQuote {
                line: line + offset,
            },
            CsvError::Malformed { line, message } => CsvError::Malformed {
                line: line + offset,
                message,
            },
            CsvError::Empty => CsvError::Empty,
        }
    }
}

/// A header plus width-checked string rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl DataTable {
    pub fn new(header: Vec<String>, rows: Vec<Vec<String>>) -> Result<Self, CsvError> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != header.len() {
                return Err(CsvError::RaggedRow {
                    row: i + 1,
                    line: 0,
                    expected: header.len(),
                    found: row.len(),
                });
            }
        }
        Ok(Self { header, rows })
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.header.len()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn cell(&self, row: usize, col: usize) -> &str {
        &self.rows[row][col]
    }

    /// Append a column; `values` must hold one cell per row.
    pub fn push_column(&mut self, name: impl Into<String>, values: Vec<String>) {
        assert_eq!(
            values.len(),
            self.rows.len(),
            "column length must match row count"
        );
        self.header.push(name.into());
        for (row, v) in self.rows.iter_mut().zip(values) {
            row.push(v);
        }
    }

    /// Standard RFC 4180 output, quoting only where needed.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .quote_style(csv::QuoteStyle::Necessary)
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush"))
            .expect("utf-8 input yields utf-8 output")
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    StartField,
    Unquoted,
    Quoted,
    AfterQuote,
}

/// Parse comma-separated text where whitespace around fields is insignificant
/// outside quotes: `1, "Praça Luiza Távora"` yields `1` and `Praça Luiza Távora`.
/// Quoted fields may contain commas, newlines and doubled quotes. Blank lines are skipped.
pub fn parse_csv(text: &str) -> Result<DataTable, CsvError> {
    let mut records: Vec<(Vec<String>, usize)> = Vec::new();
    let mut fields: Vec<String> = Vec::new();
    let mut field = String::new();
    let mut state = State::StartField;
    let mut line = 1;
    let mut record_line = 1;
    let mut quote_line = 1;
    let mut chars = text.chars().peekable();

    let finish_record =
        |fields: &mut Vec<String>, records: &mut Vec<(Vec<String>, usize)>, record_line: usize| {
            records.push((std::mem::take(fields), record_line));
        };

    while let Some(c) = chars.next() {
        match state {
            State::StartField => match c {
                ' ' | '\t' | '\r' => {}
                '"' => {
                    state = State::Quoted;
                    quote_line = line;
                }
                ',' => fields.push(String::new()),
                '\n' => {
                    if !fields.is_empty() {
                        fields.push(String::new());
                        finish_record(&mut fields, &mut records, record_line);
                    }
                    line += 1;
                    record_line = line;
                }
                c => {
                    field.push(c);
                    state = State::Unquoted;
                }
            },
            State::Unquoted => match c {
                ',' => {
                    fields.push(field.trim_end().to_string());
                    field.clear();
                    state = State::StartField;
                }
                '\n' => {
                    fields.push(field.trim_end().to_string());
                    field.clear();
                    finish_record(&mut fields, &mut records, record_line);
                    line += 1;
                    record_line = line;
                    state = State::StartField;
                }
                c => field.push(c),
            },
            State::Quoted => match c {
                '"' if chars.peek() == Some(&'"') => {
                    chars.next();
                    field.push('"');
                }
                '"' => state = State::AfterQuote,
                '\n' => {
                    field.push('\n');
                    line += 1;
                }
                c => field.push(c),
            },
            State::AfterQuote => match c {
                ' ' | '\t' | '\r' => {}
                ',' => {
                    fields.push(std::mem::take(&mut field));
                    state = State::StartField;
                }
                '\n' => {
                    fields.push(std::mem::take(&mut field));
                    finish_record(&mut fields, &mut records, record_line);
                    line += 1;
                    record_line = line;
                    state = State::StartField;
                }
                other => {
                    return Err(CsvError::Malformed {
                        line,
                        message: format!("unexpected '{other}' after closing quote"),
                    })
                }
            },
        }
    }
    match state {
        State::Quoted => return Err(CsvError::UnterminatedQuote { line: quote_line }),
        State::Unquoted => {
            fields.push(field.trim_end().to_string());
            finish_record(&mut fields, &mut records, record_line);
        }
        State::AfterQuote => {
            fields.push(field);
            finish_record(&mut fields, &mut records, record_line);
        }
        State::StartField => {
            if !fields.is_empty() {
                fields.push(String::new());
                finish_record(&mut fields, &mut records, record_line);
            }
        }
    }

    let mut records = records.into_iter();
    let (header, _) = records.next().ok_or(CsvError::Empty)?;
    let mut rows = Vec::new();
    for (i, (row, row_line)) in records.enumerate() {
        if row.len() != header.len() {
            return Err(CsvError::RaggedRow {
                row: i + 1,
                line: row_line,
                expected: header.len(),
                found: row.len(),
            });
        }
        rows.push(row);
    }
    Ok(DataTable { header, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "\"STATION NUMBER\", \"LONG\", \"LAT\", \"STATION NAME\"\n";

    #[test]
    fn station_row_with_spaces_before_quotes() {
        let t = parse_csv(&format!(
            "{HEADER}1, -38510134, -3732294, \"Praça Luiza Távora\"\n"
        ))
        .unwrap();
        assert_eq!(
            t.header(),
            ["STATION NUMBER", "LONG", "LAT", "STATION NAME"]
        );
        assert_eq!(
            t.rows()[0],
            ["1", "-38510134", "-3732294", "Praça Luiza Távora"]
        );
        assert_eq!(t.col_count(), 4);
    }

    #[test]
    fn header_only() {
        let t = parse_csv(HEADER).unwrap();
        assert_eq!(t.row_count(), 0);
        assert_eq!(t.col_count(), 4);
    }

    #[test]
    fn ragged_row_reports_row_and_line() {
        let err = parse_csv(&format!("{HEADER}1, 2, 3, \"a\"\n\n1, 2, 3\n")).unwrap_err();
        assert_eq!(
            err,
            CsvError::RaggedRow {
                row: 2,
                line: 4,
                expected: 4,
                found: 3
            }
        );
    }

    #[test]
    fn embedded_commas_quotes_and_newlines() {
        let t = parse_csv("a,b\n\"x, y\",\"say \"\"hi\"\"\nthere\"\n").unwrap();
        assert_eq!(t.rows()[0], ["x, y", "say \"hi\"\nthere"]);
    }

    #[test]
    fn unterminated_quote() {
        assert_eq!(
            parse_csv("a,b\n1,\"open\n").unwrap_err(),
            CsvError::UnterminatedQuote { line: 2 }
        );
    }

    #[test]
    fn empty_trailing_field_and_crlf() {
        let t = parse_csv("a,b,c\r\n1,,\r\n").unwrap();
        assert_eq!(t.rows()[0], ["1", "", ""]);
    }

    #[test]
    fn writer_quotes_only_when_needed() {
        let t = parse_csv("id,name\n1,\"a, b\"\n").unwrap();
        assert_eq!(t.to_csv(), "id,name\n1,\"a, b\"\n");
        assert_eq!(parse_csv(&t.to_csv()).unwrap(), t);
    }

    #[test]
    fn empty_input() {
        assert_eq!(parse_csv("").unwrap_err(), CsvError::Empty);
        assert_eq!(parse_csv("\n  \n").unwrap_err(), CsvError::Empty);
    }
}
