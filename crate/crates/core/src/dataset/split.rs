use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("no CSV table found after the annotation prelude")]
    NoTableFound,
    #[error("file starts with a CSV header; the annotation prelude is mandatory")]
    NoPrelude,
}

/// Split an annotated file into its Turtle prelude and CSV body.
///
/// The body starts at the first line whose first non-blank character is `"`, or
/// at the line after the first blank line that follows prelude content. The two
/// returned slices concatenate to the input.
pub fn split_prelude(text: &str) -> Result<(&str, &str), SplitError> {
    let mut seen_content = false;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let trimmed = line.trim_start();
        if trimmed.starts_with('"') {
            if !seen_content {
                return Err(SplitError::NoPrelude);
            }
            return Ok(text.split_at(start));
        }
        if trimmed.is_empty() {
            if seen_content && !text[offset..].trim().is_empty() {
                return Ok(text.split_at(offset));
            }
            continue;
        }
        if !trimmed.starts_with('#') {
            seen_content = true;
        }
    }
    Err(SplitError::NoTableFound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoted_header_starts_table() {
        let text = "<id> <p> 0 .\n\"A\", \"B\"\n1, 2\n";
        let (prelude, csv) = split_prelude(text).unwrap();
        assert_eq!(prelude, "<id> <p> 0 .\n");
        assert_eq!(csv, "\"A\", \"B\"\n1, 2\n");
    }

    #[test]
    fn blank_line_separates_unquoted_header() {
        let text = "<id> <p> 0 .\n\nA,B\n1,2";
        let (prelude, csv) = split_prelude(text).unwrap();
        assert_eq!(prelude, "<id> <p> 0 .\n\n");
        assert_eq!(csv, "A,B\n1,2");
    }

    #[test]
    fn leading_blank_lines_stay_in_prelude() {
        let text = "\n\n<id> <p> 0 .\n\"A\"\n";
        let (prelude, _) = split_prelude(text).unwrap();
        assert_eq!(prelude, "\n\n<id> <p> 0 .\n");
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(split_prelude(""), Err(SplitError::NoTableFound));
        assert_eq!(
            split_prelude("<a> <b> <c> .\n"),
            Err(SplitError::NoTableFound)
        );
        assert_eq!(
            split_prelude("<a> <b> <c> .\n\n\n"),
            Err(SplitError::NoTableFound)
        );
        assert_eq!(
            split_prelude("\"A\",\"B\"\n1,2\n"),
            Err(SplitError::NoPrelude)
        );
        assert_eq!(split_prelude("# note\n\"A\"\n"), Err(SplitError::NoPrelude));
    }

    #[test]
    fn crlf_line_endings() {
        let text = "<id> <p> 0 .\r\n\"A\"\r\n1\r\n";
        let (prelude, csv) = split_prelude(text).unwrap();
        assert_eq!(prelude, "<id> <p> 0 .\r\n");
        assert_eq!(csv, "\"A\"\r\n1\r\n");
    }
}
