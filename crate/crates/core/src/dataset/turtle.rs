//! Parser and writer for the Turtle subset used in annotation preludes:
//! `@prefix` directives, subject blocks with `;` predicate lists and `,` object
//! lists, the `a` shorthand, IRI references, prefixed names, integer and string
//! literals, and `#` comments. Anything else is a syntax error.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::lexer::{LexError, Lexer, Spanned, Tok};
use crate::term::{Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TurtleError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("undeclared prefix '{prefix}:' at line {line}, column {col}")]
    UndeclaredPrefix {
        prefix: String,
        line: usize,
        col: usize,
    },
}

impl From<LexError> for TurtleError {
    fn from(e: LexError) -> Self {
        TurtleError::Syntax {
            line: e.line,
            col: e.col,
            message: e.message,
        }
    }
}

pub type TripleSet = BTreeSet<Triple>;

/// Prefix table; expansion is opaque concatenation of namespace and local part.
#[derive(Debug, Clone, Default)]
pub struct Prefixes(HashMap<String, String>);

impl Prefixes {
    pub fn standard() -> Self {
        Self(
            vocab::STANDARD_PREFIXES
                .iter()
                .map(|(p, ns)| (p.to_string(), ns.to_string()))
                .collect(),
        )
    }

    pub fn insert(&mut self, prefix: impl Into<String>, namespace: impl Into<String>) {
        self.0.insert(prefix.into(), namespace.into());
    }

    pub fn expand(&self, prefix: &str, local: &str) -> Option<String> {
        self.0.get(prefix).map(|ns| format!("{ns}{local}"))
    }
}

/// Cursor over a token stream, shared with the query-pattern parser.
pub(crate) struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Cursor {
    pub(crate) fn new(toks: Vec<Spanned>, text: &str) -> Self {
        let lines = text.split('\n').count().max(1);
        let last_col = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Self {
            toks,
            pos: 0,
            end: (lines, last_col),
        }
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    pub(crate) fn position(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |s| (s.line, s.col))
    }

    pub(crate) fn syntax<T>(&self, message: impl Into<String>) -> Result<T, TurtleError> {
        let (line, col) = self.position();
        Err(TurtleError::Syntax {
            line,
            col,
            message: message.into(),
        })
    }

    pub(crate) fn expect(&mut self, want: &Tok, what: &str) -> Result<(), TurtleError> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => {
                let found = t.describe();
                self.syntax(format!("expected {what}, found {found}"))
            }
            None => self.syntax(format!("expected {what}, found end of input")),
        }
    }

    /// Consume an IRI-valued term (IRI reference or prefixed name).
    pub(crate) fn iri(&mut self, prefixes: &Prefixes, what: &str) -> Result<Term, TurtleError> {
        let Some(sp) = self.next() else {
            self.pos -= 1;
            return self.syntax(format!("expected {what}, found end of input"));
        };
        match sp.tok {
            Tok::IriRef(s) => Ok(Term::Iri(s)),
            Tok::PName { prefix, local } => resolve(prefixes, &prefix, &local, sp.line, sp.col),
            other => {
                self.pos -= 1;
                self.syntax(format!("expected {what}, found {}", other.describe()))
            }
        }
    }
}

pub(crate) fn resolve(
    prefixes: &Prefixes,
    prefix: &str,
    local: &str,
    line: usize,
    col: usize,
) -> Result<Term, TurtleError> {
    prefixes
        .expand(prefix, local)
        .map(Term::Iri)
        .ok_or_else(|| TurtleError::UndeclaredPrefix {
            prefix: prefix.to_string(),
            line,
            col,
        })
}

/// Parse a prelude into its set of triples, expanding prefixes and `a`.
pub fn parse_turtle_subset(text: &str) -> Result<TripleSet, TurtleError> {
    let toks = Lexer::tokenize(text, false)?;
    let mut cur = Cursor::new(toks, text);
    let mut prefixes = Prefixes::default();
    let mut triples = TripleSet::new();

    while !cur.at_end() {
        if cur.peek() == Some(&Tok::PrefixDirective) {
            cur.next();
            let name = match cur.next() {
                Some(Spanned {
                    tok: Tok::PName { prefix, local },
                    ..
                }) if local.is_empty() => prefix,
                _ => {
                    cur.pos -= 1;
                    return cur.syntax("expected a prefix name such as 'ex:'");
                }
            };
            let ns = match cur.next() {
                Some(Spanned {
                    tok: Tok::IriRef(ns),
                    ..
                }) => ns,
                _ => {
                    cur.pos -= 1;
                    return cur.syntax("expected a namespace IRI in angle brackets");
                }
            };
            cur.expect(&Tok::Dot, "'.' after @prefix directive")?;
            prefixes.insert(name, ns);
            continue;
        }

        let subject = cur.iri(&prefixes, "a subject")?;
        loop {
            let predicate = if cur.peek() == Some(&Tok::A) {
                cur.next();
                Term::iri(vocab::RDF_TYPE)
            } else {
                cur.iri(&prefixes, "a predicate")?
            };
            loop {
                let object = object(&mut cur, &prefixes)?;
                triples.insert(Triple::new(subject.clone(), predicate.clone(), object));
                if cur.peek() == Some(&Tok::Comma) {
                    cur.next();
                } else {
                    break;
                }
            }
            match cur.peek() {
                Some(Tok::Semicolon) => {
                    cur.next();
                    // Turtle permits a dangling ';' before the terminator.
                    while cur.peek() == Some(&Tok::Semicolon) {
                        cur.next();
                    }
                    if cur.peek() == Some(&Tok::Dot) {
                        cur.next();
                        break;
                    }
                }
                Some(Tok::Dot) => {
                    cur.next();
                    break;
                }
                Some(t) => {
                    let found = t.describe();
                    return cur.syntax(format!("expected ';', ',' or '.', found {found}"));
                }
                None => {
                    return cur
                        .syntax("expected '.' to terminate the statement, found end of input")
                }
            }
        }
    }
    Ok(triples)
}

fn object(cur: &mut Cursor, prefixes: &Prefixes) -> Result<Term, TurtleError> {
    match cur.peek() {
        Some(Tok::Integer(i)) => {
            let i = *i;
            cur.next();
            Ok(Term::Integer(i))
        }
        Some(Tok::Str(s)) => {
            let s = s.clone();
            cur.next();
            Ok(Term::Str(s))
        }
        _ => cur.iri(prefixes, "an object"),
    }
}

/// Serialize triples back into the subset grammar, one statement per line.
pub fn write_turtle<'a>(triples: impl IntoIterator<Item = &'a Triple>) -> String {
    let mut out = String::new();
    for t in triples {
        out.push_str(&t.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CCSV: &str = "@prefix ccsv: <http://download.wikicrimes.org/ont/ccsv> .\n";

    #[test]
    fn at_column_statement() {
        let triples = parse_turtle_subset(&format!("{CCSV}<id> ccsv:atColumn 0 .")).unwrap();
        let expected = Triple::new(
            Term::iri("id"),
            Term::iri(vocab::AT_COLUMN),
            Term::Integer(0),
        );
        assert_eq!(triples.into_iter().collect::<Vec<_>>(), vec![expected]);
    }

    #[test]
    fn a_shorthand_yields_rdf_type() {
        let text = "@prefix graph: <http://download.wikicrimes.org/ont/graph> .\n\
                    @prefix qoe-m: <http://download.wikicrimes.org/ont/qoe-m> .\n\
                    <node> a graph:Node ; a qoe-m:Bicycle-Share_Station .";
        let triples = parse_turtle_subset(text).unwrap();
        assert_eq!(triples.len(), 2);
        assert!(triples
            .iter()
            .all(|t| t.predicate == Term::iri(vocab::RDF_TYPE)));
        assert!(triples.contains(&Triple::new(
            Term::iri("node"),
            Term::iri(vocab::RDF_TYPE),
            Term::iri(vocab::BICYCLE_SHARE_STATION)
        )));
    }

    #[test]
    fn empty_text_is_empty_set() {
        assert!(parse_turtle_subset("").unwrap().is_empty());
        assert!(parse_turtle_subset("  # only a comment\n")
            .unwrap()
            .is_empty());
    }

    #[test]
    fn object_lists_and_string_literals() {
        let text = "<s> <p> \"x \\\"y\\\"\", 3, <o> .";
        let triples = parse_turtle_subset(text).unwrap();
        assert_eq!(triples.len(), 3);
        assert!(triples
            .iter()
            .any(|t| t.object == Term::Str("x \"y\"".into())));
    }

    #[test]
    fn undeclared_prefix_reports_position() {
        let err = parse_turtle_subset("<s>\n  ex:p <o> .").unwrap_err();
        assert_eq!(
            err,
            TurtleError::UndeclaredPrefix {
                prefix: "ex".into(),
                line: 2,
                col: 3
            }
        );
    }

    #[test]
    fn missing_terminator_is_syntax_error() {
        let err = parse_turtle_subset("<s> <p> <o>").unwrap_err();
        assert!(matches!(err, TurtleError::Syntax { line: 1, .. }), "{err}");
    }

    #[test]
    fn literal_subject_rejected() {
        assert!(parse_turtle_subset("\"s\" <p> <o> .").is_err());
        assert!(parse_turtle_subset("<s> 3 <o> .").is_err());
    }

    #[test]
    fn unsupported_constructs_rejected() {
        assert!(parse_turtle_subset("@base <http://x/> .").is_err());
        assert!(parse_turtle_subset("<s> <p> [ <q> <r> ] .").is_err());
        assert!(parse_turtle_subset("<s> <p> 1.5 .").is_err());
    }

    #[test]
    fn trailing_semicolon_allowed() {
        assert_eq!(parse_turtle_subset("<s> <p> <o> ; .").unwrap().len(), 1);
    }
}
