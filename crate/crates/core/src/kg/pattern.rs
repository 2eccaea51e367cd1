//! Basic graph patterns with optional `EXISTS` filters.
//!
//! Text syntax, a SPARQL fragment: triple patterns separated by `.`, variables
//! written `?name`, prefixed names, `<iri>`, `a`, integer and string literals, and
//! `EXISTS { ... }` (or `FILTER EXISTS { ... }`) groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::dataset::lexer::{Lexer, Tok};
use crate::dataset::{resolve, Cursor, Prefixes, TurtleError};
use crate::term::Term;
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternTerm {
    Var(String),
    Term(Term),
}

impl PatternTerm {
    pub fn var(name: &str) -> Self {
        PatternTerm::Var(name.to_string())
    }

    pub fn iri(iri: &str) -> Self {
        PatternTerm::Term(Term::iri(iri))
    }

    fn substitute(&self, solution: &Solution) -> PatternTerm {
        match self {
            PatternTerm::Var(v) => solution
                .get(v)
                .map_or_else(|| self.clone(), |t| PatternTerm::Term(t.clone())),
            PatternTerm::Term(_) => self.clone(),
        }
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Var(v) => write!(f, "?{v}"),
            PatternTerm::Term(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(subject: PatternTerm, predicate: PatternTerm, object: PatternTerm) -> Self {
        Self {
            subject,
            predicate,
            object,
        }
    }

    pub(crate) fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }
}

/// A variable-to-term mapping produced by matching.
pub type Solution = BTreeMap<String, Term>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("a pattern needs at least one triple pattern")]
    Empty,
    #[error(transparent)]
    Syntax(#[from] TurtleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    triples: Vec<TriplePattern>,
    exists: Vec<Pattern>,
}

impl Pattern {
    pub fn new(triples: Vec<TriplePattern>, exists: Vec<Pattern>) -> Result<Self, PatternError> {
        if triples.is_empty() {
            return Err(PatternError::Empty);
        }
        Ok(Self { triples, exists })
    }

    pub fn triples(&self) -> &[TriplePattern] {
        &self.triples
    }

    pub fn exists(&self) -> &[Pattern] {
        &self.exists
    }

    /// Variables bound by the main triple patterns (not the `EXISTS` groups).
    pub fn variables(&self) -> BTreeSet<&str> {
        self.triples
            .iter()
            .flat_map(|t| t.positions())
            .filter_map(|p| match p {
                PatternTerm::Var(v) => Some(v.as_str()),
                PatternTerm::Term(_) => None,
            })
            .collect()
    }

    pub fn substitute(&self, solution: &Solution) -> Pattern {
        Pattern {
            triples: self
                .triples
                .iter()
                .map(|t| {
                    TriplePattern::new(
                        t.subject.substitute(solution),
                        t.predicate.substitute(solution),
                        t.object.substitute(solution),
                    )
                })
                .collect(),
            exists: self.exists.iter().map(|e| e.substitute(solution)).collect(),
        }
    }

    pub fn parse(text: &str, prefixes: &Prefixes) -> Result<Self, PatternError> {
        let toks = Lexer::tokenize(text, true).map_err(TurtleError::from)?;
        let mut cur = Cursor::new(toks, text);
        let pattern = parse_group(&mut cur, prefixes)?;
        if !cur.at_end() {
            let found = cur.peek().map(Tok::describe).unwrap_or_default();
            return cur
                .syntax(format!("unexpected {found}"))
                .map_err(PatternError::from);
        }
        Ok(pattern)
    }

    /// Parse with the standard ontology prefixes.
    pub fn standard(text: &str) -> Result<Self, PatternError> {
        Self::parse(text, &Prefixes::standard())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for t in &self.triples {
            if !first {
                f.write_str(" . ")?;
            }
            first = false;
            write!(f, "{} {} {}", t.subject, t.predicate, t.object)?;
        }
        for e in &self.exists {
            write!(f, " . EXISTS {{ {e} }}")?;
        }
        Ok(())
    }
}

fn parse_group(cur: &mut Cursor, prefixes: &Prefixes) -> Result<Pattern, PatternError> {
    let mut triples = Vec::new();
    let mut exists = Vec::new();
    loop {
        match cur.peek() {
            None | Some(Tok::RBrace) => break,
            Some(Tok::Keyword(k)) => {
                if k == "FILTER" {
                    cur.next();
                    if !matches!(cur.peek(), Some(Tok::Keyword(k)) if k == "EXISTS") {
                        return cur
                            .syntax("expected EXISTS after FILTER")
                            .map_err(PatternError::from);
                    }
                }
                cur.next();
                cur.expect(&Tok::LBrace, "'{'")?;
                exists.push(parse_group(cur, prefixes)?);
                cur.expect(&Tok::RBrace, "'}'")?;
            }
            Some(_) => {
                let subject = term(cur, prefixes, false)?;
                let predicate = term(cur, prefixes, true)?;
                let object = term(cur, prefixes, false)?;
                triples.push(TriplePattern::new(subject, predicate, object));
            }
        }
        if cur.peek() == Some(&Tok::Dot) {
            cur.next();
        } else if !matches!(cur.peek(), None | Some(Tok::RBrace) | Some(Tok::Keyword(_))) {
            let found = cur.peek().map(Tok::describe).unwrap_or_default();
            return cur
                .syntax(format!("expected '.' between patterns, found {found}"))
                .map_err(PatternError::from);
        }
    }
    Pattern::new(triples, exists)
}

fn term(
    cur: &mut Cursor,
    prefixes: &Prefixes,
    predicate: bool,
) -> Result<PatternTerm, PatternError> {
    let Some(sp) = cur.next() else {
        return cur
            .syntax("unexpected end of pattern")
            .map_err(PatternError::from);
    };
    Ok(match sp.tok {
        Tok::Var(v) => PatternTerm::Var(v),
        Tok::IriRef(s) => PatternTerm::Term(Term::Iri(s)),
        Tok::PName { prefix, local } => {
            PatternTerm::Term(resolve(prefixes, &prefix, &local, sp.line, sp.col)?)
        }
        Tok::A if predicate => PatternTerm::iri(vocab::RDF_TYPE),
        Tok::Integer(i) if !predicate => PatternTerm::Term(Term::Integer(i)),
        Tok::Str(s) if !predicate => PatternTerm::Term(Term::Str(s)),
        other => {
            return Err(TurtleError::Syntax {
                line: sp.line,
                col: sp.col,
                message: format!("unexpected {} in pattern", other.describe()),
            }
            .into())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_join_and_exists() {
        let p = Pattern::standard(
            "?s graph:hasId ?i . ?i ccsv:atColumn ?c . EXISTS { ?s a graph:Node }",
        )
        .unwrap();
        assert_eq!(p.triples().len(), 2);
        assert_eq!(p.exists().len(), 1);
        assert_eq!(p.variables(), BTreeSet::from(["c", "i", "s"]));
        assert_eq!(p.triples()[1].predicate, PatternTerm::iri(vocab::AT_COLUMN));
    }

    #[test]
    fn filter_exists_and_trailing_dot() {
        let p = Pattern::standard("?t a ?c . FILTER EXISTS { ?t a qoe-m:Bus_Stop . } .").unwrap();
        assert_eq!(
            p.exists()[0].triples()[0].object,
            PatternTerm::iri(vocab::BUS_STOP)
        );
    }

    #[test]
    fn rejects_empty_and_malformed() {
        assert_eq!(Pattern::standard("").unwrap_err(), PatternError::Empty);
        assert!(Pattern::standard("?a ?b").is_err());
        assert!(Pattern::standard("?a ?b ?c ?d").is_err());
        assert!(Pattern::standard("?a nope:p ?c").is_err());
        assert!(Pattern::standard("?a 3 ?c").is_err());
    }

    #[test]
    fn display_round_trips() {
        let p = Pattern::standard("?x a qoe-m:Bus_Stop . EXISTS { ?x geo:lat ?l }").unwrap();
        let again = Pattern::parse(&p.to_string(), &Prefixes::default()).unwrap();
        assert_eq!(p, again);
    }
}
