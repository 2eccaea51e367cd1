use std::collections::{HashMap, HashSet};

use crate::term::{Term, Triple};

/// Set-semantics triple store with subject, predicate and object indexes.
///
/// Insertion is single-writer; once built the store is only read, and shared
/// references can be queried from any number of threads.
#[derive(Debug, Clone, Default)]
pub struct KnowledgeGraph {
    triples: Vec<Triple>,
    present: HashSet<Triple>,
    by_subject: HashMap<Term, Vec<usize>>,
    by_predicate: HashMap<Term, Vec<usize>>,
    by_object: HashMap<Term, Vec<usize>>,
}

impl KnowledgeGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_triples<'a>(triples: impl IntoIterator<Item = &'a Triple>) -> Self {
        let mut kg = Self::new();
        kg.extend(triples.into_iter().cloned());
        kg
    }

    /// Returns false when the triple was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if self.present.contains(&triple) {
            return false;
        }
        let idx = self.triples.len();
        self.by_subject
            .entry(triple.subject.clone())
            .or_default()
            .push(idx);
        self.by_predicate
            .entry(triple.predicate.clone())
            .or_default()
            .push(idx);
        self.by_object
            .entry(triple.object.clone())
            .or_default()
            .push(idx);
        self.present.insert(triple.clone());
        self.triples.push(triple);
        true
    }

    pub fn extend(&mut self, triples: impl IntoIterator<Item = Triple>) {
        for t in triples {
            self.insert(t);
        }
    }

    pub fn merge(&mut self, other: &KnowledgeGraph) {
        self.extend(other.triples.iter().cloned());
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.present.contains(triple)
    }

    pub fn triples(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// Triples matching the bound positions, scanning the smallest applicable index.
    pub fn matching<'a>(
        &'a self,
        subject: Option<&Term>,
        predicate: Option<&Term>,
        object: Option<&Term>,
    ) -> Box<dyn Iterator<Item = &'a Triple> + 'a> {
        let empty: &[usize] = &[];
        let mut candidates: Option<&[usize]> = None;
        for (term, index) in [
            (subject, &self.by_subject),
            (predicate, &self.by_predicate),
            (object, &self.by_object),
        ] {
            if let Some(term) = term {
                let list = index.get(term).map_or(empty, Vec::as_slice);
                if candidates.map_or(true, |c| list.len() < c.len()) {
                    candidates = Some(list);
                }
            }
        }
        let (s, p, o) = (subject.cloned(), predicate.cloned(), object.cloned());
        let keep = move |t: &&Triple| {
            s.as_ref().map_or(true, |s| &t.subject == s)
                && p.as_ref().map_or(true, |p| &t.predicate == p)
                && o.as_ref().map_or(true, |o| &t.object == o)
        };
        match candidates {
            Some(list) => Box::new(list.iter().map(move |&i| &self.triples[i]).filter(keep)),
            None => Box::new(self.triples.iter()),
        }
    }
}
