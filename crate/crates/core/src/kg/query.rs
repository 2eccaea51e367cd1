use super::pattern::{Pattern, PatternTerm, Solution, TriplePattern};
use super::store::KnowledgeGraph;
use crate::term::{Term, Triple};

/// All solutions of `pattern` against `kg`, sorted by their bound terms.
pub fn match_pattern(kg: &KnowledgeGraph, pattern: &Pattern) -> Vec<Solution> {
    let mut out = Vec::new();
    let mut remaining: Vec<&TriplePattern> = pattern.triples().iter().collect();
    search(
        kg,
        &mut remaining,
        pattern.exists(),
        &mut Solution::new(),
        &mut |s| {
            out.push(s.clone());
            true
        },
    );
    out.sort();
    out
}

/// True iff `match_pattern` would return at least one solution.
pub fn ask(kg: &KnowledgeGraph, pattern: &Pattern) -> bool {
    let mut found = false;
    let mut remaining: Vec<&TriplePattern> = pattern.triples().iter().collect();
    search(
        kg,
        &mut remaining,
        pattern.exists(),
        &mut Solution::new(),
        &mut |_| {
            found = true;
            false
        },
    );
    found
}

fn bound<'a>(term: &'a PatternTerm, solution: &'a Solution) -> Option<&'a Term> {
    match term {
        PatternTerm::Term(t) => Some(t),
        PatternTerm::Var(v) => solution.get(v),
    }
}

fn bound_count(t: &TriplePattern, solution: &Solution) -> usize {
    t.positions()
        .iter()
        .filter(|p| bound(p, solution).is_some())
        .count()
}

/// Depth-first join. `emit` returns false to stop the search.
fn search(
    kg: &KnowledgeGraph,
    remaining: &mut Vec<&TriplePattern>,
    exists: &[Pattern],
    solution: &mut Solution,
    emit: &mut dyn FnMut(&Solution) -> bool,
) -> bool {
    if remaining.is_empty() {
        let passes = exists.iter().all(|e| ask(kg, &e.substitute(solution)));
        return if passes { emit(solution) } else { true };
    }
    // Most-constrained pattern first; ties keep textual order.
    let (pick, _) = remaining
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| {
            bound_count(a, solution)
                .cmp(&bound_count(b, solution))
                .then(ib.cmp(ia))
        })
        .expect("non-empty");
    let current = remaining.remove(pick);

    let candidates: Vec<&Triple> = kg
        .matching(
            bound(&current.subject, solution),
            bound(&current.predicate, solution),
            bound(&current.object, solution),
        )
        .collect();

    let mut keep_going = true;
    for triple in candidates {
        let mut introduced: Vec<&str> = Vec::new();
        let mut consistent = true;
        for (pt, value) in current.positions().into_iter().zip([
            &triple.subject,
            &triple.predicate,
            &triple.object,
        ]) {
            if let PatternTerm::Var(v) = pt {
                match solution.get(v) {
                    Some(existing) if existing != value => {
                        consistent = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        solution.insert(v.clone(), value.clone());
                        introduced.push(v);
                    }
                }
            }
        }
        if consistent {
            keep_going = search(kg, remaining, exists, solution, emit);
        }
        for v in introduced {
            solution.remove(v);
        }
        if !keep_going {
            break;
        }
    }
    remaining.insert(pick, current);
    keep_going
}
