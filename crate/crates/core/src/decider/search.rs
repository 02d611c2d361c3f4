//! Breadth-first search from the start words with canonical-key memoization.

use std::collections::HashMap;

use serde::Serialize;

use super::{all_equal_witness, classify, delete_position, DeciderError, SchemeCase, SchemeClass, SimpleScheme};
use crate::engine::{replay, successors_within, Scheme, ScriptStep, Trace};
use crate::measure::max_e;
use crate::word::RelationalWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// longest intermediate word kept
    pub max_len: usize,
    /// number of steps from the start words
    pub max_depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_len: 12, max_depth: 10 }
    }
}

#[derive(Debug, Clone)]
pub struct Node {
    pub word: RelationalWord,
    pub parent: Option<usize>,
    pub step: Option<ScriptStep>,
    pub depth: usize,
}

#[derive(Debug, Clone)]
pub struct Exploration {
    pub nodes: Vec<Node>,
    /// some successor was dropped for exceeding the length budget
    pub truncated: bool,
    /// the depth budget ran out with new words still appearing
    pub depth_exhausted: bool,
    /// index of the node that satisfied the stop predicate
    pub found: Option<usize>,
}

impl Exploration {
    /// Every word reachable from the start words was visited.
    pub fn is_complete(&self) -> bool {
        !self.truncated && !self.depth_exhausted
    }

    pub fn max_depth_reached(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// The derivation from a start word to node `idx`.
    pub fn path(&self, idx: usize, scheme: &Scheme) -> Trace {
        let mut steps = Vec::new();
        let mut at = idx;
        while let Some(p) = self.nodes[at].parent {
            steps.push(self.nodes[at].step.clone().expect("non-root nodes record their step"));
            at = p;
        }
        steps.reverse();
        replay(&steps, &self.nodes[at].word, scheme).expect("recorded steps replay")
    }
}

/// Visit words reachable from `starts` level by level, stopping early once
/// `stop` accepts a word. Successors are taken in canonical-key order, so
/// the result is deterministic.
pub fn explore(
    scheme: &Scheme,
    starts: &[RelationalWord],
    budget: Budget,
    mut stop: impl FnMut(&RelationalWord) -> bool,
) -> Exploration {
    let mut ex = Exploration {
        nodes: Vec::new(),
        truncated: false,
        depth_exhausted: false,
        found: None,
    };
    let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut frontier = Vec::new();
    for w in starts {
        if w.len() > budget.max_len {
            ex.truncated = true;
            continue;
        }
        if seen.insert(w.canonical_key(), ex.nodes.len()).is_none() {
            frontier.push(ex.nodes.len());
            ex.nodes.push(Node {
                word: w.clone(),
                parent: None,
                step: None,
                depth: 0,
            });
            if stop(w) {
                ex.found = Some(ex.nodes.len() - 1);
                return ex;
            }
        }
    }
    let mut depth = 0;
    while !frontier.is_empty() {
        if depth == budget.max_depth {
            ex.depth_exhausted = frontier.iter().any(|&i| {
                successors_within(&ex.nodes[i].word, scheme, budget.max_len)
                    .0
                    .iter()
                    .any(|(k, _)| !seen.contains_key(k))
            });
            break;
        }
        depth += 1;
        let mut next = Vec::new();
        for &i in &frontier {
            let (succ, skipped) = successors_within(&ex.nodes[i].word, scheme, budget.max_len);
            ex.truncated |= skipped;
            for (key, step) in succ {
                if seen.contains_key(&key) {
                    continue;
                }
                let idx = ex.nodes.len();
                seen.insert(key, idx);
                let hit = stop(&step.result);
                ex.nodes.push(Node {
                    word: step.result.clone(),
                    parent: Some(i),
                    step: Some(step.script()),
                    depth,
                });
                if hit {
                    ex.found = Some(idx);
                    return ex;
                }
                next.push(idx);
            }
        }
        frontier = next;
    }
    ex
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Member {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub member: Member,
    /// for `Yes`, a derivation from ε to the query word
    pub witness: Option<Trace>,
    pub reason: String,
    pub class: SchemeClass,
    pub budget: Budget,
    pub states: usize,
    pub depth_reached: usize,
}

impl Verdict {
    fn decided(member: Member, witness: Option<Trace>, reason: &str, class: SchemeClass, budget: Budget) -> Verdict {
        Verdict {
            member,
            witness,
            reason: reason.to_string(),
            class,
            budget,
            states: 0,
            depth_reached: 0,
        }
    }
}

/// Size-based exclusions that need no search.
fn excluded_by_bounds(class: &SchemeClass, v: &RelationalWord) -> Option<&'static str> {
    if class.bound_k.is_some_and(|k| v.len() > k) {
        return Some("longer than the maxFD bound of the scheme");
    }
    if class.max_e_bound.is_some_and(|e| max_e(v) > e) {
        return Some("more equal symbols than the maxE bound of the scheme");
    }
    None
}

/// Shrink `trace` (ending in a word containing `v` at `embedding`) to end
/// in `v` by deleting the other positions, rightmost first.
fn finish_witness(s: &SimpleScheme, mut trace: Trace, embedding: &[usize]) -> Trace {
    let n = trace.final_word().len();
    for p in (1..=n).rev().filter(|p| !embedding.contains(p)) {
        let part = delete_position(s, trace.final_word(), p).expect("single positions can always be deleted");
        trace.extend(part);
    }
    trace
}

/// Is the fully defined word `v` derivable from ε?
pub fn decide_membership(s: &SimpleScheme, v: &RelationalWord, budget: Budget) -> Result<Verdict, DeciderError> {
    if !v.is_fully_defined() {
        return Err(DeciderError::NotFullyDefined);
    }
    let class = classify(s);
    if class.case == SchemeCase::AllEqual {
        return Ok(if max_e(v) == v.len() {
            let w = all_equal_witness(s, v.len());
            Verdict::decided(Member::Yes, w, "all-equal word under an all-equal scheme", class, budget)
        } else {
            Verdict::decided(Member::No, None, "an all-equal scheme derives only all-equal fully defined words", class, budget)
        });
    }
    if v.is_empty() {
        return Ok(Verdict::decided(Member::Yes, Some(Trace::new(v.clone())), "the start word", class, budget));
    }
    if let Some(why) = excluded_by_bounds(&class, v) {
        return Ok(Verdict::decided(Member::No, None, why, class, budget));
    }
    let scheme = s.scheme();
    let ex = explore(&scheme, &[RelationalWord::empty()], budget, |w| v.is_scattered_subword_of(w));
    let mut verdict = match ex.found {
        Some(idx) => {
            let embedding = v.find_scattered_embedding(&ex.nodes[idx].word).expect("stop predicate matched");
            let trace = finish_witness(s, ex.path(idx, &scheme), &embedding);
            debug_assert!(trace.final_word().equals(v));
            Verdict::decided(Member::Yes, Some(trace), "contained in a reachable word", class, budget)
        }
        None if ex.is_complete() => {
            Verdict::decided(Member::No, None, "no reachable word contains it; search exhausted", class, budget)
        }
        None => Verdict::decided(Member::Unknown, None, "not found within the budget", class, budget),
    };
    verdict.states = ex.nodes.len();
    verdict.depth_reached = ex.max_depth_reached();
    Ok(verdict)
}

#[derive(Debug, Clone)]
pub struct FdlReport {
    pub class: SchemeClass,
    /// The derivable fully defined words are exactly the all-equal ones;
    /// the lists below are then empty.
    pub all_equal: bool,
    pub members: Vec<RelationalWord>,
    pub excluded: Vec<RelationalWord>,
    pub unknown: Vec<RelationalWord>,
    pub states: usize,
    pub complete: bool,
}

/// The fully defined words derivable from ε, among all candidates up to the
/// scheme's maxFD bound.
pub fn compute_fdl(s: &SimpleScheme, budget: Budget) -> FdlReport {
    let class = classify(s);
    let mut report = FdlReport {
        class,
        all_equal: class.case == SchemeCase::AllEqual,
        members: Vec::new(),
        excluded: Vec::new(),
        unknown: Vec::new(),
        states: 0,
        complete: true,
    };
    let Some(bound) = class.bound_k else {
        return report;
    };
    let mut candidates: Vec<RelationalWord> = Vec::new();
    for n in 0..=bound {
        for w in super::fully_defined_words(n) {
            if excluded_by_bounds(&class, &w).is_some() {
                report.excluded.push(w);
            } else {
                candidates.push(w);
            }
        }
    }
    let ex = explore(&s.scheme(), &[RelationalWord::empty()], budget, |_| false);
    report.states = ex.nodes.len();
    for c in candidates {
        if ex.nodes.iter().any(|n| c.is_scattered_subword_of(&n.word)) {
            report.members.push(c);
        } else if ex.is_complete() {
            report.excluded.push(c);
        } else {
            report.unknown.push(c);
        }
    }
    report.complete = report.unknown.is_empty();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decider::all_simple_schemes;

    fn small() -> Budget {
        Budget { max_len: 8, max_depth: 5 }
    }

    #[test]
    fn all_equal_schemes() {
        let s = SimpleScheme::new("aaa", "aa").unwrap();
        let v = decide_membership(&s, &RelationalWord::from_string("aaaa"), small()).unwrap();
        assert_eq!(v.member, Member::Yes);
        let w = v.witness.unwrap();
        w.verify(&s.scheme()).unwrap();
        assert_eq!(w.final_word(), &RelationalWord::from_string("aaaa"));
        let v = decide_membership(&s, &RelationalWord::from_string("ab"), small()).unwrap();
        assert_eq!(v.member, Member::No);
        assert_eq!(v.states, 0);
    }

    #[test]
    fn bounds_decide_long_words() {
        let s = SimpleScheme::new("aaa", "ab").unwrap();
        let v = decide_membership(&s, &RelationalWord::from_string("abcab"), small()).unwrap();
        assert_eq!(v.member, Member::No);
        assert_eq!(v.states, 0);
        assert!(matches!(
            decide_membership(&s, &RelationalWord::isolated(2), small()),
            Err(DeciderError::NotFullyDefined)
        ));
    }

    #[test]
    fn witnesses_replay_to_the_query() {
        let s = SimpleScheme::new("aba", "ab").unwrap();
        for q in ["", "a", "ab", "aba", "abb"] {
            let v = RelationalWord::from_string(q);
            let verdict = decide_membership(&s, &v, small()).unwrap();
            if verdict.member == Member::Yes {
                let w = verdict.witness.unwrap();
                w.verify(&s.scheme()).unwrap();
                assert!(w.start.is_empty());
                assert!(w.final_word().equals(&v), "{q}");
            }
        }
    }

    #[test]
    fn deterministic() {
        let s = SimpleScheme::new("abc", "aa").unwrap();
        let v = RelationalWord::from_string("abc");
        let a = decide_membership(&s, &v, small()).unwrap();
        let b = decide_membership(&s, &v, small()).unwrap();
        assert_eq!(a.member, b.member);
        assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn exploration_marks_incompleteness() {
        let s = SimpleScheme::new("ab", "abc").unwrap();
        let ex = explore(&s.scheme(), &[RelationalWord::empty()], Budget { max_len: 4, max_depth: 1 }, |_| false);
        assert!(!ex.is_complete());
        assert_eq!(ex.nodes.len(), 2);
        let p = ex.path(1, &s.scheme());
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn fdl_always_contains_epsilon() {
        for s in all_simple_schemes() {
            let r = compute_fdl(&s, Budget { max_len: 6, max_depth: 4 });
            if r.all_equal {
                continue;
            }
            assert!(r.members.contains(&RelationalWord::empty()), "{s}");
            assert!(r.members.iter().all(|m| m.len() <= r.class.bound_k.unwrap()));
        }
    }
}
