//! Insertion and deletion of fully defined blocks, schemes, and derivation
//! traces.
//!
//! Sites: an insertion at `k` puts the block after the first `k` positions
//! (`0..=|W|`); a deletion at `k` removes the window starting at 1-based
//! position `k`.

mod normalize;
mod parse;
mod trace;

use std::collections::HashSet;

use thiserror::Error;

use crate::format::FormatError;
use crate::word::{EqClassView, Relation, RelationalWord};

pub use normalize::normalize_ins_first;
pub use parse::{parse_scheme, parse_script, read_scheme_file, read_script_file, render_script};
pub use trace::{replay, DerivationStep, ScriptStep, Trace};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("rule {0:?} has an empty body")]
    EmptyRule(String),
    #[error("rule {0:?} is not fully defined")]
    RuleNotFullyDefined(String),
    #[error("rule id {0:?} is used twice")]
    DuplicateRule(String),
    #[error("rule {id:?} is a {found} rule, expected {expected}")]
    WrongKind { id: String, found: RuleKind, expected: RuleKind },
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
    #[error("site {site} out of range 0..={max}")]
    SiteOutOfRange { site: usize, max: usize },
    #[error("deletion is not applicable at site {site}")]
    SiteNotApplicable { site: usize },
    #[error("step {index} ({step}) is not applicable: {source}")]
    StepNotApplicable {
        index: usize,
        step: String,
        #[source]
        source: Box<EngineError>,
    },
    #[error("recorded result of step {index} differs from its replay")]
    TraceMismatch { index: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("trace json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    #[serde(rename = "ins")]
    Insert,
    #[serde(rename = "del")]
    Delete,
}

impl std::fmt::Display for RuleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RuleKind::Insert => "ins",
            RuleKind::Delete => "del",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub id: String,
    pub kind: RuleKind,
    body: RelationalWord,
}

impl Rule {
    pub fn new(id: impl Into<String>, kind: RuleKind, body: RelationalWord) -> Result<Rule, EngineError> {
        let id = id.into();
        if body.is_empty() {
            return Err(EngineError::EmptyRule(id));
        }
        if !body.is_fully_defined() {
            return Err(EngineError::RuleNotFullyDefined(id));
        }
        Ok(Rule { id, kind, body })
    }

    pub fn insertion(id: impl Into<String>, letters: &str) -> Result<Rule, EngineError> {
        Rule::new(id, RuleKind::Insert, RelationalWord::from_string(letters))
    }

    pub fn deletion(id: impl Into<String>, letters: &str) -> Result<Rule, EngineError> {
        Rule::new(id, RuleKind::Delete, RelationalWord::from_string(letters))
    }

    pub fn body(&self) -> &RelationalWord {
        &self.body
    }

    pub fn len(&self) -> usize {
        self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Scheme {
    ins: Vec<Rule>,
    del: Vec<Rule>,
}

impl Scheme {
    pub fn new(ins: Vec<Rule>, del: Vec<Rule>) -> Result<Scheme, EngineError> {
        let mut ids = HashSet::new();
        for (rules, expected) in [(&ins, RuleKind::Insert), (&del, RuleKind::Delete)] {
            for r in rules {
                if r.kind != expected {
                    return Err(EngineError::WrongKind {
                        id: r.id.clone(),
                        found: r.kind,
                        expected,
                    });
                }
                if !ids.insert(r.id.clone()) {
                    return Err(EngineError::DuplicateRule(r.id.clone()));
                }
            }
        }
        Ok(Scheme { ins, del })
    }

    /// One insertion rule `I` and one deletion rule `D`, given as letters.
    pub fn simple(ins: &str, del: &str) -> Result<Scheme, EngineError> {
        Scheme::new(vec![Rule::insertion("I", ins)?], vec![Rule::deletion("D", del)?])
    }

    pub fn ins_rules(&self) -> &[Rule] {
        &self.ins
    }

    pub fn del_rules(&self) -> &[Rule] {
        &self.del
    }

    pub fn rule(&self, id: &str) -> Option<&Rule> {
        self.ins.iter().chain(&self.del).find(|r| r.id == id)
    }
}

/// A scheme together with its axioms. With no axioms, derivations start
/// from ε.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct System {
    pub scheme: Scheme,
    pub axioms: Vec<RelationalWord>,
}

impl System {
    pub fn start_words(&self) -> Vec<RelationalWord> {
        if self.axioms.is_empty() {
            vec![RelationalWord::empty()]
        } else {
            self.axioms.clone()
        }
    }
}

/// Insert `body` after the first `k` positions of `w`. Old relations are
/// kept, the block keeps its own, and every old/new pair is undefined.
pub fn insert_block(w: &RelationalWord, body: &RelationalWord, k: usize) -> Result<RelationalWord, EngineError> {
    let n = w.len();
    if k > n {
        return Err(EngineError::SiteOutOfRange { site: k, max: n });
    }
    let m = body.len();
    let origin = |p: usize| -> (bool, usize) {
        if p < k {
            (false, p)
        } else if p < k + m {
            (true, p - k)
        } else {
            (false, p - m)
        }
    };
    Ok(RelationalWord::from_fn_unchecked(n + m, |i, j| match (origin(i), origin(j)) {
        ((false, a), (false, b)) => w.rel0(a, b),
        ((true, a), (true, b)) => body.rel0(a, b),
        _ => Relation::Undef,
    }))
}

pub fn insert_at(w: &RelationalWord, rule: &Rule, k: usize) -> Result<RelationalWord, EngineError> {
    insert_block(w, &rule.body, k)
}

/// Expand the window at 1-based `k` to agree with `body`, close under
/// equality, and drop the window. `None` when the window contradicts the
/// body or the closure makes a class unequal to itself.
pub fn delete_block(w: &RelationalWord, body: &RelationalWord, k: usize) -> Option<RelationalWord> {
    let n = w.len();
    let m = body.len();
    if k == 0 || k + m - 1 > n {
        return None;
    }
    let lo = k - 1;
    for i in 0..m {
        for j in i + 1..m {
            if w.rel0(lo + i, lo + j).conflicts_with(body.rel0(i, j)) {
                return None;
            }
        }
    }
    let view = w.class_view();
    let mut parent: Vec<usize> = (0..view.num_classes).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..m {
        for j in i + 1..m {
            if body.rel0(i, j) == Relation::Eq {
                let a = find(&mut parent, view.class_of[lo + i]);
                let b = find(&mut parent, view.class_of[lo + j]);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut neq: Vec<(usize, usize)> = view.neq_pairs();
    for i in 0..m {
        for j in i + 1..m {
            if body.rel0(i, j) == Relation::Neq {
                neq.push((view.class_of[lo + i], view.class_of[lo + j]));
            }
        }
    }
    let mut neq_roots = Vec::with_capacity(neq.len());
    for (a, b) in neq {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return None;
        }
        neq_roots.push((ra, rb));
    }
    // Renumber surviving classes by first occurrence.
    let mut renum = vec![usize::MAX; view.num_classes];
    let mut class_of = Vec::with_capacity(n - m);
    let mut count = 0;
    for p in (0..n).filter(|p| !(lo..lo + m).contains(p)) {
        let r = find(&mut parent, view.class_of[p]);
        if renum[r] == usize::MAX {
            renum[r] = count;
            count += 1;
        }
        class_of.push(renum[r]);
    }
    let pairs: Vec<(usize, usize)> = neq_roots
        .into_iter()
        .filter(|&(a, b)| renum[a] != usize::MAX && renum[b] != usize::MAX)
        .map(|(a, b)| (renum[a], renum[b]))
        .collect();
    Some(EqClassView::new(class_of, count, &pairs).to_word())
}

pub fn delete_at(w: &RelationalWord, rule: &Rule, k: usize) -> Result<RelationalWord, EngineError> {
    delete_block(w, &rule.body, k).ok_or(EngineError::SiteNotApplicable { site: k })
}

/// All 1-based sites where `rule` can delete from `w`.
pub fn deletion_sites(w: &RelationalWord, rule: &Rule) -> Vec<usize> {
    if rule.len() > w.len() {
        return Vec::new();
    }
    (1..=w.len() - rule.len() + 1)
        .filter(|&k| delete_block(w, &rule.body, k).is_some())
        .collect()
}

/// Every single-step successor of `w`, one step per distinct result word,
/// ordered by canonical key. The first (insertions before deletions, rule
/// order, ascending site) step producing a word is kept.
pub fn step_all(w: &RelationalWord, scheme: &Scheme) -> Vec<DerivationStep> {
    successors_keyed(w, scheme).into_iter().map(|(_, s)| s).collect()
}

/// [`step_all`] with each result's canonical key.
pub fn successors_keyed(w: &RelationalWord, scheme: &Scheme) -> Vec<(Vec<u8>, DerivationStep)> {
    successors_within(w, scheme, usize::MAX).0
}

/// [`successors_keyed`] restricted to results of length at most `max_len`;
/// the flag reports whether anything longer was skipped.
pub fn successors_within(w: &RelationalWord, scheme: &Scheme, max_len: usize) -> (Vec<(Vec<u8>, DerivationStep)>, bool) {
    let (raw, skipped) = raw_within(w, scheme, max_len);
    let mut seen = HashSet::new();
    let mut out: Vec<(Vec<u8>, DerivationStep)> = raw
        .into_iter()
        .filter_map(|s| {
            let key = s.result.canonical_key();
            seen.insert(key.clone()).then_some((key, s))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    (out, skipped)
}

/// Every applicable (rule, site) pair, duplicates included.
pub fn step_all_raw(w: &RelationalWord, scheme: &Scheme) -> Vec<DerivationStep> {
    raw_within(w, scheme, usize::MAX).0
}

fn raw_within(w: &RelationalWord, scheme: &Scheme, max_len: usize) -> (Vec<DerivationStep>, bool) {
    let mut out = Vec::new();
    let mut skipped = false;
    for rule in &scheme.ins {
        if w.len() + rule.len() > max_len {
            skipped = true;
            continue;
        }
        for k in 0..=w.len() {
            let result = insert_block(w, &rule.body, k).expect("site in range");
            out.push(DerivationStep::new(RuleKind::Insert, &rule.id, k, result));
        }
    }
    for rule in &scheme.del {
        if rule.len() > w.len() {
            continue;
        }
        for k in 1..=w.len() - rule.len() + 1 {
            if let Some(result) = delete_block(w, &rule.body, k) {
                out.push(DerivationStep::new(RuleKind::Delete, &rule.id, k, result));
            }
        }
    }
    (out, skipped)
}

/// Apply one scripted step.
pub fn apply(w: &RelationalWord, scheme: &Scheme, step: &ScriptStep) -> Result<RelationalWord, EngineError> {
    let rule = scheme
        .rule(&step.rule_id)
        .ok_or_else(|| EngineError::UnknownRule(step.rule_id.clone()))?;
    if rule.kind != step.kind {
        return Err(EngineError::WrongKind {
            id: rule.id.clone(),
            found: rule.kind,
            expected: step.kind,
        });
    }
    match step.kind {
        RuleKind::Insert => insert_at(w, rule, step.site),
        RuleKind::Delete => delete_at(w, rule, step.site),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{arb_fd_word, arb_word, base};
    use crate::measure::{max_e, max_fd};
    use proptest::prelude::*;

    fn m(rows: &str) -> RelationalWord {
        let r: Vec<Vec<u8>> = rows.split('/').map(|r| r.bytes().map(|b| b - b'0').collect()).collect();
        RelationalWord::from_matrix(&r).unwrap()
    }

    // Reference deletion: add the window relations to the full relation as
    // position pairs, then close by fixpoint iteration.
    fn naive_delete(w: &RelationalWord, body: &RelationalWord, k: usize) -> Option<RelationalWord> {
        let n = w.len();
        let lo = k - 1;
        let mut r: Vec<Vec<Relation>> = (0..n).map(|i| (0..n).map(|j| w.rel0(i, j)).collect()).collect();
        for i in 0..body.len() {
            for j in 0..body.len() {
                let (a, b) = (lo + i, lo + j);
                if r[a][b].conflicts_with(body.rel0(i, j)) {
                    return None;
                }
                r[a][b] = body.rel0(i, j);
            }
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                for y in 0..n {
                    if r[x][y] != Relation::Eq {
                        continue;
                    }
                    for z in 0..n {
                        let v = r[y][z];
                        if v == Relation::Undef {
                            continue;
                        }
                        if r[x][z].conflicts_with(v) {
                            return None;
                        }
                        if r[x][z] == Relation::Undef {
                            r[x][z] = v;
                            r[z][x] = v;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if (0..n).any(|x| r[x][x] == Relation::Neq) {
            return None;
        }
        let keep: Vec<usize> = (0..n).filter(|p| !(lo..lo + body.len()).contains(p)).collect();
        let rows: Vec<Vec<u8>> = keep.iter().map(|&a| keep.iter().map(|&b| r[a][b].digit()).collect()).collect();
        Some(RelationalWord::from_matrix(&rows).expect("closure result is valid"))
    }

    #[test]
    fn insertion_matches_worked_example() {
        let aa = Rule::insertion("Y", "aa").unwrap();
        let got = insert_at(&base(), &aa, 3).unwrap();
        assert_eq!(got, m("101222/010222/101222/222112/222112/222221"));
        assert_eq!(insert_at(&RelationalWord::empty(), &aa, 0).unwrap(), *aa.body());
        assert!(matches!(insert_at(&base(), &aa, 5), Err(EngineError::SiteOutOfRange { site: 5, max: 4 })));
    }

    #[test]
    fn deletion_of_the_expansion_example() {
        let w = m("101222/010222/101222/222111/222111/222111");
        let d = Rule::deletion("D", "aa").unwrap();
        let got = delete_at(&w, &d, 3).unwrap();
        assert_eq!(got, m("1011/0100/1011/1011"));
        // The four-position matrix printed for this example is not itself a
        // valid relational word.
        assert!(RelationalWord::from_matrix(&[[1, 0, 0, 1], [0, 1, 2, 0], [0, 2, 1, 1], [1, 0, 1, 1]]).is_err());
        // Deleting the block just inserted gives the original word back.
        let ins = insert_at(&base(), &Rule::insertion("Y", "aa").unwrap(), 3).unwrap();
        assert_eq!(delete_at(&ins, &d, 4).unwrap(), base());
        assert_eq!(delete_at(&ins, &d, 3).unwrap(), base());
    }

    #[test]
    fn first_deletion_chain() {
        let s = Scheme::simple("aaa", "aa").unwrap();
        let i = &s.ins_rules()[0];
        let d = &s.del_rules()[0];
        let v1 = insert_at(&RelationalWord::isolated(1), i, 1).unwrap();
        assert_eq!(v1, m("1222/2111/2111/2111"));
        let v2 = delete_at(&v1, d, 3).unwrap();
        assert_eq!(v2, m("12/21"));
        assert_eq!(delete_at(&v2, d, 1).unwrap(), RelationalWord::empty());
    }

    #[test]
    fn sites() {
        let ab = Rule::deletion("D", "ab").unwrap();
        assert!(deletion_sites(&RelationalWord::from_string("aa"), &ab).is_empty());
        assert_eq!(deletion_sites(ab.body(), &ab), vec![1]);
        assert!(deletion_sites(&RelationalWord::isolated(1), &ab).is_empty());
        let w = m("1021/0120/2212/1021");
        assert_eq!(deletion_sites(&w, &Rule::deletion("D", "aab").unwrap()), vec![2]);
        assert_eq!(deletion_sites(&w, &Rule::deletion("D", "ab").unwrap()), vec![1, 2, 3]);
        assert_eq!(deletion_sites(&w, &Rule::deletion("D", "aa").unwrap()), vec![2, 3]);
    }

    #[test]
    fn successors() {
        let s = Scheme::new(vec![Rule::insertion("Y", "ab").unwrap()], vec![]).unwrap();
        let steps = step_all(&RelationalWord::empty(), &s);
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].result, RelationalWord::from_string("ab"));
        let s = Scheme::new(vec![Rule::insertion("I", "aaa").unwrap()], vec![]).unwrap();
        let a = RelationalWord::isolated(1);
        assert_eq!(step_all_raw(&a, &s).len(), 2);
        assert_eq!(step_all(&a, &s).len(), 2);
        // inserting "aa" into "aa" gives the same word at sites 0 and 2
        let s = Scheme::new(vec![Rule::insertion("I", "aa").unwrap()], vec![]).unwrap();
        assert_eq!(step_all_raw(&RelationalWord::from_string("aa"), &s).len(), 3);
        assert_eq!(step_all(&RelationalWord::from_string("aa"), &s).len(), 2);
    }

    #[test]
    fn scheme_validation() {
        assert!(matches!(Rule::new("x", RuleKind::Insert, RelationalWord::empty()), Err(EngineError::EmptyRule(_))));
        assert!(matches!(
            Rule::new("x", RuleKind::Insert, RelationalWord::isolated(2)),
            Err(EngineError::RuleNotFullyDefined(_))
        ));
        let r = Rule::insertion("x", "ab").unwrap();
        let d = Rule::deletion("x", "ab").unwrap();
        assert!(matches!(Scheme::new(vec![r.clone()], vec![d]), Err(EngineError::DuplicateRule(_))));
        assert!(matches!(Scheme::new(vec![], vec![r]), Err(EngineError::WrongKind { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn deletion_agrees_with_fixpoint_closure(w in arb_word(7), body in arb_fd_word(1, 3), k in any::<usize>()) {
            prop_assume!(body.len() <= w.len());
            let k = 1 + k % (w.len() - body.len() + 1);
            prop_assert_eq!(delete_block(&w, &body, k), naive_delete(&w, &body, k));
        }

        #[test]
        fn insertion_keeps_old_relations(w in arb_word(6), body in arb_fd_word(1, 3), k in 0usize..7) {
            prop_assume!(k <= w.len());
            let v = insert_block(&w, &body, k).unwrap();
            let s = |i: usize| if i <= k { i } else { i + body.len() };
            for i in 1..=w.len() {
                for j in 1..=w.len() {
                    prop_assert_eq!(v.relation(s(i), s(j)), w.relation(i, j));
                }
                for j in k + 1..=k + body.len() {
                    prop_assert_eq!(v.relation(s(i), j), Relation::Undef);
                }
            }
            prop_assert_eq!(max_e(&v), max_e(&w).max(max_e(&body)));
            prop_assert_eq!(max_fd(&v), max_fd(&w).max(max_fd(&body)));
        }

        #[test]
        fn results_are_valid_and_survivors_monotone(w in arb_word(7), body in arb_fd_word(2, 3)) {
            let rule = Rule::deletion("D", &body.to_letters().unwrap()).unwrap();
            for k in deletion_sites(&w, &rule) {
                let v = delete_at(&w, &rule, k).unwrap();
                let rows = v.to_matrix();
                prop_assert!(RelationalWord::from_matrix(&rows).is_ok());
                let keep: Vec<usize> = (1..=w.len()).filter(|p| *p < k || *p >= k + rule.len()).collect();
                for (a, &p) in keep.iter().enumerate() {
                    for (b, &q) in keep.iter().enumerate() {
                        if w.relation(p, q).is_defined() {
                            prop_assert_eq!(v.relation(a + 1, b + 1), w.relation(p, q));
                        }
                    }
                }
            }
        }
    }
}
