//! Checking the encoding: reachable languages on both sides, and searches
//! from words broken by an insertion inside a codeword.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{encode, reachable_strings, CodeMorphism, StringInsDelSystem, UniversalityError};
use crate::decider::{explore, Budget};
use crate::engine::{insert_block, Scheme, System, Trace};
use crate::word::RelationalWord;

#[derive(Debug, Clone, Serialize)]
pub struct DepthComparison {
    pub depth: usize,
    /// strings reachable in at most `depth` steps
    pub strings: usize,
    pub relational_words: usize,
    pub canonical_words: usize,
    /// terminal strings missing from the decoded side
    pub missing: Vec<String>,
    /// decoded terminal strings the string system does not reach
    pub extra: Vec<String>,
    /// decoded strings of any kind the string system does not reach
    pub unreachable_decoded: Vec<String>,
}

impl DepthComparison {
    pub fn holds(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.unreachable_decoded.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LanguageComparison {
    pub k: usize,
    pub levels: Vec<DepthComparison>,
}

impl LanguageComparison {
    pub fn holds(&self) -> bool {
        self.levels.iter().all(DepthComparison::holds)
    }
}

/// For each depth up to `depth`, compare the terminal strings reachable in
/// `sys` with the decoded terminal canonical words reachable in its
/// encoding.
pub fn compare_languages(
    sys: &StringInsDelSystem,
    k: Option<usize>,
    depth: usize,
) -> Result<LanguageComparison, UniversalityError> {
    let (rs, m) = encode(sys, k)?;
    let strings = reachable_strings(sys, depth);
    let ex = explore(
        &rs.scheme,
        &rs.start_words(),
        Budget {
            max_len: usize::MAX,
            max_depth: depth,
        },
        |_| false,
    );
    let decoded: Vec<(usize, Option<String>)> = ex.nodes.iter().map(|n| (n.depth, m.decode(&n.word))).collect();
    let mut levels = Vec::new();
    for (d, reach) in strings.iter().enumerate() {
        let within: Vec<&Option<String>> = decoded.iter().filter(|(nd, _)| *nd <= d).map(|(_, s)| s).collect();
        let canon: BTreeSet<&String> = within.iter().filter_map(|s| s.as_ref()).collect();
        let term_s: BTreeSet<&String> = reach.iter().filter(|s| sys.is_terminal(s)).collect();
        let term_r: BTreeSet<&String> = canon.iter().copied().filter(|s| sys.is_terminal(s)).collect();
        levels.push(DepthComparison {
            depth: d,
            strings: reach.len(),
            relational_words: within.len(),
            canonical_words: within.iter().filter(|s| s.is_some()).count(),
            missing: term_s.difference(&term_r).map(|s| s.to_string()).collect(),
            extra: term_r.difference(&term_s).map(|s| s.to_string()).collect(),
            unreachable_decoded: canon.iter().filter(|s| !reach.contains(**s)).map(|s| s.to_string()).collect(),
        });
    }
    Ok(LanguageComparison { k: m.k(), levels })
}

/// Maximal alternating runs, inside fully defined contiguous blocks, whose
/// length no sequence of codewords produces. Codewords only give runs of
/// length 1, 2K+1 and 4K+1; a cut through a codeword leaves a stray
/// `b(ab)^(K-1)` or `(ba)^(K-1)b` behind, which shows up here.
pub fn incorrect_patterns(w: &RelationalWord, k: usize) -> usize {
    let mut count = 0;
    let mut start = 1;
    for j in 2..=w.len() + 1 {
        if j <= w.len() && (start..j).all(|i| w.relation(i, j).is_defined()) {
            continue;
        }
        let pos: Vec<usize> = (start..j).collect();
        let letters = w.restrict(&pos).expect("positions in range").to_letters().expect("block is fully defined");
        let b = letters.as_bytes();
        let mut run_start = 0;
        for i in 1..=b.len() {
            let extends = i < b.len() && b[i] != b[i - 1] && (i < run_start + 2 || b[i] == b[i - 2]);
            if !extends {
                let run = i - run_start;
                if run != 1 && run != 2 * k + 1 && run != 4 * k + 1 {
                    count += 1;
                }
                run_start = i;
            }
        }
        start = j;
    }
    count
}

/// The code of `source` and the same word with insertion rule `rule`
/// (0-based) applied at gap `site`.
pub fn broken_insertion(
    sys: &StringInsDelSystem,
    m: &CodeMorphism,
    source: &str,
    rule: usize,
    site: usize,
) -> Result<(RelationalWord, RelationalWord), UniversalityError> {
    let ins = sys.ins.get(rule).ok_or(UniversalityError::NoSuchRule(rule))?;
    let w = m.encode_string(source)?;
    if site > w.len() {
        return Err(UniversalityError::SiteOutOfRange { site, max: w.len() });
    }
    let broken = insert_block(&w, &m.encode_string(ins)?, site)?;
    Ok((w, broken))
}

#[derive(Debug, Clone, Serialize)]
pub struct Repair {
    pub decoded: String,
    pub depth: usize,
    #[serde(skip)]
    pub trace: Trace,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub broken_len: usize,
    pub budget: Budget,
    pub states: usize,
    pub depth_reached: usize,
    pub truncated: bool,
    pub incorrect_at_start: usize,
    /// fewest incorrect patterns seen on a word other than an ancestor
    pub min_incorrect: usize,
    /// search-tree steps, between non-ancestor words, that lowered the count
    pub decreasing_steps: usize,
    /// canonical words reached that are not ancestors
    pub repairs: Vec<Repair>,
    /// ancestors reached again
    pub ancestors_reached: usize,
}

/// Search from `broken` for canonical words other than `ancestors`.
pub fn repair_probe(
    broken: &RelationalWord,
    ancestors: &[RelationalWord],
    system: &System,
    m: &CodeMorphism,
    budget: Budget,
) -> ProbeReport {
    let scheme: &Scheme = &system.scheme;
    let ancestor_keys: HashSet<Vec<u8>> = ancestors.iter().map(RelationalWord::canonical_key).collect();
    let ex = explore(scheme, std::slice::from_ref(broken), budget, |_| false);
    let counts: Vec<usize> = ex.nodes.iter().map(|n| incorrect_patterns(&n.word, m.k())).collect();
    let is_ancestor: Vec<bool> = ex.nodes.iter().map(|n| ancestor_keys.contains(&n.word.canonical_key())).collect();
    let mut report = ProbeReport {
        broken_len: broken.len(),
        budget,
        states: ex.nodes.len(),
        depth_reached: ex.max_depth_reached(),
        truncated: !ex.is_complete(),
        incorrect_at_start: counts.first().copied().unwrap_or(0),
        min_incorrect: usize::MAX,
        decreasing_steps: 0,
        repairs: Vec::new(),
        ancestors_reached: is_ancestor.iter().filter(|&&a| a).count(),
    };
    for (idx, node) in ex.nodes.iter().enumerate() {
        if is_ancestor[idx] {
            continue;
        }
        report.min_incorrect = report.min_incorrect.min(counts[idx]);
        if let Some(p) = node.parent {
            if !is_ancestor[p] && counts[idx] < counts[p] {
                report.decreasing_steps += 1;
            }
        }
        if let Some(decoded) = m.decode(&node.word) {
            report.repairs.push(Repair {
                decoded,
                depth: node.depth,
                trace: ex.path(idx, scheme),
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> StringInsDelSystem {
        StringInsDelSystem::parse("alpha: x\nterm: x\nins: xxx\ndel: xx\naxiom: x\n").unwrap()
    }

    #[test]
    fn codes_have_no_incorrect_patterns() {
        let m = CodeMorphism::new(&['x', 'y', 'z'], None).unwrap();
        for s in ["", "x", "y", "zz", "xyz", "zyxx"] {
            assert_eq!(incorrect_patterns(&m.encode_string(s).unwrap(), m.k()), 0, "{s}");
        }
    }

    #[test]
    fn insertions_inside_a_codeword_are_incorrect() {
        let sys = toy();
        let m = CodeMorphism::new(&['x'], Some(4)).unwrap();
        for site in 1..17 {
            let (_, b) = broken_insertion(&sys, &m, "x", 0, site).unwrap();
            assert!(incorrect_patterns(&b, 4) > 0, "site {site}");
        }
    }

    #[test]
    fn toy_languages_agree_at_depth_one() {
        let c = compare_languages(&toy(), Some(4), 1).unwrap();
        assert!(c.holds(), "{c:?}");
        assert_eq!(c.levels[1].strings, 2);
        assert_eq!(c.levels[1].relational_words, 19);
        // the new codeword on either side of the old one
        assert_eq!(c.levels[1].canonical_words, 3);
    }

    #[test]
    fn the_undo_step_is_an_ancestor_not_a_repair() {
        let mut sys = toy();
        sys.del.push("xxx".into());
        let (rs, m) = encode(&sys, Some(4)).unwrap();
        let (w, b) = broken_insertion(&sys, &m, "x", 0, 8).unwrap();
        let r = repair_probe(&b, &[w], &rs, &m, Budget { max_len: 68, max_depth: 1 });
        assert_eq!(r.ancestors_reached, 1);
        assert!(r.repairs.is_empty());
    }
}
