//! Context-free insertion-deletion on ordinary strings.
//!
//! File format, one keyword per line with space-separated words:
//! `alpha: x y`, `term: x`, `ins: xxy`, `del: xy`, `axiom: x`. `eps` (or
//! `ε`) is the empty word.

use std::collections::BTreeSet;
use std::path::Path;

use super::UniversalityError;
use crate::format::strip_comment;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StringInsDelSystem {
    pub alphabet: Vec<char>,
    pub terminals: Vec<char>,
    pub ins: Vec<String>,
    pub del: Vec<String>,
    pub axioms: Vec<String>,
}

fn parse_word_list(rest: &str) -> Vec<String> {
    rest.split_whitespace()
        .map(|w| if w == "eps" || w == "ε" { String::new() } else { w.to_string() })
        .collect()
}

impl StringInsDelSystem {
    pub fn parse(text: &str) -> Result<StringInsDelSystem, UniversalityError> {
        let mut sys = StringInsDelSystem::default();
        for (no, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| UniversalityError::Parse { line: no + 1, msg };
            let (key, rest) = line.split_once(':').ok_or_else(|| bad(format!("expected `key: words`, got {line:?}")))?;
            let words = parse_word_list(rest);
            match key.trim() {
                "alpha" | "term" => {
                    let mut letters = Vec::new();
                    for w in &words {
                        let mut cs = w.chars();
                        match (cs.next(), cs.next()) {
                            (Some(c), None) => letters.push(c),
                            _ => return Err(bad(format!("alphabet entries are single letters, got {w:?}"))),
                        }
                    }
                    if key.trim() == "alpha" {
                        sys.alphabet.extend(letters);
                    } else {
                        sys.terminals.extend(letters);
                    }
                }
                "ins" => sys.ins.extend(words),
                "del" => sys.del.extend(words),
                "axiom" => sys.axioms.extend(words),
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }
        sys.check()?;
        Ok(sys)
    }

    pub fn read_file(path: &Path) -> Result<StringInsDelSystem, UniversalityError> {
        let text = std::fs::read_to_string(path).map_err(|e| UniversalityError::Io(path.display().to_string(), e))?;
        StringInsDelSystem::parse(&text)
    }

    pub fn check(&self) -> Result<(), UniversalityError> {
        for (i, c) in self.alphabet.iter().enumerate() {
            if self.alphabet[..i].contains(c) {
                return Err(UniversalityError::RepeatedLetter(*c));
            }
        }
        for c in &self.terminals {
            if !self.alphabet.contains(c) {
                return Err(UniversalityError::UnknownLetter(*c));
            }
        }
        for w in self.ins.iter().chain(&self.del).chain(&self.axioms) {
            if let Some(c) = w.chars().find(|c| !self.alphabet.contains(c)) {
                return Err(UniversalityError::UnknownLetter(c));
            }
        }
        if let Some(w) = self.ins.iter().chain(&self.del).find(|w| w.is_empty()) {
            return Err(UniversalityError::EmptyRule(w.clone()));
        }
        Ok(())
    }

    pub fn is_terminal(&self, s: &str) -> bool {
        s.chars().all(|c| self.terminals.contains(&c))
    }

    /// Starting strings: the axioms, or ε when there are none.
    pub fn start_strings(&self) -> Vec<String> {
        if self.axioms.is_empty() {
            vec![String::new()]
        } else {
            self.axioms.clone()
        }
    }
}

/// All strings one insertion or one deletion away from `w`.
pub fn string_step(w: &str, sys: &StringInsDelSystem) -> BTreeSet<String> {
    let chars: Vec<char> = w.chars().collect();
    let mut out = BTreeSet::new();
    for y in &sys.ins {
        for k in 0..=chars.len() {
            let mut s: String = chars[..k].iter().collect();
            s.push_str(y);
            s.extend(&chars[k..]);
            out.insert(s);
        }
    }
    for y in &sys.del {
        let yc: Vec<char> = y.chars().collect();
        if yc.len() > chars.len() {
            continue;
        }
        for k in 0..=chars.len() - yc.len() {
            if chars[k..k + yc.len()] == yc[..] {
                out.insert(chars[..k].iter().chain(&chars[k + yc.len()..]).collect());
            }
        }
    }
    out
}

/// `out[d]` holds every string reachable in at most `d` steps.
pub fn reachable_strings(sys: &StringInsDelSystem, depth: usize) -> Vec<BTreeSet<String>> {
    let mut all: BTreeSet<String> = sys.start_strings().into_iter().collect();
    let mut frontier: Vec<String> = all.iter().cloned().collect();
    let mut out = vec![all.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &frontier {
            for s in string_step(w, sys) {
                if all.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        out.push(all.clone());
        frontier = next;
    }
    out
}
