//! Explicit derivations: deleting single positions (hence whole words) and
//! building all-equal words.

use super::{classify, Family, SchemeCase, SimpleScheme};
use crate::engine::{replay, EngineError, RuleKind, ScriptStep, Trace};
use crate::word::RelationalWord;

// Scripts taking a single isolated position to ε for each length-3
// insertion / length-2 deletion pair. Every merge they cause joins the
// original position's class with freshly inserted classes only, so the same
// script, shifted, deletes any one position of a longer word and leaves the
// other positions' relations untouched.
const I3D2_SCRIPTS: [(&str, &str, &str); 10] = [
    ("aaa", "aa", "i1 d3 d1"),
    ("aaa", "ab", "i0 i1 i1 d9 d7 d4 d3 d1"),
    ("abc", "aa", "i0 i2 i2 d8 d2 d5 d3 d1"),
    ("abc", "ab", "i0 d3 d1"),
    ("aab", "aa", "i0 d3 d1"),
    ("aab", "ab", "i0 d2 d1"),
    ("abb", "aa", "i0 d2 d1"),
    ("abb", "ab", "i0 d3 d1"),
    ("aba", "aa", "i0 i0 i2 d9 d6 d5 d2 d1"),
    ("aba", "ab", "i0 d1 d1"),
];

fn i3d2_script(ins: &str, del: &str) -> Vec<ScriptStep> {
    let (_, _, text) = I3D2_SCRIPTS
        .iter()
        .find(|(i, d, _)| *i == ins && *d == del)
        .expect("every length-3/length-2 pair is listed");
    text.split_whitespace()
        .map(|t| {
            let k: usize = t[1..].parse().unwrap();
            if t.starts_with('i') {
                ScriptStep::ins(k, "I")
            } else {
                ScriptStep::del(k, "D")
            }
        })
        .collect()
}

fn shifted(script: &[ScriptStep], by: usize) -> Vec<ScriptStep> {
    script
        .iter()
        .map(|s| ScriptStep {
            site: s.site + by,
            ..s.clone()
        })
        .collect()
}

// For a length-2 insertion / length-3 deletion scheme: run the mirrored
// scheme's single-position script backwards, turning each deletion into an
// insertion one gap earlier and each insertion into a deletion one position
// later. Started after position `after`, it adds one isolated position
// there.
fn append_isolated(s: &SimpleScheme, after: usize) -> Vec<ScriptStep> {
    let m = s.mirrored();
    let forward = i3d2_script(&m.ins_letters(), &m.del_letters());
    forward
        .iter()
        .rev()
        .map(|f| match f.kind {
            RuleKind::Delete => ScriptStep::ins(f.site - 1 + after, "I"),
            RuleKind::Insert => ScriptStep::del(f.site + 1 + after, "D"),
        })
        .collect()
}

fn position_script(s: &SimpleScheme, p: usize) -> Vec<ScriptStep> {
    match s.family {
        Family::I3D2 => shifted(&i3d2_script(&s.ins_letters(), &s.del_letters()), p - 1),
        Family::I2D3 => {
            let mut out = append_isolated(s, p);
            out.extend(append_isolated(s, p));
            out.push(ScriptStep::del(p, "D"));
            out
        }
    }
}

/// A script taking any single-position word to ε.
pub fn epsilon_script(s: &SimpleScheme) -> Vec<ScriptStep> {
    position_script(s, 1)
}

/// Delete position `p` (1-based) of `w`; the other positions keep their
/// relations.
pub fn delete_position(s: &SimpleScheme, w: &RelationalWord, p: usize) -> Result<Trace, EngineError> {
    if p == 0 || p > w.len() {
        return Err(EngineError::SiteOutOfRange { site: p, max: w.len() });
    }
    replay(&position_script(s, p), w, &s.scheme())
}

/// A derivation from `w` to ε, deleting the last position each round.
pub fn delete_word(s: &SimpleScheme, w: &RelationalWord) -> Result<Trace, EngineError> {
    let mut trace = Trace::new(w.clone());
    while !trace.final_word().is_empty() {
        let last = trace.final_word().len();
        let part = delete_position(s, trace.final_word(), last)?;
        trace.extend(part);
    }
    Ok(trace)
}

/// For an all-equal scheme, a derivation from ε to the all-equal word of
/// length `n`; `None` for other schemes.
pub fn all_equal_witness(s: &SimpleScheme, n: usize) -> Option<Trace> {
    if classify(s).case != SchemeCase::AllEqual {
        return None;
    }
    let mut script = Vec::new();
    if n > 0 {
        match s.family {
            Family::I3D2 => {
                script.extend([ScriptStep::ins(0, "I"), ScriptStep::del(2, "D")]);
                for m in 1..n {
                    script.extend([ScriptStep::ins(m, "I"), ScriptStep::del(m, "D")]);
                }
            }
            Family::I2D3 => {
                script.extend([ScriptStep::ins(0, "I"), ScriptStep::ins(2, "I"), ScriptStep::del(2, "D")]);
                for m in 1..n {
                    script.extend([ScriptStep::ins(m, "I"), ScriptStep::ins(m + 1, "I"), ScriptStep::del(m, "D")]);
                }
            }
        }
    }
    Some(replay(&script, &RelationalWord::empty(), &s.scheme()).expect("all-equal constructions apply"))
}
