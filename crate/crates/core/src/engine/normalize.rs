use super::{replay, EngineError, RuleKind, Scheme, ScriptStep, Trace};

/// Reorder `trace` so every insertion comes before every deletion, keeping
/// the start and the final word.
///
/// A deletion of a window of length `m` at `i` followed by an insertion of
/// length `t` at `k` becomes an insertion at `k` and a deletion at `i + t`
/// when the gap lies before the window (`k < i`), and an insertion at `k + m`
/// followed by the same deletion otherwise. The inserted block's relations
/// to everything else are undefined, so the expansion never touches it and
/// both orders give the same word.
pub fn normalize_ins_first(trace: &Trace, scheme: &Scheme) -> Result<Trace, EngineError> {
    let mut script = trace.script();
    let len_of = |id: &str| {
        scheme
            .rule(id)
            .map(|r| r.len())
            .ok_or_else(|| EngineError::UnknownRule(id.to_string()))
    };
    let mut swapped = true;
    while swapped {
        swapped = false;
        for idx in 0..script.len().saturating_sub(1) {
            if script[idx].kind != RuleKind::Delete || script[idx + 1].kind != RuleKind::Insert {
                continue;
            }
            let (i, m) = (script[idx].site, len_of(&script[idx].rule_id)?);
            let (k, t) = (script[idx + 1].site, len_of(&script[idx + 1].rule_id)?);
            let (ins_site, del_site) = if k < i { (k, i + t) } else { (k + m, i) };
            let del_id = script[idx].rule_id.clone();
            let ins_id = script[idx + 1].rule_id.clone();
            script[idx] = ScriptStep::ins(ins_site, &ins_id);
            script[idx + 1] = ScriptStep::del(del_site, &del_id);
            swapped = true;
        }
    }
    replay(&script, &trace.start, scheme)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::RelationalWord;

    fn is_normal(t: &Trace) -> bool {
        let first_del = t.steps.iter().position(|s| s.kind == RuleKind::Delete).unwrap_or(t.len());
        t.steps[first_del..].iter().all(|s| s.kind == RuleKind::Delete)
    }

    #[test]
    fn normal_traces_are_unchanged() {
        let s = Scheme::simple("aaa", "aa").unwrap();
        let script = [ScriptStep::ins(1, "I"), ScriptStep::del(3, "D"), ScriptStep::del(1, "D")];
        let t = replay(&script, &RelationalWord::isolated(1), &s).unwrap();
        assert_eq!(normalize_ins_first(&t, &s).unwrap(), t);
    }

    #[test]
    fn single_swaps_on_five_positions() {
        let s = Scheme::simple("abc", "ab").unwrap();
        let w = RelationalWord::from_string("aab").concat(&RelationalWord::from_string("ba"));
        let mut swaps = 0;
        for del in 1..=4 {
            for ins in 0..=3 {
                let Ok(t) = replay(&[ScriptStep::del(del, "D"), ScriptStep::ins(ins, "I")], &w, &s) else {
                    continue;
                };
                let n = normalize_ins_first(&t, &s).unwrap();
                assert!(is_normal(&n));
                assert_eq!(n.final_word(), t.final_word(), "del {del} ins {ins}");
                swaps += 1;
            }
        }
        assert!(swaps >= 8);
    }
}
