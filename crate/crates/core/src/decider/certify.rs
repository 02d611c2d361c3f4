//! Empirical check of the maxFD / maxE bounds and of the per-step
//! recurrences behind them.

use std::collections::HashMap;

use serde::Serialize;

use super::{classify, DeciderError, SchemeCase, SchemeClass, SimpleScheme, Subcase};
use crate::engine::{successors_keyed, RuleKind};
use crate::measure::{characteristics, Characteristics};
use crate::word::RelationalWord;

#[derive(Debug, Clone, Serialize)]
pub struct DepthMaxima {
    pub depth: usize,
    /// words first reached at this depth
    pub new_words: usize,
    pub max_fd: usize,
    pub max_e: usize,
    pub max_n: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub scheme: String,
    pub class: SchemeClass,
    pub depth: usize,
    pub words: usize,
    pub per_depth: Vec<DepthMaxima>,
    pub max_fd_observed: usize,
    pub max_e_observed: usize,
    /// single steps whose recurrence was checked (edges, not words)
    pub steps_checked: usize,
    pub violations: Vec<String>,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

// Per-step relation between a word and its successor.
fn recurrence(s: &SimpleScheme, sub: Subcase, kind: RuleKind, x: Characteristics, y: Characteristics) -> Option<String> {
    let (i, d) = (s.ins_body().len(), s.del_body().len());
    let ie = crate::measure::max_e(s.ins_body());
    let (ok_e, ok_fd) = match kind {
        RuleKind::Insert => (y.max_e == x.max_e.max(ie), y.max_fd == x.max_fd.max(i)),
        RuleKind::Delete => {
            let (fd, e) = (x.max_fd, x.max_e);
            match sub {
                Subcase::NoEqualInD => (y.max_e <= e, y.max_fd <= fd.max(d * (e - 1))),
                Subcase::AllEqualD => (
                    y.max_e <= e.max(d * (e - 1)),
                    y.max_fd <= fd.max((fd + (d - 1) * e).saturating_sub(d)),
                ),
                Subcase::MixedD => (
                    y.max_e <= e.max(2 * (e - 1)),
                    y.max_fd <= fd.max((fd + e).saturating_sub(2)).max(3 * (e - 1)),
                ),
            }
        }
    };
    (!ok_e || !ok_fd).then(|| {
        format!(
            "{kind} step from maxFD={} maxE={} to maxFD={} maxE={} breaks the {} recurrence",
            x.max_fd,
            x.max_e,
            y.max_fd,
            y.max_e,
            if ok_e { "maxFD" } else { "maxE" }
        )
    })
}

/// Breadth-first search to `depth` steps from ε, checking on every word
/// that maxFD and maxE stay within the scheme's bounds and on every step
/// that the corresponding recurrence holds.
pub fn certify_bounds(s: &SimpleScheme, depth: usize) -> Result<BoundReport, DeciderError> {
    let class = classify(s);
    let SchemeCase::HasInequality(sub) = class.case else {
        return Err(DeciderError::NotApplicable);
    };
    let (bound, e_bound) = (class.bound_k.unwrap(), class.max_e_bound.unwrap());
    let scheme = s.scheme();
    let mut measured: HashMap<Vec<u8>, Characteristics> = HashMap::new();
    let empty = RelationalWord::empty();
    measured.insert(empty.canonical_key(), characteristics(&empty));
    let mut frontier = vec![empty];
    let mut report = BoundReport {
        scheme: s.to_string(),
        class,
        depth,
        words: 1,
        per_depth: vec![DepthMaxima {
            depth: 0,
            new_words: 1,
            max_fd: 0,
            max_e: 0,
            max_n: 0,
        }],
        max_fd_observed: 0,
        max_e_observed: 0,
        steps_checked: 0,
        violations: Vec::new(),
    };
    for level in 1..=depth {
        let mut next = Vec::new();
        let mut maxima = DepthMaxima {
            depth: level,
            new_words: 0,
            max_fd: 0,
            max_e: 0,
            max_n: 0,
        };
        for x in &frontier {
            let cx = measured[&x.canonical_key()];
            for (key, step) in successors_keyed(x, &scheme) {
                let cy = match measured.get(&key) {
                    Some(c) => *c,
                    None => {
                        let c = characteristics(&step.result);
                        measured.insert(key, c);
                        maxima.new_words += 1;
                        maxima.max_fd = maxima.max_fd.max(c.max_fd);
                        maxima.max_e = maxima.max_e.max(c.max_e);
                        maxima.max_n = maxima.max_n.max(c.max_n);
                        if c.max_fd > bound {
                            report.violations.push(format!("{:?} has maxFD {} > {bound}", step.result, c.max_fd));
                        }
                        if c.max_e > e_bound {
                            report.violations.push(format!("{:?} has maxE {} > {e_bound}", step.result, c.max_e));
                        }
                        next.push(step.result.clone());
                        c
                    }
                };
                report.steps_checked += 1;
                if let Some(v) = recurrence(s, sub, step.kind, cx, cy) {
                    report.violations.push(format!("{x:?} -> {:?}: {v}", step.result));
                }
            }
        }
        report.words += maxima.new_words;
        report.max_fd_observed = report.max_fd_observed.max(maxima.max_fd);
        report.max_e_observed = report.max_e_observed.max(maxima.max_e);
        report.per_depth.push(maxima);
        frontier = next;
    }
    if report.holds() {
        Ok(report)
    } else {
        let first = report.violations[0].clone();
        Err(DeciderError::BoundViolated(first, Box::new(report)))
    }
}
