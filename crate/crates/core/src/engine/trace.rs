use serde::{Deserialize, Serialize};

use super::{apply, EngineError, RuleKind, Scheme};
use crate::word::RelationalWord;

/// One scripted operation: kind, site and rule, without its result.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScriptStep {
    pub kind: RuleKind,
    pub site: usize,
    pub rule_id: String,
}

impl ScriptStep {
    pub fn ins(site: usize, rule_id: &str) -> ScriptStep {
        ScriptStep {
            kind: RuleKind::Insert,
            site,
            rule_id: rule_id.to_string(),
        }
    }

    pub fn del(site: usize, rule_id: &str) -> ScriptStep {
        ScriptStep {
            kind: RuleKind::Delete,
            site,
            rule_id: rule_id.to_string(),
        }
    }
}

impl std::fmt::Display for ScriptStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {} {}", self.kind, self.site, self.rule_id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub kind: RuleKind,
    pub rule_id: String,
    pub site: usize,
    pub result: RelationalWord,
}

impl DerivationStep {
    pub fn new(kind: RuleKind, rule_id: &str, site: usize, result: RelationalWord) -> DerivationStep {
        DerivationStep {
            kind,
            rule_id: rule_id.to_string(),
            site,
            result,
        }
    }

    pub fn script(&self) -> ScriptStep {
        ScriptStep {
            kind: self.kind,
            site: self.site,
            rule_id: self.rule_id.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub start: RelationalWord,
    pub steps: Vec<DerivationStep>,
}

impl Trace {
    pub fn new(start: RelationalWord) -> Trace {
        Trace { start, steps: Vec::new() }
    }

    pub fn final_word(&self) -> &RelationalWord {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    pub fn script(&self) -> Vec<ScriptStep> {
        self.steps.iter().map(DerivationStep::script).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Words in order, start first.
    pub fn words(&self) -> impl Iterator<Item = &RelationalWord> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.result))
    }

    /// Replay under `scheme` and check every recorded result.
    pub fn verify(&self, scheme: &Scheme) -> Result<(), EngineError> {
        let again = replay(&self.script(), &self.start, scheme)?;
        for (index, (a, b)) in again.steps.iter().zip(&self.steps).enumerate() {
            if a.result != b.result {
                return Err(EngineError::TraceMismatch { index });
            }
        }
        Ok(())
    }

    /// Append the steps of `other`, which must start where this trace ends.
    pub fn extend(&mut self, other: Trace) {
        debug_assert_eq!(self.final_word(), &other.start);
        self.steps.extend(other.steps);
    }

    pub fn to_json(&self) -> serde_json::Value {
        let json = TraceJson {
            start: self.start.to_matrix(),
            steps: self
                .steps
                .iter()
                .map(|s| StepJson {
                    kind: s.kind,
                    rule_id: s.rule_id.clone(),
                    site: s.site,
                    result: s.result.to_matrix(),
                })
                .collect(),
        };
        serde_json::to_value(json).expect("trace serializes")
    }

    /// Parse the format written by [`Trace::to_json`]. Recorded words are
    /// validated; use [`Trace::verify`] to check them against a scheme.
    pub fn from_json(text: &str) -> Result<Trace, EngineError> {
        let json: TraceJson = serde_json::from_str(text)?;
        let word = |rows: &[Vec<u8>]| RelationalWord::from_matrix(rows).map_err(|e| EngineError::Format(e.into()));
        let mut steps = Vec::with_capacity(json.steps.len());
        for s in &json.steps {
            steps.push(DerivationStep::new(s.kind, &s.rule_id, s.site, word(&s.result)?));
        }
        Ok(Trace {
            start: word(&json.start)?,
            steps,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TraceJson {
    start: Vec<Vec<u8>>,
    steps: Vec<StepJson>,
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    kind: RuleKind,
    rule_id: String,
    site: usize,
    result: Vec<Vec<u8>>,
}

/// Run `script` from `start`, stopping at the first inapplicable step.
pub fn replay(script: &[ScriptStep], start: &RelationalWord, scheme: &Scheme) -> Result<Trace, EngineError> {
    let mut trace = Trace::new(start.clone());
    for (index, step) in script.iter().enumerate() {
        let result = apply(trace.final_word(), scheme, step).map_err(|e| match e {
            EngineError::UnknownRule(_) => e,
            other => EngineError::StepNotApplicable {
                index,
                step: step.to_string(),
                source: Box::new(other),
            },
        })?;
        trace.steps.push(DerivationStep::new(step.kind, &step.rule_id, step.site, result));
    }
    Ok(trace)
}
