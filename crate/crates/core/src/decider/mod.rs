//! Simple schemes with one short insertion rule and one short deletion rule:
//! classification, ε-reachability, bounded membership search and bound
//! certification.

mod catalog;
mod certify;
mod classify;
mod scripts;
mod search;

use std::fmt;

use thiserror::Error;

use crate::engine::{Rule, Scheme};
use crate::word::RelationalWord;

pub use catalog::{all_simple_schemes, fully_defined_words, rule_catalog, CatalogEntry};
pub use certify::{certify_bounds, BoundReport, DepthMaxima};
pub use classify::{classify, SchemeCase, SchemeClass, Subcase};
pub use scripts::{all_equal_witness, delete_position, delete_word, epsilon_script};
pub use search::{compute_fdl, decide_membership, explore, Budget, Exploration, FdlReport, Member, Verdict};

#[derive(Debug, Error)]
pub enum DeciderError {
    #[error("not a simple scheme: rule lengths {ins} and {del} are not 2/3 or 3/2")]
    NotSimple { ins: usize, del: usize },
    #[error("query word is not fully defined")]
    NotFullyDefined,
    #[error("the bound does not apply to an all-equal scheme")]
    NotApplicable,
    #[error("bound violated: {0}")]
    BoundViolated(String, Box<BoundReport>),
    #[error(transparent)]
    Engine(#[from] crate::engine::EngineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Family {
    /// insertion of length 2, deletion of length 3
    I2D3,
    /// insertion of length 3, deletion of length 2
    I3D2,
}

/// One insertion rule `I` and one deletion rule `D` of lengths 2/3 or 3/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleScheme {
    pub ins_rule: Rule,
    pub del_rule: Rule,
    pub family: Family,
}

impl SimpleScheme {
    /// Build from letter strings; letters are only read up to renaming.
    pub fn new(ins: &str, del: &str) -> Result<SimpleScheme, DeciderError> {
        let family = match (ins.chars().count(), del.chars().count()) {
            (2, 3) => Family::I2D3,
            (3, 2) => Family::I3D2,
            (i, d) => return Err(DeciderError::NotSimple { ins: i, del: d }),
        };
        Ok(SimpleScheme {
            ins_rule: Rule::insertion("I", ins)?,
            del_rule: Rule::deletion("D", del)?,
            family,
        })
    }

    /// Take the single insertion and deletion rule of `scheme`.
    pub fn from_scheme(scheme: &Scheme) -> Result<SimpleScheme, DeciderError> {
        let (ins, del) = (scheme.ins_rules(), scheme.del_rules());
        if ins.len() != 1 || del.len() != 1 {
            return Err(DeciderError::NotSimple {
                ins: ins.first().map_or(0, Rule::len),
                del: del.first().map_or(0, Rule::len),
            });
        }
        SimpleScheme::new(&ins[0].body().to_letters().unwrap(), &del[0].body().to_letters().unwrap())
    }

    pub fn ins_letters(&self) -> String {
        self.ins_rule.body().to_letters().expect("rules are fully defined")
    }

    pub fn del_letters(&self) -> String {
        self.del_rule.body().to_letters().expect("rules are fully defined")
    }

    pub fn scheme(&self) -> Scheme {
        Scheme::new(vec![self.ins_rule.clone()], vec![self.del_rule.clone()]).expect("ids are distinct")
    }

    pub(crate) fn ins_body(&self) -> &RelationalWord {
        self.ins_rule.body()
    }

    pub(crate) fn del_body(&self) -> &RelationalWord {
        self.del_rule.body()
    }

    /// The scheme with the roles of the two rule bodies exchanged.
    pub(crate) fn mirrored(&self) -> SimpleScheme {
        SimpleScheme::new(&self.del_letters(), &self.ins_letters()).expect("swapped lengths stay simple")
    }
}

impl fmt::Display for SimpleScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I={} D={}", self.ins_letters(), self.del_letters())
    }
}
