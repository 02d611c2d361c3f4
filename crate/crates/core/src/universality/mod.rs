//! Encoding string insertion-deletion systems into relational ones.
//!
//! Each letter 𝔞ᵢ of an n-letter alphabet becomes the codeword
//! `(ab)^K a^i (ba)^K` with `K > n + 2`. A relational word is canonical when
//! it is a concatenation of fully defined blocks, undefined to one another,
//! each reading as a sequence of codewords.

mod code;
mod probe;
mod strings;

use thiserror::Error;

pub use code::{encode, CodeMorphism};
pub use probe::{
    broken_insertion, compare_languages, incorrect_patterns, repair_probe, DepthComparison, LanguageComparison,
    ProbeReport, Repair,
};
pub use strings::{reachable_strings, string_step, StringInsDelSystem};

#[derive(Debug, Error)]
pub enum UniversalityError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),
    #[error("letter {0:?} listed twice")]
    RepeatedLetter(char),
    #[error("rule {0:?} is empty")]
    EmptyRule(String),
    #[error("K = {k} is too small for {n} letters; need K > {}", n + 2)]
    KTooSmall { k: usize, n: usize },
    #[error("site {site} is out of range 0..={max}")]
    SiteOutOfRange { site: usize, max: usize },
    #[error("no insertion rule {0}")]
    NoSuchRule(usize),
    #[error(transparent)]
    Engine(#[from] crate::engine::EngineError),
}
