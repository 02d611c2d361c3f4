//! Relational words and insertion-deletion systems over them.

pub mod cli;
pub mod clique;
pub mod decider;
pub mod engine;
pub mod format;
pub mod language;
pub mod measure;
pub mod universality;
pub mod word;

#[cfg(test)]
mod testutil;

pub use word::{EqClassView, Relation, RelationalWord, WordError};
