//! Numerical characteristics of a relational word.

use crate::clique::BitGraph;
use crate::word::{Relation, RelationalWord};

/// Length of the longest scattered subword whose positions are pairwise equal
/// (the largest equality class). Zero for the empty word.
pub fn max_e(w: &RelationalWord) -> usize {
    w.class_view().class_sizes().into_iter().max().unwrap_or(0)
}

/// Length of the longest fully defined scattered subword.
pub fn max_fd(w: &RelationalWord) -> usize {
    BitGraph::from_fn(w.len(), |i, j| w.rel0(i, j).is_defined()).max_clique_size()
}

/// Length of the longest scattered subword whose positions are pairwise
/// unequal.
pub fn max_n(w: &RelationalWord) -> usize {
    BitGraph::from_fn(w.len(), |i, j| w.rel0(i, j) == Relation::Neq).max_clique_size()
}

/// All three at once, in the order (maxFD, maxE, maxN).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Characteristics {
    pub max_fd: usize,
    pub max_e: usize,
    pub max_n: usize,
}

pub fn characteristics(w: &RelationalWord) -> Characteristics {
    Characteristics {
        max_fd: max_fd(w),
        max_e: max_e(w),
        max_n: max_n(w),
    }
}
