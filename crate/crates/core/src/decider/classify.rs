use serde::Serialize;

use super::SimpleScheme;
use crate::measure::max_e;
use crate::word::{Relation, RelationalWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Subcase {
    /// the deletion rule has no two equal symbols
    NoEqualInD,
    /// all symbols of the deletion rule are equal
    AllEqualD,
    /// the deletion rule has both
    MixedD,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SchemeCase {
    /// neither rule has an unequal pair
    AllEqual,
    HasInequality(Subcase),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SchemeClass {
    pub case: SchemeCase,
    /// Upper bound on maxFD of every derivable word; `None` for
    /// [`SchemeCase::AllEqual`], where it is unbounded.
    pub bound_k: Option<usize>,
    /// Upper bound on maxE of every derivable word, when one is known.
    pub max_e_bound: Option<usize>,
}

fn has_neq(w: &RelationalWord) -> bool {
    (1..=w.len()).any(|i| (i + 1..=w.len()).any(|j| w.relation(i, j) == Relation::Neq))
}

pub fn classify(s: &SimpleScheme) -> SchemeClass {
    let (i, d) = (s.ins_body(), s.del_body());
    if !has_neq(i) && !has_neq(d) {
        return SchemeClass {
            case: SchemeCase::AllEqual,
            bound_k: None,
            max_e_bound: None,
        };
    }
    let (ei, ed) = (max_e(i), max_e(d));
    let subcase = if ed == 1 {
        Subcase::NoEqualInD
    } else if !has_neq(d) {
        Subcase::AllEqualD
    } else {
        Subcase::MixedD
    };
    let (bound_k, max_e_bound) = match subcase {
        Subcase::NoEqualInD => (i.len().max(d.len() * (ei - 1)), ei),
        Subcase::AllEqualD => (i.len(), if d.len() == 2 { 2 } else { 1 }),
        Subcase::MixedD => (3, 2),
    };
    SchemeClass {
        case: SchemeCase::HasInequality(subcase),
        bound_k: Some(bound_k),
        max_e_bound: Some(max_e_bound),
    }
}
