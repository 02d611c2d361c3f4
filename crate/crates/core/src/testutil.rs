//! Shared fixtures and proptest strategies for unit tests.

use proptest::prelude::*;

use crate::word::{EqClassView, RelationalWord};

pub fn base() -> RelationalWord {
    RelationalWord::from_matrix(&[[1, 0, 1, 2], [0, 1, 0, 2], [1, 0, 1, 2], [2, 2, 2, 1]]).unwrap()
}

/// Valid word from raw randomness: a restricted-growth class assignment plus
/// one bit per class pair deciding NEQ versus undefined.
pub fn word_from_seed(growth: &[u8], bits: &[bool]) -> RelationalWord {
    let mut class_of = Vec::with_capacity(growth.len());
    let mut k = 0usize;
    for &g in growth {
        let c = g as usize % (k + 1);
        if c == k {
            k += 1;
        }
        class_of.push(c);
    }
    let mut pairs = Vec::new();
    let mut it = bits.iter().cycle();
    for a in 0..k {
        for b in a + 1..k {
            if *it.next().unwrap_or(&false) {
                pairs.push((a, b));
            }
        }
    }
    EqClassView::new(class_of, k, &pairs).to_word()
}

pub fn arb_word(max_len: usize) -> impl Strategy<Value = RelationalWord> {
    (0..=max_len).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<u8>(), n),
            proptest::collection::vec(any::<bool>(), 1..40),
        )
            .prop_map(|(g, b)| word_from_seed(&g, &b))
    })
}

pub fn arb_fd_word(min_len: usize, max_len: usize) -> impl Strategy<Value = RelationalWord> {
    proptest::collection::vec(0u8..4, min_len..=max_len).prop_map(|v| {
        let s: String = v.iter().map(|&c| (b'a' + c) as char).collect();
        RelationalWord::from_string(&s)
    })
}
