#![allow(dead_code)]

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relword::decider::{all_simple_schemes, SimpleScheme};
use relword::engine::{step_all_raw, RuleKind, ScriptStep};
use relword::{EqClassView, RelationalWord};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// Every valid word arises this way: EQ classes, then some class pairs NEQ.
pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> RelationalWord {
    let n = rng.gen_range(0..=max_len);
    let classes = rng.gen_range(1..=n.max(1));
    let class_of: Vec<usize> = (0..n).map(|_| rng.gen_range(0..classes)).collect();
    let mut neq = Vec::new();
    for a in 0..classes {
        for b in a + 1..classes {
            if rng.gen_bool(0.5) {
                neq.push((a, b));
            }
        }
    }
    // renumber classes by first occurrence, dropping unused ones
    let mut order: Vec<usize> = Vec::new();
    for &c in &class_of {
        if !order.contains(&c) {
            order.push(c);
        }
    }
    let idx = |c: usize| order.iter().position(|&x| x == c);
    let class_of: Vec<usize> = class_of.iter().map(|&c| idx(c).unwrap()).collect();
    let neq: Vec<(usize, usize)> = neq.iter().filter_map(|&(a, b)| Some((idx(a)?, idx(b)?))).collect();
    EqClassView::new(class_of, order.len(), &neq).to_word()
}

pub fn random_fd_word(rng: &mut ChaCha8Rng, min_len: usize, max_len: usize, letters: &[char]) -> RelationalWord {
    RelationalWord::from_string(&random_string(rng, min_len, max_len, letters))
}

pub fn random_string(rng: &mut ChaCha8Rng, min_len: usize, max_len: usize, letters: &[char]) -> String {
    let n = rng.gen_range(min_len..=max_len);
    (0..n).map(|_| *letters.choose(rng).unwrap()).collect()
}

pub fn random_scheme(rng: &mut ChaCha8Rng) -> SimpleScheme {
    all_simple_schemes().choose(rng).unwrap().clone()
}

/// A random applicable script of `steps` steps from `start`.
pub fn random_script(rng: &mut ChaCha8Rng, s: &SimpleScheme, start: &RelationalWord, steps: usize) -> Vec<ScriptStep> {
    let scheme = s.scheme();
    let mut w = start.clone();
    let mut out = Vec::new();
    for _ in 0..steps {
        let (del, ins): (Vec<_>, Vec<_>) = step_all_raw(&w, &scheme).into_iter().partition(|s| s.kind == RuleKind::Delete);
        // insertion sites outnumber deletion sites; even the odds
        let pool = if !del.is_empty() && rng.gen_bool(0.5) { &del } else { &ins };
        let step = pool.choose(rng).expect("insertions always apply");
        out.push(step.script());
        w = step.result.clone();
    }
    out
}
