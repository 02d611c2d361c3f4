//! Relational words: ordered positions with a symmetric three-valued
//! relation (equal, unequal, undefined) on every pair of positions.
//!
//! Positions are 1-based in every public signature; storage is a packed
//! upper triangle, so each unordered pair owns exactly one cell and equality
//! and inequality can never overlap.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The label relation between two positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    /// Labels are different (digit `0`).
    Neq,
    /// Labels are equal (digit `1`).
    Eq,
    /// Nothing is known (digit `2`).
    Undef,
}

impl Relation {
    pub fn digit(self) -> u8 {
        match self {
            Relation::Neq => 0,
            Relation::Eq => 1,
            Relation::Undef => 2,
        }
    }

    pub fn from_digit(d: u8) -> Option<Relation> {
        match d {
            0 => Some(Relation::Neq),
            1 => Some(Relation::Eq),
            2 => Some(Relation::Undef),
            _ => None,
        }
    }

    pub fn is_defined(self) -> bool {
        self != Relation::Undef
    }

    /// EQ against NEQ in either order.
    pub fn conflicts_with(self, other: Relation) -> bool {
        matches!(
            (self, other),
            (Relation::Eq, Relation::Neq) | (Relation::Neq, Relation::Eq)
        )
    }
}

/// Validation and usage errors for relational words. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("row {row} has {found} entries, expected {expected}")]
    NonSquare {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("bad digit {digit:?} at ({row},{col}); expected 0, 1 or 2")]
    BadDigit { row: usize, col: usize, digit: char },
    #[error("diagonal cell ({pos},{pos}) is not 1")]
    DiagonalNotEq { pos: usize },
    #[error("cells ({i},{j}) and ({j},{i}) differ")]
    Asymmetric { i: usize, j: usize },
    #[error("equality is not transitive: ({i},{j}) and ({j},{k}) are 1 but ({i},{k}) is not")]
    NotTransitive { i: usize, j: usize, k: usize },
    #[error("positions {i} and {j} are equal but disagree on position {k}")]
    CongruenceViolation { i: usize, j: usize, k: usize },
    #[error("words have lengths {left} and {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("embedding is not a strictly increasing map of {expected} positions into 1..={target}")]
    BadEmbedding { expected: usize, target: usize },
    #[error("start {start} is out of range 1..={max}")]
    OutOfRange { start: usize, max: usize },
}

/// A validated relational word. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RelationalWord {
    len: usize,
    // upper triangle, row-major, diagonal omitted
    cells: Vec<Relation>,
}

#[inline]
fn tri_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl RelationalWord {
    /// The empty word.
    pub fn empty() -> Self {
        RelationalWord {
            len: 0,
            cells: Vec::new(),
        }
    }

    /// A word of `n` positions with every pair undefined.
    pub fn isolated(n: usize) -> Self {
        RelationalWord {
            len: n,
            cells: vec![Relation::Undef; n * n.saturating_sub(1) / 2],
        }
    }

    /// Build from digit rows, validating every axiom of a relational word.
    pub fn from_matrix<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, WordError> {
        let n = rows.len();
        let mut full = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(WordError::NonSquare {
                    row: r + 1,
                    found: row.len(),
                    expected: n,
                });
            }
            for (c, &d) in row.iter().enumerate() {
                match Relation::from_digit(d) {
                    Some(rel) => full.push(rel),
                    None => {
                        return Err(WordError::BadDigit {
                            row: r + 1,
                            col: c + 1,
                            digit: char::from_digit(d as u32, 36).unwrap_or('?'),
                        })
                    }
                }
            }
        }
        let at = |i: usize, j: usize| full[i * n + j];
        for i in 0..n {
            if at(i, i) != Relation::Eq {
                return Err(WordError::DiagonalNotEq { pos: i + 1 });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if at(i, j) != at(j, i) {
                    return Err(WordError::Asymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j || at(i, j) != Relation::Eq {
                    continue;
                }
                for k in 0..n {
                    if at(j, k) == Relation::Eq && at(i, k) != Relation::Eq {
                        return Err(WordError::NotTransitive {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if at(i, j) != Relation::Eq {
                    continue;
                }
                if let Some(k) = (0..n).find(|&k| at(i, k) != at(j, k)) {
                    return Err(WordError::CongruenceViolation {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                    });
                }
            }
        }
        let mut cells = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                cells.push(at(i, j));
            }
        }
        Ok(RelationalWord { len: n, cells })
    }

    /// A fully defined word: equal letters are equal positions.
    pub fn from_string(s: &str) -> Self {
        let letters: Vec<char> = s.chars().collect();
        let n = letters.len();
        let mut cells = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                cells.push(if letters[i] == letters[j] {
                    Relation::Eq
                } else {
                    Relation::Neq
                });
            }
        }
        RelationalWord { len: n, cells }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Relation between positions `i` and `j` (1-based).
    pub fn relation(&self, i: usize, j: usize) -> Relation {
        assert!(
            (1..=self.len).contains(&i) && (1..=self.len).contains(&j),
            "position out of range"
        );
        self.rel0(i - 1, j - 1)
    }

    #[inline]
    pub(crate) fn rel0(&self, i: usize, j: usize) -> Relation {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Relation::Eq,
            std::cmp::Ordering::Less => self.cells[tri_index(self.len, i, j)],
            std::cmp::Ordering::Greater => self.cells[tri_index(self.len, j, i)],
        }
    }

    /// Digit rows of the matrix form.
    pub fn to_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.len)
            .map(|i| (0..self.len).map(|j| self.rel0(i, j).digit()).collect())
            .collect()
    }

    pub fn is_fully_defined(&self) -> bool {
        self.cells.iter().all(|c| c.is_defined())
    }

    /// Letter form of a fully defined word, classes lettered a, b, c, ...
    /// in order of first occurrence. `None` if some pair is undefined.
    pub fn to_letters(&self) -> Option<String> {
        if !self.is_fully_defined() {
            return None;
        }
        let view = self.class_view();
        Some(view.class_of.iter().map(|&c| class_letter(c)).collect())
    }

    /// Equality of relational words; identical to `==`.
    pub fn equals(&self, other: &RelationalWord) -> bool {
        self == other
    }

    /// True iff some pair is EQ in one word and NEQ in the other.
    pub fn contradicts(&self, other: &RelationalWord) -> Result<bool, WordError> {
        if self.len != other.len {
            return Err(WordError::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(self
            .cells
            .iter()
            .zip(&other.cells)
            .any(|(a, b)| a.conflicts_with(*b)))
    }

    /// Is `self` the scattered subword of `host` picked out by `embedding`
    /// (1-based, strictly increasing)?
    pub fn is_scattered_subword_at(
        &self,
        host: &RelationalWord,
        embedding: &[usize],
    ) -> Result<bool, WordError> {
        let bad = || WordError::BadEmbedding {
            expected: self.len,
            target: host.len,
        };
        if embedding.len() != self.len {
            return Err(bad());
        }
        if embedding
            .iter()
            .any(|&p| p == 0 || p > host.len)
            || embedding.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(bad());
        }
        Ok(self.matches_embedding0(host, embedding.iter().map(|p| p - 1)))
    }

    fn matches_embedding0(
        &self,
        host: &RelationalWord,
        embedding: impl Iterator<Item = usize>,
    ) -> bool {
        let e: Vec<usize> = embedding.collect();
        for i in 0..self.len {
            for j in i + 1..self.len {
                if self.rel0(i, j) != host.rel0(e[i], e[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Does some embedding make `self` a scattered subword of `host`?
    /// Returns the first embedding found (1-based, lexicographic order).
    pub fn find_scattered_embedding(&self, host: &RelationalWord) -> Option<Vec<usize>> {
        fn extend(
            pat: &RelationalWord,
            host: &RelationalWord,
            chosen: &mut Vec<usize>,
        ) -> bool {
            let i = chosen.len();
            if i == pat.len {
                return true;
            }
            let start = chosen.last().map_or(0, |&p| p + 1);
            // leave room for the remaining pattern positions
            let end = host.len + i + 1 - pat.len;
            for p in start..end {
                if chosen
                    .iter()
                    .enumerate()
                    .all(|(q, &hp)| pat.rel0(q, i) == host.rel0(hp, p))
                {
                    chosen.push(p);
                    if extend(pat, host, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        if self.len > host.len {
            return None;
        }
        let mut chosen = Vec::with_capacity(self.len);
        extend(self, host, &mut chosen).then(|| chosen.iter().map(|p| p + 1).collect())
    }

    pub fn is_scattered_subword_of(&self, host: &RelationalWord) -> bool {
        self.find_scattered_embedding(host).is_some()
    }

    /// Contiguous subword test at 1-based `start`.
    pub fn is_subword_at(&self, host: &RelationalWord, start: usize) -> Result<bool, WordError> {
        if self.len == 0 {
            return Ok(true);
        }
        let max = (host.len + 1).saturating_sub(self.len);
        if start == 0 || start > max {
            return Err(WordError::OutOfRange { start, max });
        }
        Ok(self.matches_embedding0(host, (start - 1)..(start - 1 + self.len)))
    }

    /// The scattered subword induced by the given 0-based positions.
    pub(crate) fn restrict0(&self, keep: &[usize]) -> RelationalWord {
        let n = keep.len();
        let mut cells = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                cells.push(self.rel0(keep[a], keep[b]));
            }
        }
        RelationalWord { len: n, cells }
    }

    /// Induced subword on 1-based positions (must be strictly increasing).
    pub fn restrict(&self, positions: &[usize]) -> Result<RelationalWord, WordError> {
        if positions.iter().any(|&p| p == 0 || p > self.len)
            || positions.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(WordError::BadEmbedding {
                expected: positions.len(),
                target: self.len,
            });
        }
        let keep: Vec<usize> = positions.iter().map(|p| p - 1).collect();
        Ok(self.restrict0(&keep))
    }

    /// `self` followed by `other`, every cross pair undefined.
    pub fn concat(&self, other: &RelationalWord) -> RelationalWord {
        let n = self.len + other.len;
        let mut cells = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let rel = match (i < self.len, j < self.len) {
                    (true, true) => self.rel0(i, j),
                    (false, false) => other.rel0(i - self.len, j - self.len),
                    _ => Relation::Undef,
                };
                cells.push(rel);
            }
        }
        RelationalWord { len: n, cells }
    }

    /// Build from a per-cell function without validation; caller guarantees
    /// the result satisfies the word axioms.
    pub(crate) fn from_fn_unchecked(n: usize, f: impl Fn(usize, usize) -> Relation) -> Self {
        let mut cells = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                cells.push(f(i, j));
            }
        }
        RelationalWord { len: n, cells }
    }

    /// Equivalence-class view: classes numbered by first occurrence.
    pub fn class_view(&self) -> EqClassView {
        let mut class_of: Vec<usize> = Vec::with_capacity(self.len);
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..self.len {
            match reps.iter().position(|&r| self.rel0(r, i) == Relation::Eq) {
                Some(c) => class_of.push(c),
                None => {
                    class_of.push(reps.len());
                    reps.push(i);
                }
            }
        }
        let k = reps.len();
        let mut neq = vec![false; k * k];
        for a in 0..k {
            for b in a + 1..k {
                if self.rel0(reps[a], reps[b]) == Relation::Neq {
                    neq[a * k + b] = true;
                    neq[b * k + a] = true;
                }
            }
        }
        EqClassView {
            class_of,
            num_classes: k,
            neq,
        }
    }

    /// Byte key that is equal for two words iff the words are equal.
    pub fn canonical_key(&self) -> Vec<u8> {
        self.class_view().key()
    }
}

/// Letter used for class `c` in letter renderings: a..z, then `#<n>`.
pub(crate) fn class_letter(c: usize) -> char {
    if c < 26 {
        (b'a' + c as u8) as char
    } else {
        char::from_u32(0x100 + c as u32).unwrap_or('?')
    }
}

impl fmt::Debug for RelationalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.to_letters() {
            return write!(f, "RelationalWord({s:?})");
        }
        let rows: Vec<String> = self
            .to_matrix()
            .iter()
            .map(|r| r.iter().map(|d| char::from(b'0' + d)).collect())
            .collect();
        write!(f, "RelationalWord[{}]", rows.join("/"))
    }
}

/// Positions grouped into equality classes plus class-level inequality.
/// Pairs of distinct classes not marked unequal are undefined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqClassView {
    pub class_of: Vec<usize>,
    pub num_classes: usize,
    // num_classes x num_classes, symmetric, false on the diagonal
    neq: Vec<bool>,
}

impl EqClassView {
    pub fn new(class_of: Vec<usize>, num_classes: usize, neq_pairs: &[(usize, usize)]) -> Self {
        let mut neq = vec![false; num_classes * num_classes];
        for &(a, b) in neq_pairs {
            assert!(a != b, "class cannot be unequal to itself");
            neq[a * num_classes + b] = true;
            neq[b * num_classes + a] = true;
        }
        EqClassView {
            class_of,
            num_classes,
            neq,
        }
    }

    pub fn is_neq(&self, a: usize, b: usize) -> bool {
        self.neq[a * self.num_classes + b]
    }

    /// Sorted list of unequal class pairs `(a, b)` with `a < b`.
    pub fn neq_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.num_classes;
        let mut out = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                if self.neq[a * k + b] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_classes];
        for &c in &self.class_of {
            sizes[c] += 1;
        }
        sizes
    }

    pub fn to_word(&self) -> RelationalWord {
        let c = &self.class_of;
        RelationalWord::from_fn_unchecked(c.len(), |i, j| {
            if c[i] == c[j] {
                Relation::Eq
            } else if self.is_neq(c[i], c[j]) {
                Relation::Neq
            } else {
                Relation::Undef
            }
        })
    }

    pub(crate) fn key(&self) -> Vec<u8> {
        let k = self.num_classes;
        let mut out = Vec::with_capacity(4 + 4 * self.class_of.len() + k * k / 8 + 1);
        out.extend_from_slice(&(self.class_of.len() as u32).to_le_bytes());
        for &c in &self.class_of {
            out.extend_from_slice(&(c as u32).to_le_bytes());
        }
        let mut byte = 0u8;
        let mut bit = 0;
        for a in 0..k {
            for b in a + 1..k {
                if self.neq[a * k + b] {
                    byte |= 1 << bit;
                }
                bit += 1;
                if bit == 8 {
                    out.push(byte);
                    byte = 0;
                    bit = 0;
                }
            }
        }
        if bit > 0 {
            out.push(byte);
        }
        out
    }
}
