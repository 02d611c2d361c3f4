//! The finite-alphabet language of a relational word: every string whose
//! letters agree with the equal pairs and differ on the unequal pairs.

use thiserror::Error;

use crate::word::{EqClassView, Relation, RelationalWord};

/// Largest `|alphabet|^len` that [`count_language`] will enumerate string by
/// string.
pub const ENUMERATION_CAP: u128 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LanguageError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("alphabet contains a repeated letter {0:?}")]
    RepeatedLetter(char),
    #[error("{space} candidate strings exceed the enumeration cap {cap}")]
    CapExceeded { space: u128, cap: u128 },
}

/// How [`count_language`] produces its number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    /// Enumerate strings when `|A|^n` is within the cap, else count proper
    /// colourings of the class inequality graph.
    Auto,
    /// Always enumerate strings; errors beyond the cap.
    Enumerate,
    /// Count assignments of distinct-enough letters to classes.
    ClassColourings,
    /// The closed binomial `C(|A|, k)` with `k` classes, kept for comparison
    /// only. It undercounts: "ab" over two letters has 2 strings, not 1.
    ClassBinomial,
}

/// All strings over `alphabet` in the language of `w`, in lexicographic
/// order of alphabet indices.
pub fn enumerate_language(w: &RelationalWord, alphabet: &[char]) -> Result<Vec<String>, LanguageError> {
    check_alphabet(alphabet)?;
    let mut out = Vec::new();
    let mut picks = Vec::with_capacity(w.len());
    fill(w, alphabet, &mut picks, &mut out);
    Ok(out)
}

fn check_alphabet(alphabet: &[char]) -> Result<(), LanguageError> {
    if alphabet.is_empty() {
        return Err(LanguageError::EmptyAlphabet);
    }
    for (i, c) in alphabet.iter().enumerate() {
        if alphabet[..i].contains(c) {
            return Err(LanguageError::RepeatedLetter(*c));
        }
    }
    Ok(())
}

fn fill(w: &RelationalWord, alphabet: &[char], picks: &mut Vec<usize>, out: &mut Vec<String>) {
    let i = picks.len();
    if i == w.len() {
        out.push(picks.iter().map(|&p| alphabet[p]).collect());
        return;
    }
    for letter in 0..alphabet.len() {
        let fits = picks.iter().enumerate().all(|(j, &pj)| match w.rel0(j, i) {
            Relation::Eq => pj == letter,
            Relation::Neq => pj != letter,
            Relation::Undef => true,
        });
        if fits {
            picks.push(letter);
            fill(w, alphabet, picks, out);
            picks.pop();
        }
    }
}

/// Does `s` satisfy every constraint of `w`?
pub fn in_language(w: &RelationalWord, s: &str) -> bool {
    let letters: Vec<char> = s.chars().collect();
    letters.len() == w.len()
        && (0..w.len()).all(|i| {
            (i + 1..w.len()).all(|j| match w.rel0(i, j) {
                Relation::Eq => letters[i] == letters[j],
                Relation::Neq => letters[i] != letters[j],
                Relation::Undef => true,
            })
        })
}

/// Number of strings in the language over an alphabet of `alphabet_size`
/// letters.
pub fn count_language(
    w: &RelationalWord,
    alphabet_size: usize,
    method: CountMethod,
) -> Result<u128, LanguageError> {
    let space = (alphabet_size as u128).checked_pow(w.len() as u32).unwrap_or(u128::MAX);
    match method {
        CountMethod::Auto if space <= ENUMERATION_CAP => count_by_enumeration(w, alphabet_size),
        CountMethod::Auto | CountMethod::ClassColourings => Ok(count_colourings(w, alphabet_size)),
        CountMethod::Enumerate if space > ENUMERATION_CAP => Err(LanguageError::CapExceeded {
            space,
            cap: ENUMERATION_CAP,
        }),
        CountMethod::Enumerate => count_by_enumeration(w, alphabet_size),
        CountMethod::ClassBinomial => Ok(binomial(alphabet_size as u128, w.class_view().num_classes as u128)),
    }
}

fn count_by_enumeration(w: &RelationalWord, alphabet_size: usize) -> Result<u128, LanguageError> {
    if alphabet_size == 0 {
        return Ok(u128::from(w.is_empty()));
    }
    let alphabet: Vec<char> = (0..alphabet_size as u32)
        .map(|i| char::from_u32(0x4E00 + i).unwrap_or('?'))
        .collect();
    Ok(enumerate_language(w, &alphabet)?.len() as u128)
}

// Proper colourings of the class graph whose edges are the NEQ class pairs,
// counted per connected component and multiplied.
fn count_colourings(w: &RelationalWord, colours: usize) -> u128 {
    let view = w.class_view();
    let k = view.num_classes;
    let mut seen = vec![false; k];
    let mut total: u128 = 1;
    for root in 0..k {
        if seen[root] {
            continue;
        }
        let mut comp = vec![root];
        seen[root] = true;
        let mut head = 0;
        while head < comp.len() {
            let c = comp[head];
            head += 1;
            for d in 0..k {
                if !seen[d] && view.is_neq(c, d) {
                    seen[d] = true;
                    comp.push(d);
                }
            }
        }
        let mut assigned = Vec::with_capacity(comp.len());
        total = total.saturating_mul(colour_component(&view, &comp, colours, &mut assigned));
        if total == 0 {
            break;
        }
    }
    total
}

fn colour_component(view: &EqClassView, comp: &[usize], colours: usize, assigned: &mut Vec<usize>) -> u128 {
    let i = assigned.len();
    if i == comp.len() {
        return 1;
    }
    let mut total = 0;
    for colour in 0..colours {
        if (0..i).all(|j| !view.is_neq(comp[i], comp[j]) || assigned[j] != colour) {
            assigned.push(colour);
            total += colour_component(view, comp, colours, assigned);
            assigned.pop();
        }
    }
    total
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{arb_word, base};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn abc(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    fn set(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn base_languages() {
        let w = base();
        assert!(enumerate_language(&w, &abc("a")).unwrap().is_empty());
        let two: BTreeSet<_> = enumerate_language(&w, &abc("ab")).unwrap().into_iter().collect();
        assert_eq!(two, set(&["abaa", "abab", "baba", "babb"]));
        let three: BTreeSet<_> = enumerate_language(&w, &abc("abc")).unwrap().into_iter().collect();
        assert_eq!(
            three,
            set(&[
                "abaa", "abab", "abac", "baba", "babb", "babc", "acaa", "acab", "acac", "caca", "cacb", "cacc",
                "bcba", "bcbb", "bcbc", "cbca", "cbcb", "cbcc"
            ])
        );
    }

    #[test]
    fn counts() {
        assert_eq!(count_language(&base(), 3, CountMethod::Auto), Ok(18));
        assert_eq!(count_language(&RelationalWord::empty(), 5, CountMethod::Auto), Ok(1));
        let ab = RelationalWord::from_string("ab");
        assert_eq!(count_language(&ab, 2, CountMethod::Auto), Ok(2));
        assert_eq!(count_language(&ab, 2, CountMethod::ClassBinomial), Ok(1));
        assert_eq!(count_language(&ab, 0, CountMethod::Enumerate), Ok(0));
        assert!(matches!(
            count_language(&RelationalWord::isolated(30), 3, CountMethod::Enumerate),
            Err(LanguageError::CapExceeded { .. })
        ));
        assert_eq!(
            count_language(&RelationalWord::isolated(30), 3, CountMethod::Auto),
            Ok(3u128.pow(30))
        );
    }

    #[test]
    fn alphabet_errors() {
        assert_eq!(enumerate_language(&base(), &[]), Err(LanguageError::EmptyAlphabet));
        assert_eq!(
            enumerate_language(&base(), &abc("aa")),
            Err(LanguageError::RepeatedLetter('a'))
        );
    }

    fn all_strings(n: usize, alphabet: &[char]) -> Vec<String> {
        let mut out = vec![String::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|s| alphabet.iter().map(move |c| format!("{s}{c}")))
                .collect();
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn enumeration_is_exactly_the_constrained_strings(w in arb_word(5), k in 1usize..4) {
            let alphabet: Vec<char> = abc("abc")[..k].to_vec();
            let lang: BTreeSet<String> = enumerate_language(&w, &alphabet).unwrap().into_iter().collect();
            for s in all_strings(w.len(), &alphabet) {
                prop_assert_eq!(lang.contains(&s), in_language(&w, &s));
            }
        }

        #[test]
        fn colouring_count_matches_enumeration(w in arb_word(6), k in 0usize..5) {
            prop_assert_eq!(
                count_language(&w, k, CountMethod::Enumerate).unwrap(),
                count_language(&w, k, CountMethod::ClassColourings).unwrap()
            );
        }
    }
}
