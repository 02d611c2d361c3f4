use super::SimpleScheme;
use crate::word::RelationalWord;

/// All fully defined words of length `n`, one per set partition of the
/// positions, in lexicographic order of their letter strings.
pub fn fully_defined_words(n: usize) -> Vec<RelationalWord> {
    let mut out = Vec::new();
    let mut growth = Vec::with_capacity(n);
    fn go(n: usize, growth: &mut Vec<u8>, out: &mut Vec<RelationalWord>) {
        if growth.len() == n {
            let s: String = growth.iter().map(|&c| (b'a' + c) as char).collect();
            out.push(RelationalWord::from_string(&s));
            return;
        }
        let next = growth.iter().max().map_or(0, |m| m + 1);
        for c in 0..=next {
            growth.push(c);
            go(n, growth, out);
            growth.pop();
        }
    }
    go(n, &mut growth, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    /// e.g. `M1^3`
    pub name: &'static str,
    pub letters: &'static str,
}

/// The short rules, named and ordered as in the usual listing.
pub fn rule_catalog() -> Vec<CatalogEntry> {
    [
        ("M1^2", "ab"),
        ("M2^2", "aa"),
        ("M1^3", "aaa"),
        ("M2^3", "aab"),
        ("M3^3", "abb"),
        ("M4^3", "aba"),
        ("M5^3", "abc"),
    ]
    .into_iter()
    .map(|(name, letters)| CatalogEntry { name, letters })
    .collect()
}

/// The twenty simple schemes: every length-3 insertion with every length-2
/// deletion, then every length-2 insertion with every length-3 deletion.
pub fn all_simple_schemes() -> Vec<SimpleScheme> {
    let cat = rule_catalog();
    let two: Vec<_> = cat.iter().filter(|e| e.letters.len() == 2).collect();
    let three: Vec<_> = cat.iter().filter(|e| e.letters.len() == 3).collect();
    let mut out = Vec::new();
    for i in &three {
        for d in &two {
            out.push(SimpleScheme::new(i.letters, d.letters).unwrap());
        }
    }
    for i in &two {
        for d in &three {
            out.push(SimpleScheme::new(i.letters, d.letters).unwrap());
        }
    }
    out
}
