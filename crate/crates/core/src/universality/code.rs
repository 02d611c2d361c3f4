use super::{StringInsDelSystem, UniversalityError};
use crate::engine::{Rule, Scheme, System};
use crate::word::RelationalWord;

/// The codeword morphism for a fixed alphabet and parameter `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeMorphism {
    alphabet: Vec<char>,
    k: usize,
}

impl CodeMorphism {
    /// `k = None` picks the smallest legal value, `n + 3`.
    pub fn new(alphabet: &[char], k: Option<usize>) -> Result<CodeMorphism, UniversalityError> {
        let n = alphabet.len();
        let k = k.unwrap_or(n + 3);
        if k <= n + 2 {
            return Err(UniversalityError::KTooSmall { k, n });
        }
        Ok(CodeMorphism {
            alphabet: alphabet.to_vec(),
            k,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    /// Letter string of the codeword for `c`.
    pub fn codeword(&self, c: char) -> Result<String, UniversalityError> {
        let i = 1 + self.alphabet.iter().position(|&x| x == c).ok_or(UniversalityError::UnknownLetter(c))?;
        Ok(format!("{}{}{}", "ab".repeat(self.k), "a".repeat(i), "ba".repeat(self.k)))
    }

    pub fn codeword_len(&self, c: char) -> Result<usize, UniversalityError> {
        Ok(self.codeword(c)?.len())
    }

    /// Letter string of the codewords of `s`, concatenated.
    pub fn code_string(&self, s: &str) -> Result<String, UniversalityError> {
        s.chars().map(|c| self.codeword(c)).collect()
    }

    /// `s` encoded as one fully defined relational word.
    pub fn encode_string(&self, s: &str) -> Result<RelationalWord, UniversalityError> {
        Ok(RelationalWord::from_string(&self.code_string(s)?))
    }

    /// Positions grouped by the defined relations, 0-based: `w` is a set of
    /// fully defined pieces that know nothing about each other, or `None`.
    fn components(w: &RelationalWord) -> Option<Vec<usize>> {
        let n = w.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for i in 0..n {
            if comp[i] != usize::MAX {
                continue;
            }
            comp[i] = count;
            for j in i + 1..n {
                if w.rel0(i, j).is_defined() {
                    if comp[j] != usize::MAX {
                        return None;
                    }
                    comp[j] = count;
                }
            }
            count += 1;
        }
        // each piece must be closed: defined inside, undefined across
        for i in 0..n {
            for j in i + 1..n {
                if (comp[i] == comp[j]) != w.rel0(i, j).is_defined() {
                    return None;
                }
            }
        }
        Some(comp)
    }

    // Read a letter string as codewords, with the start of each.
    fn parse_codewords(&self, s: &str) -> Option<Vec<(char, usize)>> {
        let b = s.as_bytes();
        let (k, n) = (self.k, self.alphabet.len());
        let mut out = Vec::new();
        let mut at = 0;
        while at < b.len() {
            let start = at;
            let left = b.get(at..at + 2 * k)?;
            if left.chunks(2).any(|p| p != b"ab") {
                return None;
            }
            at += 2 * k;
            let i = b[at..].iter().take_while(|&&c| c == b'a').count();
            if i == 0 || i > n {
                return None;
            }
            at += i;
            let right = b.get(at..at + 2 * k)?;
            if right.chunks(2).any(|p| p != b"ba") {
                return None;
            }
            at += 2 * k;
            out.push((self.alphabet[i - 1], start));
        }
        Some(out)
    }

    /// The string whose code is `w`, if `w` is canonical: every piece of
    /// `w` (see `components`) is made of whole codewords, and reading the
    /// pieces position by position spells a code.
    pub fn decode(&self, w: &RelationalWord) -> Option<String> {
        let comp = Self::components(w)?;
        let n = w.len();
        let mut letters = vec![0u8; n];
        let mut seen = vec![false; comp.iter().max().map_or(0, |m| m + 1)];
        for i in 0..n {
            if seen[comp[i]] {
                continue;
            }
            seen[comp[i]] = true;
            let pos: Vec<usize> = (i..n).filter(|&j| comp[j] == comp[i]).collect();
            let read = w.restrict(&pos.iter().map(|p| p + 1).collect::<Vec<_>>()).ok()?.to_letters()?;
            for (p, c) in pos.iter().zip(read.bytes()) {
                letters[*p] = c;
            }
        }
        let parsed = self.parse_codewords(std::str::from_utf8(&letters).ok()?)?;
        let mut out = String::with_capacity(parsed.len());
        for (idx, &(c, start)) in parsed.iter().enumerate() {
            let end = parsed.get(idx + 1).map_or(n, |p| p.1);
            if comp[start..end].iter().any(|&x| x != comp[start]) {
                return None;
            }
            out.push(c);
        }
        Some(out)
    }

    pub fn is_canonical(&self, w: &RelationalWord) -> bool {
        self.decode(w).is_some()
    }
}

/// The relational system whose rules and axioms are the codes of the
/// string system's.
pub fn encode(sys: &StringInsDelSystem, k: Option<usize>) -> Result<(System, CodeMorphism), UniversalityError> {
    sys.check()?;
    let m = CodeMorphism::new(&sys.alphabet, k)?;
    let ins = sys
        .ins
        .iter()
        .enumerate()
        .map(|(i, w)| Ok(Rule::insertion(format!("i{}", i + 1), &m.code_string(w)?)?))
        .collect::<Result<Vec<_>, UniversalityError>>()?;
    let del = sys
        .del
        .iter()
        .enumerate()
        .map(|(i, w)| Ok(Rule::deletion(format!("d{}", i + 1), &m.code_string(w)?)?))
        .collect::<Result<Vec<_>, UniversalityError>>()?;
    let axioms = sys.start_strings().iter().map(|a| m.encode_string(a)).collect::<Result<_, _>>()?;
    Ok((
        System {
            scheme: Scheme::new(ins, del)?,
            axioms,
        },
        m,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::insert_block;
    use crate::word::EqClassView;
    use std::collections::HashSet;

    fn toy() -> CodeMorphism {
        CodeMorphism::new(&['x'], Some(4)).unwrap()
    }

    #[test]
    fn codeword_lengths() {
        let m = toy();
        assert_eq!(m.codeword('x').unwrap(), "abababab".to_string() + "a" + "babababa");
        assert_eq!(m.codeword_len('x').unwrap(), 17);
        assert_eq!(m.encode_string("xx").unwrap().len(), 34);
        assert!(m.encode_string("xx").unwrap().is_fully_defined());
        assert!(matches!(CodeMorphism::new(&['x'], Some(3)), Err(UniversalityError::KTooSmall { k: 3, n: 1 })));
        assert_eq!(CodeMorphism::new(&['x', 'y'], None).unwrap().k(), 5);
        let m3 = CodeMorphism::new(&['x', 'y', 'z'], None).unwrap();
        assert_eq!(m3.codeword('z').unwrap(), format!("{}aaa{}", "ab".repeat(6), "ba".repeat(6)));
    }

    fn strings(alpha: &[char], n: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        for _ in 0..n {
            out = out.iter().flat_map(|s| alpha.iter().map(move |c| format!("{s}{c}"))).collect();
        }
        out
    }

    #[test]
    fn injective_and_decodable() {
        let alpha = ['x', 'y', 'z'];
        let m = CodeMorphism::new(&alpha, None).unwrap();
        let mut keys = HashSet::new();
        for n in 0..=3 {
            for s in strings(&alpha, n) {
                let w = m.encode_string(&s).unwrap();
                assert!(keys.insert(w.canonical_key()), "{s}");
                assert_eq!(m.decode(&w).as_deref(), Some(s.as_str()));
            }
        }
    }

    #[test]
    fn concatenated_codes_are_canonical() {
        let m = CodeMorphism::new(&['x', 'y'], None).unwrap();
        let w = m.encode_string("xy").unwrap().concat(&m.encode_string("y").unwrap());
        assert_eq!(m.decode(&w).as_deref(), Some("xyy"));
        let w = m.encode_string("x").unwrap().concat(&RelationalWord::empty());
        assert_eq!(m.decode(&w).as_deref(), Some("x"));
        assert_eq!(m.decode(&RelationalWord::empty()).as_deref(), Some(""));
    }

    #[test]
    fn split_pieces_are_canonical() {
        let m = CodeMorphism::new(&['x', 'y'], None).unwrap();
        let outer = m.encode_string("yx").unwrap();
        let w = insert_block(&outer, &m.encode_string("x").unwrap(), m.codeword_len('y').unwrap()).unwrap();
        assert_eq!(m.decode(&w).as_deref(), Some("yxx"));
        // a cut inside a codeword is still refused
        let w = insert_block(&outer, &m.encode_string("x").unwrap(), 3).unwrap();
        assert_eq!(m.decode(&w), None);
    }

    #[test]
    fn broken_words_are_not_canonical() {
        let m = toy();
        let w = m.encode_string("x").unwrap();
        let block = m.encode_string("xxx").unwrap();
        for site in 0..=w.len() {
            let b = insert_block(&w, &block, site).unwrap();
            let expect = site == 0 || site == w.len();
            assert_eq!(m.is_canonical(&b), expect, "site {site}");
        }
        // a block that is partly defined to its neighbour
        let letters = m.code_string("x").unwrap();
        let class_of: Vec<usize> = letters.bytes().map(|c| (c - b'a') as usize).chain(letters.bytes().map(|c| (c - b'a') as usize + 2)).collect();
        let joined = EqClassView::new(class_of, 4, &[(0, 1), (2, 3), (0, 2)]).to_word();
        assert_eq!(joined.len(), 34);
        assert!(!m.is_canonical(&joined));
        // wrong letters inside a single block
        assert!(!m.is_canonical(&RelationalWord::from_string("ababab")));
        assert!(!m.is_canonical(&RelationalWord::isolated(1)));
    }

    #[test]
    fn encode_toy_system() {
        let sys = StringInsDelSystem::parse("alpha: x\nterm: x\nins: xxx\ndel: xx\naxiom: x\n").unwrap();
        let (rs, m) = encode(&sys, Some(4)).unwrap();
        assert_eq!(rs.scheme.ins_rules()[0].len(), 51);
        assert_eq!(rs.scheme.del_rules()[0].len(), 34);
        assert_eq!(rs.axioms, vec![m.encode_string("x").unwrap()]);
    }
}
