mod common;

use common::{fixture, random_string, rng};
use rand::Rng;
use relword::engine::{delete_block, insert_block};
use relword::universality::{compare_languages, encode, reachable_strings, StringInsDelSystem};

fn toy() -> StringInsDelSystem {
    StringInsDelSystem::read_file(&fixture("toy.sys")).unwrap()
}

fn two_letter() -> StringInsDelSystem {
    StringInsDelSystem::parse("alpha: x y\nterm: x y\nins: xyx yy\ndel: xy yx\naxiom: x\n").unwrap()
}

#[test]
fn depth_zero_is_the_axioms() {
    let c = compare_languages(&toy(), Some(4), 0).unwrap();
    assert_eq!(c.levels.len(), 1);
    assert!(c.holds());
    assert_eq!(c.levels[0].canonical_words, 1);
}

#[test]
fn two_letter_system_agrees_at_depth_one() {
    let c = compare_languages(&two_letter(), None, 1).unwrap();
    assert!(c.holds(), "{c:?}");
}

#[test]
fn codes_concatenate() {
    let sys = two_letter();
    let (_, m) = encode(&sys, None).unwrap();
    let mut r = rng(21);
    for _ in 0..200 {
        let u = random_string(&mut r, 0, 3, &sys.alphabet);
        let v = random_string(&mut r, 0, 3, &sys.alphabet);
        let uv = format!("{u}{v}");
        assert_eq!(m.code_string(&uv).unwrap(), m.code_string(&u).unwrap() + &m.code_string(&v).unwrap());
        let joined = m.encode_string(&u).unwrap().concat(&m.encode_string(&v).unwrap());
        assert_eq!(m.decode(&joined).as_deref(), Some(uv.as_str()));
        assert_eq!(m.decode(&m.encode_string(&uv).unwrap()).as_deref(), Some(uv.as_str()));
    }
}

// Each string step has a relational counterpart at the matching offset
// whose result decodes to the new string.
#[test]
fn string_derivations_lift() {
    let sys = two_letter();
    let (rs, m) = encode(&sys, None).unwrap();
    let offset = |s: &str, p: usize| -> usize { s.chars().take(p).map(|c| m.codeword_len(c).unwrap()).sum() };
    let mut r = rng(22);
    for _ in 0..50 {
        let mut s = sys.axioms[0].clone();
        let mut w = m.encode_string(&s).unwrap();
        for _ in 0..4 {
            let dels: Vec<(usize, usize)> = sys
                .del
                .iter()
                .enumerate()
                .flat_map(|(i, d)| s.match_indices(d.as_str()).map(move |(p, _)| (i, p)).collect::<Vec<_>>())
                .collect();
            if !dels.is_empty() && r.gen_bool(0.5) {
                let (i, p) = dels[r.gen_range(0..dels.len())];
                let body = rs.scheme.del_rules()[i].body();
                w = delete_block(&w, body, offset(&s, p) + 1).expect("the codes line up");
                s.replace_range(p..p + sys.del[i].len(), "");
            } else {
                let i = r.gen_range(0..sys.ins.len());
                let p = r.gen_range(0..=s.len());
                w = insert_block(&w, rs.scheme.ins_rules()[i].body(), offset(&s, p)).unwrap();
                s.insert_str(p, &sys.ins[i]);
            }
            assert_eq!(m.decode(&w).as_deref(), Some(s.as_str()));
        }
    }
}

#[test]
fn reachable_strings_grow_monotonically() {
    let levels = reachable_strings(&two_letter(), 3);
    for pair in levels.windows(2) {
        assert!(pair[0].is_subset(&pair[1]));
    }
}
