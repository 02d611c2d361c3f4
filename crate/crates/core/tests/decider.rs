mod common;

use relword::decider::{
    all_simple_schemes, classify, compute_fdl, decide_membership, explore, fully_defined_words, Budget, Member,
    SchemeCase, SimpleScheme,
};
use relword::RelationalWord;

const SMALL: Budget = Budget { max_len: 7, max_depth: 4 };

#[test]
fn yes_witnesses_replay_from_epsilon() {
    for s in all_simple_schemes() {
        for n in 0..=3 {
            for v in fully_defined_words(n) {
                let verdict = decide_membership(&s, &v, SMALL).unwrap();
                if verdict.member == Member::Yes {
                    let t = verdict.witness.expect("YES carries a witness");
                    assert!(t.start.is_empty(), "{s} {v:?}");
                    assert!(t.final_word().equals(&v), "{s} {v:?}");
                    t.verify(&s.scheme()).unwrap();
                } else {
                    assert!(verdict.witness.is_none());
                }
            }
        }
    }
}

#[test]
fn verdicts_are_deterministic() {
    let s = SimpleScheme::new("abc", "aa").unwrap();
    for v in fully_defined_words(3) {
        let a = decide_membership(&s, &v, SMALL).unwrap();
        let b = decide_membership(&s, &v, SMALL).unwrap();
        assert_eq!(a.member, b.member);
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.states, b.states);
    }
}

// Every fully defined scattered subword of a reachable word, up to the
// bound, must come out YES.
#[test]
fn subwords_of_reachable_words_are_members() {
    for (i, d) in [("aba", "ab"), ("ab", "abb"), ("abc", "aa")] {
        let s = SimpleScheme::new(i, d).unwrap();
        let bound = classify(&s).bound_k.unwrap();
        let ex = explore(&s.scheme(), &[RelationalWord::empty()], Budget { max_len: 6, max_depth: 2 }, |_| false);
        let mut checked = 0;
        for node in &ex.nodes {
            let w = &node.word;
            for mask in 1u32..(1 << w.len()) {
                let pos: Vec<usize> = (1..=w.len()).filter(|p| mask >> (p - 1) & 1 == 1).collect();
                if pos.len() > bound {
                    continue;
                }
                let v = w.restrict(&pos).unwrap();
                if !v.is_fully_defined() {
                    continue;
                }
                let verdict = decide_membership(&s, &v, Budget { max_len: 6, max_depth: 2 }).unwrap();
                assert_eq!(verdict.member, Member::Yes, "{s}: {v:?} inside {w:?}");
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn fdl_members_are_yes() {
    for s in all_simple_schemes() {
        let r = compute_fdl(&s, SMALL);
        if classify(&s).case == SchemeCase::AllEqual {
            assert!(r.all_equal && r.members.is_empty());
            continue;
        }
        assert!(r.members.iter().any(RelationalWord::is_empty), "{s}");
        for v in &r.members {
            assert_eq!(decide_membership(&s, v, SMALL).unwrap().member, Member::Yes, "{s} {v:?}");
        }
    }
}

#[test]
fn words_beyond_the_bound_are_no() {
    for s in all_simple_schemes() {
        let Some(k) = classify(&s).bound_k else { continue };
        let v = RelationalWord::from_string(&"ab".repeat(k).chars().take(k + 1).collect::<String>());
        assert_eq!(decide_membership(&s, &v, SMALL).unwrap().member, Member::No, "{s}");
    }
}
