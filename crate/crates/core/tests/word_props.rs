mod common;

use proptest::prelude::*;

use common::{al, letters, nonempty_word, word};
use fgtk::word::{
    abelianize, centralizer, count_reduced_words, cyclically_reduce, extract_root, is_conjugate,
    reduce, reduced_words, CyclicWord,
};
use fgtk::Word;

proptest! {
    #[test]
    fn reduction_is_idempotent_and_shortens(raw in letters(3, 20)) {
        let a = al("x y z");
        let w = reduce(&raw, &a).unwrap();
        prop_assert!(w.len() <= raw.len());
        prop_assert_eq!(reduce(w.letters(), &a).unwrap(), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inverse()));
    }

    #[test]
    fn group_laws(a in word(3, 10), b in word(3, 10), c in word(3, 10)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a * &a.inverse()).is_empty());
        prop_assert_eq!((&a * &b).inverse(), &b.inverse() * &a.inverse());
    }

    #[test]
    fn cyclic_reduction_recovers_word(w in word(3, 16)) {
        let (core, c) = cyclically_reduce(&w);
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(core.conjugate_by(&c), w);
    }

    #[test]
    fn conjugacy_witness(w in word(3, 10), c in word(3, 8)) {
        let target = w.conjugate_by(&c);
        let g = is_conjugate(&w, &target).expect("conjugate by construction");
        prop_assert_eq!(w.conjugate_by(&g), target.clone());
        prop_assert_eq!(CyclicWord::of(&w), CyclicWord::of(&target));
    }

    #[test]
    fn root_extraction(w in nonempty_word(2, 6), k in 1i64..5) {
        let (root, n) = extract_root(&w.pow(k)).unwrap();
        prop_assert_eq!(root.pow(n as i64), w.pow(k));
        prop_assert_eq!(extract_root(&root).unwrap().1, 1);
        prop_assert_eq!(n as i64 % k, 0);
    }

    #[test]
    fn centralizer_contains_word(w in nonempty_word(3, 8)) {
        let c = centralizer(&w).unwrap();
        prop_assert!(c.commutator(&w).is_empty());
        prop_assert!((-8..=8).any(|k| c.pow(k) == w));
    }

    #[test]
    fn abelianization_is_additive(a in word(3, 10), b in word(3, 10)) {
        let sum: Vec<i64> = abelianize(a.letters(), 3)
            .iter()
            .zip(abelianize(b.letters(), 3))
            .map(|(x, y)| x + y)
            .collect();
        prop_assert_eq!(abelianize((&a * &b).letters(), 3), sum);
    }

    #[test]
    fn format_parse_roundtrip(w in word(4, 12)) {
        let a = al("a b u y");
        prop_assert_eq!(a.parse_word(&a.format(&w)).unwrap(), w);
    }
}

#[test]
fn enumeration_counts() {
    for rank in 1..=3 {
        let all = reduced_words(rank, 5);
        let expected: u64 = (0..=5).map(|len| count_reduced_words(rank, len)).sum();
        assert_eq!(all.len() as u64, expected);
        let distinct: std::collections::BTreeSet<&Word> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
    }
}
