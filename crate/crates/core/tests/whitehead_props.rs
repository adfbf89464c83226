mod common;

use proptest::prelude::*;

use common::{al, nonempty_word, word};
use fgtk::whitehead::{is_primitive, minimize_tuple, whitehead_moves, Decision};
use fgtk::word::CyclicWord;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moves_are_invertible(w in word(3, 10), index in 0usize..1000) {
        let a = al("x y z");
        let moves = whitehead_moves(&a);
        let m = &moves[index % moves.len()];
        prop_assert_eq!(m.inverse().apply(&m.apply(&w)), w);
    }

    #[test]
    fn primitivity_is_automorphism_invariant(w in nonempty_word(2, 6), index in 0usize..1000) {
        let a = al("x y");
        let moves = whitehead_moves(&a);
        let image = moves[index % moves.len()].apply(&w);
        let before = is_primitive(&w, &a).unwrap();
        let after = is_primitive(&image, &a).unwrap();
        prop_assert_ne!(before, Decision::Inconclusive);
        prop_assert_eq!(before, after);
    }

    #[test]
    fn descent_trace_replays(ws in prop::collection::vec(word(2, 8), 1..=2)) {
        let a = al("x y");
        let trace = minimize_tuple(&ws, &a);
        prop_assert!(trace.lengths.windows(2).all(|p| p[1] < p[0]));
        let replayed = trace.replay();
        prop_assert_eq!(replayed.len(), trace.final_words.len());
        for (r, f) in replayed.iter().zip(&trace.final_words) {
            prop_assert_eq!(CyclicWord::of(r), CyclicWord::of(f));
        }
    }
}
