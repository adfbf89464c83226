mod common;

use proptest::prelude::*;

use common::nonempty_word;
use fgtk::closure::{abelian_closure, counterexample_solution_set};

proptest! {
    #[test]
    fn abelian_closure_is_idempotent(w in nonempty_word(3, 8), k in 1i64..4) {
        let c = abelian_closure(&w.pow(k)).unwrap();
        prop_assert_eq!(abelian_closure(&c).unwrap(), c.clone());
        prop_assert!(c.commutator(&w).is_empty());
    }
}

#[test]
fn solution_sets_grow_monotonically() {
    let mut previous = counterexample_solution_set(0, 1).unwrap();
    for len in 2..=5 {
        let next = counterexample_solution_set(0, len).unwrap();
        assert!(previous.iter().all(|h| next.contains(h)));
        assert_eq!(next.len(), 2);
        previous = next;
    }
    let spectators = counterexample_solution_set(1, 3).unwrap();
    assert_eq!(spectators, previous);
}
