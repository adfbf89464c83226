//! Shared strategies for the property suites.

#![allow(dead_code)]

use proptest::prelude::*;

use fgtk::{Alphabet, Letter, Word};

pub fn al(s: &str) -> Alphabet {
    Alphabet::parse(s).unwrap()
}

pub fn w(a: &Alphabet, s: &str) -> Word {
    a.parse_word(s).unwrap()
}

/// Freely reduced words over `rank` generators from raw letter sequences of
/// length at most `max_len`.
pub fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..2 * rank, 0..=max_len)
        .prop_map(|codes| Word::from_letters(codes.into_iter().map(Letter::from_code)))
}

pub fn nonempty_word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    word(rank, max_len).prop_filter("nontrivial", |w| !w.is_empty())
}

/// Raw (unreduced) letter sequences.
pub fn letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..2 * rank).prop_map(Letter::from_code), 0..=max_len)
}
