//! Amalgamated products `B1 *_<c> B2` of two free groups along an infinite
//! cyclic subgroup, identified by `c1 = c2`, and their alternating normal
//! forms.

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::word::{power_of, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    Left,
    Right,
}

impl Factor {
    pub fn other(self) -> Factor {
        match self {
            Factor::Left => Factor::Right,
            Factor::Right => Factor::Left,
        }
    }
}

/// Generators of the left factor come first in the full alphabet, then those
/// of the right factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamPresentation {
    left: Alphabet,
    right: Alphabet,
    full: Alphabet,
    c1: Word,
    c2: Word,
}

impl AmalgamPresentation {
    /// `c1` is a word over `left`, `c2` a word over `right` (local indices).
    pub fn new(left: Alphabet, right: Alphabet, c1: Word, c2: Word) -> Result<Self> {
        if c1.is_empty() || c2.is_empty() {
            return Err(Error::Malformed("edge elements must be nontrivial".into()));
        }
        if c1.max_generator().is_some_and(|g| g >= left.rank())
            || c2.max_generator().is_some_and(|g| g >= right.rank())
        {
            return Err(Error::AlphabetMismatch(
                "edge element outside its factor".into(),
            ));
        }
        let full = left
            .extended(right.names().iter().cloned())
            .map_err(|_| Error::Malformed("factor alphabets must be disjoint".into()))?;
        let shift = left.rank();
        let c2 = Word::from_letters(
            c2.letters()
                .iter()
                .map(|l| crate::word::Letter::new(l.generator() + shift, l.is_inverse())),
        );
        Ok(AmalgamPresentation {
            left,
            right,
            full,
            c1,
            c2,
        })
    }

    pub fn parse(left: Alphabet, right: Alphabet, c1: &str, c2: &str) -> Result<Self> {
        let c1 = left.parse_word(c1)?;
        let c2 = right.parse_word(c2)?;
        Self::new(left, right, c1, c2)
    }

    pub fn left(&self) -> &Alphabet {
        &self.left
    }

    pub fn right(&self) -> &Alphabet {
        &self.right
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.full
    }

    /// Edge element of a factor, over the full alphabet.
    pub fn edge(&self, factor: Factor) -> &Word {
        match factor {
            Factor::Left => &self.c1,
            Factor::Right => &self.c2,
        }
    }

    pub fn factor_of_generator(&self, generator: usize) -> Factor {
        if generator < self.left.rank() {
            Factor::Left
        } else {
            Factor::Right
        }
    }

    fn lies_in(&self, w: &Word, factor: Factor) -> bool {
        w.letters()
            .iter()
            .all(|l| self.factor_of_generator(l.generator()) == factor)
    }

    /// The defining identification `c1 = c2`.
    pub fn relation(&self) -> (Word, Word) {
        (self.c1.clone(), self.c2.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syllable {
    pub factor: Factor,
    pub word: Word,
}

/// Cuts a word over the full alphabet into maximal single-factor syllables.
pub fn split_syllables(pres: &AmalgamPresentation, w: &Word) -> Vec<Syllable> {
    let mut out: Vec<Syllable> = Vec::new();
    let mut current: Vec<crate::word::Letter> = Vec::new();
    let mut factor = None;
    for &l in w.letters() {
        let f = pres.factor_of_generator(l.generator());
        if factor.is_some_and(|g| g != f) {
            out.push(Syllable {
                factor: factor.unwrap(),
                word: Word::from_letters(current.drain(..)),
            });
        }
        factor = Some(f);
        current.push(l);
    }
    if let Some(f) = factor {
        out.push(Syllable {
            factor: f,
            word: Word::from_letters(current),
        });
    }
    out
}

/// Normal form of an alternating product of syllables: adjacent syllables
/// from the same factor are multiplied, and a syllable lying in the edge
/// group is moved across into its neighbour. The result alternates and no
/// syllable lies in the edge group unless it is the only one.
pub fn amalgam_reduce(pres: &AmalgamPresentation, syllables: &[Syllable]) -> Result<Vec<Syllable>> {
    for pair in syllables.windows(2) {
        if pair[0].factor == pair[1].factor {
            return Err(Error::Malformed(
                "consecutive syllables from the same factor".into(),
            ));
        }
    }
    for s in syllables {
        if !pres.lies_in(&s.word, s.factor) {
            return Err(Error::Malformed(
                "syllable uses letters of the other factor".into(),
            ));
        }
    }
    let translate = |s: &Syllable| -> Option<Syllable> {
        power_of(&s.word, pres.edge(s.factor)).map(|p| Syllable {
            factor: s.factor.other(),
            word: pres.edge(s.factor.other()).pow(p),
        })
    };
    let mut stack: Vec<Syllable> = Vec::new();
    for s in syllables {
        let mut s = s.clone();
        loop {
            if s.word.is_empty() {
                break;
            }
            if let Some(top) = stack.last() {
                if top.factor == s.factor {
                    let top = stack.pop().unwrap();
                    s.word = &top.word * &s.word;
                    continue;
                }
                if let Some(moved) = translate(top) {
                    stack.pop();
                    s.word = &moved.word * &s.word;
                    continue;
                }
                if let Some(moved) = translate(&s) {
                    let top = stack.pop().unwrap();
                    s = Syllable {
                        factor: top.factor,
                        word: &top.word * &moved.word,
                    };
                    continue;
                }
            }
            stack.push(s);
            break;
        }
    }
    Ok(stack)
}

/// Normal form of a word over the full alphabet.
pub fn amalgam_normal_form(pres: &AmalgamPresentation, w: &Word) -> Vec<Syllable> {
    amalgam_reduce(pres, &split_syllables(pres, w)).expect("split syllables alternate")
}

pub fn syllables_to_word(syllables: &[Syllable]) -> Word {
    Word::from_letters(
        syllables
            .iter()
            .flat_map(|s| s.word.letters().iter().copied()),
    )
}

/// Equality in the amalgam: `w1 w2⁻¹` has the trivial normal form.
pub fn amalgam_equal(pres: &AmalgamPresentation, w1: &Word, w2: &Word) -> bool {
    amalgam_normal_form(pres, &(w1 * &w2.inverse())).is_empty()
}

pub fn format_syllables(pres: &AmalgamPresentation, syllables: &[Syllable]) -> String {
    if syllables.is_empty() {
        return crate::alphabet::EMPTY_WORD.to_string();
    }
    syllables
        .iter()
        .map(|s| format!("[{}]", pres.alphabet().format(&s.word)))
        .collect::<Vec<_>>()
        .join(" ")
}
