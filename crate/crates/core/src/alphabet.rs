//! Named generators and the textual word grammar.
//!
//! A word is a whitespace-separated list of tokens `name` or `name^k` with
//! `k` a nonzero integer, e.g. `a y^-1 b y^-1`. The empty word is written as
//! the empty string or as `()`.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Printed form of the empty word.
pub const EMPTY_WORD: &str = "()";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Malformed("alphabet must not be empty".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::Parse(format!("invalid generator name `{name}`")));
            }
            if names[..i].contains(name) {
                return Err(Error::Malformed(format!("duplicate generator `{name}`")));
            }
        }
        Ok(Alphabet { names })
    }

    /// Parses a whitespace-separated list of generator names.
    pub fn parse(names: &str) -> Result<Self> {
        Self::new(names.split_whitespace())
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.names[generator]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn generator(&self, name: &str) -> Result<Word> {
        self.index_of(name)
            .map(Word::generator)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))
    }

    /// Alphabet with `other` appended; fails on a shared name.
    pub fn extended<I, S>(&self, other: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(
            self.names
                .iter()
                .cloned()
                .chain(other.into_iter().map(Into::into)),
        )
    }

    pub fn contains_letter(&self, letter: Letter) -> bool {
        letter.generator() < self.rank()
    }

    /// Parses a word without reducing it.
    pub fn parse_letters(&self, text: &str) -> Result<Vec<Letter>> {
        let text = text.trim();
        if text.is_empty() || text == EMPTY_WORD {
            return Ok(Vec::new());
        }
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, exponent) = match token.split_once('^') {
                Some((name, exp)) => {
                    let k: i64 = exp
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?;
                    if k == 0 {
                        return Err(Error::Parse(format!("zero exponent in `{token}`")));
                    }
                    (name, k)
                }
                None => (token, 1),
            };
            let generator = self
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
            let letter = Letter::new(generator, exponent < 0);
            letters.extend(std::iter::repeat_n(
                letter,
                exponent.unsigned_abs() as usize,
            ));
        }
        Ok(letters)
    }

    /// Parses and freely reduces a word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Ok(Word::from_letters(self.parse_letters(text)?))
    }

    pub fn format_letters(&self, letters: &[Letter]) -> String {
        if letters.is_empty() {
            return EMPTY_WORD.to_string();
        }
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i + 1;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let run = (j - i) as i64;
            let name = self.name(letters[i].generator());
            let exponent = if letters[i].is_inverse() { -run } else { run };
            tokens.push(if exponent == 1 {
                name.to_string()
            } else {
                format!("{name}^{exponent}")
            });
            i = j;
        }
        tokens.join(" ")
    }

    pub fn format(&self, word: &Word) -> String {
        self.format_letters(word.letters())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Alphabet::parse("").is_err());
        assert!(Alphabet::parse("x x").is_err());
        assert!(Alphabet::parse("x y-").is_err());
        assert!(Alphabet::parse("a0 B_1 x").is_ok());
    }

    #[test]
    fn parses_powers() {
        let al = Alphabet::parse("x y").unwrap();
        let letters = al.parse_letters("x^3 y^-2 x").unwrap();
        assert_eq!(letters.len(), 6);
        assert_eq!(al.format_letters(&letters), "x^3 y^-2 x");
        assert!(al.parse_letters("x^0").is_err());
        assert!(al.parse_letters("z").is_err());
        assert!(al.parse_letters("x^a").is_err());
        assert!(al.parse_letters("()").unwrap().is_empty());
        assert_eq!(al.format(&Word::identity()), EMPTY_WORD);
    }

    #[test]
    fn case_is_significant() {
        let al = Alphabet::parse("a A").unwrap();
        assert_eq!(al.parse_letters("A").unwrap(), vec![Letter::new(1, false)]);
    }
}
