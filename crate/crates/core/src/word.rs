//! Reduced words in a free group and the usual word algorithms: free and
//! cyclic reduction, conjugacy with witnesses, roots, centralizers and
//! abelianization.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// A generator or its inverse.
///
/// Letters are ordered by generator index first and then by sign, with the
/// positive letter before its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    /// Letter with code `2 * generator + inverse`.
    pub fn from_code(code: usize) -> Self {
        Letter(code as u32)
    }

    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// +1 or -1.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

/// A freely reduced word. Every constructor reduces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

fn push_reducing(buffer: &mut Vec<Letter>, letter: Letter) {
    if buffer.last() == Some(&letter.inverse()) {
        buffer.pop();
    } else {
        buffer.push(letter);
    }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(index: usize) -> Self {
        Word {
            letters: vec![Letter::new(index, false)],
        }
    }

    pub fn letter(letter: Letter) -> Self {
        Word {
            letters: vec![letter],
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut buffer = Vec::new();
        for l in letters {
            push_reducing(&mut buffer, l);
        }
        Word { letters: buffer }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = Word::identity();
        for _ in 0..exponent.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// `self * other * self^-1`.
    pub fn conjugate_by(&self, conjugator: &Word) -> Word {
        conjugator * &(self * &conjugator.inverse())
    }

    /// `[self, other] = self other self^-1 other^-1`.
    pub fn commutator(&self, other: &Word) -> Word {
        &(&(self * other) * &self.inverse()) * &other.inverse()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator()).max()
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.len() == 1 || f != l.inverse(),
            _ => true,
        }
    }

    pub fn contains_generator(&self, generator: usize) -> bool {
        self.letters.iter().any(|l| l.generator() == generator)
    }

    /// Replaces every letter by the image of its generator (inverted for
    /// inverse letters) and reduces.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut buffer = Vec::with_capacity(self.len());
        for l in &self.letters {
            let image = &images[l.generator()];
            if l.is_inverse() {
                for x in image.letters.iter().rev() {
                    push_reducing(&mut buffer, x.inverse());
                }
            } else {
                for &x in &image.letters {
                    push_reducing(&mut buffer, x);
                }
            }
        }
        Word { letters: buffer }
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut buffer = self.letters.clone();
        for &l in &rhs.letters {
            push_reducing(&mut buffer, l);
        }
        Word { letters: buffer }
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

impl fmt::Display for Word {
    /// Generic rendering with `g0, g1, ...`; use [`Alphabet::format`] for names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0))
            .map(|i| format!("g{i}"))
            .collect();
        let al = Alphabet::new(names).map_err(|_| fmt::Error)?;
        f.write_str(&al.format(self))
    }
}

/// Free reduction of a raw letter sequence, checking letters against the alphabet.
pub fn reduce(letters: &[Letter], alphabet: &Alphabet) -> Result<Word> {
    if let Some(bad) = letters.iter().find(|l| !alphabet.contains_letter(**l)) {
        return Err(Error::Malformed(format!(
            "generator index {} out of range for alphabet of rank {}",
            bad.generator(),
            alphabet.rank()
        )));
    }
    Ok(Word::from_letters(letters.iter().copied()))
}

/// A cyclically reduced word considered up to rotation. Stored as its
/// lexicographically least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    canonical: Vec<Letter>,
}

/// Index of the least rotation of `letters`.
fn least_rotation(letters: &[Letter]) -> usize {
    let n = letters.len();
    let mut best = 0;
    for start in 1..n {
        let candidate = letters[start..].iter().chain(&letters[..start]);
        let current = letters[best..].iter().chain(&letters[..best]);
        if candidate.cmp(current) == Ordering::Less {
            best = start;
        }
    }
    best
}

impl CyclicWord {
    /// Cyclic class of a cyclically reduced word.
    pub fn new(core: &Word) -> Self {
        debug_assert!(core.is_cyclically_reduced());
        let letters = core.letters();
        let start = least_rotation(letters);
        let mut canonical = letters[start..].to_vec();
        canonical.extend_from_slice(&letters[..start]);
        CyclicWord { canonical }
    }

    /// Cyclic class of the cyclic core of any reduced word.
    pub fn of(word: &Word) -> Self {
        Self::new(&cyclically_reduce(word).0)
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }

    pub fn representative(&self) -> Word {
        Word {
            letters: self.canonical.clone(),
        }
    }
}

/// Splits `w = conjugator * core * conjugator^-1` with `core` cyclically reduced.
pub fn cyclically_reduce(w: &Word) -> (Word, Word) {
    let letters = w.letters();
    let n = letters.len();
    let mut k = 0;
    while 2 * k + 1 < n && letters[k] == letters[n - 1 - k].inverse() {
        k += 1;
    }
    (
        Word {
            letters: letters[k..n - k].to_vec(),
        },
        Word {
            letters: letters[..k].to_vec(),
        },
    )
}

/// Returns `g` with `g w1 g^-1 = w2`, or `None` if the two are not conjugate.
///
/// With `w_i = c_i k_i c_i^-1` and `k2` the rotation of `k1` starting at the
/// least index `i`, the witness is `c2 * k1[i..] * c1^-1` (`k1[i..]` read as
/// empty when `i = 0`).
pub fn is_conjugate(w1: &Word, w2: &Word) -> Option<Word> {
    let (k1, c1) = cyclically_reduce(w1);
    let (k2, c2) = cyclically_reduce(w2);
    if k1.len() != k2.len() {
        return None;
    }
    let n = k1.len();
    if n == 0 {
        return Some(Word::identity());
    }
    let a = k1.letters();
    let b = k2.letters();
    let shift = (0..n).find(|&i| a[i..].iter().chain(&a[..i]).eq(b.iter()))?;
    let tail = if shift == 0 {
        Word::identity()
    } else {
        Word {
            letters: a[shift..].to_vec(),
        }
    };
    Some(&(&c2 * &tail) * &c1.inverse())
}

/// Boolean conjugacy test without building a witness.
pub fn are_conjugate(w1: &Word, w2: &Word) -> bool {
    CyclicWord::of(w1) == CyclicWord::of(w2)
}

/// Writes a nontrivial `w` as `root^exponent` with the exponent maximal.
pub fn extract_root(w: &Word) -> Result<(Word, u64)> {
    if w.is_empty() {
        return Err(Error::Domain("the trivial word has no root".into()));
    }
    let (core, conjugator) = cyclically_reduce(w);
    let letters = core.letters();
    let n = letters.len();
    let period = (1..=n)
        .filter(|d| n % d == 0)
        .find(|&d| (d..n).all(|i| letters[i] == letters[i - d]))
        .unwrap_or(n);
    let root = Word {
        letters: letters[..period].to_vec(),
    }
    .conjugate_by(&conjugator);
    Ok((root, (n / period) as u64))
}

/// Generator of the (infinite cyclic) centralizer of a nontrivial element.
pub fn centralizer(w: &Word) -> Result<Word> {
    extract_root(w).map(|(root, _)| root)
}

/// If `g` is a power `h^p` of the nontrivial `h`, returns `p`.
pub fn power_of(g: &Word, h: &Word) -> Option<i64> {
    if g.is_empty() {
        return Some(0);
    }
    let (root_g, exp_g) = extract_root(g).ok()?;
    let (root_h, exp_h) = extract_root(h).ok()?;
    if exp_g % exp_h != 0 {
        return None;
    }
    let p = (exp_g / exp_h) as i64;
    if root_g == root_h {
        Some(p)
    } else if root_g == root_h.inverse() {
        Some(-p)
    } else {
        None
    }
}

/// Exponent-sum vector over an alphabet of rank `rank`.
pub fn abelianize(letters: &[Letter], rank: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    for l in letters {
        v[l.generator()] += l.sign();
    }
    v
}

/// Visits every reduced word of length at most `max_len` over `rank`
/// generators that begins with `prefix`, in depth-first order with letters
/// ordered by code.
pub fn for_each_reduced_word<F: FnMut(&[Letter])>(
    rank: usize,
    max_len: usize,
    prefix: &[Letter],
    mut visit: F,
) {
    let mut buffer = prefix.to_vec();
    if buffer.len() > max_len {
        return;
    }
    fn go<F: FnMut(&[Letter])>(
        rank: usize,
        max_len: usize,
        buffer: &mut Vec<Letter>,
        visit: &mut F,
    ) {
        visit(buffer);
        if buffer.len() == max_len {
            return;
        }
        for code in 0..2 * rank {
            let l = Letter::from_code(code);
            if buffer.last() == Some(&l.inverse()) {
                continue;
            }
            buffer.push(l);
            go(rank, max_len, buffer, visit);
            buffer.pop();
        }
    }
    go(rank, max_len, &mut buffer, &mut visit);
}

/// All reduced words of length at most `max_len`, in depth-first order.
pub fn reduced_words(rank: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for_each_reduced_word(rank, max_len, &[], |w| {
        out.push(Word {
            letters: w.to_vec(),
        })
    });
    out
}

/// Number of reduced words of length exactly `len` over `rank` generators.
pub fn count_reduced_words(rank: usize, len: usize) -> u64 {
    match len {
        0 => 1,
        _ => 2 * rank as u64 * (2 * rank as u64 - 1).pow(len as u32 - 1),
    }
}
