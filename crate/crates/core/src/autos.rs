//! Endomorphisms given by generator images, over a free group, an HNN
//! extension or an amalgam.

use std::fmt;

use rayon::prelude::*;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::splittings::amalgam::{amalgam_normal_form, syllables_to_word, AmalgamPresentation};
use crate::splittings::hnn::{britton_reduce, HnnPresentation};
use crate::stallings::SubgroupGraph;
use crate::word::{abelianize, for_each_reduced_word, Letter, Word};

/// The group an endomorphism acts on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    Free(Alphabet),
    Hnn(HnnPresentation),
    Amalgam(AmalgamPresentation),
}

impl Presentation {
    /// All generators, including the stable letter of an HNN extension.
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Presentation::Free(a) => a,
            Presentation::Hnn(p) => p.alphabet(),
            Presentation::Amalgam(p) => p.alphabet(),
        }
    }

    /// A reduced representative: free reduction, Britton reduction or
    /// amalgam normal form. Not canonical outside the free case.
    pub fn normal_form(&self, w: &Word) -> Word {
        match self {
            Presentation::Free(_) => w.clone(),
            Presentation::Hnn(p) => britton_reduce(p, w).to_word(),
            Presentation::Amalgam(p) => syllables_to_word(&amalgam_normal_form(p, w)),
        }
    }

    pub fn equal(&self, w1: &Word, w2: &Word) -> bool {
        match self {
            Presentation::Free(_) => w1 == w2,
            Presentation::Hnn(p) => crate::splittings::hnn::hnn_equal(p, w1, w2),
            Presentation::Amalgam(p) => crate::splittings::amalgam::amalgam_equal(p, w1, w2),
        }
    }

    /// Pairs of words that must be equal in any homomorphic image.
    pub fn relations(&self) -> Vec<(Word, Word)> {
        match self {
            Presentation::Free(_) => Vec::new(),
            Presentation::Hnn(p) => vec![p.relation()],
            Presentation::Amalgam(p) => vec![p.relation()],
        }
    }

    /// Reads a presentation file: one `gens` line for a free group, `gens`
    /// plus `hnn t : u -> v` for an HNN extension, or two `gens` lines plus
    /// `amalgam : w1 = w2` for an amalgam. Other lines (`map`, `#`) are
    /// ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut gens: Vec<Alphabet> = Vec::new();
        let mut hnn = None;
        let mut amalgam = None;
        for line in text.lines() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("gens ") {
                gens.push(Alphabet::parse(rest)?);
            } else if let Some(rest) = line.strip_prefix("hnn ") {
                let (stable, edge) = rest.split_once(':').ok_or_else(|| {
                    Error::Parse(format!("expected `hnn t : u -> v`, got `{line}`"))
                })?;
                let (u, v) = edge.split_once("->").ok_or_else(|| {
                    Error::Parse(format!("expected `hnn t : u -> v`, got `{line}`"))
                })?;
                hnn = Some((stable.trim().to_string(), u.to_string(), v.to_string()));
            } else if let Some(rest) = line.strip_prefix("amalgam") {
                let edge = rest.trim_start().strip_prefix(':').ok_or_else(|| {
                    Error::Parse(format!("expected `amalgam : w1 = w2`, got `{line}`"))
                })?;
                let (c1, c2) = edge.split_once('=').ok_or_else(|| {
                    Error::Parse(format!("expected `amalgam : w1 = w2`, got `{line}`"))
                })?;
                amalgam = Some((c1.to_string(), c2.to_string()));
            }
        }
        match (gens.len(), hnn, amalgam) {
            (1, None, None) => Ok(Presentation::Free(gens.remove(0))),
            (1, Some((t, u, v)), None) => {
                Ok(Presentation::Hnn(HnnPresentation::parse(gens.remove(0), &t, &u, &v)?))
            }
            (2, None, Some((c1, c2))) => {
                let right = gens.pop().expect("two gens lines");
                let left = gens.pop().expect("two gens lines");
                Ok(Presentation::Amalgam(AmalgamPresentation::parse(left, right, &c1, &c2)?))
            }
            (0, _, _) => Err(Error::Parse("presentation needs a `gens` line".into())),
            _ => Err(Error::Parse(
                "expected one `gens` line (optionally with `hnn`) or two `gens` lines with `amalgam`".into(),
            )),
        }
    }

    /// Presentation file text.
    pub fn format(&self) -> String {
        match self {
            Presentation::Free(a) => format!("gens {a}\n"),
            Presentation::Hnn(p) => format!(
                "gens {}\nhnn {} : {} -> {}\n",
                p.base(),
                p.stable_name(),
                p.base().format(p.u()),
                p.base().format(p.v())
            ),
            Presentation::Amalgam(p) => {
                let (c1, c2) = p.relation();
                format!(
                    "gens {}\ngens {}\namalgam : {} = {}\n",
                    p.left(),
                    p.right(),
                    p.alphabet().format(&c1),
                    p.alphabet().format(&c2)
                )
            }
        }
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_generator() {
            Some(g) if g >= self.alphabet().rank() => Err(Error::AlphabetMismatch(format!(
                "generator index {g} outside alphabet `{}`",
                self.alphabet()
            ))),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    presentation: Presentation,
    images: Vec<Word>,
    homomorphism: bool,
}

impl Endomorphism {
    /// Images are given per generator of the presentation's alphabet and are
    /// stored in normal form.
    pub fn new(presentation: Presentation, images: Vec<Word>) -> Result<Self> {
        let rank = presentation.alphabet().rank();
        if images.len() != rank {
            return Err(Error::AlphabetMismatch(format!(
                "{} images for {rank} generators",
                images.len()
            )));
        }
        for w in &images {
            presentation.check_word(w)?;
        }
        let images: Vec<Word> = images.iter().map(|w| presentation.normal_form(w)).collect();
        let homomorphism = presentation
            .relations()
            .iter()
            .all(|(l, r)| presentation.equal(&l.substitute(&images), &r.substitute(&images)));
        Ok(Endomorphism {
            presentation,
            images,
            homomorphism,
        })
    }

    pub fn identity(presentation: Presentation) -> Self {
        let images = (0..presentation.alphabet().rank())
            .map(Word::generator)
            .collect();
        Endomorphism {
            presentation,
            images,
            homomorphism: true,
        }
    }

    /// Identity except for the listed `(generator name, image)` pairs.
    pub fn with_images(presentation: Presentation, changes: &[(&str, Word)]) -> Result<Self> {
        let mut images: Vec<Word> = (0..presentation.alphabet().rank())
            .map(Word::generator)
            .collect();
        for (name, image) in changes {
            let i = presentation
                .alphabet()
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
            images[i] = image.clone();
        }
        Self::new(presentation, images)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &Word {
        &self.images[generator]
    }

    /// Whether the defining relations are preserved (checked at construction).
    pub fn is_homomorphism(&self) -> bool {
        self.homomorphism
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| self.presentation.equal(w, &Word::generator(i)))
    }

    /// `map x -> image` lines for every generator moved.
    pub fn format_map(&self) -> String {
        let al = self.presentation.alphabet();
        let mut out = String::new();
        for (i, w) in self.images.iter().enumerate() {
            out.push_str(&format!("map {} -> {}\n", al.name(i), al.format(w)));
        }
        out
    }

    /// Integer matrix of the induced map on exponent sums; column `j` is the
    /// abelianized image of generator `j`.
    pub fn abelianized_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.presentation.alphabet().rank();
        let columns: Vec<Vec<i64>> = self
            .images
            .iter()
            .map(|w| abelianize(w.letters(), n))
            .collect();
        (0..n)
            .map(|i| (0..n).map(|j| columns[j][i]).collect())
            .collect()
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_map())
    }
}

/// Image of `w` in normal form.
pub fn apply(f: &Endomorphism, w: &Word) -> Result<Word> {
    f.presentation.check_word(w)?;
    Ok(f.presentation.normal_form(&w.substitute(&f.images)))
}

/// `f ∘ g`: first `g`, then `f`.
pub fn compose(f: &Endomorphism, g: &Endomorphism) -> Result<Endomorphism> {
    if f.presentation != g.presentation {
        return Err(Error::AlphabetMismatch(
            "composing maps on different groups".into(),
        ));
    }
    let images = g
        .images
        .iter()
        .map(|w| apply(f, w))
        .collect::<Result<Vec<_>>>()?;
    Endomorphism::new(f.presentation.clone(), images)
}

pub fn power(f: &Endomorphism, k: u64) -> Endomorphism {
    let mut out = Endomorphism::identity(f.presentation.clone());
    for _ in 0..k {
        out = compose(f, &out).expect("same presentation");
    }
    out
}

/// Whether an endomorphism of a free group is onto, hence an automorphism
/// (free groups of finite rank are Hopfian): its images generate a subgroup
/// whose graph is the rose on every generator.
pub fn is_automorphism_free(f: &Endomorphism) -> Result<bool> {
    let Presentation::Free(alphabet) = &f.presentation else {
        return Err(Error::Precondition(
            "surjectivity test needs a free group".into(),
        ));
    };
    let graph = SubgroupGraph::build(&f.images, alphabet)?;
    Ok(graph.vertex_count() == 1 && graph.edge_count() == alphabet.rank())
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn determinant(matrix: &[Vec<i64>]) -> i64 {
    let n = matrix.len();
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut previous = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous;
            }
        }
        previous = m[k][k];
    }
    if n == 0 {
        return 1;
    }
    (sign * m[n - 1][n - 1]) as i64
}

/// Certifies `f` and `g` as mutually inverse automorphisms: both preserve
/// the relations and both composites fix every generator.
pub fn verify_automorphism_pair(f: &Endomorphism, g: &Endomorphism) -> Result<bool> {
    if f.presentation != g.presentation {
        return Err(Error::AlphabetMismatch("maps on different groups".into()));
    }
    for (name, map) in [("first", f), ("second", g)] {
        if !map.is_homomorphism() {
            return Err(Error::NotHomomorphism(format!(
                "the {name} map does not preserve the defining relation"
            )));
        }
    }
    Ok(compose(f, g)?.is_identity() && compose(g, f)?.is_identity())
}

/// Least `k <= max_order` with `f^k` the identity.
pub fn order_bounded(f: &Endomorphism, max_order: u64) -> Option<u64> {
    let mut current = f.clone();
    for k in 1..=max_order {
        if current.is_identity() {
            return Some(k);
        }
        current = compose(f, &current).expect("same presentation");
    }
    None
}

/// Folds every reduced word of length at most `max_len` that `f` fixes.
/// This is a lower approximation of the fixed subgroup.
pub fn fixed_words(f: &Endomorphism, max_len: usize) -> Result<SubgroupGraph> {
    let Presentation::Free(alphabet) = &f.presentation else {
        return Err(Error::Precondition(
            "fixed-word sweep needs a free group".into(),
        ));
    };
    let rank = alphabet.rank();
    let per_letter: Vec<Vec<Word>> = (0..2 * rank)
        .into_par_iter()
        .map(|code| {
            let mut found = Vec::new();
            for_each_reduced_word(rank, max_len, &[Letter::from_code(code)], |letters| {
                let w = Word::from_letters(letters.iter().copied());
                if w.substitute(&f.images) == w {
                    found.push(w);
                }
            });
            found
        })
        .collect();
    let fixed: Vec<Word> = per_letter.into_iter().flatten().collect();
    SubgroupGraph::build(&fixed, alphabet)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub description: String,
    pub element: Word,
    pub bound: u64,
    /// Number of pairwise distinct images among `f_0(w), ..., f_N(w)`.
    pub distinct: usize,
    /// First `(i, j)`, `i < j`, with `f_i(w) = f_j(w)`, minimizing `j`.
    pub first_collision: Option<(u64, u64)>,
    pub images: Vec<Word>,
}

/// Computes `f_n(w)` for `0 <= n <= bound` and counts distinct elements,
/// comparing in the group (not by normal-form text).
pub fn orbit_bounded<F>(
    description: &str,
    family: F,
    element: &Word,
    bound: u64,
) -> Result<OrbitReport>
where
    F: Fn(u64) -> Result<Endomorphism>,
{
    let mut images = Vec::new();
    let mut presentation = None;
    for n in 0..=bound {
        let f = family(n)?;
        if !f.is_homomorphism() {
            return Err(Error::NotHomomorphism(format!("family member {n}")));
        }
        images.push(apply(&f, element)?);
        presentation.get_or_insert(f.presentation);
    }
    let pres = presentation.expect("bound >= 0 gives one member");
    let mut representatives: Vec<usize> = Vec::new();
    let mut first_collision = None;
    for j in 0..images.len() {
        match representatives
            .iter()
            .find(|&&i| pres.equal(&images[i], &images[j]))
        {
            Some(&i) => {
                first_collision.get_or_insert((i as u64, j as u64));
            }
            None => representatives.push(j),
        }
    }
    Ok(OrbitReport {
        description: description.to_string(),
        element: element.clone(),
        bound,
        distinct: representatives.len(),
        first_collision,
        images,
    })
}

/// Reads `map x -> word` lines into an endomorphism of `presentation`;
/// generators without a line are fixed.
pub fn parse_map_lines(presentation: Presentation, text: &str) -> Result<Endomorphism> {
    let alphabet = presentation.alphabet().clone();
    let mut images: Vec<Word> = (0..alphabet.rank()).map(Word::generator).collect();
    for line in text.lines() {
        let line = line.trim();
        let Some(rest) = line.strip_prefix("map ") else {
            continue;
        };
        let (name, image) = rest
            .split_once("->")
            .ok_or_else(|| Error::Parse(format!("expected `map x -> word`, got `{line}`")))?;
        let i = alphabet
            .index_of(name.trim())
            .ok_or_else(|| Error::Parse(format!("unknown generator `{}`", name.trim())))?;
        images[i] = alphabet.parse_word(image)?;
    }
    Endomorphism::new(presentation, images)
}
