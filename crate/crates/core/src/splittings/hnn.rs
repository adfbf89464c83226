//! HNN extensions `<H, t | t⁻¹ u t = v>` of a free group `H` along cyclic
//! subgroups, Britton reduction and the conjugacy classification of base
//! elements.
//!
//! Orientation is fixed throughout: `u^t = v` means `t⁻¹ u t = v`. Hence the
//! pinch `t⁻¹ u^p t` rewrites to `v^p` and the pinch `t v^p t⁻¹` to `u^p`.

use std::fmt;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::word::{extract_root, is_conjugate, power_of, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnnPresentation {
    base: Alphabet,
    full: Alphabet,
    u: Word,
    v: Word,
}

impl HnnPresentation {
    /// `u` and `v` are words over `base`; the stable letter gets index
    /// `base.rank()` in the full alphabet.
    pub fn new(base: Alphabet, stable: &str, u: Word, v: Word) -> Result<Self> {
        if base.index_of(stable).is_some() {
            return Err(Error::Malformed(format!(
                "stable letter `{stable}` is also a base generator"
            )));
        }
        if u.is_empty() || v.is_empty() {
            return Err(Error::Malformed("edge words must be nontrivial".into()));
        }
        for w in [&u, &v] {
            if w.max_generator().is_some_and(|g| g >= base.rank()) {
                return Err(Error::AlphabetMismatch("edge word outside the base".into()));
            }
        }
        let full = base.extended([stable])?;
        Ok(HnnPresentation { base, full, u, v })
    }

    /// Parses `u` and `v` over the base alphabet.
    pub fn parse(base: Alphabet, stable: &str, u: &str, v: &str) -> Result<Self> {
        let u = base.parse_word(u)?;
        let v = base.parse_word(v)?;
        Self::new(base, stable, u, v)
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    /// Base generators followed by the stable letter.
    pub fn alphabet(&self) -> &Alphabet {
        &self.full
    }

    pub fn u(&self) -> &Word {
        &self.u
    }

    pub fn v(&self) -> &Word {
        &self.v
    }

    pub fn stable_index(&self) -> usize {
        self.base.rank()
    }

    pub fn stable_name(&self) -> &str {
        self.full.name(self.stable_index())
    }

    pub fn t(&self) -> Word {
        Word::generator(self.stable_index())
    }

    pub fn is_stable(&self, l: Letter) -> bool {
        l.generator() == self.stable_index()
    }

    pub fn is_base_word(&self, w: &Word) -> bool {
        !w.contains_generator(self.stable_index())
    }

    /// `t⁻¹ u t` and `v`, whose equality is the defining relation.
    pub fn relation(&self) -> (Word, Word) {
        let t = self.t();
        (&(&t.inverse() * &self.u) * &t, self.v.clone())
    }
}

/// `g_0 t^e_0 g_1 ... t^e_r g_(r+1)` with every `g_i` a base word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrittonForm {
    pieces: Vec<Word>,
    /// `true` for `t⁻¹`.
    inverse: Vec<bool>,
    stable: usize,
}

impl BrittonForm {
    pub fn pieces(&self) -> &[Word] {
        &self.pieces
    }

    /// Exponents `±1` of the stable letters, left to right.
    pub fn signs(&self) -> Vec<i64> {
        self.inverse
            .iter()
            .map(|&i| if i { -1 } else { 1 })
            .collect()
    }

    pub fn hnn_length(&self) -> usize {
        self.inverse.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.inverse.is_empty() && self.pieces[0].is_empty()
    }

    pub fn to_word(&self) -> Word {
        let mut letters = Vec::new();
        for (i, g) in self.pieces.iter().enumerate() {
            letters.extend_from_slice(g.letters());
            if let Some(&inv) = self.inverse.get(i) {
                letters.push(Letter::new(self.stable, inv));
            }
        }
        Word::from_letters(letters)
    }

    /// Whether no pinch remains.
    pub fn is_pinch_free(&self, pres: &HnnPresentation) -> bool {
        self.inverse.windows(2).enumerate().all(|(i, pair)| {
            let g = &self.pieces[i + 1];
            match (pair[0], pair[1]) {
                (true, false) => power_of(g, pres.u()).is_none(),
                (false, true) => power_of(g, pres.v()).is_none(),
                _ => true,
            }
        })
    }

    pub fn format(&self, pres: &HnnPresentation) -> String {
        pres.alphabet().format(&self.to_word())
    }
}

impl fmt::Display for BrittonForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

/// Britton reduction. Letters are consumed left to right; each stable letter
/// closes the piece before it, and a pinch there is rewritten at once.
pub fn britton_reduce(pres: &HnnPresentation, w: &Word) -> BrittonForm {
    let stable = pres.stable_index();
    let mut pieces: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut inverse: Vec<bool> = Vec::new();
    let push_base = |piece: &mut Vec<Letter>, l: Letter| {
        if piece.last() == Some(&l.inverse()) {
            piece.pop();
        } else {
            piece.push(l);
        }
    };
    for &l in w.letters() {
        if l.generator() != stable {
            push_base(pieces.last_mut().unwrap(), l);
            continue;
        }
        let closing = l.is_inverse();
        if let Some(&open) = inverse.last() {
            if open != closing {
                let g = Word::from_letters(pieces.last().unwrap().iter().copied());
                // t⁻¹ g t with g = u^p, or t g t⁻¹ with g = v^p.
                let (edge, other) = if open {
                    (pres.u(), pres.v())
                } else {
                    (pres.v(), pres.u())
                };
                if let Some(p) = power_of(&g, edge) {
                    pieces.pop();
                    inverse.pop();
                    let target = pieces.last_mut().unwrap();
                    for &x in other.pow(p).letters() {
                        push_base(target, x);
                    }
                    continue;
                }
            }
        }
        inverse.push(closing);
        pieces.push(Vec::new());
    }
    BrittonForm {
        pieces: pieces.into_iter().map(Word::from_letters).collect(),
        inverse,
        stable,
    }
}

pub fn hnn_length(form: &BrittonForm) -> usize {
    form.hnn_length()
}

/// Equality in the HNN extension, via Britton's lemma on `w1 w2⁻¹`.
pub fn hnn_equal(pres: &HnnPresentation, w1: &Word, w2: &Word) -> bool {
    britton_reduce(pres, &(w1 * &w2.inverse())).is_trivial()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub conditions: Vec<Condition>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }
}

/// Checks the two hypotheses of the base-conjugacy classification:
/// `<u>` and `<v>` malnormal in the base (both root-free) and `<u>` meeting
/// no conjugate of `<v>` (`u` not conjugate to `v` or `v⁻¹`).
pub fn validate_presentation(pres: &HnnPresentation) -> ValidationReport {
    let base = pres.base();
    let root_check = |name: &'static str, w: &Word| {
        let (root, k) = extract_root(w).expect("edge words are nontrivial");
        Condition {
            name,
            pass: k == 1,
            detail: if k == 1 {
                "root-free".to_string()
            } else {
                format!("proper power: ({})^{k}", base.format(&root))
            },
        }
    };
    let separated = {
        let direct = is_conjugate(pres.u(), pres.v());
        let inverted = is_conjugate(pres.u(), &pres.v().inverse());
        match (direct, inverted) {
            (None, None) => Condition {
                name: "u_not_conjugate_to_v",
                pass: true,
                detail: "u is conjugate to neither v nor v^-1".into(),
            },
            (Some(g), _) => Condition {
                name: "u_not_conjugate_to_v",
                pass: false,
                detail: format!("g u g^-1 = v with g = {}", base.format(&g)),
            },
            (None, Some(g)) => Condition {
                name: "u_not_conjugate_to_v",
                pass: false,
                detail: format!("g u g^-1 = v^-1 with g = {}", base.format(&g)),
            },
        }
    };
    ValidationReport {
        conditions: vec![
            root_check("u_root_free", pres.u()),
            root_check("v_root_free", pres.v()),
            separated,
        ],
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult {
    pub solvable: bool,
    /// 1: `s = γ⁻¹ t δ`; 2: `s = γ⁻¹ t⁻¹ δ`.
    pub case: Option<u8>,
    pub p: i64,
    pub gamma: Word,
    pub delta: Word,
    /// The conjugator `s` with `s⁻¹ α s = β`, over the full alphabet.
    pub conjugator: Option<Word>,
}

impl ClassificationResult {
    fn unsolvable() -> Self {
        ClassificationResult {
            solvable: false,
            case: None,
            p: 0,
            gamma: Word::identity(),
            delta: Word::identity(),
            conjugator: None,
        }
    }
}

/// Decides whether `s⁻¹ α s = β` has a solution `s` containing the stable
/// letter, for nontrivial base words `α`, `β`.
///
/// Case 1: `α = γ⁻¹ u^p γ`, `β = δ⁻¹ v^p δ`, `s = γ⁻¹ t δ`.
/// Case 2: `α = γ⁻¹ v^p γ`, `β = δ⁻¹ u^p δ`, `s = γ⁻¹ t⁻¹ δ`.
/// Exponents are searched over `0 < |p| <= max(|α|, |β|) / min core length + 1`.
pub fn classify_base_conjugacy(
    pres: &HnnPresentation,
    alpha: &Word,
    beta: &Word,
) -> Result<ClassificationResult> {
    let report = validate_presentation(pres);
    if !report.passed() {
        return Err(Error::Precondition(
            "presentation fails the malnormality/separation hypotheses".into(),
        ));
    }
    if alpha.is_empty() || beta.is_empty() {
        return Err(Error::Precondition("α and β must be nontrivial".into()));
    }
    if !pres.is_base_word(alpha) || !pres.is_base_word(beta) {
        return Err(Error::Precondition("α and β must be base words".into()));
    }
    let core = |w: &Word| crate::word::cyclically_reduce(w).0.len();
    let shortest = core(pres.u()).min(core(pres.v()));
    let bound = (alpha.len().max(beta.len()) / shortest + 1) as i64;
    let exponents = (1..=bound).flat_map(|p| [p, -p]);
    let t = pres.t();
    for (case, first, second, stable) in [
        (1u8, pres.u(), pres.v(), t.clone()),
        (2u8, pres.v(), pres.u(), t.inverse()),
    ] {
        for p in exponents.clone() {
            let Some(g) = is_conjugate(&first.pow(p), alpha) else {
                continue;
            };
            let Some(h) = is_conjugate(&second.pow(p), beta) else {
                continue;
            };
            let gamma = g.inverse();
            let delta = h.inverse();
            let s = &(&gamma.inverse() * &stable) * &delta;
            return Ok(ClassificationResult {
                solvable: true,
                case: Some(case),
                p,
                gamma,
                delta,
                conjugator: Some(s),
            });
        }
    }
    Ok(ClassificationResult::unsolvable())
}
