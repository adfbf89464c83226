//! The acl/dcl counterexample in a free group of rank `|A0| + 4`.
//!
//! `A = <A0, a, b, u>`, `H = A * <y>` and `F = <H, t | t⁻¹ u t = v>` with
//! `v = a y b y a y⁻¹ b y⁻¹`. The pipeline checks the splitting hypotheses,
//! the abelianization obstruction, the automorphism `g` (identity on `A`,
//! `y ↦ y⁻¹`, `t ↦ t d⁻¹` where `g(v) = d v d⁻¹`), the bounded solution set
//! of the defining equation, and bounded separation of `A` from `H`.

use std::fmt;

use rayon::prelude::*;

use crate::alphabet::Alphabet;
use crate::autos::{apply, verify_automorphism_pair, Endomorphism, Presentation};
use crate::error::{Error, Result};
use crate::splittings::hnn::{hnn_equal, validate_presentation, HnnPresentation};
use crate::word::{abelianize, are_conjugate, for_each_reduced_word, is_conjugate, Letter, Word};

/// The defining word of `H` in the counterexample.
pub const DEFAULT_V: &str = "a y b y a y^-1 b y^-1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub l_solution: usize,
    pub l_separation: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            l_solution: 6,
            l_separation: 8,
        }
    }
}

/// The HNN presentation of `F` together with the roles of its generators.
/// The base alphabet is `a b u y e1 .. eN`, the stable letter is `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleSetup {
    a0_size: usize,
    pres: HnnPresentation,
    y: usize,
}

impl CounterexampleSetup {
    pub fn new(a0_size: usize) -> Result<Self> {
        Self::with_v(a0_size, DEFAULT_V)
    }

    /// Same construction with a different edge word `v` over the base.
    pub fn with_v(a0_size: usize, v: &str) -> Result<Self> {
        let mut names: Vec<String> = ["a", "b", "u", "y"].iter().map(|s| s.to_string()).collect();
        names.extend((1..=a0_size).map(|i| format!("e{i}")));
        let base = Alphabet::new(names)?;
        let v = base.parse_word(v)?;
        Self::with_word(a0_size, base, v)
    }

    fn with_word(a0_size: usize, base: Alphabet, v: Word) -> Result<Self> {
        let u = base.generator("u")?;
        let y = base.index_of("y").expect("base contains y");
        let pres = HnnPresentation::new(base, "t", u, v)?;
        Ok(CounterexampleSetup { a0_size, pres, y })
    }

    /// Same alphabet, edge word `v` given as a word.
    pub fn with_v_word(a0_size: usize, v: Word) -> Result<Self> {
        let base = Self::new(a0_size)?.pres.base().clone();
        Self::with_word(a0_size, base, v)
    }

    pub fn a0_size(&self) -> usize {
        self.a0_size
    }

    pub fn presentation(&self) -> &HnnPresentation {
        &self.pres
    }

    /// Generators of `H` (the base), as indices.
    pub fn h_generators(&self) -> Vec<usize> {
        (0..self.pres.base().rank()).collect()
    }

    /// Generators of `A`: every base generator except `y`.
    pub fn a_generators(&self) -> Vec<usize> {
        (0..self.pres.base().rank())
            .filter(|&i| i != self.y)
            .collect()
    }

    pub fn y(&self) -> Word {
        Word::generator(self.y)
    }

    /// `v` with `y` replaced by `h`.
    pub fn pattern(&self, h: &Word) -> Word {
        let mut images: Vec<Word> = (0..self.pres.base().rank()).map(Word::generator).collect();
        images[self.y] = h.clone();
        self.pres.v().substitute(&images)
    }

    /// The restriction of `g` to `H`: identity on `A`, `y ↦ y⁻¹`.
    fn g_on_base(&self, w: &Word) -> Word {
        self.pattern_with(w, &self.y().inverse())
    }

    /// The automorphism `g` and its inverse together with the witness `d`
    /// (`g(v) = d v d⁻¹`); `None` when `g(v)` is not conjugate to `v`.
    /// `g`: identity on `A`, `y ↦ y⁻¹`, `t ↦ t d⁻¹`. Inverse: `t ↦ t g(d)`.
    pub fn automorphism_pair(&self) -> Result<Option<(Word, Endomorphism, Endomorphism)>> {
        let pres = &self.pres;
        let Some(d) = is_conjugate(pres.v(), &self.g_on_base(pres.v())) else {
            return Ok(None);
        };
        let presentation = Presentation::Hnn(pres.clone());
        let t = pres.t();
        let y_name = pres.base().name(self.y);
        let y_inv = self.y().inverse();
        let forward = Endomorphism::with_images(
            presentation.clone(),
            &[
                (y_name, y_inv.clone()),
                (pres.stable_name(), &t * &d.inverse()),
            ],
        )?;
        let backward = Endomorphism::with_images(
            presentation,
            &[
                (y_name, y_inv),
                (pres.stable_name(), &t * &self.g_on_base(&d)),
            ],
        )?;
        Ok(Some((d, forward, backward)))
    }

    fn pattern_with(&self, w: &Word, y_image: &Word) -> Word {
        let mut images: Vec<Word> = (0..self.pres.base().rank()).map(Word::generator).collect();
        images[self.y] = y_image.clone();
        w.substitute(&images)
    }
}

fn shortlex_key(w: &Word) -> (usize, Vec<usize>) {
    (w.len(), w.letters().iter().map(|l| l.code()).collect())
}

/// Every reduced `h ∈ H` with `1 <= |h| <= max_len` such that `v(h)` (the
/// defining word with `y` replaced by `h`) is conjugate to `v` in `H`, in
/// shortlex order.
pub fn solution_set_for(setup: &CounterexampleSetup, max_len: usize) -> Vec<Word> {
    let rank = setup.pres.base().rank();
    let target = setup.pres.v().clone();
    let mut found: Vec<Word> = (0..2 * rank)
        .into_par_iter()
        .map(|code| {
            let mut out = Vec::new();
            for_each_reduced_word(rank, max_len, &[Letter::from_code(code)], |letters| {
                let h = Word::from_letters(letters.iter().copied());
                if are_conjugate(&setup.pattern(&h), &target) {
                    out.push(h);
                }
            });
            out
        })
        .flatten()
        .collect();
    found.sort_by_key(shortlex_key);
    found
}

/// Solution set of the counterexample equation with `|A0| = a0_size`.
pub fn counterexample_solution_set(a0_size: usize, max_len: usize) -> Result<Vec<Word>> {
    if max_len == 0 {
        return Err(Error::Precondition(
            "length bound must be at least 1".into(),
        ));
    }
    Ok(solution_set_for(
        &CounterexampleSetup::new(a0_size)?,
        max_len,
    ))
}

/// Searches reduced words over `h_generators` of length at most `max_len`
/// using at least one generator outside `a_generators` for a fixed point of
/// `g`. Returns `(true, None)` if none exists, otherwise `(false, Some(w))`
/// with `w` shortlex-least.
pub fn dcl_separation_check(
    g: &Endomorphism,
    h_generators: &[usize],
    a_generators: &[usize],
    max_len: usize,
) -> (bool, Option<Word>) {
    let k = h_generators.len();
    let outside: Vec<bool> = h_generators
        .iter()
        .map(|i| !a_generators.contains(i))
        .collect();
    if !outside.iter().any(|&b| b) {
        return (true, None);
    }
    let pres = g.presentation();
    let global = |l: &Letter| Letter::new(h_generators[l.generator()], l.is_inverse());
    let witnesses: Vec<Word> = (0..2 * k)
        .into_par_iter()
        .filter_map(|code| {
            let mut best: Option<Word> = None;
            for_each_reduced_word(k, max_len, &[Letter::from_code(code)], |letters| {
                if !letters.iter().any(|l| outside[l.generator()]) {
                    return;
                }
                let gamma = Word::from_letters(letters.iter().map(global));
                let image = gamma.substitute(g.images());
                let fixed = image == gamma || pres.equal(&image, &gamma);
                if fixed
                    && best
                        .as_ref()
                        .is_none_or(|b| shortlex_key(&gamma) < shortlex_key(b))
                {
                    best = Some(gamma);
                }
            });
            best
        })
        .collect();
    let witness = witnesses.into_iter().min_by_key(shortlex_key);
    (witness.is_none(), witness)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportCheck {
    pub name: &'static str,
    pub pass: bool,
    pub bound: Option<usize>,
    pub witness: String,
}

impl fmt::Display for ReportCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{}: {verdict} [{}]", self.name, self.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub a0_size: usize,
    pub rank: usize,
    pub bounds: Bounds,
    pub checks: Vec<ReportCheck>,
    pub solution_set: Vec<Word>,
    pub d: Option<Word>,
    pub alphabet: Alphabet,
}

impl CounterexampleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&ReportCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `key: value` header lines followed by one `name: PASS|FAIL [witness]`
    /// line per check.
    pub fn to_text(&self) -> String {
        let mut out = format!("a0_size: {}\nrank: {}\n", self.a0_size, self.rank);
        for c in &self.checks {
            out.push_str(&format!("{c}\n"));
        }
        out
    }

    /// One tab-separated row per check.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("check\tverdict\tbound\twitness\n");
        for c in &self.checks {
            let bound = c.bound.map_or_else(|| "-".to_string(), |b| b.to_string());
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("{}\t{verdict}\t{bound}\t{}\n", c.name, c.witness));
        }
        out
    }
}

fn vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Decides whether `v(h)` can have the abelianization of `u` for some
/// `h ∈ H`; the obstruction holds when it cannot.
fn abelianization_obstruction(setup: &CounterexampleSetup) -> ReportCheck {
    let rank = setup.pres.base().rank();
    let v = setup.pres.v();
    let ab_v = abelianize(v.letters(), rank);
    let ab_u = abelianize(setup.pres.u().letters(), rank);
    let s = ab_v[setup.y];
    let mut rest = ab_v.clone();
    rest[setup.y] = 0;
    let (pass, witness) = if s == 0 {
        (
            rest != ab_u,
            format!(
                "abelianize(v) = {} != abelianize(u) = {}",
                vector(&ab_v),
                vector(&ab_u)
            ),
        )
    } else {
        let diff: Vec<i64> = ab_u.iter().zip(&rest).map(|(x, r)| x - r).collect();
        let solvable = diff.iter().all(|x| x % s == 0);
        (
            !solvable,
            format!(
                "y-exponent sum {s} {} abelianize(u) - abelianize(v|y=1) = {}",
                if solvable {
                    "divides"
                } else {
                    "does not divide"
                },
                vector(&diff)
            ),
        )
    };
    ReportCheck {
        name: "abelianization_obstruction_ok",
        pass,
        bound: None,
        witness,
    }
}

fn fail(name: &'static str, bound: Option<usize>, witness: &str) -> ReportCheck {
    ReportCheck {
        name,
        pass: false,
        bound,
        witness: witness.to_string(),
    }
}

/// Runs all checks on a given setup.
pub fn verify_setup(setup: &CounterexampleSetup, bounds: Bounds) -> Result<CounterexampleReport> {
    if bounds.l_solution == 0 || bounds.l_separation == 0 {
        return Err(Error::Precondition("bounds must be at least 1".into()));
    }
    let pres = &setup.pres;
    let base = pres.base();
    let full = pres.alphabet();
    let mut checks = Vec::new();

    let validation = validate_presentation(pres);
    let failing: Vec<String> = validation
        .conditions
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    checks.push(ReportCheck {
        name: "presentation_valid",
        pass: validation.passed(),
        bound: None,
        witness: if failing.is_empty() {
            "u and v root-free; u not conjugate to v or v^-1".to_string()
        } else {
            failing.join("; ")
        },
    });

    checks.push(abelianization_obstruction(setup));

    let gv = setup.g_on_base(pres.v());
    let found = setup.automorphism_pair()?;
    let d = found.as_ref().map(|(d, _, _)| d.clone());
    let g = found.map(|(_, f, b)| (f, b));

    match (&g, &d) {
        (Some((forward, backward)), Some(d)) => {
            let gt = forward.image(pres.stable_index()).clone();
            let lhs = pres.u().conjugate_by(&gt.inverse());
            let rhs = apply(forward, pres.v())?;
            let hom = forward.is_homomorphism() && hnn_equal(pres, &lhs, &rhs);
            checks.push(ReportCheck {
                name: "g_is_homomorphism",
                pass: hom,
                bound: None,
                witness: format!("g(t) = {}", full.format(&gt)),
            });
            let auto = hom && verify_automorphism_pair(forward, backward).unwrap_or(false);
            checks.push(ReportCheck {
                name: "g_is_automorphism",
                pass: auto,
                bound: None,
                witness: format!(
                    "inverse t -> {}",
                    full.format(backward.image(pres.stable_index()))
                ),
            });
            let exact = gv == pres.v().conjugate_by(d);
            checks.push(ReportCheck {
                name: "gv_conjugate_to_v",
                pass: exact,
                bound: None,
                witness: format!("d = {}", base.format(d)),
            });
        }
        _ => {
            let why = "g(v) is not conjugate to v";
            checks.push(fail("g_is_homomorphism", None, why));
            checks.push(fail("g_is_automorphism", None, why));
            checks.push(fail("gv_conjugate_to_v", None, why));
        }
    }

    let solutions = solution_set_for(setup, bounds.l_solution);
    let y = setup.y();
    let expected = vec![y.clone(), y.inverse()];
    let listed: Vec<String> = solutions.iter().map(|h| base.format(h)).collect();
    checks.push(ReportCheck {
        name: "solution_set",
        pass: solutions == expected,
        bound: Some(bounds.l_solution),
        witness: format!("{{{}}}", listed.join(", ")),
    });

    match &g {
        Some((forward, _)) => {
            let (ok, witness) = dcl_separation_check(
                forward,
                &setup.h_generators(),
                &setup.a_generators(),
                bounds.l_separation,
            );
            checks.push(ReportCheck {
                name: "dcl_separation_ok",
                pass: ok,
                bound: Some(bounds.l_separation),
                witness: match witness {
                    None => "no fixed point of g in H outside A".to_string(),
                    Some(w) => format!("g fixes {}", base.format(&w)),
                },
            });
        }
        None => checks.push(fail(
            "dcl_separation_ok",
            Some(bounds.l_separation),
            "g undefined",
        )),
    }

    Ok(CounterexampleReport {
        a0_size: setup.a0_size,
        // F is free on the generators other than u, which the relation eliminates.
        rank: full.rank() - 1,
        bounds,
        checks,
        solution_set: solutions,
        d,
        alphabet: full.clone(),
    })
}

/// Full pipeline for `|A0| = a0_size`.
pub fn verify_counterexample(a0_size: usize, bounds: Bounds) -> Result<CounterexampleReport> {
    verify_setup(&CounterexampleSetup::new(a0_size)?, bounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Bounds {
        Bounds {
            l_solution: 4,
            l_separation: 5,
        }
    }

    #[test]
    fn pattern_at_y_is_v() {
        let s = CounterexampleSetup::new(0).unwrap();
        assert_eq!(&s.pattern(&s.y()), s.presentation().v());
    }

    #[test]
    fn solution_set_at_length_one() {
        let s = CounterexampleSetup::new(0).unwrap();
        let set = counterexample_solution_set(0, 1).unwrap();
        assert_eq!(set, vec![s.y(), s.y().inverse()]);
        assert!(counterexample_solution_set(0, 0).is_err());
    }

    #[test]
    fn witness_d() {
        let report = verify_counterexample(0, small()).unwrap();
        let base = CounterexampleSetup::new(0)
            .unwrap()
            .presentation()
            .base()
            .clone();
        assert_eq!(report.d, Some(base.parse_word("a y^-1 b y^-1").unwrap()));
        assert_eq!(report.rank, 4);
        assert!(report.passed(), "{}", report.to_text());
        let names: Vec<&str> = report.checks.iter().map(|c| c.name).collect();
        assert_eq!(
            names,
            [
                "presentation_valid",
                "abelianization_obstruction_ok",
                "g_is_homomorphism",
                "g_is_automorphism",
                "gv_conjugate_to_v",
                "solution_set",
                "dcl_separation_ok"
            ]
        );
        assert!(report.to_text().contains(
            "abelianization_obstruction_ok: PASS [abelianize(v) = (2,2,0,0) != abelianize(u) = (0,0,1,0)]"
        ));
        assert!(report
            .to_text()
            .contains("g_is_homomorphism: PASS [g(t) = t y b^-1 y a^-1]"));
        assert!(report
            .to_text()
            .contains("gv_conjugate_to_v: PASS [d = a y^-1 b y^-1]"));
    }

    #[test]
    fn spectators_enlarge_rank() {
        let report = verify_counterexample(
            2,
            Bounds {
                l_solution: 3,
                l_separation: 4,
            },
        )
        .unwrap();
        assert_eq!(report.rank, 6);
        assert!(report.passed(), "{}", report.to_text());
    }

    #[test]
    fn perturbed_v_fails() {
        let s = CounterexampleSetup::with_v(0, "a y b y a y^-1 b y").unwrap();
        let report = verify_setup(&s, small()).unwrap();
        assert!(!report.passed());
        assert!(!report.check("gv_conjugate_to_v").unwrap().pass);
    }

    #[test]
    fn identity_has_fixed_point_y() {
        let s = CounterexampleSetup::new(0).unwrap();
        let id = Endomorphism::identity(Presentation::Hnn(s.presentation().clone()));
        let (ok, w) = dcl_separation_check(&id, &s.h_generators(), &s.a_generators(), 3);
        assert!(!ok);
        assert_eq!(w, Some(s.y()));
        // No candidates when the enumeration alphabet lies inside A.
        let (ok, w) = dcl_separation_check(&id, &s.a_generators(), &s.a_generators(), 3);
        assert!(ok && w.is_none());
    }

    #[test]
    fn tsv_rows() {
        let report = verify_counterexample(0, small()).unwrap();
        let tsv = report.to_tsv();
        assert_eq!(tsv.lines().count(), 8);
        assert!(tsv.contains("solution_set\tPASS\t4\t{y, y^-1}"));
    }
}
