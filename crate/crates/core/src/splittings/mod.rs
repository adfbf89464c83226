//! One-edge splittings with cyclic edge group and their Dehn twists.

pub mod amalgam;
pub mod hnn;

pub use amalgam::{amalgam_equal, amalgam_reduce, AmalgamPresentation, Factor, Syllable};
pub use hnn::{
    britton_reduce, classify_base_conjugacy, hnn_equal, hnn_length, validate_presentation,
    BrittonForm, ClassificationResult, HnnPresentation, ValidationReport,
};

use crate::autos::{Endomorphism, Presentation};
use crate::error::{Error, Result};
use crate::word::Word;

/// Dehn twist along the edge of a one-edge splitting.
///
/// HNN: identity on the base, `t ↦ t v^n`, which equals `u^n t`; the
/// multiplier sits on the `v` side so that `t⁻¹ u t = v` is preserved.
/// Amalgam: identity on the left factor, right-factor generators
/// `b ↦ c^n b c^-n`.
pub fn dehn_twist(splitting: &Presentation, power: i64) -> Result<Endomorphism> {
    match splitting {
        Presentation::Free(_) => Err(Error::Precondition(
            "a Dehn twist needs an HNN or amalgam presentation".into(),
        )),
        Presentation::Hnn(p) => {
            let mut images: Vec<Word> = (0..p.alphabet().rank()).map(Word::generator).collect();
            images[p.stable_index()] = &p.t() * &p.v().pow(power);
            Endomorphism::new(splitting.clone(), images)
        }
        Presentation::Amalgam(p) => {
            let c = p.edge(Factor::Right).pow(power);
            let images = (0..p.alphabet().rank())
                .map(|i| {
                    let x = Word::generator(i);
                    match p.factor_of_generator(i) {
                        Factor::Left => x,
                        Factor::Right => x.conjugate_by(&c),
                    }
                })
                .collect();
            Endomorphism::new(splitting.clone(), images)
        }
    }
}

/// The twist `t ↦ u^n t` of an HNN extension (identity on the base).
pub fn hnn_left_twist(p: &HnnPresentation, power: i64) -> Result<Endomorphism> {
    let mut images: Vec<Word> = (0..p.alphabet().rank()).map(Word::generator).collect();
    images[p.stable_index()] = &p.u().pow(power) * &p.t();
    Endomorphism::new(Presentation::Hnn(p.clone()), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::autos::compose;

    fn hnn() -> Presentation {
        Presentation::Hnn(
            HnnPresentation::parse(
                Alphabet::parse("a b u y").unwrap(),
                "t",
                "u",
                "a y b y a y^-1 b y^-1",
            )
            .unwrap(),
        )
    }

    fn amalgam() -> Presentation {
        Presentation::Amalgam(
            AmalgamPresentation::parse(
                Alphabet::parse("x y").unwrap(),
                Alphabet::parse("z w").unwrap(),
                "x",
                "z",
            )
            .unwrap(),
        )
    }

    #[test]
    fn hnn_twist_images() {
        let p = hnn();
        let f = dehn_twist(&p, 1).unwrap();
        assert_eq!(p.alphabet().format(f.image(4)), "t a y b y a y^-1 b y^-1");
        let Presentation::Hnn(h) = &p else {
            unreachable!()
        };
        assert!(p.equal(f.image(4), &(h.u() * &h.t())));
        assert!(f.is_homomorphism());
        assert!(dehn_twist(&p, 0).unwrap().is_identity());
    }

    #[test]
    fn amalgam_twist_images() {
        let p = amalgam();
        let f = dehn_twist(&p, 1).unwrap();
        assert_eq!(p.alphabet().format(f.image(3)), "z w z^-1");
        assert_eq!(p.alphabet().format(f.image(2)), "z");
        assert_eq!(p.alphabet().format(f.image(0)), "x");
        assert!(f.is_homomorphism());
    }

    #[test]
    fn opposite_twists_cancel() {
        for p in [hnn(), amalgam()] {
            for n in [1, 2, 5] {
                let f = compose(&dehn_twist(&p, n).unwrap(), &dehn_twist(&p, -n).unwrap()).unwrap();
                assert!(f.is_identity());
            }
        }
    }

    #[test]
    fn free_group_has_no_twist() {
        let p = Presentation::Free(Alphabet::parse("x").unwrap());
        assert!(dehn_twist(&p, 1).is_err());
    }
}
