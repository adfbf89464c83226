mod common;

use proptest::prelude::*;

use common::{al, word};
use fgtk::autos::{apply, compose, determinant, is_automorphism_free, Endomorphism, Presentation};
use fgtk::splittings::amalgam::AmalgamPresentation;
use fgtk::splittings::dehn_twist;
use fgtk::splittings::hnn::HnnPresentation;
use fgtk::whitehead::whitehead_moves;

fn hnn() -> Presentation {
    Presentation::Hnn(
        HnnPresentation::parse(al("a b u y"), "t", "u", "a y b y a y^-1 b y^-1").unwrap(),
    )
}

fn amalgam() -> Presentation {
    Presentation::Amalgam(AmalgamPresentation::parse(al("x y"), al("z w"), "x", "z").unwrap())
}

fn free_map(images: Vec<fgtk::Word>) -> Endomorphism {
    Endomorphism::new(Presentation::Free(al("x y z")), images).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn maps_are_multiplicative(images in prop::collection::vec(word(3, 4), 3), a in word(3, 8), b in word(3, 8)) {
        let f = free_map(images);
        prop_assert_eq!(apply(&f, &(&a * &b)).unwrap(), &apply(&f, &a).unwrap() * &apply(&f, &b).unwrap());
    }

    #[test]
    fn composition_is_sequential(fi in prop::collection::vec(word(3, 3), 3), gi in prop::collection::vec(word(3, 3), 3), w in word(3, 6)) {
        let f = free_map(fi);
        let g = free_map(gi);
        let fg = compose(&f, &g).unwrap();
        prop_assert_eq!(apply(&fg, &w).unwrap(), apply(&f, &apply(&g, &w).unwrap()).unwrap());
    }

    #[test]
    fn whitehead_moves_are_automorphisms(index in 0usize..10_000) {
        let a = al("x y z");
        let moves = whitehead_moves(&a);
        let m = &moves[index % moves.len()];
        let f = free_map(m.images().to_vec());
        prop_assert!(is_automorphism_free(&f).unwrap());
        prop_assert_eq!(determinant(&f.abelianized_matrix()).abs(), 1);
    }

    #[test]
    fn twists_cancel(n in -5i64..=5, w in word(5, 10)) {
        for p in [hnn(), amalgam()] {
            let forward = dehn_twist(&p, n).unwrap();
            let back = dehn_twist(&p, -n).unwrap();
            prop_assert!(forward.is_homomorphism());
            let w = fgtk::Word::from_letters(w.letters().iter().copied().filter(|l| l.generator() < p.alphabet().rank()));
            prop_assert!(p.equal(&apply(&back, &apply(&forward, &w).unwrap()).unwrap(), &w));
        }
    }

    #[test]
    fn twist_homomorphism_on_words(n in -4i64..=4, a in word(5, 8), b in word(5, 8)) {
        let p = hnn();
        let f = dehn_twist(&p, n).unwrap();
        let lhs = apply(&f, &(&a * &b)).unwrap();
        let rhs = &apply(&f, &a).unwrap() * &apply(&f, &b).unwrap();
        prop_assert!(p.equal(&lhs, &rhs));
    }
}
