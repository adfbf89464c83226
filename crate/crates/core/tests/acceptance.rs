//! Acceptance criteria. Each criterion prints one `criterion N: PASS|FAIL`
//! line. The test fails unless the failing set is exactly `EXPECTED_RED`.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fgtk::autos::{apply, compose, fixed_words, orbit_bounded, Endomorphism, Presentation};
use fgtk::closure::counterexample::{verify_setup, CounterexampleSetup};
use fgtk::closure::{abelian_closure, verify_counterexample, Bounds};
use fgtk::splittings::amalgam::AmalgamPresentation;
use fgtk::splittings::hnn::{
    britton_reduce, hnn_equal, hnn_length, validate_presentation, HnnPresentation,
};
use fgtk::splittings::{dehn_twist, hnn_left_twist};
use fgtk::whitehead::{
    free_factor_search, is_free_factor, is_primitive, primitivity_search, Decision, DEFAULT_CAP,
};
use fgtk::word::{extract_root, for_each_reduced_word, reduced_words};
use fgtk::{Alphabet, Letter, SubgroupGraph, Word};

/// Criterion 1 includes the clause "g² = id on generators", which is false
/// for the map as defined: g²(t) = t v⁻¹. See the decisions ledger.
const EXPECTED_RED: &[u32] = &[1];

struct Verdict {
    pass: bool,
    detail: String,
}

fn al(s: &str) -> Alphabet {
    Alphabet::parse(s).unwrap()
}

fn w(a: &Alphabet, s: &str) -> Word {
    a.parse_word(s).unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::from_code(rng.gen_range(0..2 * rank));
        if letters.last() != Some(&l.inverse()) {
            letters.push(l);
        }
    }
    Word::from_letters(letters)
}

fn example_hnn() -> HnnPresentation {
    HnnPresentation::parse(al("a b u y"), "t", "u", "a y b y a y^-1 b y^-1").unwrap()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let report = verify_counterexample(
        0,
        Bounds {
            l_solution: 6,
            l_separation: 8,
        },
    )
    .unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let setup = CounterexampleSetup::new(0).unwrap();
    let (_, g, _) = setup.automorphism_pair().unwrap().expect("g defined");
    let g2 = compose(&g, &g).unwrap();
    let involution = g2.is_identity();
    let pres = setup.presentation();
    let t = pres.t();
    let g2t = apply(&g2, &t).unwrap();
    let pipeline = report.passed() && report.rank == 4;
    Verdict {
        pass: pipeline && involution && elapsed < 60.0,
        detail: format!(
            "pipeline {}/7 checks PASS in {elapsed:.1}s; g^2 = id on generators: {} (g^2(t) = {})",
            report.checks.iter().filter(|c| c.pass).count(),
            if involution { "PASS" } else { "FAIL" },
            pres.alphabet().format(&g2t)
        ),
    }
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let bounds = Bounds::default();
    let perturbed = CounterexampleSetup::with_v(0, "a y b y a y^-1 b y").unwrap();
    let control = !verify_setup(&perturbed, bounds).unwrap().passed();

    let base = CounterexampleSetup::new(0).unwrap();
    let v = base.presentation().v().clone();
    let rank = base.presentation().base().rank();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut valid, mut detected, mut missed) = (0, 0, Vec::new());
    while valid < 100 {
        let mut letters = v.letters().to_vec();
        let i = rng.gen_range(0..letters.len());
        let replacement = Letter::from_code(rng.gen_range(0..2 * rank));
        if replacement == letters[i] {
            continue;
        }
        letters[i] = replacement;
        let candidate = Word::from_letters(letters.iter().copied());
        if candidate.len() != v.len() {
            continue;
        }
        let setup = CounterexampleSetup::with_v_word(0, candidate.clone()).unwrap();
        if !validate_presentation(setup.presentation()).passed() {
            continue;
        }
        valid += 1;
        if verify_setup(&setup, bounds).unwrap().passed() {
            missed.push(base.presentation().base().format(&candidate));
        } else {
            detected += 1;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    Verdict {
        pass: control && detected >= 95 && elapsed < 600.0,
        detail: format!(
            "perturbed v fails: {control}; detected {detected}/100 in {elapsed:.1}s; undetected: [{}]",
            missed.join("; ")
        ),
    }
}

fn criterion_3() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut sampled = 0;
    let mut closure_ok = 0;
    let mut sweep_ok = 0;
    let short = reduced_words(2, 6);
    while sampled < 200 {
        let len = rng.gen_range(1..=6);
        let base = random_word(&mut rng, 2, len);
        if extract_root(&base).unwrap().1 != 1 {
            continue;
        }
        sampled += 1;
        let mut good = true;
        let mut sweep = true;
        for k in 2..=4 {
            let power = base.pow(k);
            let c = abelian_closure(&power).unwrap();
            if c != base && c != base.inverse() {
                good = false;
            }
            for z in &short {
                let commutes = z.commutator(&power).is_empty();
                let in_closure = (-6..=6).any(|j| &base.pow(j) == z);
                if commutes != in_closure {
                    sweep = false;
                }
            }
        }
        closure_ok += good as usize;
        sweep_ok += sweep as usize;
    }
    Verdict {
        pass: closure_ok == 200 && sweep_ok == 200,
        detail: format!("closure exact {closure_ok}/200; commuting sweep exact {sweep_ok}/200"),
    }
}

fn criterion_4() -> Verdict {
    let p = example_hnn();
    let t = p.t();
    let hnn = orbit_bounded("t -> u^n t", |n| hnn_left_twist(&p, n as i64), &t, 100).unwrap();
    let am = AmalgamPresentation::parse(al("x y"), al("z w"), "x", "z").unwrap();
    let pres = Presentation::Amalgam(am.clone());
    let element = w(am.alphabet(), "y w");
    let amalgam = orbit_bounded("twist", |n| dehn_twist(&pres, n as i64), &element, 50).unwrap();
    Verdict {
        pass: hnn.distinct == 101 && amalgam.distinct == 51,
        detail: format!(
            "HNN orbit distinct {}/101; amalgam orbit distinct {}/51",
            hnn.distinct, amalgam.distinct
        ),
    }
}

fn criterion_5() -> Verdict {
    let p = example_hnn();
    let full = p.alphabet().rank();
    let t = p.t();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut equal_ok, mut length_ok, mut pinch_free) = (0, 0, 0);
    for _ in 0..1000 {
        let len = rng.gen_range(0..=12);
        let original = random_word(&mut rng, full, len);
        let mut planted = original.clone();
        for _ in 0..rng.gen_range(1..=3) {
            let e = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let pinch = if rng.gen_bool(0.5) {
                &(&t.inverse() * &p.u().pow(e)) * &(&t * &p.v().pow(-e))
            } else {
                &(&t * &p.v().pow(e)) * &(&t.inverse() * &p.u().pow(-e))
            };
            let cut = rng.gen_range(0..=planted.len());
            let letters = planted.letters();
            let head = Word::from_letters(letters[..cut].iter().copied());
            let tail = Word::from_letters(letters[cut..].iter().copied());
            planted = &(&head * &pinch) * &tail;
        }
        let reduced = britton_reduce(&p, &planted);
        equal_ok += hnn_equal(&p, &reduced.to_word(), &original) as usize;
        length_ok += (hnn_length(&reduced) == hnn_length(&britton_reduce(&p, &original))) as usize;
        pinch_free += reduced.is_pinch_free(&p) as usize;
    }
    Verdict {
        pass: equal_ok == 1000 && length_ok == 1000 && pinch_free == 1000,
        detail: format!("equal {equal_ok}/1000; hnn_length invariant {length_ok}/1000; pinch-free {pinch_free}/1000"),
    }
}

fn nielsen_primitive(rng: &mut ChaCha8Rng, rank: usize) -> Word {
    let mut basis: Vec<Word> = (0..rank).map(Word::generator).collect();
    for _ in 0..8 {
        let i = rng.gen_range(0..rank);
        let mut j = rng.gen_range(0..rank);
        while j == i {
            j = rng.gen_range(0..rank);
        }
        let factor = if rng.gen_bool(0.5) {
            basis[j].clone()
        } else {
            basis[j].inverse()
        };
        basis[i] = if rng.gen_bool(0.5) {
            &basis[i] * &factor
        } else {
            &factor * &basis[i]
        };
    }
    basis[0].clone()
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut primitives = 0;
    for k in 0..10 {
        let (rank, names) = if k < 5 { (2, "x y") } else { (3, "x y z") };
        let p = nielsen_primitive(&mut rng, rank);
        primitives += (is_primitive(&p, &al(names)).unwrap() == Decision::True) as usize;
    }
    let f2 = al("x y");
    let mut negatives = 0;
    for s in ["x y x^-1 y^-1", "x^2", "x^2 y^2"] {
        let outcome = primitivity_search(&w(&f2, s), &f2, DEFAULT_CAP).unwrap();
        negatives += (outcome.decision == Decision::False && !outcome.cap_reached) as usize;
    }
    let mut agree = 0;
    let mut total = 0;
    for_each_reduced_word(2, 6, &[], |letters| {
        if letters.is_empty() {
            return;
        }
        let word = Word::from_letters(letters.iter().copied());
        let single = is_primitive(&word, &f2).unwrap();
        let factor = free_factor_search(std::slice::from_ref(&word), &f2, DEFAULT_CAP).unwrap();
        total += 1;
        agree += (single == factor.decision && single != Decision::Inconclusive) as usize;
    });
    Verdict {
        pass: primitives == 10 && negatives == 3 && agree == total,
        detail: format!(
            "Nielsen primitives {primitives}/10; negatives exact {negatives}/3; primitive <=> free factor {agree}/{total}"
        ),
    }
}

fn criterion_7() -> Verdict {
    let f2 = al("x y");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let words = reduced_words(2, 6);
    let mut agree_pairs = 0;
    for _ in 0..50 {
        let pick = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(1..=3);
            let gens: Vec<Word> = (0..n)
                .map(|_| {
                    let len = rng.gen_range(1..=4);
                    random_word(rng, 2, len)
                })
                .collect();
            SubgroupGraph::build(&gens, &f2).unwrap()
        };
        let h = pick(&mut rng);
        let k = pick(&mut rng);
        let meet = h.intersect(&k).unwrap();
        let ok = words
            .iter()
            .all(|z| meet.contains(z) == (h.contains(z) && k.contains(z)));
        agree_pairs += ok as usize;
    }
    let x2 = SubgroupGraph::build(&[w(&f2, "x^2")], &f2).unwrap();
    let x3 = SubgroupGraph::build(&[w(&f2, "x^3")], &f2).unwrap();
    let x6 = SubgroupGraph::build(&[w(&f2, "x^6")], &f2).unwrap();
    let powers = x2.intersect(&x3).unwrap() == x6;
    let x = SubgroupGraph::build(&[w(&f2, "x")], &f2).unwrap();
    let h = al("a b u y");
    let u = SubgroupGraph::build(&[w(&h, "u")], &h).unwrap();
    let v = SubgroupGraph::build(&[w(&h, "a y b y a y^-1 b y^-1")], &h).unwrap();
    let malnormal = x.is_malnormal() && !x2.is_malnormal() && u.is_malnormal() && v.is_malnormal();
    Verdict {
        pass: agree_pairs == 50 && powers && malnormal,
        detail: format!(
            "intersection = membership conjunction {agree_pairs}/50; <x^2> meet <x^3> = <x^6>: {powers}; malnormality verdicts: {malnormal}"
        ),
    }
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let f3 = al("x y z");
    let swap = Endomorphism::with_images(
        Presentation::Free(f3.clone()),
        &[("y", w(&f3, "z")), ("z", w(&f3, "y"))],
    )
    .unwrap();
    let fixed = fixed_words(&swap, 8).unwrap();
    let x3 = SubgroupGraph::build(&[w(&f3, "x")], &f3).unwrap();
    let swap_ok = fixed == x3;
    let factor = is_free_factor(&[w(&f3, "x")], &f3).unwrap() == Decision::True;
    let f2 = al("x y");
    let x = w(&f2, "x");
    let inner = Endomorphism::new(
        Presentation::Free(f2.clone()),
        vec![x.clone(), w(&f2, "y").conjugate_by(&x)],
    )
    .unwrap();
    let inner_ok = fixed_words(&inner, 6).unwrap() == SubgroupGraph::build(&[x], &f2).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    Verdict {
        pass: swap_ok && factor && inner_ok && elapsed < 300.0,
        detail: format!(
            "transposition fixed = <x>: {swap_ok}; <x> free factor: {factor}; conjugation fixed = <x>: {inner_ok}; {elapsed:.1}s"
        ),
    }
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Verdict); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut red = BTreeSet::new();
    for (n, check) in criteria {
        let v = check();
        // The raw handle bypasses libtest capture, so the lines always show.
        let _ = writeln!(
            std::io::stderr(),
            "criterion {n}: {} [{}]",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        if !v.pass {
            red.insert(n);
        }
    }
    let expected: BTreeSet<u32> = EXPECTED_RED.iter().copied().collect();
    assert_eq!(
        red, expected,
        "failing criteria differ from the documented set"
    );
}
