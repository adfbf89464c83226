mod common;

use proptest::prelude::*;

use common::{al, nonempty_word, word};
use fgtk::stallings::{format_graph, parse_graph};
use fgtk::{SubgroupGraph, Word};

fn generators() -> impl Strategy<Value = Vec<Word>> {
    prop::collection::vec(nonempty_word(2, 5), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generators_and_products_are_members(gens in generators(), picks in prop::collection::vec((0usize..3, any::<bool>()), 0..6)) {
        let a = al("x y");
        let g = SubgroupGraph::build(&gens, &a).unwrap();
        let mut product = Word::identity();
        for (i, inv) in picks {
            let h = &gens[i % gens.len()];
            product = &product * &if inv { h.inverse() } else { h.clone() };
        }
        prop_assert!(gens.iter().all(|h| g.contains(h)));
        prop_assert!(g.contains(&product));
    }

    #[test]
    fn basis_generates_same_subgroup(gens in generators()) {
        let a = al("x y");
        let g = SubgroupGraph::build(&gens, &a).unwrap();
        let (rank, basis) = g.basis();
        prop_assert_eq!(rank, basis.len());
        prop_assert_eq!(rank, g.rank());
        prop_assert_eq!(g.edge_count() + 1, g.vertex_count() + rank);
        prop_assert_eq!(SubgroupGraph::build(&basis, &a).unwrap(), g);
    }

    #[test]
    fn expressing_in_basis(gens in generators(), z in word(2, 6)) {
        let a = al("x y");
        let g = SubgroupGraph::build(&gens, &a).unwrap();
        let (_, basis) = g.basis();
        match g.express(&z) {
            Some(local) => prop_assert_eq!(local.substitute(&basis), z),
            None => prop_assert!(!g.contains(&z)),
        }
    }

    #[test]
    fn nielsen_moves_preserve_graph(gens in generators()) {
        let a = al("x y");
        let g = SubgroupGraph::build(&gens, &a).unwrap();
        let mut moved = gens.clone();
        moved.reverse();
        moved[0] = moved[0].inverse();
        if moved.len() > 1 {
            moved[1] = &moved[1] * &moved[0];
        }
        prop_assert_eq!(SubgroupGraph::build(&moved, &a).unwrap(), g);
    }

    #[test]
    fn intersection_is_membership_conjunction(g1 in generators(), g2 in generators(), z in word(2, 8)) {
        let a = al("x y");
        let h = SubgroupGraph::build(&g1, &a).unwrap();
        let k = SubgroupGraph::build(&g2, &a).unwrap();
        let meet = h.intersect(&k).unwrap();
        prop_assert_eq!(meet.contains(&z), h.contains(&z) && k.contains(&z));
        prop_assert_eq!(k.intersect(&h).unwrap(), meet);
    }

    #[test]
    fn graph_file_roundtrip(gens in generators()) {
        let a = al("x y");
        let g = SubgroupGraph::build(&gens, &a).unwrap();
        let (b, parsed) = parse_graph(&format_graph(&g, &a), None).unwrap();
        prop_assert_eq!(b, a);
        prop_assert_eq!(parsed, g);
    }

    #[test]
    fn cyclic_root_free_words_are_malnormal(w in nonempty_word(2, 6)) {
        let a = al("x y");
        let (_, k) = fgtk::word::extract_root(&w).unwrap();
        let g = SubgroupGraph::build(std::slice::from_ref(&w), &a).unwrap();
        prop_assert_eq!(g.is_malnormal(), k == 1);
    }
}
