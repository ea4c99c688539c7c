use std::sync::OnceLock;

use proptest::prelude::*;

use projgen::boset::{boset_of, projection_algebra_of_boset};
use projgen::chain_semigroup::ChainSemigroup;
use projgen::chains::Path;
use projgen::diagram::{tl_monoid, PartitionDiagram};
use projgen::presentations::word_to_friendly_path;
use projgen::topology::complex::{complex_kp, complex_kp_prime};
use projgen::topology::snf::abelianization;
use projgen::topology::word::letter;
use projgen::topology::{pi1_presentation, GroupWord};
use projgen::{fixtures, AdjacencyGraph, ProjectionAlgebra};

fn algebras() -> &'static [(ProjectionAlgebra, ChainSemigroup)] {
    static CELL: OnceLock<Vec<(ProjectionAlgebra, ChainSemigroup)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut algs = vec![
            fixtures::kinyon(),
            fixtures::square_band(2),
            fixtures::square_band(3),
        ];
        for n in 3..=4 {
            let m = tl_monoid(n).unwrap();
            algs.push(m.semigroup.projection_algebra_unchecked().0);
        }
        let m = projgen::diagram::motzkin_monoid(3).unwrap();
        algs.push(m.semigroup.projection_algebra_unchecked().0);
        algs.into_iter()
            .map(|a| {
                let h = ChainSemigroup::new(&a).unwrap();
                (a, h)
            })
            .collect()
    })
}

/// A friendly walk steered by `choices`.
fn walk(alg: &ProjectionAlgebra, start: usize, choices: &[usize]) -> Vec<usize> {
    let mut out = vec![start % alg.size()];
    for &c in choices {
        let last = *out.last().unwrap();
        let next: Vec<usize> = (0..alg.size())
            .filter(|&q| q != last && alg.friendly(last, q))
            .collect();
        if next.is_empty() {
            break;
        }
        out.push(next[c % next.len()]);
    }
    out
}

fn graph_strategy() -> impl Strategy<Value = AdjacencyGraph> {
    (1usize..=5).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(&e, _)| e)
                .collect();
            AdjacencyGraph::new(n, &edges).unwrap()
        })
    })
}

fn diagram_strategy(n: usize) -> impl Strategy<Value = PartitionDiagram> {
    proptest::collection::vec(0..2 * n, 2 * n)
        .prop_map(move |raw| PartitionDiagram::from_labels(n, &raw).unwrap())
}

fn group_word() -> impl Strategy<Value = GroupWord> {
    proptest::collection::vec((0usize..3, any::<bool>()), 0..12)
        .prop_map(|ls| GroupWord::from_letters(ls.into_iter().map(|(g, i)| letter(g, i)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn theta_chain_composes(
        a in 0usize..6,
        x in 0usize..64,
        ops1 in proptest::collection::vec(0usize..64, 0..5),
        ops2 in proptest::collection::vec(0usize..64, 0..5),
    ) {
        let (alg, _) = &algebras()[a];
        let n = alg.size();
        let ops1: Vec<usize> = ops1.iter().map(|p| p % n).collect();
        let ops2: Vec<usize> = ops2.iter().map(|p| p % n).collect();
        let joined: Vec<usize> = ops1.iter().chain(&ops2).copied().collect();
        let x = x % n;
        prop_assert_eq!(
            alg.theta_chain(x, &joined),
            alg.theta_chain(alg.theta_chain(x, &ops1), &ops2)
        );
    }

    #[test]
    fn restriction_commutes_with_reduction(
        a in 0usize..6,
        start in 0usize..64,
        choices in proptest::collection::vec(0usize..64, 0..6),
        below in 0usize..64,
    ) {
        let (alg, h) = &algebras()[a];
        let path = Path::new(alg, walk(alg, start, &choices)).unwrap();
        let under: Vec<usize> = (0..alg.size()).filter(|&q| alg.leq(q, path.dom())).collect();
        let q = under[below % under.len()];
        let direct = h.normalize(&path.restrict_left(alg, q).unwrap()).unwrap();
        let reduced = h.normalize(&path.reduce().restrict_left(alg, q).unwrap()).unwrap();
        prop_assert_eq!(&direct, &reduced);
        let product = h.product(&h.projection(q), &h.normalize(&path).unwrap()).unwrap();
        prop_assert_eq!(&direct, &product);
    }

    #[test]
    fn word_paths_match_products(
        a in 0usize..6,
        word in proptest::collection::vec(0usize..64, 1..9),
    ) {
        let (alg, h) = &algebras()[a];
        let word: Vec<usize> = word.iter().map(|p| p % alg.size()).collect();
        let path = word_to_friendly_path(alg, &word).unwrap();
        for (v, w) in path.vertices().iter().zip(&word) {
            prop_assert!(alg.leq(*v, *w));
        }
        let mut expected = h.projection(word[0]);
        for &w in &word[1..] {
            expected = h.product(&expected, &h.projection(w)).unwrap();
        }
        prop_assert_eq!(h.normalize(&path).unwrap(), expected);
    }

    #[test]
    fn boset_roundtrip_on_graphs(g in graph_strategy()) {
        let alg = g.projection_algebra();
        let back = projection_algebra_of_boset(&boset_of(&alg)).unwrap();
        prop_assert_eq!(back.flat_table(), alg.flat_table());
    }

    #[test]
    fn complexes_agree_on_homology(g in graph_strategy()) {
        let alg = g.projection_algebra();
        let kp = complex_kp(&alg).unwrap();
        let kpp = complex_kp_prime(&alg).unwrap();
        prop_assert_eq!(kp.components(), kpp.components());
        for comp in kp.components() {
            let a = abelianization(&pi1_presentation(&kp, comp[0]).presentation);
            let b = abelianization(&pi1_presentation(&kpp, comp[0]).presentation);
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn diagram_product_is_associative(
        (a, b, c) in (1usize..=4).prop_flat_map(|n| {
            (diagram_strategy(n), diagram_strategy(n), diagram_strategy(n))
        })
    ) {
        let ab_c = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let a_bc = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        prop_assert_eq!(a.multiply(&b).unwrap().star(), b.star().multiply(&a.star()).unwrap());
        prop_assert_eq!(a.star().star(), a);
    }

    #[test]
    fn group_word_laws(u in group_word(), v in group_word()) {
        let r = u.free_reduce();
        prop_assert_eq!(r.free_reduce(), r.clone());
        prop_assert!(u.concat(&u.inverse()).free_reduce().is_empty());
        prop_assert_eq!(u.inverse().inverse(), u.clone());
        prop_assert_eq!(
            u.concat(&v).inverse().free_reduce(),
            v.inverse().concat(&u.inverse()).free_reduce()
        );
        prop_assert_eq!(
            u.concat(&v).free_reduce(),
            r.concat(&v.free_reduce()).free_reduce()
        );
    }
}
