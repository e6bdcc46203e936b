mod common;

use std::collections::BTreeSet;

use common::*;
use dessins::canon::canonical_key;
use dessins::enumerate::{is_canonical, BasisWindow};
use dessins::filtration::{belyi_generators, dessin_generators, full_expansion};
use dessins::linalg::int;
use dessins::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn d(s0: &[usize], s1: &[usize]) -> Dessin {
    Dessin::from_images(s0.to_vec(), s1.to_vec()).unwrap()
}

fn window(n: usize) -> BasisWindow {
    enumerate_window(n, WindowOptions::default()).unwrap()
}

/// The six classes with at most two edges, written out by hand.
fn hand_classes() -> [Dessin; 6] {
    [
        Dessin::empty(),
        Dessin::single_edge(),
        d(&[1, 0], &[0, 1]), // black vertex of degree 2
        d(&[0, 1], &[1, 0]), // white vertex of degree 2
        d(&[1, 0], &[1, 0]), // double edge
        d(&[0, 1], &[0, 1]), // two disjoint edges
    ]
}

#[test]
fn isomorphism_agrees_with_exhaustive_search_on_three_edges() {
    let pairs = all_pairs(3);
    for a in &pairs {
        for b in &pairs {
            assert_eq!(isomorphic(a, b), brute_isomorphic(a, b), "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn isomorphic_implies_equal_passports_up_to_four_edges() {
    for n in 0..=4 {
        for x in all_pairs(n) {
            let (_, rep) = canonical_form(&x);
            assert_eq!(x.passport(), rep.passport());
        }
    }
}

#[test]
fn burnside_counts() {
    let expected = [1, 1, 4, 11, 43, 161];
    for n in 0..=5 {
        assert_eq!(burnside_count(n), expected[n]);
        assert_eq!(enumerate_exact(n, Mode::All).unwrap().len(), expected[n]);
    }
}

#[test]
fn hand_classes_are_the_two_edge_window() {
    let keys: BTreeSet<CanonicalKey> = hand_classes().iter().map(canonical_key).collect();
    assert_eq!(keys.len(), 6);
    let w: BTreeSet<CanonicalKey> = window(2).keys().iter().cloned().collect();
    assert_eq!(keys, w);
}

#[test]
fn connected_enumeration_matches_transitive_scan() {
    for n in 1..=4 {
        let oracle: BTreeSet<CanonicalKey> = all_pairs(n)
            .iter()
            .filter(|x| is_transitive(x))
            .map(canonical_key)
            .collect();
        let got = enumerate_exact(n, Mode::Connected).unwrap();
        assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), oracle);
    }
}

#[test]
fn window_five_has_221_classes() {
    let w = window(5);
    assert_eq!(w.len(), 221);
    assert!(w.keys().iter().all(is_canonical));
}

#[test]
fn two_edge_level_two_rank_by_dense_elimination() {
    let [empty, one, a, b, c, ii] = hand_classes();
    let hand: Vec<SparseVector> = [&a, &b, &c, &ii]
        .iter()
        .map(|x| vector(&[(x, 1), (&one, -2), (&empty, 1)]))
        .collect();
    assert_eq!(dense_rank(&hand), 4);

    let w = window(2);
    let gens = dessin_generators(&w, 2, Exec::Sequential);
    assert_eq!(
        gens.iter().map(|g| serde_json::to_string(g).unwrap()).collect::<BTreeSet<_>>().len(),
        4,
        "one generator per two-edge class"
    );
    let mut s = Subspace::new();
    for v in &hand {
        s.insert(v);
    }
    assert_eq!(s.rank(), dense_rank(&hand));
    assert_eq!(dessin_level_span(&w, 2, Exec::Sequential).rank(), dense_rank(&hand));
    for g in &gens {
        assert!(s.contains(g));
    }
}

#[test]
fn two_edge_belyi_level_two_by_dense_elimination() {
    // (I − ∅)∘(I − ∅) = I − ∅ and (I − ∅)∘(X − Y) = X − Y, using I as the unit
    // and ∅ as the absorbing element
    let classes = hand_classes();
    let (empty, one) = (&classes[0], &classes[1]);
    let mut hand = vec![vector(&[(one, 1), (empty, -1)])];
    for i in 0..6 {
        for j in i + 1..6 {
            hand.push(vector(&[(&classes[i], 1), (&classes[j], -1)]));
        }
    }
    let expected = dense_rank(&hand);
    assert_eq!(expected, 5);
    let w = window(2);
    let gens = belyi_generators(&w, 2, Exec::Sequential);
    assert_eq!(dense_rank(&gens), expected);
    assert_eq!(belyi_level_span_inner(&w, 2, Exec::Sequential).rank(), expected);
}

#[test]
fn level_one_ranks_on_three_edges() {
    let w = window(3);
    let dessin = dessin_level_span(&w, 1, Exec::Sequential);
    let belyi = belyi_level_span_inner(&w, 1, Exec::Sequential);
    let oracle = dense_rank(&dessin_generators(&w, 1, Exec::Sequential));
    assert_eq!(oracle, 16);
    assert_eq!(dessin.rank(), 16);
    assert_eq!(belyi.rank(), 16);
    assert!(subspace_leq(&dessin, &belyi) && subspace_leq(&belyi, &dessin));
    let report = compare_levels(&w, 1, Exec::Parallel);
    assert_eq!((report.rank_dessin, report.rank_belyi_inner), (16, 16));
    assert!(report.belyi_in_dessin && report.dessin_in_belyi_inner);
}

#[test]
fn quotient_examples() {
    let w3 = window(3);
    assert_eq!(quotient_dimension(&w3, 0, Exec::Sequential).quotient_dimension, 1);
    let q1 = quotient_dimension(&w3, 1, Exec::Sequential);
    assert!(q1.quotient_dimension <= 1 && q1.spanning_claim_holds);
    let w4 = window(4);
    let q2 = quotient_dimension(&w4, 2, Exec::Sequential);
    assert_eq!(q2.classes_with_level_edges, 4);
    assert!(q2.quotient_dimension <= 4 && q2.spanning_claim_holds);
}

#[test]
fn product_matches_path_lifting_for_small_factors() {
    let classes: Vec<Dessin> = (1..=4)
        .flat_map(|n| enumerate_exact(n, Mode::All).unwrap())
        .map(|k| k.to_dessin())
        .collect();
    for a in &classes {
        for b in &classes {
            let mut got: Vec<CanonicalKey> = product(a, b)
                .components()
                .iter()
                .map(|(c, _)| canonical_key(c))
                .collect();
            got.sort();
            assert_eq!(got, lifted_product_components(a, b), "{a:?} ∘ {b:?}");
        }
    }
}

#[test]
fn insertion_order_does_not_change_rank() {
    use rand::seq::SliceRandom;
    let w = window(4);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pool: Vec<SparseVector> = dessin_generators(&w, 2, Exec::Sequential)
        .into_iter()
        .chain(belyi_generators(&w, 2, Exec::Sequential))
        .collect();
    for _ in 0..5 {
        let mut gens: Vec<SparseVector> = pool.choose_multiple(&mut rng, 30).cloned().collect();
        let expected = dense_rank(&gens);
        for _ in 0..10 {
            gens.shuffle(&mut rng);
            let mut s = Subspace::new();
            s.extend(&gens);
            assert_eq!(s.rank(), expected);
        }
    }
}

#[test]
fn execution_modes_agree() {
    let w = window(4);
    assert_eq!(
        dessin_generators(&w, 2, Exec::Sequential),
        dessin_generators(&w, 2, Exec::Parallel)
    );
    assert_eq!(
        belyi_generators(&w, 2, Exec::Sequential),
        belyi_generators(&w, 2, Exec::Parallel)
    );
}

#[test]
fn full_expansion_sums_to_zero() {
    for k in window(3).keys() {
        let v = full_expansion(&k.to_dessin());
        if k.edge_count() > 0 {
            assert_eq!(v.augmentation(), int(0));
        }
    }
}

fn arb_dessin(max: usize) -> impl Strategy<Value = Dessin> {
    (0..=max)
        .prop_flat_map(|n| {
            let id: Vec<usize> = (0..n).collect();
            (Just(id.clone()).prop_shuffle(), Just(id).prop_shuffle())
        })
        .prop_map(|(a, b)| Dessin::from_images(a, b).unwrap())
}

proptest! {
    #[test]
    fn deleting_in_two_steps_equals_deleting_once(
        x in arb_dessin(7),
        picks in proptest::collection::vec(0u8..3, 7),
    ) {
        let n = x.edge_count();
        let t1: Vec<usize> = (0..n).filter(|&e| picks[e] == 1).collect();
        let t2: Vec<usize> = (0..n).filter(|&e| picks[e] == 2).collect();
        let (first, map1) = x.delete_edges(&t1).unwrap();
        let t2_mapped: Vec<usize> = t2.iter().map(|&e| map1[e].unwrap()).collect();
        let (second, map2) = first.delete_edges(&t2_mapped).unwrap();
        let both: Vec<usize> = t1.iter().chain(&t2).copied().collect();
        let (once, map) = x.delete_edges(&both).unwrap();
        prop_assert_eq!(&second, &once);
        for e in 0..n {
            prop_assert_eq!(map[e], map1[e].and_then(|m| map2[m]));
        }
    }

    #[test]
    fn cycle_lengths_sum_to_edge_count(x in arb_dessin(8)) {
        let p = x.passport();
        let n = x.edge_count();
        prop_assert_eq!(p.black_degrees.iter().sum::<usize>(), n);
        prop_assert_eq!(p.white_degrees.iter().sum::<usize>(), n);
        prop_assert_eq!(p.face_degrees.iter().sum::<usize>(), n);
        for (c, _) in x.components() {
            let chi = c.euler_characteristic();
            prop_assert!(chi <= 2 && chi % 2 == 0);
        }
    }

    #[test]
    fn insert_then_reduce_is_zero(
        coeffs in proptest::collection::vec(-3i64..=3, 6),
    ) {
        let keys = window(2).keys().to_vec();
        let v = SparseVector::from_terms(keys.into_iter().zip(coeffs.into_iter().map(int)));
        let mut s = Subspace::new();
        s.insert(&v);
        prop_assert!(s.reduce(&v).is_zero());
    }
}
