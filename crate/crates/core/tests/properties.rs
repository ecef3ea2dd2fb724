mod common;

use common::{mul, naive_closure, section_from_action, Set};
use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::seq::SliceRandom;
use treegrp::parity::{n_parity, word_parities, word_product, JContext};
use treegrp::portrait::{FiniteAutomorphism, LevelSet, Vertex};
use treegrp::subgroup::{close, conjugate_label_check, verify_presentation, EnumerationCap};

fn cap() -> EnumerationCap {
    EnumerationCap::default()
}

fn random_elem(d: usize, seed: u64) -> FiniteAutomorphism {
    FiniteAutomorphism::random(d, &mut common::rng(seed)).unwrap()
}

/// `(d, g)` with `d` in `lo..=hi`.
fn elem_in(lo: usize, hi: usize) -> impl Strategy<Value = (usize, FiniteAutomorphism)> {
    (lo..=hi, any::<u64>()).prop_map(|(d, s)| (d, random_elem(d, s)))
}

fn pair_in(lo: usize, hi: usize) -> impl Strategy<Value = (FiniteAutomorphism, FiniteAutomorphism)> {
    (lo..=hi, any::<u64>(), any::<u64>()).prop_map(|(d, s, t)| (random_elem(d, s), random_elem(d, t)))
}

fn triple_in(lo: usize, hi: usize) -> impl Strategy<Value = [FiniteAutomorphism; 3]> {
    (lo..=hi, any::<[u64; 3]>()).prop_map(|(d, s)| s.map(|x| random_elem(d, x)))
}

fn word_of(d: usize, len: usize) -> impl Strategy<Value = Vertex> {
    prop::collection::vec(0u8..2, 0..=len.min(d))
        .prop_map(|s| Vertex::from_symbols(&s).unwrap())
}

fn nonempty_levels(d: usize) -> impl Strategy<Value = LevelSet> {
    (1u32..(1 << d)).prop_map(LevelSet::from_mask)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn associativity([f, g, h] in triple_in(2, 8)) {
        prop_assert_eq!(mul(&mul(&f, &g), &h), mul(&f, &mul(&g, &h)));
    }

    #[test]
    fn action_is_compatible_with_composition(
        (h, g, w) in (2usize..=8, any::<u64>(), any::<u64>())
            .prop_flat_map(|(d, s, t)| (Just(random_elem(d, s)), Just(random_elem(d, t)), word_of(d, d)))
    ) {
        prop_assert_eq!(mul(&h, &g).apply(&w).unwrap(), h.apply(&g.apply(&w).unwrap()).unwrap());
    }

    #[test]
    fn ultrametric_inequality([g, f, h] in triple_in(2, 8)) {
        let gh = g.distance(&h).unwrap();
        let gf = g.distance(&f).unwrap();
        let fh = f.distance(&h).unwrap();
        let max = if gf.is_at_most(&fh) { fh } else { gf };
        prop_assert!(gh.is_at_most(&max));
        prop_assert_eq!(g.distance(&h).unwrap(), h.distance(&g).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn identity_and_inverse((d, g) in elem_in(1, 8)) {
        let e = FiniteAutomorphism::identity(d).unwrap();
        prop_assert_eq!(mul(&e, &g), g.clone());
        prop_assert_eq!(mul(&g, &e), g.clone());
        prop_assert!(mul(&g, &g.invert()).is_identity());
        prop_assert!(mul(&g.invert(), &g).is_identity());
    }

    #[test]
    fn alpha_and_root_activity_are_homomorphisms(
        ((g, h), j) in (2usize..=8).prop_flat_map(|d| (pair_in(d, d), nonempty_levels(d)))
    ) {
        let gh = mul(&g, &h);
        prop_assert_eq!(gh.alpha(j).unwrap(), g.alpha(j).unwrap() + h.alpha(j).unwrap());
        prop_assert_eq!(gh.root_activity(), g.root_activity() + h.root_activity());
    }

    #[test]
    fn chain_rule_and_inversion(
        (g, h, w) in (2usize..=8, any::<u64>(), any::<u64>())
            .prop_flat_map(|(d, s, t)| (Just(random_elem(d, s)), Just(random_elem(d, t)), word_of(d, d - 1)))
    ) {
        let hw = g.apply(&w).unwrap();
        // (hg)_w = h_{g(w)} g_w
        let lhs = mul(&h, &g).section(&w).unwrap();
        let rhs = mul(&h.section(&hw).unwrap(), &g.section(&w).unwrap());
        prop_assert_eq!(lhs, rhs);
        // (g^-1)_w = (g_{g^-1(w)})^-1
        let pre = g.invert().apply(&w).unwrap();
        prop_assert_eq!(g.invert().section(&w).unwrap(), g.section(&pre).unwrap().invert());
    }

    #[test]
    fn sections_agree_with_the_action(
        (g, w) in (2usize..=6, any::<u64>())
            .prop_flat_map(|(d, s)| (Just(random_elem(d, s)), word_of(d, d - 1)))
    ) {
        prop_assert_eq!(g.section(&w).unwrap(), section_from_action(&g, &w));
    }

    #[test]
    fn encoding_round_trips((d, g) in elem_in(1, 12)) {
        prop_assert_eq!(FiniteAutomorphism::decode(&g.encode(), d).unwrap(), g.clone());
        let hex = g.to_hex();
        prop_assert!(hex.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));
        prop_assert_eq!(FiniteAutomorphism::from_hex(&hex, d).unwrap(), g);
    }

    #[test]
    fn subpatterns_are_detected(
        (g, v, k) in (3usize..=7, any::<u64>())
            .prop_flat_map(|(d, s)| (Just(random_elem(d, s)), word_of(d, d - 1)))
            .prop_flat_map(|(g, v)| { let room = g.depth() - v.len(); (Just(g), Just(v), 1..=room) })
    ) {
        let p = g.subpattern(&v, k).unwrap();
        prop_assert!(treegrp::pattern::pattern_appears(&p, &g, &v).unwrap());
        let mut other = p.clone();
        other = mul(&other, &FiniteAutomorphism::generator(k, 0).unwrap());
        prop_assert!(!treegrp::pattern::pattern_appears(&other, &g, &v).unwrap());
    }

    #[test]
    fn word_parities_match_the_product(
        (d, j, word) in (2usize..=8).prop_flat_map(|d| {
            (Just(d), nonempty_levels(d), prop::collection::vec(0..d, 0..24))
        })
    ) {
        let ctx = JContext::new(d, j).unwrap();
        let g = word_product(&word, d).unwrap();
        let (n0, n1) = word_parities(&word, &ctx).unwrap();
        prop_assert_eq!(n0, n_parity(&g, &ctx, 0).unwrap());
        prop_assert_eq!(n1, n_parity(&g, &ctx, 1).unwrap());
    }

    #[test]
    fn word_parities_under_insertion(
        (d, j, word, pos, letter) in (2usize..=8).prop_flat_map(|d| {
            (Just(d), nonempty_levels(d), prop::collection::vec(0..d, 0..24), any::<prop::sample::Index>(), 0..d)
        })
    ) {
        let ctx = JContext::new(d, j).unwrap();
        let at = pos.index(word.len() + 1);
        let base = word_parities(&word, &ctx).unwrap();

        // a square of a letter outside J' leaves both parities alone
        if !ctx.jprime().contains(letter) {
            let mut w = word.clone();
            w.splice(at..at, [letter, letter]);
            prop_assert_eq!(word_parities(&w, &ctx).unwrap(), base);
        }
        // a single J' letter flips N_i, i the root activity of its suffix
        if ctx.jprime().contains(letter) {
            let mut w = word.clone();
            w.insert(at, letter);
            let suffix_zeros = word[at..].iter().filter(|&&x| x == 0).count();
            let (n0, n1) = word_parities(&w, &ctx).unwrap();
            if suffix_zeros % 2 == 0 {
                prop_assert_eq!((n0 + base.0, n1 + base.1), (treegrp::portrait::Parity::ONE, treegrp::portrait::Parity::ZERO));
            } else {
                prop_assert_eq!((n0 + base.0, n1 + base.1), (treegrp::portrait::Parity::ZERO, treegrp::portrait::Parity::ONE));
            }
        }
    }

    #[test]
    fn conjugation_permutes_last_level_labels(
        (h, g) in (5usize..=6, any::<u64>(), any::<u64>()).prop_map(|(d, s, t)| {
            let mut h = random_elem(d, s);
            // keep only the last-level labels
            h = FiniteAutomorphism::from_labels(d, h.support().filter(|&i| Vertex::from_heap_index(i).len() == d - 1)).unwrap();
            (h, random_elem(d, t))
        })
    ) {
        prop_assert!(conjugate_label_check(&h, &g).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_idempotent_and_order_independent(
        (d, seeds, shuffle) in (2usize..=3, prop::collection::vec(any::<u64>(), 0..4), any::<u64>())
    ) {
        let gens: Vec<_> = seeds.iter().map(|&s| random_elem(d, s)).collect();
        let s = close(d, &gens, cap()).unwrap();
        let elems: Vec<_> = s.iter().collect();
        let again = close(d, &elems, cap()).unwrap();
        prop_assert_eq!(&again, &s);
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut common::rng(shuffle));
        prop_assert_eq!(&close(d, &shuffled, cap()).unwrap(), &s);
        let naive: Set = naive_closure(d, &gens);
        prop_assert_eq!(naive.len() as u64, s.order());
        prop_assert!(naive.iter().all(|g| s.contains(g)));
    }

    #[test]
    fn derived_subgroup_is_normal_with_abelian_quotient(
        (d, seeds) in (2usize..=3, prop::collection::vec(any::<u64>(), 1..4))
    ) {
        let gens: Vec<_> = seeds.iter().map(|&s| random_elem(d, s)).collect();
        let s = close(d, &gens, cap()).unwrap();
        let derived = s.derived_subgroup(cap()).unwrap();
        prop_assert!(derived.is_subgroup_of(&s));
        for x in s.iter() {
            for y in derived.generators() {
                prop_assert!(derived.contains(&y.conjugate_by(&x).unwrap()));
            }
            for y in s.iter() {
                prop_assert!(derived.contains(&x.commutator(&y).unwrap()));
            }
        }
    }

    #[test]
    fn orbit_sizes_divide_the_order(
        (d, seeds, v) in (2usize..=4, prop::collection::vec(any::<u64>(), 0..3))
            .prop_flat_map(|(d, s)| (Just(d), Just(s), word_of(d, d)))
    ) {
        let gens: Vec<_> = seeds.iter().map(|&s| random_elem(d, s)).collect();
        let s = close(d, &gens, cap()).unwrap();
        let orbit = s.orbit(&v).unwrap().len() as u64;
        prop_assert_eq!(s.order() % orbit, 0);
    }

    #[test]
    fn subset_generated_subgroups_are_subgroups(
        (d, gens) in (2usize..=3).prop_flat_map(|d| {
            (Just(d), subsequence(FiniteAutomorphism::generators(d).unwrap(), 0..=d))
        })
    ) {
        let s = close(d, &gens, cap()).unwrap();
        let full = treegrp::subgroup::full_group(d, cap()).unwrap();
        prop_assert!(s.is_subgroup_of(&full));
        prop_assert_eq!(full.order() % s.order(), 0);
    }
}

#[test]
fn presentation_relations_hold() {
    for d in 2..=6 {
        let report = verify_presentation(d).unwrap();
        assert!(report.passed(), "d={d}: {:?}", report.failures);
    }
}
