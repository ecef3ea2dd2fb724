//! Library algorithms against the brute-force oracles in `common`.

mod common;

use common::*;
use rand::Rng;
use treegrp::parity::{derived_membership_certificate, JContext};
use treegrp::pattern::{
    essential_reduction, is_essential, truncation_group, LinearPatternGroup, PatternGroup,
};
use treegrp::portrait::{FiniteAutomorphism, LevelSet};
use treegrp::subgroup::{
    all_subgroups, close, enumerate_pj, full_group, in_derived_of_gd, EnumeratedSubgroup,
    EnumerationCap,
};

fn cap() -> EnumerationCap {
    EnumerationCap::default()
}

fn as_set(s: &EnumeratedSubgroup) -> Set {
    s.iter().collect()
}

fn random_generated(d: usize, rng: &mut impl Rng) -> EnumeratedSubgroup {
    let k = rng.gen_range(1..=3);
    let gens: Vec<_> = (0..k).map(|_| FiniteAutomorphism::random(d, rng).unwrap()).collect();
    close(d, &gens, cap()).unwrap()
}

#[test]
fn derived_subgroup_matches_all_pairs_closure() {
    let subs = all_subgroups(2).unwrap();
    assert_eq!(subs.len(), 10);
    for s in &subs {
        assert_eq!(as_set(&s.derived_subgroup(cap()).unwrap()), all_pairs_derived(2, &as_set(s)));
    }
    let mut rng = rng(2024);
    for _ in 0..50 {
        let s = random_generated(3, &mut rng);
        assert_eq!(as_set(&s.derived_subgroup(cap()).unwrap()), all_pairs_derived(3, &as_set(&s)));
    }
}

#[test]
fn closure_matches_naive_saturation() {
    let mut rng = rng(7);
    for _ in 0..30 {
        let s = random_generated(3, &mut rng);
        assert_eq!(as_set(&s), naive_closure(3, s.generators()));
    }
}

#[test]
fn derived_of_gd_is_the_parity_kernel() {
    for d in 2..=3 {
        let all: Set = all_elements(d).into_iter().collect();
        let derived = all_pairs_derived(d, &all);
        for g in &all {
            assert_eq!(in_derived_of_gd(g), derived.contains(g));
        }
    }
    let derived = full_group(4, cap()).unwrap().derived_subgroup(cap()).unwrap();
    let mut rng = rng(4);
    for _ in 0..10_000 {
        let g = FiniteAutomorphism::random(4, &mut rng).unwrap();
        assert_eq!(in_derived_of_gd(&g), derived.contains(&g));
    }
}

#[test]
fn essentiality_and_reduction_match_brute_force() {
    let mut groups = all_subgroups(2).unwrap();
    let mut rng = rng(99);
    groups.extend((0..40).map(|_| random_generated(3, &mut rng)));
    for d in 2..=3 {
        groups.extend(LevelSet::all_nonempty(d).map(|j| enumerate_pj(d, j, cap()).unwrap()));
    }
    for s in &groups {
        let set = as_set(s);
        let check = is_essential(s).unwrap();
        assert_eq!(check.essential, brute_is_essential(&set), "{s:?}");
        if let Some((g, i)) = &check.witness {
            assert!(s.contains(g) && *i < 2);
        }
        let reduced = essential_reduction(s).unwrap();
        assert_eq!(as_set(reduced.group()), brute_reduction(&set), "{s:?}");
        assert!(is_essential(reduced.group()).unwrap().essential);
        assert_eq!(essential_reduction(reduced.group()).unwrap().group(), reduced.group());
    }
}

#[test]
fn non_essential_example_and_witness() {
    let p0 = enumerate_pj(2, LevelSet::single(0), cap()).unwrap();
    let check = is_essential(&p0).unwrap();
    assert!(!check.essential);
    let (g, _) = check.witness.unwrap();
    assert_eq!(g.support().collect::<Vec<_>>(), vec![1]);
    assert_eq!(essential_reduction(&p0).unwrap().group().order(), 1);
}

#[test]
fn truncation_groups_match_brute_force() {
    let mut cases: Vec<EnumeratedSubgroup> = Vec::new();
    cases.extend(all_subgroups(2).unwrap());
    cases.extend(LevelSet::all_nonempty(3).map(|j| enumerate_pj(3, j, cap()).unwrap()));
    for s in cases {
        let p = essential_reduction(&s).unwrap();
        if p.group().order() == 1 {
            continue;
        }
        let d = p.depth();
        let set = as_set(p.group());
        for n in d..=4 {
            let h = truncation_group(&p, n, cap()).unwrap();
            let oracle = brute_truncation(&set, d, n);
            assert_eq!(as_set(&h.group), oracle, "{s:?} n={n}");
            assert_eq!(close(n, h.group.generators(), cap()).unwrap(), h.group);
        }
    }
}

#[test]
fn linear_route_matches_enumeration() {
    for d in 2..=4 {
        for j in LevelSet::all_nonempty(d) {
            let e = enumerate_pj(d, j, cap()).unwrap();
            let lin = LinearPatternGroup::from_enumerated(&e).unwrap();
            assert_eq!(lin.order_log2() as u32, e.order_log2().unwrap());
            let reduced = essential_reduction(&e).unwrap();
            let lin_reduced = lin.essential_reduction();
            assert_eq!(lin_reduced.order_log2() as u32, reduced.group().order_log2().unwrap());
            assert_eq!(lin.is_essential(), is_essential(&e).unwrap().essential);
        }
    }
}

#[test]
fn certificate_is_sound() {
    let mut rng = rng(31);
    for d in 2..=4 {
        for j in LevelSet::all_nonempty(d).filter(|j| j.contains(d - 1)) {
            let ctx = JContext::for_theorem(d, j).unwrap();
            let pj = enumerate_pj(d, j, cap()).unwrap();
            let derived = pj.derived_subgroup(cap()).unwrap();
            let samples: Vec<FiniteAutomorphism> = if d <= 3 {
                pj.iter().collect()
            } else {
                (0..2000).map(|_| treegrp::parity::random_member(&ctx, &mut rng).unwrap()).collect()
            };
            for x in samples {
                if derived_membership_certificate(&ctx, &x).unwrap().excludes() {
                    assert!(!derived.contains(&x), "d={d} J={j} x={x:?}");
                }
            }
            // the certificate applies to every derived element
            for x in derived.iter().take(500) {
                assert!(!derived_membership_certificate(&ctx, &x).unwrap().excludes());
            }
        }
    }
}

#[test]
fn closed_set_constructor_rejects_non_subgroups() {
    let e = FiniteAutomorphism::identity(2).unwrap();
    let a0 = FiniteAutomorphism::generator(2, 0).unwrap();
    let a1 = FiniteAutomorphism::generator(2, 1).unwrap();
    assert!(EnumeratedSubgroup::from_closed_set(2, vec![e.clone(), a0.clone(), a1], cap()).is_err());
    let ok = EnumeratedSubgroup::from_closed_set(2, vec![e, a0], cap()).unwrap();
    assert!(PatternGroup::checked(ok).is_ok());
}
