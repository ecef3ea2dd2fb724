//! Independent brute-force oracles. None of these use the library's
//! closure, derived-subgroup, section or reduction code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treegrp::portrait::{portrait_len, FiniteAutomorphism, Vertex};

pub type Set = BTreeSet<FiniteAutomorphism>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn elem(d: usize, bits: u64) -> FiniteAutomorphism {
    FiniteAutomorphism::from_words(d, &[bits]).unwrap()
}

/// All `2^(2^d - 1)` elements of `G(d)`, `d <= 4`.
pub fn all_elements(d: usize) -> Vec<FiniteAutomorphism> {
    (0..1u64 << portrait_len(d)).map(|w| elem(d, w)).collect()
}

pub fn mul(a: &FiniteAutomorphism, b: &FiniteAutomorphism) -> FiniteAutomorphism {
    a.compose(b).unwrap()
}

/// Subgroup generated by `gens`: saturate under products until stable.
pub fn naive_closure(d: usize, gens: &[FiniteAutomorphism]) -> Set {
    let mut set: Set = BTreeSet::from([FiniteAutomorphism::identity(d).unwrap()]);
    set.extend(gens.iter().cloned());
    loop {
        let cur: Vec<_> = set.iter().cloned().collect();
        let before = set.len();
        for a in &cur {
            for b in &cur {
                set.insert(mul(a, b));
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// `[S, S]`: closure of all commutators of all pairs of elements.
pub fn all_pairs_derived(d: usize, s: &Set) -> Set {
    let comms: Vec<_> = s
        .iter()
        .flat_map(|x| s.iter().map(move |y| x.commutator(y).unwrap()))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    naive_closure(d, &comms)
}

/// Label at `u` recovered from the action: last symbol of `g(u0)`.
pub fn label_from_action(g: &FiniteAutomorphism, u: &Vertex) -> bool {
    let img = g.apply(&u.child(0)).unwrap();
    img.symbol(img.len() - 1) == 1
}

/// `g_w` rebuilt from the action of `g` below `w`.
pub fn section_from_action(g: &FiniteAutomorphism, w: &Vertex) -> FiniteAutomorphism {
    let k = g.depth() - w.len();
    let labels = (0..portrait_len(k)).filter(|&i| {
        let u = Vertex::from_heap_index(i);
        let img = g.apply(&w.concat(&u).child(0)).unwrap();
        img.symbol(img.len() - 1) == 1
    });
    FiniteAutomorphism::from_labels(k, labels).unwrap()
}

/// Essentiality straight from the definition.
pub fn brute_is_essential(p: &Set) -> bool {
    let d = p.iter().next().unwrap().depth();
    let tops: HashSet<_> = p.iter().map(|h| h.truncate(d - 1).unwrap()).collect();
    p.iter().all(|g| {
        (0..2u8).all(|i| {
            let sub = section_from_action(g, &Vertex::root().child(i)).truncate(d - 1).unwrap();
            tops.contains(&sub)
        })
    })
}

/// Greatest fixpoint of the essentiality filter, on plain sets.
pub fn brute_reduction(p: &Set) -> Set {
    let mut cur = p.clone();
    let d = p.iter().next().unwrap().depth();
    loop {
        let tops: HashSet<_> = cur.iter().map(|h| h.truncate(d - 1).unwrap()).collect();
        let next: Set = cur
            .iter()
            .filter(|g| {
                (0..2u8).all(|i| {
                    let s = section_from_action(g, &Vertex::root().child(i));
                    tops.contains(&s.truncate(d - 1).unwrap())
                })
            })
            .cloned()
            .collect();
        if next.len() == cur.len() {
            return cur;
        }
        cur = next;
    }
}

/// Elements of `G(n)` whose every size-`d` subpattern lies in `p`.
pub fn brute_truncation(p: &Set, d: usize, n: usize) -> Set {
    all_elements(n)
        .into_iter()
        .filter(|g| {
            (0..=n - d).all(|l| Vertex::level(l).all(|v| p.contains(&g.subpattern(&v, d).unwrap())))
        })
        .collect()
}

/// `log2` of an order that must be a power of two.
pub fn log2_exact(n: usize) -> u32 {
    assert!(n.is_power_of_two(), "{n} is not a power of two");
    n.trailing_zeros()
}
