//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

mod common;

use std::time::{Duration, Instant};

use common::{all_pairs_derived, all_elements, Set};
use treegrp::harness::{
    classify_maximal, equivalence_case, ni_level_sets, theorem_level_sets, verify_auxiliary,
    verify_new_relation, verify_no_adad, Method,
};
use treegrp::parity::{verify_ni_identities, verify_ni_identities_exhaustive, JContext};
use treegrp::portrait::{FiniteAutomorphism, LevelSet};
use treegrp::subgroup::{
    all_subgroups, close, enumerate_pj, full_group, in_derived_of_gd, EnumerationCap,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn cap() -> EnumerationCap {
    EnumerationCap::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, what: &str, f: impl FnOnce() -> Result<(), String>) -> Result<Duration, String> {
    let t = Instant::now();
    f()?;
    let took = t.elapsed();
    ensure(took < limit, || format!("{what} took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn classification() -> Outcome {
    let mut notes = Vec::new();
    for (d, secs) in [(2, 5), (3, 10), (4, 120)] {
        let took = within(Duration::from_secs(secs), &format!("classify d={d}"), || {
            let r = classify_maximal(d, Method::Enumeration, cap()).map_err(e)?;
            ensure(r.passed(), || format!("d={d}: {:?}", r.violations))?;
            let max: Vec<_> = r.rows.iter().filter(|x| x.is_max_dimension).collect();
            let den = 1u64 << (d - 1);
            ensure(max.len() as u64 == den, || format!("d={d}: {} maximal rows", max.len()))?;
            for row in max {
                ensure(
                    row.dimension.num == den - 1 && row.dimension.den == den,
                    || format!("d={d} J={}: dimension {}/{}", row.j, row.dimension.num, row.dimension.den),
                )?;
                ensure(!row.contains_a_dminus1 && row.contains_derived_of_gd && row.essential, || {
                    format!("d={d} J={}: wrong containment", row.j)
                })?;
            }
            Ok(())
        })?;
        notes.push(format!("d={d} {took:.2?}"));
    }
    Ok(notes.join(", "))
}

fn no_adad() -> Outcome {
    let t = Instant::now();
    let mut both = 0;
    for d in 2..=4 {
        let r = verify_no_adad(d, cap()).map_err(e)?;
        ensure(r.cases.len() == 1 << (d - 1), || format!("d={d}: {} cases", r.cases.len()))?;
        for c in &r.cases {
            ensure(c.brute_force_excluded == Some(true), || format!("d={d} J={}: in [P,P]", c.j))?;
            ensure(c.in_last_level_stabilizer, || format!("d={d} J={}: not in P_{{d-1}}", c.j))?;
            ensure(c.certificate.excludes() && c.agree, || format!("d={d} J={}: arms disagree", c.j))?;
            both += 1;
        }
    }
    ensure(both == 14, || format!("{both} enumerated cases"))?;
    let mut certificate_only = 0;
    for d in 5..=8 {
        let r = verify_no_adad(d, cap()).map_err(e)?;
        ensure(r.passed() && r.cases.len() == 1 << (d - 1), || format!("d={d} failed"))?;
        certificate_only += r.cases.len();
    }
    let took = t.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:.2?}"))?;
    Ok(format!("{both} cases with both arms, {certificate_only} certificate-only, {took:.2?}"))
}

fn stabilizer_orders() -> Outcome {
    let mut n = 0;
    for d in 2..=4 {
        for j in theorem_level_sets(d) {
            let log2 = enumerate_pj(d, j, cap())
                .and_then(|p| p.level_stabilizer(d - 1))
                .and_then(|s| s.order_log2())
                .map_err(e)?;
            ensure(log2 as usize == (1 << (d - 1)) - 1, || format!("d={d} J={j}: 2^{log2}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} cases"))
}

fn ni_identities() -> Outcome {
    let mut pairs = 0;
    for js in [vec![1, 2], vec![2]] {
        let ctx = JContext::for_theorem(3, js.iter().copied().collect()).map_err(e)?;
        let r = verify_ni_identities_exhaustive(&ctx).map_err(e)?;
        ensure(r.pairs_checked == 16384, || format!("J={js:?}: {} pairs", r.pairs_checked))?;
        ensure(r.passed(), || format!("J={js:?}: {:?}", r.first_counterexample))?;
        pairs += r.pairs_checked;
    }
    for d in 2..=8 {
        for j in ni_level_sets(d) {
            let ctx = JContext::for_theorem(d, j).map_err(e)?;
            let r = verify_ni_identities(&ctx, 10_000, 0x5eed ^ d as u64).map_err(e)?;
            ensure(r.pairs_checked == 10_000 && r.passed(), || {
                format!("d={d} J={j}: {:?}", r.first_counterexample)
            })?;
            pairs += r.pairs_checked;
        }
    }
    Ok(format!("{pairs} pairs, no failures"))
}

fn index_relation() -> Outcome {
    let mut n = 0;
    for d in 2..=3 {
        let r = verify_new_relation(d, cap()).map_err(e)?;
        ensure(r.passed() && r.complete(), || format!("d={d}: {:?}", r.cases))?;
        ensure(r.cases.iter().filter(|c| c.j.is_some()).count() == 1 << (d - 1), || {
            format!("d={d}: missing cases")
        })?;
        for c in &r.cases {
            let tag = format!("d={d} J={:?}", c.j);
            ensure(c.depths_checked.len() >= 2, || format!("{tag}: no stabilization"))?;
            ensure(c.linear_index_log2.map(|k| 1u64 << k) == c.psi_index, || format!("{tag}: routes disagree"))?;
            if c.j.is_some() {
                ensure(c.psi_index == Some(2) && c.index_is_two == Some(true), || format!("{tag}: index"))?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} cases"))
}

fn oracle_equivalences() -> Outcome {
    let subs = all_subgroups(2).map_err(e)?;
    ensure(subs.len() == 10, || format!("{} subgroups of G(2)", subs.len()))?;
    let mut rng = common::rng(6);
    let mut groups = subs;
    for _ in 0..50 {
        let k = rand::Rng::gen_range(&mut rng, 1..=3);
        let gens: Vec<_> = (0..k).map(|_| FiniteAutomorphism::random(3, &mut rng).unwrap()).collect();
        groups.push(close(3, &gens, cap()).map_err(e)?);
    }
    for s in &groups {
        let fast: Set = s.derived_subgroup(cap()).map_err(e)?.iter().collect();
        let slow = all_pairs_derived(s.depth(), &s.iter().collect());
        ensure(fast == slow, || format!("derived subgroup mismatch on {s:?}"))?;
    }
    for d in 2..=3 {
        let all: Set = all_elements(d).into_iter().collect();
        let derived = all_pairs_derived(d, &all);
        ensure(all.iter().all(|g| in_derived_of_gd(g) == derived.contains(g)), || format!("d={d}"))?;
    }
    let derived = full_group(4, cap()).and_then(|g| g.derived_subgroup(cap())).map_err(e)?;
    for _ in 0..10_000 {
        let g = FiniteAutomorphism::random(4, &mut rng).unwrap();
        ensure(in_derived_of_gd(&g) == derived.contains(&g), || format!("d=4 {g:?}"))?;
    }
    Ok(format!("{} derived subgroups, parity kernel at d=2,3,4", groups.len()))
}

fn possible_values() -> Outcome {
    let g2 = full_group(2, cap()).map_err(e)?;
    for (k, s) in all_subgroups(2).map_err(e)?.iter().enumerate() {
        let c = equivalence_case(format!("#{k}"), s, Some(4), cap()).map_err(e)?;
        let dim = (c.dimension.num, c.dimension.den);
        ensure([(0, 1), (1, 2), (1, 1)].contains(&dim), || format!("#{k}: {dim:?}"))?;
        ensure((dim.0 == 0) == !c.infinite, || format!("#{k}: dimension 0 vs finiteness"))?;
        ensure(dim != (1, 1) || *s == g2, || format!("#{k}: dimension 1 for a proper subgroup"))?;
        ensure(c.holds(), || format!("#{k}: {c:?}"))?;
    }
    let mut n = 0;
    for d in 3..=4 {
        let r = verify_auxiliary(d, 1000, 11, cap()).map_err(e)?;
        ensure(r.passed(), || format!("d={d}: {r:?}"))?;
        for j in theorem_level_sets(d) {
            let c = r.cases.iter().find(|c| c.label == format!("P_{j}")).ok_or("missing case")?;
            ensure(c.infinite && c.level_transitive && c.positive_dimension, || format!("d={d} J={j}"))?;
            n += 1;
        }
    }
    Ok(format!("10 subgroups of G(2), {n} maximal-dimension P_J"))
}

fn performance() -> Outcome {
    let mut order = 0;
    let closure = within(Duration::from_secs(1), "closure of G(4)", || {
        order = full_group(4, cap()).map_err(e)?.order();
        ensure(order == 32768, || format!("order {order}"))
    })?;
    let mut derived_order = 0;
    let derived = within(Duration::from_secs(30), "derived subgroup", || {
        let p = enumerate_pj(4, LevelSet::single(3), cap()).map_err(e)?;
        ensure(p.order() == 16384, || format!("order {}", p.order()))?;
        derived_order = p.derived_subgroup(cap()).map_err(e)?.order();
        Ok(())
    })?;
    Ok(format!("G(4) closure {closure:.2?}, [P,P] of order {derived_order} in {derived:.2?}"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("classification of maximal-dimension pattern groups, d=2..4", classification),
        ("[a_0,a_{d-1}] outside [P_J,P_J], d=2..8", no_adad),
        ("last-level stabilizer orders, d=2..4", stabilizer_orders),
        ("N_i product/inverse/commutator identities", ni_identities),
        ("index relation with stabilized psi index, d=2,3", index_relation),
        ("oracle equivalences for derived subgroups", oracle_equivalences),
        ("possible dimensions and finite/transitive/dimension equivalence", possible_values),
        ("performance of closure and derived subgroup", performance),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
