//! End-to-end checks of the classification of maximal-dimension pattern
//! groups, the commutator obstruction, the index relation and the
//! auxiliary equivalences, each producing a serializable report.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parity::{
    commutator_parity, derived_membership_certificate, random_member, verify_ni_identities,
    verify_ni_identities_exhaustive, JContext, NiReport, Verdict, VerdictKind,
};
use crate::pattern::{
    derived_of_gd_space, dimension_in_allowed_set, essential_reduction, hausdorff_dimension,
    is_essential, is_finite, is_level_transitive, max_proper_dimension, psi_image_index,
    truncation_is_transitive, DimensionJson, LinearPatternGroup, PatternGroup,
};
use crate::portrait::{portrait_len, FiniteAutomorphism, LevelSet, Parity, Vertex};
use crate::subgroup::{
    all_subgroups, conjugate_label_check, enumerate_pj, full_group, maximal_subgroup,
    EnumeratedSubgroup, EnumerationCap, PredicateSubgroup, SubgroupKind,
};

/// Largest depth handled by enumeration.
pub const MAX_ENUMERATION_DEPTH: usize = 4;
/// Largest depth handled by the linear fast path in classification.
pub const MAX_GF2_CLASSIFY_DEPTH: usize = 5;
/// Largest depth for the certificate-only commutator check.
pub const MAX_CERTIFICATE_DEPTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Enumeration,
    Gf2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TopFgVerdict {
    NotTopologicallyFinitelyGenerated,
    Unknown,
}

/// `a_{d-1}` and `[a_0, a_{d-1}]`.
fn last_generator(d: usize) -> Result<FiniteAutomorphism> {
    FiniteAutomorphism::generator(d, d - 1)
}

fn key_commutator(d: usize) -> Result<FiniteAutomorphism> {
    FiniteAutomorphism::generator(d, 0)?.commutator(&last_generator(d)?)
}

fn require_depth(d: usize, lo: usize, hi: usize, what: &str) -> Result<()> {
    if d < lo || d > hi {
        return Err(Error::Precondition(format!("{what} needs {lo} <= d <= {hi} (got {d})")));
    }
    Ok(())
}

/// Sets `J` containing `d - 1`.
pub fn theorem_level_sets(d: usize) -> impl Iterator<Item = LevelSet> {
    LevelSet::all_nonempty(d).filter(move |j| j.contains(d - 1))
}

// ---------------------------------------------------------------------------
// Classification

/// One maximal subgroup `P_J` and what its essential reduction `R` looks like.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    pub d: usize,
    #[serde(rename = "J")]
    pub j: LevelSet,
    /// Whether `P_J` itself is essential.
    pub essential: bool,
    pub reduced_order_log2: u32,
    pub contains_a_dminus1: bool,
    pub contains_derived_of_gd: bool,
    pub is_maximal: bool,
    pub dimension: DimensionJson,
    pub is_max_dimension: bool,
    /// `R_{d-1}` not inside `[R, R]`; `None` where not decided.
    pub bs_premise_fails: Option<bool>,
    pub top_fg_verdict: TopFgVerdict,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub d: usize,
    pub method: Method,
    pub rows: Vec<ClassificationRow>,
    pub max_dimension_count: usize,
    pub expected_max_dimension_count: usize,
    pub violations: Vec<String>,
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn row_violations(row: &ClassificationRow, out: &mut Vec<String>) {
    let d = row.d;
    let proper = row.reduced_order_log2 as usize != portrait_len(d);
    let i = row.is_max_dimension;
    let ii = proper && row.contains_derived_of_gd;
    let iii = row.is_maximal && !row.contains_a_dminus1;
    let last = row.j.contains(d - 1);
    let mut fail = |what: &str| out.push(format!("d={d} J={}: {what}", row.j));
    if i != ii {
        fail("maximal dimension disagrees with (proper and above the commutator subgroup)");
    }
    if i != iii {
        fail("maximal dimension disagrees with (maximal and omitting a_{d-1})");
    }
    if row.essential != last {
        fail("essentiality of P_J disagrees with d-1 in J");
    }
    if i != last {
        fail("maximal dimension disagrees with d-1 in J");
    }
    if !i {
        let scale = 1u128 << (d - 1);
        let below = row.dimension.num as u128 * scale < (scale - 1) * row.dimension.den as u128;
        if !below {
            fail("non-maximal row does not have strictly smaller dimension");
        }
    }
    if i && row.bs_premise_fails == Some(false) {
        fail("maximal-dimension row with P_{d-1} inside [P,P]");
    }
}

/// Classifies every `P_J`, `J ⊆ {0..d-1}` nonempty, by its essential
/// reduction. `d <= 4` by enumeration, `d <= 5` with the linear route.
pub fn classify_maximal(d: usize, method: Method, cap: EnumerationCap) -> Result<ClassificationReport> {
    let rows = match method {
        Method::Enumeration => {
            if d < 2 {
                return Err(Error::Precondition(format!("classification needs d >= 2 (got {d})")));
            }
            cap.check_full_group(d)?;
            classify_enumerated(d, cap)?
        }
        Method::Gf2 => {
            require_depth(d, 2, MAX_GF2_CLASSIFY_DEPTH, "linear classification")?;
            classify_linear(d)?
        }
    };
    let max_dimension_count = rows.iter().filter(|r| r.is_max_dimension).count();
    let expected = 1usize << (d - 1);
    let mut violations = Vec::new();
    for r in &rows {
        row_violations(r, &mut violations);
    }
    if max_dimension_count != expected {
        violations.push(format!(
            "d={d}: {max_dimension_count} maximal-dimension pattern groups, expected {expected}"
        ));
    }
    Ok(ClassificationReport {
        d,
        method,
        rows,
        max_dimension_count,
        expected_max_dimension_count: expected,
        violations,
    })
}

fn classify_enumerated(d: usize, cap: EnumerationCap) -> Result<Vec<ClassificationRow>> {
    let derived = PredicateSubgroup::new(d, SubgroupKind::DerivedOfGd)?.enumerate(cap)?;
    let a_last = last_generator(d)?;
    let full_log2 = portrait_len(d) as u32;
    let max_dim = max_proper_dimension(d);
    LevelSet::all_nonempty(d)
        .map(|j| {
            let p = enumerate_pj(d, j, cap)?;
            let essential = is_essential(&p)?.essential;
            let r = essential_reduction(&p)?;
            let dim = hausdorff_dimension(&r)?;
            let rg = r.group();
            let order_log2 = rg.order_log2()?;
            let stab = rg.level_stabilizer(d - 1)?;
            let comm = rg.derived_subgroup(cap)?;
            let bs_fails = !stab.is_subgroup_of(&comm);
            Ok(ClassificationRow {
                d,
                j,
                essential,
                reduced_order_log2: order_log2,
                contains_a_dminus1: rg.contains(&a_last),
                contains_derived_of_gd: derived.is_subgroup_of(rg),
                is_maximal: order_log2 + 1 == full_log2,
                dimension: dim.into(),
                is_max_dimension: dim == max_dim,
                bs_premise_fails: Some(bs_fails),
                top_fg_verdict: if bs_fails {
                    TopFgVerdict::NotTopologicallyFinitelyGenerated
                } else {
                    TopFgVerdict::Unknown
                },
                method: Method::Enumeration,
            })
        })
        .collect()
}

fn classify_linear(d: usize) -> Result<Vec<ClassificationRow>> {
    let derived = derived_of_gd_space(d)?;
    let a_last = last_generator(d)?;
    let x = key_commutator(d)?;
    let max_dim = max_proper_dimension(d);
    LevelSet::all_nonempty(d)
        .map(|j| {
            let p = LinearPatternGroup::from_predicate(&maximal_subgroup(d, j)?)?;
            let essential = p.is_essential();
            let r = p.essential_reduction();
            let dim = r.dimension()?;
            let is_max_dimension = dim == max_dim;
            // Only the maximal-dimension rows are decided, via the parity
            // certificate on [a_0, a_{d-1}] in R_{d-1}.
            let bs = if is_max_dimension && r.contains(&x) && x.stabilizes_level(d - 1) {
                match JContext::for_theorem(d, j) {
                    Ok(ctx) => Some(derived_membership_certificate(&ctx, &x)?.excludes()),
                    Err(_) => None,
                }
            } else {
                None
            };
            let bs = bs.filter(|&b| b);
            Ok(ClassificationRow {
                d,
                j,
                essential,
                reduced_order_log2: r.order_log2() as u32,
                contains_a_dminus1: r.contains(&a_last),
                contains_derived_of_gd: r.contains_subspace(&derived),
                is_maximal: r.order_log2() + 1 == portrait_len(d),
                dimension: dim.into(),
                is_max_dimension,
                bs_premise_fails: bs,
                top_fg_verdict: if bs == Some(true) {
                    TopFgVerdict::NotTopologicallyFinitelyGenerated
                } else {
                    TopFgVerdict::Unknown
                },
                method: Method::Gf2,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// [a_0, a_{d-1}] and the commutator subgroup

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoAdadCase {
    #[serde(rename = "J")]
    pub j: LevelSet,
    pub in_last_level_stabilizer: bool,
    pub certificate: Verdict,
    /// Membership in the enumerated `[P_J, P_J]`, where enumerated.
    pub brute_force_excluded: Option<bool>,
    pub derived_order: Option<u64>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoAdadReport {
    pub d: usize,
    pub commutator: String,
    pub cases: Vec<NoAdadCase>,
}

impl NoAdadReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.agree && c.in_last_level_stabilizer && c.certificate.excludes())
    }
}

/// Certificate arm for `d <= 8`, plus the enumerated derived subgroup for
/// `d <= 4`. Disagreement between the arms is an error.
pub fn verify_no_adad(d: usize, cap: EnumerationCap) -> Result<NoAdadReport> {
    require_depth(d, 2, MAX_CERTIFICATE_DEPTH, "the commutator check")?;
    let x = key_commutator(d)?;
    let cases = theorem_level_sets(d)
        .map(|j| {
            let ctx = JContext::for_theorem(d, j)?;
            let certificate = derived_membership_certificate(&ctx, &x)?;
            let in_stab = x.stabilizes_level(d - 1) && ctx.contains(&x);
            let (excluded, order) = if d <= MAX_ENUMERATION_DEPTH {
                let derived = enumerate_pj(d, j, cap)?.derived_subgroup(cap)?;
                (Some(!derived.contains(&x)), Some(derived.order()))
            } else {
                (None, None)
            };
            // The certificate is sound but not complete: only a positive
            // verdict contradicted by enumeration is an error.
            if excluded == Some(false) && certificate.excludes() {
                return Err(Error::Inconsistent(format!(
                    "J={j}: certificate excludes the commutator but enumeration contains it"
                )));
            }
            Ok(NoAdadCase {
                j,
                in_last_level_stabilizer: in_stab,
                certificate,
                brute_force_excluded: excluded,
                derived_order: order,
                agree: excluded.is_none_or(|e| e == certificate.excludes()),
            })
        })
        .collect::<Result<_>>()?;
    Ok(NoAdadReport {
        d,
        commutator: x.to_hex(),
        cases,
    })
}

// ---------------------------------------------------------------------------
// Not topologically finitely generated

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopFgCase {
    #[serde(rename = "J")]
    pub j: LevelSet,
    pub commutator_in_stabilizer: bool,
    pub stabilizer_order_log2: u32,
    pub expected_stabilizer_order_log2: u32,
    pub certificate: Verdict,
    pub verdict: TopFgVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopFgReport {
    pub d: usize,
    pub imported_theorem: &'static str,
    pub cases: Vec<TopFgCase>,
}

impl TopFgReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| {
            c.commutator_in_stabilizer
                && c.stabilizer_order_log2 == c.expected_stabilizer_order_log2
                && c.verdict == TopFgVerdict::NotTopologicallyFinitelyGenerated
        })
    }
}

/// For every maximal-dimension `P_J`: `[a_0, a_{d-1}] ∈ P_{d-1}` while the
/// certificate excludes it from `[P, P]`, so `P_{d-1} ⊄ [P, P]`, which
/// (by an imported criterion, not re-proved here) rules out topological
/// finite generation.
pub fn verify_not_top_fg(d: usize, cap: EnumerationCap) -> Result<TopFgReport> {
    require_depth(d, 2, MAX_CERTIFICATE_DEPTH, "the finite-generation check")?;
    let x = key_commutator(d)?;
    let expected = (1u32 << (d - 1)) - 1;
    let cases = theorem_level_sets(d)
        .map(|j| {
            let ctx = JContext::for_theorem(d, j)?;
            let (in_stab, stab_log2) = if d <= MAX_ENUMERATION_DEPTH {
                let stab = enumerate_pj(d, j, cap)?.level_stabilizer(d - 1)?;
                (stab.contains(&x), stab.order_log2()?)
            } else {
                let kind = SubgroupKind::Intersection(vec![
                    SubgroupKind::PJ(j),
                    SubgroupKind::LevelStabilizer(d - 1),
                ]);
                let stab = PredicateSubgroup::new(d, kind)?;
                (stab.contains(&x), stab.order_log2() as u32)
            };
            let certificate = derived_membership_certificate(&ctx, &x)?;
            let verdict = if in_stab && certificate.excludes() {
                TopFgVerdict::NotTopologicallyFinitelyGenerated
            } else {
                TopFgVerdict::Unknown
            };
            Ok(TopFgCase {
                j,
                commutator_in_stabilizer: in_stab,
                stabilizer_order_log2: stab_log2,
                expected_stabilizer_order_log2: expected,
                certificate,
                verdict,
            })
        })
        .collect::<Result<_>>()?;
    Ok(TopFgReport {
        d,
        imported_theorem: "if [P,P] does not contain P_{d-1}, then G_P is not topologically finitely generated",
        cases,
    })
}

// ---------------------------------------------------------------------------
// Index relation

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCase {
    /// `None` for the full group `G(d)`.
    #[serde(rename = "J")]
    pub j: Option<LevelSet>,
    pub p_order_log2: u32,
    pub stabilizer_order_log2: u32,
    pub psi_index: Option<u64>,
    pub depths_checked: Vec<usize>,
    pub linear_index_log2: Option<usize>,
    pub holds: bool,
    pub index_is_two: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub d: usize,
    pub method: Method,
    pub cases: Vec<RelationCase>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.holds && c.index_is_two != Some(false))
    }

    /// Whether every index stabilized.
    pub fn complete(&self) -> bool {
        self.cases.iter().all(|c| c.psi_index.is_some())
    }
}

fn relation_holds(p_log2: u32, stab_log2: u32, index: u64) -> bool {
    // 2|P| = |P_{d-1}|^2 [H x H : H_1], compared exactly as integers.
    let lhs = 2u128 << p_log2;
    let rhs = (1u128 << (2 * stab_log2)).checked_mul(index as u128);
    rhs == Some(lhs)
}

/// Checks `2|P| = |P_{d-1}|^2 [H x H : H_1]` for every `P_J` with
/// `d - 1 ∈ J` and for `G(d)`. Enumeration for `d <= 3`, linear for `d = 4`.
pub fn verify_new_relation(d: usize, cap: EnumerationCap) -> Result<RelationReport> {
    require_depth(d, 2, 4, "the index relation")?;
    let method = if d <= 3 { Method::Enumeration } else { Method::Gf2 };
    let mut sets: Vec<Option<LevelSet>> = theorem_level_sets(d).map(Some).collect();
    sets.push(None);
    let cases = sets
        .into_iter()
        .map(|j| {
            let pred = match j {
                Some(j) => maximal_subgroup(d, j)?,
                None => PredicateSubgroup::full(d)?,
            };
            let lin = LinearPatternGroup::from_predicate(&pred)?;
            let (lin_steps, lin_index) = lin.psi_image_index_log2(d + 1)?;
            let (p_log2, stab_log2, psi, depths) = match method {
                Method::Enumeration => {
                    let p = PatternGroup::checked(pred.enumerate(cap)?)?;
                    let psi = psi_image_index(&p, d + 1, cap)?;
                    (
                        p.group().order_log2()?,
                        p.last_level_stabilizer_log2()?,
                        psi.stabilized,
                        psi.depths_checked(),
                    )
                }
                Method::Gf2 => (
                    lin.order_log2() as u32,
                    lin.stabilizer_log2() as u32,
                    lin_index.map(|k| 1u64 << k),
                    lin_steps.iter().map(|s| s.0).collect(),
                ),
            };
            if let (Some(a), Some(b)) = (psi, lin_index) {
                if a != 1u64 << b {
                    return Err(Error::Inconsistent(format!(
                        "index {a} by enumeration vs 2^{b} by linear algebra"
                    )));
                }
            }
            Ok(RelationCase {
                j,
                p_order_log2: p_log2,
                stabilizer_order_log2: stab_log2,
                psi_index: psi,
                depths_checked: depths,
                linear_index_log2: lin_index,
                holds: psi.is_some_and(|i| relation_holds(p_log2, stab_log2, i)),
                index_is_two: j.map(|_| psi == Some(2)),
            })
        })
        .collect::<Result<_>>()?;
    Ok(RelationReport { d, method, cases })
}

// ---------------------------------------------------------------------------
// Auxiliary checks

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceCase {
    pub label: String,
    pub order: u64,
    pub reduced_order: u64,
    pub dimension: DimensionJson,
    pub infinite: bool,
    pub level_transitive: bool,
    pub positive_dimension: bool,
    pub truncation_orbits_agree: Option<bool>,
    pub dimension_allowed: bool,
}

impl EquivalenceCase {
    pub fn holds(&self) -> bool {
        self.infinite == self.level_transitive
            && self.infinite == self.positive_dimension
            && self.truncation_orbits_agree != Some(false)
            && self.dimension_allowed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxReport {
    pub d: usize,
    pub conjugate_pairs_checked: u64,
    pub conjugate_failures: u64,
    pub cases: Vec<EquivalenceCase>,
}

impl AuxReport {
    pub fn passed(&self) -> bool {
        self.conjugate_failures == 0 && self.cases.iter().all(EquivalenceCase::holds)
    }
}

/// Runs the three-way equivalence and the allowed-dimension check on the
/// essential reduction of `p`. With `orbit_depth`, level transitivity is
/// also recomputed from enumerated truncation groups up to that depth.
pub fn equivalence_case(
    label: String,
    p: &EnumeratedSubgroup,
    orbit_depth: Option<usize>,
    cap: EnumerationCap,
) -> Result<EquivalenceCase> {
    let r = essential_reduction(p)?;
    let dim = hausdorff_dimension(&r)?;
    let infinite = !is_finite(&r)?;
    let transitive = is_level_transitive(&r)?;
    let orbits = orbit_depth
        .map(|top| -> Result<bool> {
            let mut all = true;
            for n in 1..=top {
                all &= truncation_is_transitive(&r, n, cap)?;
            }
            Ok(all == transitive)
        })
        .transpose()?;
    Ok(EquivalenceCase {
        label,
        order: p.order(),
        reduced_order: r.group().order(),
        dimension: dim.into(),
        infinite,
        level_transitive: transitive,
        positive_dimension: *dim.numer() > 0,
        truncation_orbits_agree: orbits,
        dimension_allowed: dimension_in_allowed_set(&r)?,
    })
}

/// Conjugation label checks, and the finite / transitive / positive
/// dimension equivalence on the subgroups of `G(2)` and on every `P_J`.
pub fn verify_auxiliary(d: usize, samples: u64, seed: u64, cap: EnumerationCap) -> Result<AuxReport> {
    require_depth(d, 2, MAX_ENUMERATION_DEPTH, "the auxiliary checks")?;
    let mut checked = 0u64;
    let mut failures = 0u64;
    let stab = PredicateSubgroup::new(d, SubgroupKind::LevelStabilizer(d - 1))?;
    let mut check = |h: &FiniteAutomorphism, g: &FiniteAutomorphism| -> Result<()> {
        checked += 1;
        if !conjugate_label_check(h, g)? {
            failures += 1;
        }
        Ok(())
    };
    if d <= 3 {
        let g_all = full_group(d, cap)?;
        let h_all = stab.enumerate(cap)?;
        for h in h_all.iter() {
            for g in g_all.iter() {
                check(&h, &g)?;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let last = Vertex::level(d - 1).map(|v| v.heap_index()).collect::<Vec<_>>();
        for _ in 0..samples {
            let g = FiniteAutomorphism::random(d, &mut rng)?;
            let noise = FiniteAutomorphism::random(d, &mut rng)?;
            let h = FiniteAutomorphism::from_labels(d, last.iter().copied().filter(|&i| noise.bit(i)))?;
            check(&h, &g)?;
        }
    }

    let mut cases = Vec::new();
    for (k, s) in all_subgroups(2)?.iter().enumerate() {
        cases.push(equivalence_case(format!("G(2) subgroup #{k}"), s, Some(4), cap)?);
    }
    for j in LevelSet::all_nonempty(d) {
        let p = enumerate_pj(d, j, cap)?;
        let orbit_depth = (d <= 3).then_some(d + 2);
        cases.push(equivalence_case(format!("P_{j}"), &p, orbit_depth, cap)?);
    }
    Ok(AuxReport {
        d,
        conjugate_pairs_checked: checked,
        conjugate_failures: failures,
        cases,
    })
}

// ---------------------------------------------------------------------------
// Parity identities

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiSuiteReport {
    pub d: usize,
    pub samples: u64,
    pub seed: u64,
    pub random: Vec<NiReport>,
    pub exhaustive: Vec<NiReport>,
    pub commutator_samples: u64,
    pub commutator_failures: u64,
    pub inconclusive_on_commutators: bool,
}

impl NiSuiteReport {
    pub fn passed(&self) -> bool {
        self.random.iter().chain(&self.exhaustive).all(NiReport::passed)
            && self.commutator_failures == 0
            && self.inconclusive_on_commutators
    }
}

/// The level sets exercised by the parity suite at depth `d`.
pub fn ni_level_sets(d: usize) -> Vec<LevelSet> {
    if d <= MAX_ENUMERATION_DEPTH {
        theorem_level_sets(d).collect()
    } else {
        let all = LevelSet::from_mask((1u32 << d) - 1);
        vec![LevelSet::single(d - 1), [0, d - 1].into_iter().collect(), all]
    }
}

/// Product, inverse and commutator identities on `samples` seeded random
/// pairs per level set (exhaustively for `d <= 3`), and vanishing parities
/// on commutators of `P_J` members.
pub fn verify_ni_suite(d: usize, samples: u64, seed: u64) -> Result<NiSuiteReport> {
    require_depth(d, 2, crate::portrait::MAX_DEPTH, "the parity identities")?;
    let mut random = Vec::new();
    let mut exhaustive = Vec::new();
    let mut commutator_failures = 0;
    let mut inconclusive = true;
    let sets = ni_level_sets(d);
    for &j in &sets {
        let ctx = JContext::for_theorem(d, j)?;
        let stream = seed ^ ((j.mask() as u64) << 32);
        random.push(verify_ni_identities(&ctx, samples, stream)?);
        if d <= 3 {
            exhaustive.push(verify_ni_identities_exhaustive(&ctx)?);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(stream.wrapping_add(1));
        for _ in 0..samples {
            let g = random_member(&ctx, &mut rng)?;
            let h = random_member(&ctx, &mut rng)?;
            match commutator_parity(&g, &h, &ctx) {
                Ok((Parity::ZERO, Parity::ZERO)) => {}
                Ok(_) | Err(Error::Inconsistent(_)) => commutator_failures += 1,
                Err(e) => return Err(e),
            }
            let v = derived_membership_certificate(&ctx, &g.commutator(&h)?)?;
            inconclusive &= v.verdict == VerdictKind::Inconclusive;
        }
    }
    Ok(NiSuiteReport {
        d,
        samples,
        seed,
        random,
        exhaustive,
        commutator_samples: samples * sets.len() as u64,
        commutator_failures,
        inconclusive_on_commutators: inconclusive,
    })
}

/// Dimension of `P_J` computed on the subspace, for callers that only need
/// the number.
pub fn pj_dimension(d: usize, j: LevelSet) -> Result<DimensionJson> {
    let lin = LinearPatternGroup::from_predicate(&maximal_subgroup(d, j)?)?.essential_reduction();
    Ok(lin.dimension()?.into())
}
