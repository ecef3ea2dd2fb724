//! Subgroups of `G(d)`: enumeration by closure, stabilizers, derived
//! subgroups, orbits, and the parity-defined families `P_J` and `M_V`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, Row, Subspace};
use crate::portrait::{
    check_depth, level_start, portrait_len, FiniteAutomorphism, LevelSet, Parity, Vertex,
};

/// Default limit on the number of elements an enumeration may produce.
pub const DEFAULT_CAP: u64 = 1 << 26;

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "TREEGRP_CAP";

/// Upper bound on the size of any enumerated set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCap(pub u64);

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap(DEFAULT_CAP)
    }
}

impl EnumerationCap {
    /// Reads `TREEGRP_CAP`, falling back to the default.
    pub fn from_env() -> Self {
        std::env::var(CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(EnumerationCap)
            .unwrap_or_default()
    }

    fn check(&self, count: u64) -> Result<()> {
        if count > self.0 {
            Err(Error::cap(self.0))
        } else {
            Ok(())
        }
    }

    /// Fails unless the whole of `G(depth)` fits under the cap.
    pub fn check_full_group(&self, depth: usize) -> Result<()> {
        let bits = portrait_len(depth);
        if bits >= 64 || (1u64 << bits) > self.0 {
            return Err(Error::CapExceeded {
                cap: self.0,
                hint: format!(
                    " (G({depth}) has 2^{bits} elements; use the predicate form instead)"
                ),
            });
        }
        Ok(())
    }
}

/// Sorted, deduplicated portraits of one depth packed into a flat buffer.
#[derive(Clone, PartialEq, Eq)]
pub struct ElementSet {
    depth: usize,
    stride: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn from_elements(depth: usize, mut elements: Vec<FiniteAutomorphism>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let stride = portrait_len(depth).div_ceil(64);
        let mut words = Vec::with_capacity(elements.len() * stride);
        for e in &elements {
            words.extend_from_slice(e.words());
        }
        ElementSet {
            depth,
            stride,
            words,
        }
    }

    /// Builds from single-word portraits (`depth <= 6`).
    pub(crate) fn from_u64(depth: usize, mut keys: Vec<u64>) -> Self {
        debug_assert!(portrait_len(depth) <= 64);
        keys.sort_unstable();
        keys.dedup();
        ElementSet {
            depth,
            stride: 1,
            words: keys,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len() / self.stride
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn get(&self, i: usize) -> FiniteAutomorphism {
        FiniteAutomorphism::from_words(self.depth, &self.words[i * self.stride..(i + 1) * self.stride])
            .expect("element set holds valid portraits")
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = FiniteAutomorphism> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn contains(&self, g: &FiniteAutomorphism) -> bool {
        if g.depth() != self.depth {
            return false;
        }
        let key = g.words();
        if self.stride == 1 {
            return self.words.binary_search(&key[0]).is_ok();
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            let chunk = &self.words[mid * self.stride..(mid + 1) * self.stride];
            match chunk.iter().rev().cmp(key.iter().rev()) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementSet(depth={}, len={})", self.depth, self.len())
    }
}

/// Incremental breadth-first closure under left multiplication by a growing
/// generator list.
struct Closure {
    depth: usize,
    cap: EnumerationCap,
    seen: HashSet<FiniteAutomorphism>,
    elements: Vec<FiniteAutomorphism>,
    generators: Vec<FiniteAutomorphism>,
}

impl Closure {
    fn new(depth: usize, cap: EnumerationCap) -> Result<Self> {
        let e = FiniteAutomorphism::identity(depth)?;
        Ok(Closure {
            depth,
            cap,
            seen: HashSet::from([e.clone()]),
            elements: vec![e],
            generators: Vec::new(),
        })
    }

    fn contains(&self, g: &FiniteAutomorphism) -> bool {
        self.seen.contains(g)
    }

    fn insert(&mut self, g: FiniteAutomorphism) -> Result<()> {
        if !self.seen.contains(&g) {
            self.cap.check(self.elements.len() as u64 + 1)?;
            self.seen.insert(g.clone());
            self.elements.push(g);
        }
        Ok(())
    }

    /// Adds `t` as a generator unless it is already in the closure.
    fn add_generator(&mut self, t: FiniteAutomorphism) -> Result<bool> {
        if t.depth() != self.depth {
            return Err(Error::DepthMismatch {
                left: self.depth,
                right: t.depth(),
            });
        }
        if self.contains(&t) {
            return Ok(false);
        }
        self.generators.push(t.clone());
        let old = self.elements.len();
        // Old elements are already closed under the old generators.
        for i in 0..old {
            let y = t.compose(&self.elements[i])?;
            self.insert(y)?;
        }
        let mut j = old;
        while j < self.elements.len() {
            for k in 0..self.generators.len() {
                let y = self.generators[k].compose(&self.elements[j])?;
                self.insert(y)?;
            }
            j += 1;
        }
        Ok(true)
    }

    fn finish(self) -> EnumeratedSubgroup {
        EnumeratedSubgroup {
            depth: self.depth,
            generators: self.generators,
            elements: ElementSet::from_elements(self.depth, self.elements),
        }
    }
}

/// An explicitly enumerated subgroup of `G(d)`.
///
/// Equality compares element sets; generator lists are ignored.
#[derive(Clone, Debug)]
pub struct EnumeratedSubgroup {
    depth: usize,
    generators: Vec<FiniteAutomorphism>,
    elements: ElementSet,
}

impl PartialEq for EnumeratedSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for EnumeratedSubgroup {}

/// Least subgroup of `G(depth)` containing `generators`.
pub fn close(
    depth: usize,
    generators: &[FiniteAutomorphism],
    cap: EnumerationCap,
) -> Result<EnumeratedSubgroup> {
    check_depth(depth)?;
    let mut c = Closure::new(depth, cap)?;
    for g in generators {
        c.add_generator(g.clone())?;
    }
    let mut s = c.finish();
    // Keep the caller's generators, including redundant ones.
    s.generators = generators.to_vec();
    Ok(s)
}

/// `G(depth)` by closure of `a_0, ..., a_{d-1}`.
pub fn full_group(depth: usize, cap: EnumerationCap) -> Result<EnumeratedSubgroup> {
    close(depth, &FiniteAutomorphism::generators(depth)?, cap)
}

/// Every element of `G(depth)` satisfying `keep`, by scanning all portraits.
pub fn filter_full_group(
    depth: usize,
    cap: EnumerationCap,
    keep: impl Fn(&FiniteAutomorphism) -> bool,
) -> Result<Vec<FiniteAutomorphism>> {
    check_depth(depth)?;
    cap.check_full_group(depth)?;
    let bits = portrait_len(depth);
    Ok((0..1u64 << bits)
        .map(|w| FiniteAutomorphism::from_words(depth, &[w]).expect("in range"))
        .filter(|g| keep(g))
        .collect())
}

impl EnumeratedSubgroup {
    /// Wraps a set already known to be a subgroup, choosing a generating set
    /// greedily in canonical order.
    pub fn from_closed_set(
        depth: usize,
        elements: Vec<FiniteAutomorphism>,
        cap: EnumerationCap,
    ) -> Result<Self> {
        let set = ElementSet::from_elements(depth, elements);
        Self::from_element_set(set, cap)
    }

    pub(crate) fn from_element_set(set: ElementSet, cap: EnumerationCap) -> Result<Self> {
        let depth = set.depth();
        let mut c = Closure::new(depth, cap)?;
        for g in set.iter() {
            if !c.contains(&g) {
                c.add_generator(g)?;
            }
        }
        if c.elements.len() != set.len() {
            return Err(Error::NotSubgroup(format!(
                "{} elements generate a group of order {}",
                set.len(),
                c.elements.len()
            )));
        }
        Ok(EnumeratedSubgroup {
            depth,
            generators: c.generators,
            elements: set,
        })
    }

    /// Wraps a set with a generating set supplied by the caller. The caller
    /// guarantees that `generators` generate exactly `elements`.
    pub(crate) fn from_parts_unchecked(
        generators: Vec<FiniteAutomorphism>,
        elements: ElementSet,
    ) -> Self {
        EnumeratedSubgroup {
            depth: elements.depth(),
            generators,
            elements,
        }
    }

    pub fn trivial(depth: usize) -> Result<Self> {
        close(depth, &[], EnumerationCap::default())
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn generators(&self) -> &[FiniteAutomorphism] {
        &self.generators
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = FiniteAutomorphism> + '_ {
        self.elements.iter()
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// `log2` of the order (every subgroup of `G(d)` is a 2-group).
    pub fn order_log2(&self) -> Result<u32> {
        let n = self.order();
        if !n.is_power_of_two() {
            return Err(Error::Inconsistent(format!(
                "subgroup order {n} is not a power of two"
            )));
        }
        Ok(n.trailing_zeros())
    }

    pub fn contains(&self, g: &FiniteAutomorphism) -> bool {
        self.elements.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &EnumeratedSubgroup) -> bool {
        self.depth == other.depth && self.iter().all(|g| other.contains(&g))
    }

    /// `[self : sub]`, verifying that `sub` is contained in `self`.
    pub fn index(&self, sub: &EnumeratedSubgroup) -> Result<u64> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::Precondition("not a subgroup of the ambient group".into()));
        }
        Ok(self.order() / sub.order())
    }

    /// Elements acting trivially on levels `0..=n` (labels vanish on levels
    /// `0..n`).
    pub fn level_stabilizer(&self, n: usize) -> Result<EnumeratedSubgroup> {
        if n > self.depth {
            return Err(Error::LevelOutOfRange {
                level: n,
                depth: self.depth,
            });
        }
        if n == 0 {
            return Ok(self.clone());
        }
        let elements: Vec<_> = self.iter().filter(|g| g.stabilizes_level(n)).collect();
        Self::from_closed_set(self.depth, elements, EnumerationCap(self.order()))
    }

    /// `[S, S]` as the normal closure of the commutators of generator pairs.
    pub fn derived_subgroup(&self, cap: EnumerationCap) -> Result<EnumeratedSubgroup> {
        let mut c = Closure::new(self.depth, cap)?;
        let gens = &self.generators;
        for (i, g) in gens.iter().enumerate() {
            for h in &gens[i + 1..] {
                c.add_generator(g.commutator(h)?)?;
            }
        }
        let mut k = 0;
        while k < c.generators.len() {
            let n = c.generators[k].clone();
            for s in gens {
                let conj = n.conjugate_by(s)?;
                if !c.contains(&conj) {
                    c.add_generator(conj)?;
                }
            }
            k += 1;
        }
        Ok(c.finish())
    }

    pub fn is_abelian(&self) -> Result<bool> {
        for (i, g) in self.generators.iter().enumerate() {
            for h in &self.generators[i + 1..] {
                if g.compose(h)? != h.compose(g)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Orbit of `v` by saturation under the generators.
    pub fn orbit(&self, v: &Vertex) -> Result<BTreeSet<Vertex>> {
        if v.len() > self.depth {
            return Err(Error::WordTooLong {
                len: v.len(),
                depth: self.depth,
            });
        }
        let mut orbit = BTreeSet::from([*v]);
        let mut stack = vec![*v];
        while let Some(x) = stack.pop() {
            for s in &self.generators {
                let y = s.apply(&x)?;
                if orbit.insert(y) {
                    stack.push(y);
                }
            }
        }
        Ok(orbit)
    }

    pub fn is_transitive_on_level(&self, n: usize) -> Result<bool> {
        Ok(self.orbit(&Vertex::zeros(n))?.len() == 1 << n)
    }
}

/// Every subgroup of `G(depth)`, by iterated one-element extension. Only
/// intended for `depth <= 2`.
pub fn all_subgroups(depth: usize) -> Result<Vec<EnumeratedSubgroup>> {
    if depth > 2 {
        return Err(Error::Precondition(
            "subgroup lattice enumeration is limited to depth <= 2".into(),
        ));
    }
    let cap = EnumerationCap::default();
    let everything = full_group(depth, cap)?;
    let mut found: Vec<EnumeratedSubgroup> = vec![EnumeratedSubgroup::trivial(depth)?];
    let mut keys: HashSet<Vec<u8>> = HashSet::new();
    let key = |s: &EnumeratedSubgroup| s.iter().flat_map(|g| g.encode()).collect::<Vec<u8>>();
    keys.insert(key(&found[0]));
    let mut i = 0;
    while i < found.len() {
        for g in everything.iter() {
            if found[i].contains(&g) {
                continue;
            }
            let mut gens = found[i].generators().to_vec();
            gens.push(g);
            let s = close(depth, &gens, cap)?;
            if keys.insert(key(&s)) {
                found.push(s);
            }
        }
        i += 1;
    }
    found.sort_by_key(|s| (s.order(), key(s)));
    Ok(found)
}

/// The shape of a parity-defined subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubgroupKind {
    Full,
    /// `P_J`: kernel of the activity within `J`.
    PJ(LevelSet),
    /// `M_V`: last-level stabilizer elements with even label count on `V`.
    MV(Vec<Vertex>),
    /// `[G(d), G(d)]`: every level parity vanishes.
    DerivedOfGd,
    /// `G_n(d)`.
    LevelStabilizer(usize),
    Intersection(Vec<SubgroupKind>),
}

impl Serialize for LevelSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for LevelSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let levels = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = levels.iter().find(|&&j| j >= 32) {
            return Err(serde::de::Error::custom(format!("level {bad} out of range")));
        }
        Ok(levels.into_iter().collect())
    }
}

impl Serialize for Vertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A subgroup given by a membership predicate instead of an element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateSubgroup {
    depth: usize,
    kind: SubgroupKind,
}

/// `P_J`, the maximal subgroup of `G(d)` with vanishing activity within `J`.
pub fn maximal_subgroup(depth: usize, levels: LevelSet) -> Result<PredicateSubgroup> {
    PredicateSubgroup::new(depth, SubgroupKind::PJ(levels))
}

/// `M_V` inside the last-level stabilizer `G_{d-1}(d)`.
pub fn mv_subgroup(depth: usize, vertices: &[Vertex]) -> Result<PredicateSubgroup> {
    PredicateSubgroup::new(depth, SubgroupKind::MV(vertices.to_vec()))
}

/// `β_V(g)`: parity of the labels of `g` on `V`.
pub fn beta(g: &FiniteAutomorphism, vertices: &[Vertex]) -> Result<Parity> {
    vertices.iter().map(|v| g.activity_at(v)).sum()
}

/// Enumerates `P_J` by filtering `G(d)`; needs `G(d)` under the cap.
pub fn enumerate_pj(
    depth: usize,
    levels: LevelSet,
    cap: EnumerationCap,
) -> Result<EnumeratedSubgroup> {
    maximal_subgroup(depth, levels)?.enumerate(cap)
}

impl PredicateSubgroup {
    pub fn new(depth: usize, kind: SubgroupKind) -> Result<Self> {
        check_depth(depth)?;
        validate_kind(depth, &kind)?;
        Ok(PredicateSubgroup { depth, kind })
    }

    pub fn full(depth: usize) -> Result<Self> {
        Self::new(depth, SubgroupKind::Full)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn kind(&self) -> &SubgroupKind {
        &self.kind
    }

    pub fn contains(&self, g: &FiniteAutomorphism) -> bool {
        g.depth() == self.depth && kind_contains(&self.kind, g)
    }

    /// Linear functionals on portraits whose common kernel is this subgroup.
    pub fn constraints(&self) -> Vec<Row> {
        let mut out = Vec::new();
        kind_constraints(self.depth, &self.kind, &mut out);
        out
    }

    /// The subgroup as a subspace of `GF(2)^(2^d - 1)`.
    pub fn subspace(&self) -> Subspace {
        Subspace::kernel(portrait_len(self.depth), &self.constraints())
    }

    pub fn order_log2(&self) -> usize {
        self.subspace().dim()
    }

    pub fn enumerate(&self, cap: EnumerationCap) -> Result<EnumeratedSubgroup> {
        let elements = filter_full_group(self.depth, cap, |g| self.contains(g))?;
        let keys = elements.iter().map(|g| g.words()[0]).collect();
        EnumeratedSubgroup::from_element_set(ElementSet::from_u64(self.depth, keys), cap)
    }
}

fn validate_kind(depth: usize, kind: &SubgroupKind) -> Result<()> {
    match kind {
        SubgroupKind::Full | SubgroupKind::DerivedOfGd => Ok(()),
        SubgroupKind::PJ(levels) => {
            if levels.is_empty() {
                return Err(Error::EmptyLevelSet);
            }
            match levels.top() {
                Some(top) if top >= depth => Err(Error::LevelOutOfRange { level: top, depth }),
                _ => Ok(()),
            }
        }
        SubgroupKind::MV(vertices) => {
            if vertices.is_empty() {
                return Err(Error::EmptyVertexSet);
            }
            for v in vertices {
                if v.len() + 1 != depth {
                    return Err(Error::VertexNotOnLevel {
                        vertex: v.to_string(),
                        level: depth - 1,
                    });
                }
            }
            Ok(())
        }
        SubgroupKind::LevelStabilizer(n) => {
            if *n > depth {
                Err(Error::LevelOutOfRange { level: *n, depth })
            } else {
                Ok(())
            }
        }
        SubgroupKind::Intersection(parts) => parts.iter().try_for_each(|k| validate_kind(depth, k)),
    }
}

fn kind_contains(kind: &SubgroupKind, g: &FiniteAutomorphism) -> bool {
    let d = g.depth();
    match kind {
        SubgroupKind::Full => true,
        SubgroupKind::PJ(levels) => levels.iter().map(|j| g.level_parity(j)).sum::<Parity>().is_zero(),
        SubgroupKind::MV(vertices) => {
            g.stabilizes_level(d - 1)
                && vertices
                    .iter()
                    .map(|v| Parity::from(g.bit(v.heap_index())))
                    .sum::<Parity>()
                    .is_zero()
        }
        SubgroupKind::DerivedOfGd => in_derived_of_gd(g),
        SubgroupKind::LevelStabilizer(n) => g.stabilizes_level(*n),
        SubgroupKind::Intersection(parts) => parts.iter().all(|k| kind_contains(k, g)),
    }
}

fn kind_constraints(depth: usize, kind: &SubgroupKind, out: &mut Vec<Row>) {
    let n = portrait_len(depth);
    let level = |j: usize| level_start(j)..level_start(j + 1);
    match kind {
        SubgroupKind::Full => {}
        SubgroupKind::PJ(levels) => {
            out.push(gf2::row_from_indices(n, levels.iter().flat_map(level)));
        }
        SubgroupKind::MV(vertices) => {
            kind_constraints(depth, &SubgroupKind::LevelStabilizer(depth - 1), out);
            out.push(gf2::row_from_indices(n, vertices.iter().map(Vertex::heap_index)));
        }
        SubgroupKind::DerivedOfGd => {
            out.extend((0..depth).map(|j| gf2::row_from_indices(n, level(j))));
        }
        SubgroupKind::LevelStabilizer(m) => {
            out.extend((0..portrait_len(*m)).map(|i| gf2::row_from_indices(n, [i])));
        }
        SubgroupKind::Intersection(parts) => {
            for k in parts {
                kind_constraints(depth, k, out);
            }
        }
    }
}

/// Membership in `[G(d), G(d)]`: every level parity vanishes. The `d`
/// level parities span the dual of the rank-`d` abelianization.
pub fn in_derived_of_gd(g: &FiniteAutomorphism) -> bool {
    (0..g.depth()).all(|j| g.level_parity(j).is_zero())
}

/// Checks that the labels of `h^g` on the last level are those of `h`
/// permuted by `g`. `h` must stabilize level `d - 1`.
pub fn conjugate_label_check(h: &FiniteAutomorphism, g: &FiniteAutomorphism) -> Result<bool> {
    let d = h.depth();
    if !h.stabilizes_level(d - 1) {
        return Err(Error::Precondition(format!(
            "{h:?} does not stabilize level {}",
            d - 1
        )));
    }
    let conj = h.conjugate_by(g)?;
    if !conj.stabilizes_level(d - 1) {
        return Ok(false);
    }
    for v in Vertex::level(d - 1) {
        let gv = g.apply(&v)?;
        if conj.bit(v.heap_index()) != h.bit(gv.heap_index()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of checking the defining relations of `G(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub d: usize,
    pub relations_checked: usize,
    pub failures: Vec<String>,
    /// Order of the closure of the generators, when within the cap.
    pub order: Option<u64>,
    pub expected_order_log2: u64,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self
                .order
                .is_none_or(|o| o == 1u64 << self.expected_order_log2)
    }
}

/// Checks `a_i^2 = 1` and `[a_j^{a_i}, a_k] = 1` for `0 <= i < j, k <= d-1`,
/// and the order of `<a_0, ..., a_{d-1}>` when `d <= 4`.
pub fn verify_presentation(depth: usize) -> Result<PresentationReport> {
    if depth < 2 {
        return Err(Error::Precondition("presentation check needs d >= 2".into()));
    }
    let a = FiniteAutomorphism::generators(depth)?;
    let mut failures = Vec::new();
    let mut checked = 0;
    for (i, ai) in a.iter().enumerate() {
        checked += 1;
        if !ai.compose(ai)?.is_identity() {
            failures.push(format!("a_{i}^2 != 1"));
        }
    }
    for i in 0..depth {
        for j in i + 1..depth {
            let conj = a[j].conjugate_by(&a[i])?;
            for (k, ak) in a.iter().enumerate().skip(i + 1) {
                checked += 1;
                if !conj.commutator(ak)?.is_identity() {
                    failures.push(format!("[a_{j}^a_{i}, a_{k}] != 1"));
                }
            }
        }
    }
    let order = if depth <= 4 {
        Some(full_group(depth, EnumerationCap::default())?.order())
    } else {
        None
    };
    Ok(PresentationReport {
        d: depth,
        relations_checked: checked,
        failures,
        order,
        expected_order_log2: portrait_len(depth) as u64,
    })
}
