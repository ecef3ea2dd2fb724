//! Pattern groups that are linear subspaces of the portrait bits.
//!
//! Parity-defined subgroups (`P_J`, `M_V`, stabilizers, intersections) are
//! subspaces of `GF(2)^(2^d - 1)`, and truncation, subpatterns and sections
//! at root-fixing elements are coordinate projections. Everything the
//! enumeration route computes on such groups therefore reduces to linear
//! algebra, which reaches sizes far beyond enumeration.

use num_rational::Ratio;

use super::Dimension;
use crate::error::{Error, Result};
use crate::gf2::{self, Row, Subspace};
use crate::portrait::{level_start, portrait_len, FiniteAutomorphism, Vertex};
use crate::subgroup::{EnumeratedSubgroup, EnumerationCap, PredicateSubgroup, SubgroupKind};

/// `(n, log2 index)` per depth, and the stabilized value if any.
pub type IndexSteps = (Vec<(usize, usize)>, Option<usize>);

/// Heap indices, within a tree of arbitrary depth, of the size-`k` subtree
/// rooted at `v`, listed in local heap order.
fn subtree_indices(v: &Vertex, k: usize) -> Vec<usize> {
    (0..k)
        .flat_map(|j| {
            let start = level_start(v.len() + j) + (v.path() << j);
            start..start + (1 << j)
        })
        .collect()
}

fn project(row: &[u64], indices: &[usize]) -> Row {
    gf2::row_from_indices(
        indices.len(),
        indices.iter().enumerate().filter(|(_, &g)| gf2::get(row, g)).map(|(l, _)| l),
    )
}

fn embed(local: &[u64], indices: &[usize], n: usize) -> Row {
    gf2::row_from_indices(
        n,
        indices.iter().enumerate().filter(|(l, _)| gf2::get(local, *l)).map(|(_, &g)| g),
    )
}

/// A pattern group whose element set is a subspace of the portrait bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPatternGroup {
    depth: usize,
    space: Subspace,
}

impl LinearPatternGroup {
    pub fn new(depth: usize, space: Subspace) -> Result<Self> {
        if space.ambient() != portrait_len(depth) {
            return Err(Error::DepthMismatch {
                left: space.ambient(),
                right: portrait_len(depth),
            });
        }
        if depth < 2 {
            return Err(Error::Precondition("pattern size must be >= 2".into()));
        }
        Ok(LinearPatternGroup { depth, space })
    }

    pub fn from_predicate(p: &PredicateSubgroup) -> Result<Self> {
        Self::new(p.depth(), p.subspace())
    }

    /// Accepts an enumerated subgroup whose element set happens to be a
    /// subspace; anything else is rejected.
    pub fn from_enumerated(g: &EnumeratedSubgroup) -> Result<Self> {
        let n = portrait_len(g.depth());
        // The span contains the set; equal sizes make them equal.
        let space = Subspace::span(n, g.iter().map(|h| h.words().to_vec()).collect::<Vec<_>>());
        if space.dim() as u32 != g.order_log2()? {
            return Err(Error::Precondition("subgroup is not a linear subspace of portraits".into()));
        }
        Self::new(g.depth(), space)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn order_log2(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, g: &FiniteAutomorphism) -> bool {
        g.depth() == self.depth && self.space.contains(g.words())
    }

    fn top(&self) -> Subspace {
        let idx = subtree_indices(&Vertex::root(), self.depth - 1);
        self.space.image(idx.len(), |b| project(b, &idx))
    }

    /// Functionals on `G(d)` whose common kernel is the set of `g` whose
    /// child subpatterns both lie in the truncation.
    fn child_constraints(&self) -> Vec<Row> {
        let ann = self.top().annihilator();
        let n = portrait_len(self.depth);
        (0..2u8)
            .flat_map(|i| {
                let idx = subtree_indices(&Vertex::root().child(i), self.depth - 1);
                ann.iter().map(move |f| embed(f, &idx, n)).collect::<Vec<_>>()
            })
            .collect()
    }

    pub fn is_essential(&self) -> bool {
        let cs = self.child_constraints();
        self.space.basis().iter().all(|b| cs.iter().all(|f| !gf2::dot(f, b)))
    }

    /// Greatest fixpoint of the essentiality filter.
    pub fn essential_reduction(&self) -> Self {
        let mut cur = self.clone();
        loop {
            let next = cur.space.intersect_kernel(&cur.child_constraints());
            if next.dim() == cur.space.dim() {
                return cur;
            }
            cur.space = next;
        }
    }

    /// `log2 |P_{d-1}|`.
    pub fn stabilizer_log2(&self) -> usize {
        let top: Vec<Row> = (0..portrait_len(self.depth - 1))
            .map(|i| gf2::row_from_indices(portrait_len(self.depth), [i]))
            .collect();
        self.space.intersect_kernel(&top).dim()
    }

    pub fn dimension(&self) -> Result<Dimension> {
        if !self.is_essential() {
            return Err(Error::NotEssential);
        }
        Ok(Ratio::new(self.stabilizer_log2() as u64, 1u64 << (self.depth - 1)))
    }

    pub fn is_finite(&self) -> Result<bool> {
        Ok(*self.dimension()?.numer() == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.space.contains_subspace(other)
    }

    /// `H(n)` as a subspace of `GF(2)^(2^n - 1)`.
    pub fn truncation_space(&self, n: usize) -> Result<Subspace> {
        if !self.is_essential() {
            return Err(Error::NotEssential);
        }
        let d = self.depth;
        if n == 0 || n > crate::portrait::MAX_DEPTH {
            return Err(Error::LevelOutOfRange { level: n, depth: d });
        }
        if n <= d {
            let idx = subtree_indices(&Vertex::root(), n);
            return Ok(self.space.image(idx.len(), |b| project(b, &idx)));
        }
        let ann = self.space.annihilator();
        let total = portrait_len(n);
        let mut constraints = Vec::new();
        for l in 0..=n - d {
            for v in Vertex::level(l) {
                let idx = subtree_indices(&v, d);
                constraints.extend(ann.iter().map(|f| embed(f, &idx, total)));
            }
        }
        Ok(Subspace::kernel(total, &constraints))
    }

    /// `log2 [H(n) x H(n) : psi(H(n+1)_1)]`.
    pub fn psi_index_log2(&self, n: usize) -> Result<usize> {
        let h = self.truncation_space(n)?;
        let upper = self.truncation_space(n + 1)?;
        let root = gf2::row_from_indices(upper.ambient(), [0]);
        let fixed = upper.intersect_kernel(&[root]);
        // Sections of root-fixing elements are coordinate projections, so
        // psi is injective on them and the image has the same dimension.
        let (left, right) = (
            subtree_indices(&Vertex::root().child(0), n),
            subtree_indices(&Vertex::root().child(1), n),
        );
        for b in fixed.basis() {
            if !h.contains(&project(b, &left)) || !h.contains(&project(b, &right)) {
                return Err(Error::Inconsistent(format!(
                    "section of a depth-{} element leaves the depth-{n} truncation",
                    n + 1
                )));
            }
        }
        Ok(2 * h.dim() - fixed.dim())
    }

    /// Index log2 at `n = d - 1, d, ...` until two consecutive depths agree.
    pub fn psi_image_index_log2(&self, max_depth: usize) -> Result<IndexSteps> {
        let mut steps: Vec<(usize, usize)> = Vec::new();
        for n in self.depth - 1..=max_depth {
            let k = self.psi_index_log2(n)?;
            let agrees = steps.last().is_some_and(|&(_, prev)| prev == k);
            steps.push((n, k));
            if agrees {
                return Ok((steps, Some(k)));
            }
        }
        Ok((steps, None))
    }

    pub fn enumerate(&self, cap: EnumerationCap) -> Result<EnumeratedSubgroup> {
        let gens: Vec<FiniteAutomorphism> =
            self.space.basis().iter().map(|b| to_element(self.depth, b)).collect();
        crate::subgroup::close(self.depth, &gens, cap)
    }
}

fn to_element(depth: usize, row: &[u64]) -> FiniteAutomorphism {
    FiniteAutomorphism::from_words(depth, row).expect("row has portrait length")
}

/// The subspace `[G(d), G(d)]`.
pub fn derived_of_gd_space(depth: usize) -> Result<Subspace> {
    Ok(PredicateSubgroup::new(depth, SubgroupKind::DerivedOfGd)?.subspace())
}
