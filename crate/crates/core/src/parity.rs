//! Half-tree parity functionals `N_0`, `N_1` relative to a level set `J`,
//! and the one-sided certificate they give for non-membership in
//! `[P_J, P_J]`.
//!
//! `N_i(g)` is the parity of the labels of `g` at vertices `i v'` whose
//! level lies in `J' = J \ {0}`. Products follow the crate convention:
//! `g.compose(&h)` is `gh`, with `h` acting first.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::portrait::{level_start, portrait_len, FiniteAutomorphism, LevelSet, Parity};

/// `(d, J, J', I_0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JContext {
    depth: usize,
    j: LevelSet,
    jprime: LevelSet,
    i0: Parity,
}

impl JContext {
    /// Any nonempty `J` within `0..d`.
    pub fn new(depth: usize, j: LevelSet) -> Result<Self> {
        crate::portrait::check_depth(depth)?;
        if j.is_empty() {
            return Err(Error::EmptyLevelSet);
        }
        if let Some(top) = j.top().filter(|&t| t >= depth) {
            return Err(Error::LevelOutOfRange { level: top, depth });
        }
        Ok(JContext {
            depth,
            j,
            jprime: j.without(0),
            i0: Parity::from(j.contains(0)),
        })
    }

    /// As [`JContext::new`], additionally requiring `d - 1 ∈ J` and `d >= 2`.
    pub fn for_theorem(depth: usize, j: LevelSet) -> Result<Self> {
        let ctx = Self::new(depth, j)?;
        if depth < 2 || !j.contains(depth - 1) {
            return Err(Error::Precondition(format!(
                "J = {j} must contain the last level {} (depth {depth})",
                depth.saturating_sub(1)
            )));
        }
        Ok(ctx)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn j(&self) -> LevelSet {
        self.j
    }

    pub fn jprime(&self) -> LevelSet {
        self.jprime
    }

    pub fn i0(&self) -> Parity {
        self.i0
    }

    pub fn contains(&self, g: &FiniteAutomorphism) -> bool {
        g.depth() == self.depth && g.alpha(self.j).map(Parity::is_zero).unwrap_or(false)
    }

    fn check(&self, g: &FiniteAutomorphism) -> Result<()> {
        if g.depth() != self.depth {
            return Err(Error::DepthMismatch {
                left: g.depth(),
                right: self.depth,
            });
        }
        Ok(())
    }

    fn require_member(&self, g: &FiniteAutomorphism) -> Result<()> {
        self.check(g)?;
        if !self.contains(g) {
            return Err(Error::Precondition(format!("{g:?} is not in P_{}", self.j)));
        }
        // alpha_J' + I_0 alpha_0 is alpha_J, so it vanishes on members.
        let split = g.alpha(self.jprime)? + Parity::from(self.i0.is_one() && g.root_activity().is_one());
        if split.is_one() {
            return Err(Error::Inconsistent(format!(
                "alpha_J' + I_0 alpha_0 is nonzero on {g:?}"
            )));
        }
        Ok(())
    }
}

/// `N_i(g)`.
pub fn n_parity(g: &FiniteAutomorphism, ctx: &JContext, i: u8) -> Result<Parity> {
    ctx.check(g)?;
    Ok(n_unchecked(g, ctx, i & 1))
}

fn n_unchecked(g: &FiniteAutomorphism, ctx: &JContext, i: u8) -> Parity {
    ctx.jprime
        .iter()
        .map(|j| {
            let half = 1usize << (j - 1);
            g.range_parity(level_start(j) + i as usize * half, half)
        })
        .sum()
}

fn n_pair(g: &FiniteAutomorphism, ctx: &JContext) -> (Parity, Parity) {
    (n_unchecked(g, ctx, 0), n_unchecked(g, ctx, 1))
}

fn pick(pair: (Parity, Parity), i: Parity) -> Parity {
    if i.is_zero() {
        pair.0
    } else {
        pair.1
    }
}

/// Which of the three identities failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NiIdentity {
    Product,
    Inverse,
    Commutator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiCounterexample {
    pub identity: NiIdentity,
    pub i: u8,
    pub g: String,
    pub h: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiReport {
    pub d: usize,
    #[serde(rename = "J")]
    pub j: LevelSet,
    pub pairs_checked: u64,
    pub failures: u64,
    pub first_counterexample: Option<NiCounterexample>,
}

impl NiReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks the product, inverse and commutator identities for one pair.
/// Returns the failing identities.
pub fn check_ni_pair(
    g: &FiniteAutomorphism,
    h: &FiniteAutomorphism,
    ctx: &JContext,
) -> Result<Vec<(NiIdentity, u8)>> {
    ctx.check(g)?;
    ctx.check(h)?;
    let (ng, nh) = (n_pair(g, ctx), n_pair(h, ctx));
    let (ag, ah) = (g.root_activity(), h.root_activity());
    let gh = n_pair(&g.compose(h)?, ctx);
    let ginv = n_pair(&g.invert(), ctx);
    let comm = n_pair(&g.commutator(h)?, ctx);
    let mut failures = Vec::new();
    for i in 0..2u8 {
        let ip = Parity::from(i == 1);
        let at = |p: (Parity, Parity)| pick(p, ip);
        if at(gh) != pick(nh, ip) + pick(ng, ip + ah) {
            failures.push((NiIdentity::Product, i));
        }
        if at(ginv) != pick(ng, ip + ag) {
            failures.push((NiIdentity::Inverse, i));
        }
        let rhs = pick(ng, ip) + pick(ng, ip + ah) + pick(nh, ip) + pick(nh, ip + ag);
        if at(comm) != rhs {
            failures.push((NiIdentity::Commutator, i));
        }
    }
    Ok(failures)
}

fn run_pairs(
    ctx: &JContext,
    pairs: impl Iterator<Item = (FiniteAutomorphism, FiniteAutomorphism)>,
) -> Result<NiReport> {
    let mut report = NiReport {
        d: ctx.depth,
        j: ctx.j,
        pairs_checked: 0,
        failures: 0,
        first_counterexample: None,
    };
    for (g, h) in pairs {
        report.pairs_checked += 1;
        let failed = check_ni_pair(&g, &h, ctx)?;
        if let Some(&(identity, i)) = failed.first() {
            report.failures += 1;
            report.first_counterexample.get_or_insert_with(|| NiCounterexample {
                identity,
                i,
                g: g.to_hex(),
                h: h.to_hex(),
            });
        }
    }
    Ok(report)
}

/// The identities on `samples` random pairs drawn from a seeded stream.
pub fn verify_ni_identities(ctx: &JContext, samples: u64, seed: u64) -> Result<NiReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = ctx.depth;
    let pairs = (0..samples).map(move |_| {
        let g = FiniteAutomorphism::random(d, &mut rng).expect("valid depth");
        let h = FiniteAutomorphism::random(d, &mut rng).expect("valid depth");
        (g, h)
    });
    run_pairs(ctx, pairs)
}

/// The identities on every pair of `G(d) x G(d)`; `d <= 3`.
pub fn verify_ni_identities_exhaustive(ctx: &JContext) -> Result<NiReport> {
    let d = ctx.depth;
    if d > 3 {
        return Err(Error::Precondition(format!(
            "exhaustive pair check is limited to depth 3 (got {d})"
        )));
    }
    let all: Vec<FiniteAutomorphism> = (0..1u64 << portrait_len(d))
        .map(|w| FiniteAutomorphism::from_words(d, &[w]))
        .collect::<Result<_>>()?;
    let pairs = all.iter().flat_map(|g| all.iter().map(move |h| (g.clone(), h.clone())));
    run_pairs(ctx, pairs)
}

/// A uniform random element of `P_J`: a uniform element of `G(d)`,
/// moved into `P_J` by right multiplication with `a_t`, `t = max J`.
pub fn random_member<R: rand::Rng + ?Sized>(ctx: &JContext, rng: &mut R) -> Result<FiniteAutomorphism> {
    let g = FiniteAutomorphism::random(ctx.depth, rng)?;
    if ctx.contains(&g) {
        return Ok(g);
    }
    let top = ctx.j.top().expect("J is nonempty");
    g.compose(&FiniteAutomorphism::generator(ctx.depth, top)?)
}

/// `(N_0, N_1)` of `[g, h]` for `g, h ∈ P_J`, evaluated directly and
/// cross-checked against the commutator identity.
pub fn commutator_parity(
    g: &FiniteAutomorphism,
    h: &FiniteAutomorphism,
    ctx: &JContext,
) -> Result<(Parity, Parity)> {
    ctx.require_member(g)?;
    ctx.require_member(h)?;
    let direct = n_pair(&g.commutator(h)?, ctx);
    let (ng, nh) = (n_pair(g, ctx), n_pair(h, ctx));
    let (ag, ah) = (g.root_activity(), h.root_activity());
    let formula = |i: Parity| pick(ng, i) + pick(ng, i + ah) + pick(nh, i) + pick(nh, i + ag);
    let via_identity = (formula(Parity::ZERO), formula(Parity::ONE));
    if direct != via_identity {
        return Err(Error::Inconsistent(format!(
            "commutator parities {direct:?} disagree with the identity {via_identity:?}"
        )));
    }
    Ok(direct)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    NotInDerived,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    N0,
    N1,
}

/// Outcome of the parity obstruction. `NotInDerived` is a proof of
/// non-membership; `Inconclusive` carries no information.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub verdict: VerdictKind,
    pub certificate: Option<Certificate>,
}

impl Verdict {
    pub fn excludes(&self) -> bool {
        self.verdict == VerdictKind::NotInDerived
    }
}

/// Decides `x ∉ [P_J, P_J]` when a half-tree parity of `x` is nonzero.
pub fn derived_membership_certificate(ctx: &JContext, x: &FiniteAutomorphism) -> Result<Verdict> {
    ctx.require_member(x)?;
    let (n0, n1) = n_pair(x, ctx);
    let certificate = if n0.is_one() {
        Some(Certificate::N0)
    } else if n1.is_one() {
        Some(Certificate::N1)
    } else {
        None
    };
    Ok(Verdict {
        verdict: if certificate.is_some() {
            VerdictKind::NotInDerived
        } else {
            VerdictKind::Inconclusive
        },
        certificate,
    })
}

/// `(N_0, N_1)` of the product of `word` by counting `J'`-letters whose
/// suffix has even (resp. odd) root activity.
pub fn word_parities(word: &[usize], ctx: &JContext) -> Result<(Parity, Parity)> {
    if let Some(&bad) = word.iter().find(|&&w| w >= ctx.depth) {
        return Err(Error::GeneratorOutOfRange {
            index: bad,
            depth: ctx.depth,
        });
    }
    let mut suffix = Parity::ZERO;
    let (mut even, mut odd) = (Parity::ZERO, Parity::ZERO);
    for &letter in word.iter().rev() {
        if ctx.jprime.contains(letter) {
            if suffix.is_zero() {
                even += Parity::ONE;
            } else {
                odd += Parity::ONE;
            }
        }
        if letter == 0 {
            suffix += Parity::ONE;
        }
    }
    Ok((even, odd))
}

/// The product `a_{w_1} a_{w_2} ... a_{w_k}`.
pub fn word_product(word: &[usize], depth: usize) -> Result<FiniteAutomorphism> {
    word.iter().try_fold(FiniteAutomorphism::identity(depth)?, |acc, &i| {
        acc.compose(&FiniteAutomorphism::generator(depth, i)?)
    })
}
