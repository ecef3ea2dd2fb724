//! Finite-depth truncations `H(n)` of `G_P` and the index of the image of
//! the first-level stabilizer under `h -> (h_0, h_1)`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::PatternGroup;
use crate::error::{Error, Result};
use crate::portrait::{portrait_len, FiniteAutomorphism, Vertex};
use crate::subgroup::{ElementSet, EnumeratedSubgroup, EnumerationCap};

/// `H(n)`, the image of `G_P` in `G(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationGroup {
    pub pattern_depth: usize,
    pub depth: usize,
    pub group: EnumeratedSubgroup,
}

/// Computes `H(n)`.
///
/// For `n < d` this is the truncation of `P`; for `n > d` it is built one
/// level at a time, completing every boundary pattern of size `d - 1` in all
/// ways allowed by `P`. Requires `P` essential.
pub fn truncation_group(p: &PatternGroup, n: usize, cap: EnumerationCap) -> Result<TruncationGroup> {
    p.require_essential()?;
    let d = p.depth();
    if n == 0 {
        return Err(Error::LevelOutOfRange { level: 0, depth: d });
    }
    let wrap = |group| TruncationGroup {
        pattern_depth: d,
        depth: n,
        group,
    };
    if n <= d {
        if n == d {
            return Ok(wrap(p.group().clone()));
        }
        let elems: HashSet<_> = p.group().iter().map(|g| g.truncate(n)).collect::<Result<_>>()?;
        let gens = dedup_nontrivial(p.group().generators().iter().map(|g| g.truncate(n)))?;
        let set = ElementSet::from_elements(n, elems.into_iter().collect());
        return Ok(wrap(EnumeratedSubgroup::from_parts_unchecked(gens, set)));
    }

    let kernel = p.group().level_stabilizer(d - 1)?;
    let kernel_log2 = kernel.order_log2()? as u64;
    let mut completions: HashMap<FiniteAutomorphism, Vec<FiniteAutomorphism>> = HashMap::new();
    for q in p.group().iter() {
        completions.entry(q.truncate(d - 1)?).or_default().push(q);
    }

    let mut h = p.group().clone();
    for m in d..n {
        let boundary = m + 1 - d;
        let log2 = h.order_log2()? as u64 + kernel_log2 * (1u64 << boundary);
        if log2 >= 64 || (1u64 << log2) > cap.0 {
            return Err(Error::CapExceeded {
                cap: cap.0,
                hint: format!(" (truncation at depth {} has 2^{log2} elements)", m + 1),
            });
        }
        let vertices: Vec<Vertex> = Vertex::level(boundary).collect();
        let choices_of = |g: &FiniteAutomorphism| -> Result<Vec<&Vec<FiniteAutomorphism>>> {
            vertices
                .iter()
                .map(|v| {
                    let top = g.subpattern(v, d - 1)?;
                    completions.get(&top).ok_or_else(|| {
                        Error::Inconsistent(format!("boundary pattern at {v} has no completion"))
                    })
                })
                .collect()
        };

        let narrow = portrait_len(m + 1) <= 64;
        let mut keys = Vec::new();
        let mut wide = Vec::new();
        for g in h.iter() {
            let choices = choices_of(&g)?;
            let mut cur = g.extend_to(m + 1);
            for_each_product(&choices, &vertices, &mut cur, &mut |e| {
                if narrow {
                    keys.push(e.words()[0]);
                } else {
                    wide.push(e.clone());
                }
            });
        }
        let set = if narrow {
            ElementSet::from_u64(m + 1, keys)
        } else {
            ElementSet::from_elements(m + 1, wide)
        };

        let mut gens = Vec::new();
        for g in h.generators() {
            let mut lift = g.extend_to(m + 1);
            for (v, c) in vertices.iter().zip(choices_of(g)?) {
                lift.write_pattern(v, &c[0]);
            }
            gens.push(lift);
        }
        let identity = FiniteAutomorphism::identity(m + 1)?;
        for k in kernel.generators() {
            for v in &vertices {
                let mut e = identity.clone();
                e.write_pattern(v, k);
                gens.push(e);
            }
        }
        h = EnumeratedSubgroup::from_parts_unchecked(dedup_nontrivial(gens.into_iter().map(Ok))?, set);
    }
    Ok(wrap(h))
}

fn dedup_nontrivial(
    gens: impl Iterator<Item = Result<FiniteAutomorphism>>,
) -> Result<Vec<FiniteAutomorphism>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in gens {
        let g = g?;
        if !g.is_identity() && seen.insert(g.clone()) {
            out.push(g);
        }
    }
    Ok(out)
}

fn for_each_product(
    choices: &[&Vec<FiniteAutomorphism>],
    vertices: &[Vertex],
    cur: &mut FiniteAutomorphism,
    f: &mut impl FnMut(&FiniteAutomorphism),
) {
    match choices.split_first() {
        None => f(cur),
        Some((first, rest)) => {
            for q in first.iter() {
                cur.write_pattern(&vertices[0], q);
                for_each_product(rest, &vertices[1..], cur, f);
            }
        }
    }
}

/// One depth of the index computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiStep {
    pub depth: usize,
    pub truncation_order_log2: u32,
    pub image_order: u64,
    pub index: u64,
}

/// `[H x H : psi(H_1)]`, with the per-depth evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiIndex {
    pub steps: Vec<PsiStep>,
    /// `Some` once two consecutive depths agree.
    pub stabilized: Option<u64>,
}

impl PsiIndex {
    pub fn depths_checked(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.depth).collect()
    }
}

/// Computes `[H(n) x H(n) : psi(H(n+1)_1)]` for `n = d - 1, d, ...` up to
/// `max_depth`, stopping at the first two consecutive depths that agree.
pub fn psi_image_index(p: &PatternGroup, max_depth: usize, cap: EnumerationCap) -> Result<PsiIndex> {
    p.require_essential()?;
    let d = p.depth();
    let mut steps: Vec<PsiStep> = Vec::new();
    let mut lower = truncation_group(p, d - 1, cap)?;
    for n in d - 1..=max_depth {
        let upper = truncation_group(p, n + 1, cap)?;
        let step = psi_step(&lower.group, &upper.group)?;
        let agrees = steps.last().is_some_and(|s| s.index == step.index);
        steps.push(step);
        if agrees {
            let index = steps.last().map(|s| s.index);
            return Ok(PsiIndex {
                steps,
                stabilized: index,
            });
        }
        lower = upper;
    }
    Ok(PsiIndex {
        steps,
        stabilized: None,
    })
}

fn psi_step(h: &EnumeratedSubgroup, upper: &EnumeratedSubgroup) -> Result<PsiStep> {
    let n = h.depth();
    let (left, right) = (Vertex::root().child(0), Vertex::root().child(1));
    let mut image = HashSet::new();
    for g in upper.iter().filter(|g| g.root_activity().is_zero()) {
        let (a, b) = (g.section(&left)?, g.section(&right)?);
        if !h.contains(&a) || !h.contains(&b) {
            return Err(Error::Inconsistent(format!(
                "section of a depth-{} element leaves the depth-{n} truncation",
                n + 1
            )));
        }
        image.insert((a, b));
    }
    let square = (h.order() as u128).pow(2);
    let img = image.len() as u128;
    if img == 0 || !square.is_multiple_of(img) {
        return Err(Error::Inconsistent(format!(
            "image of order {img} does not divide {square}"
        )));
    }
    Ok(PsiStep {
        depth: n,
        truncation_order_log2: h.order_log2()?,
        image_order: img as u64,
        index: (square / img) as u64,
    })
}
