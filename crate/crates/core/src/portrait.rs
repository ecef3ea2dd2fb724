//! Elements of `G(d)`, the automorphism group of the binary rooted tree of
//! depth `d`, stored as portraits.
//!
//! A portrait assigns one parity bit (a "label") to every vertex on levels
//! `0..d`. Label 1 means the automorphism swaps the two children of that
//! vertex. Vertices are addressed in heap order: the root has index 0 and
//! the children of index `i` are `2i + 1` (symbol 0) and `2i + 2` (symbol 1),
//! so level `j` occupies the contiguous range `2^j - 1 ..= 2^(j+1) - 2`.
//!
//! # Composition order
//!
//! `h.compose(&g)` is the product `hg` acting on the left: `g` is applied
//! first. With that convention the chain rule reads
//! `(hg)_u = h_{g(u)} g_u`, so the label of `hg` at `u` is
//! `h_(g(u)) + g_(u)`.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use num_rational::Ratio;
use rand::Rng;
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

/// Largest depth accepted by element arithmetic (a portrait of 2^24 - 1 bits).
pub const MAX_DEPTH: usize = 24;

/// Number of labelled vertices (levels `0..depth`) of a depth-`depth` portrait.
#[inline]
pub const fn portrait_len(depth: usize) -> usize {
    (1usize << depth) - 1
}

#[inline]
pub const fn level_start(level: usize) -> usize {
    (1usize << level) - 1
}

pub(crate) fn check_depth(depth: usize) -> Result<()> {
    if depth == 0 || depth > MAX_DEPTH {
        Err(Error::InvalidDepth {
            depth,
            max: MAX_DEPTH,
        })
    } else {
        Ok(())
    }
}

/// An element of `C_2`, identified with `Sym({0,1})`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parity(bool);

impl Parity {
    pub const ZERO: Parity = Parity(false);
    pub const ONE: Parity = Parity(true);

    pub fn is_one(self) -> bool {
        self.0
    }

    pub fn is_zero(self) -> bool {
        !self.0
    }

    pub fn as_u8(self) -> u8 {
        self.0 as u8
    }

    /// Index `i + self` in `{0,1}`, used for half-tree selectors.
    pub fn shift(self, i: usize) -> usize {
        (i ^ self.0 as usize) & 1
    }
}

impl From<bool> for Parity {
    fn from(b: bool) -> Self {
        Parity(b)
    }
}

// Addition in GF(2).
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Parity {
    fn add_assign(&mut self, rhs: Parity) {
        self.0 ^= rhs.0;
    }
}

impl std::iter::Sum for Parity {
    fn sum<I: Iterator<Item = Parity>>(iter: I) -> Parity {
        iter.fold(Parity::ZERO, Add::add)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// A vertex of the binary tree, i.e. a finite word over `{0,1}`.
///
/// `path` holds the word as a binary number with the first symbol most
/// significant. Words double as inputs and outputs of [`FiniteAutomorphism::apply`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vertex {
    len: u8,
    path: u32,
}

impl Vertex {
    pub const fn root() -> Self {
        Vertex { len: 0, path: 0 }
    }

    pub fn new(len: usize, path: u32) -> Result<Self> {
        if len > MAX_DEPTH || (len < 32 && path >> len != 0) {
            return Err(Error::WordTooLong {
                len,
                depth: MAX_DEPTH,
            });
        }
        Ok(Vertex {
            len: len as u8,
            path,
        })
    }

    /// The word `0^n`.
    pub fn zeros(n: usize) -> Self {
        Vertex {
            len: n as u8,
            path: 0,
        }
    }

    pub fn from_symbols(symbols: &[u8]) -> Result<Self> {
        let mut v = Vertex::root();
        for &s in symbols {
            if s > 1 || v.len() >= MAX_DEPTH {
                return Err(Error::InvalidWord(format!("{symbols:?}")));
            }
            v = v.child(s);
        }
        Ok(v)
    }

    /// Vertex at heap index `index`.
    pub fn from_heap_index(index: usize) -> Self {
        let level = (usize::BITS - 1 - (index + 1).leading_zeros()) as usize;
        Vertex {
            len: level as u8,
            path: (index - level_start(level)) as u32,
        }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_root(&self) -> bool {
        self.len == 0
    }

    /// Position of the vertex within its level, `0..2^len`.
    pub fn path(&self) -> usize {
        self.path as usize
    }

    pub fn heap_index(&self) -> usize {
        level_start(self.len()) + self.path()
    }

    pub fn child(&self, symbol: u8) -> Vertex {
        Vertex {
            len: self.len + 1,
            path: (self.path << 1) | (symbol as u32 & 1),
        }
    }

    /// Symbol at position `k` (0-based from the root).
    pub fn symbol(&self, k: usize) -> u8 {
        ((self.path >> (self.len() - 1 - k)) & 1) as u8
    }

    pub fn symbols(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len()).map(move |k| self.symbol(k))
    }

    pub fn first(&self) -> Option<u8> {
        (self.len > 0).then(|| self.symbol(0))
    }

    pub fn prefix(&self, k: usize) -> Vertex {
        let k = k.min(self.len());
        Vertex {
            len: k as u8,
            path: self.path >> (self.len() - k),
        }
    }

    /// The word `self` followed by `tail`.
    pub fn concat(&self, tail: &Vertex) -> Vertex {
        Vertex {
            len: self.len + tail.len,
            path: (((self.path as u64) << tail.len) | tail.path as u64) as u32,
        }
    }

    /// All vertices on level `n`, in heap order.
    pub fn level(n: usize) -> impl Iterator<Item = Vertex> {
        (0..1u32 << n).map(move |path| Vertex {
            len: n as u8,
            path,
        })
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.symbols() {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex(\"{self}\")")
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidWord(s.to_owned())),
            })
            .collect::<Result<Vec<u8>>>()?;
        Vertex::from_symbols(&symbols).map_err(|_| Error::InvalidWord(s.to_owned()))
    }
}

type Words = SmallVec<[u64; 2]>;

/// An element of `G(d)` stored as its portrait.
///
/// Every bit vector of length `2^d - 1` is a valid element. Ordering compares
/// depth first and then the portrait read as a little-endian integer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAutomorphism {
    depth: u8,
    words: Words,
}

impl FiniteAutomorphism {
    pub fn identity(depth: usize) -> Result<Self> {
        check_depth(depth)?;
        Ok(Self::zeroed(depth))
    }

    fn zeroed(depth: usize) -> Self {
        FiniteAutomorphism {
            depth: depth as u8,
            words: smallvec![0; portrait_len(depth).div_ceil(64)],
        }
    }

    /// The generator `a_i`: a single nontrivial label at vertex `0^i`.
    pub fn generator(depth: usize, i: usize) -> Result<Self> {
        check_depth(depth)?;
        if i >= depth {
            return Err(Error::GeneratorOutOfRange { index: i, depth });
        }
        let mut g = Self::zeroed(depth);
        g.flip(level_start(i));
        Ok(g)
    }

    pub fn generators(depth: usize) -> Result<Vec<Self>> {
        (0..depth).map(|i| Self::generator(depth, i)).collect()
    }

    /// Builds an element from the heap indices of its nontrivial labels.
    pub fn from_labels(depth: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_depth(depth)?;
        let mut g = Self::zeroed(depth);
        for idx in indices {
            if idx >= portrait_len(depth) {
                return Err(Error::LevelOutOfRange {
                    level: Vertex::from_heap_index(idx).len(),
                    depth,
                });
            }
            g.flip(idx);
        }
        Ok(g)
    }

    /// Builds an element from raw little-endian portrait words. Bits beyond
    /// the portrait length must be zero.
    pub fn from_words(depth: usize, words: &[u64]) -> Result<Self> {
        check_depth(depth)?;
        let n = portrait_len(depth);
        if words.len() != n.div_ceil(64) {
            return Err(Error::BadEncoding(format!(
                "expected {} words, got {}",
                n.div_ceil(64),
                words.len()
            )));
        }
        let g = FiniteAutomorphism {
            depth: depth as u8,
            words: SmallVec::from_slice(words),
        };
        if g.words.last().copied().unwrap_or(0) & !last_word_mask(n) != 0 {
            return Err(Error::BadEncoding("bits set beyond the portrait".into()));
        }
        Ok(g)
    }

    /// Haar-uniform random element: independent uniform labels.
    pub fn random<R: Rng + ?Sized>(depth: usize, rng: &mut R) -> Result<Self> {
        check_depth(depth)?;
        let n = portrait_len(depth);
        let mut g = Self::zeroed(depth);
        for w in g.words.iter_mut() {
            *w = rng.gen();
        }
        if let Some(last) = g.words.last_mut() {
            *last &= last_word_mask(n);
        }
        Ok(g)
    }

    pub fn depth(&self) -> usize {
        self.depth as usize
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_identity(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Label at heap index `idx`.
    #[inline]
    pub fn bit(&self, idx: usize) -> bool {
        (self.words[idx >> 6] >> (idx & 63)) & 1 == 1
    }

    #[inline]
    fn flip(&mut self, idx: usize) {
        self.words[idx >> 6] ^= 1 << (idx & 63);
    }

    #[inline]
    fn set_bit(&mut self, idx: usize, value: bool) {
        let mask = 1u64 << (idx & 63);
        if value {
            self.words[idx >> 6] |= mask;
        } else {
            self.words[idx >> 6] &= !mask;
        }
    }

    /// Heap indices of all nontrivial labels, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    fn check_same_depth(&self, other: &Self) -> Result<()> {
        if self.depth != other.depth {
            return Err(Error::DepthMismatch {
                left: self.depth(),
                right: other.depth(),
            });
        }
        Ok(())
    }

    /// Calls `f(u, g(u))` with heap indices for every vertex `u` on levels
    /// `0..depth`, level by level.
    fn for_each_image(&self, mut f: impl FnMut(usize, usize)) {
        let d = self.depth();
        let mut cur: SmallVec<[u32; 32]> = smallvec![0];
        let mut next: SmallVec<[u32; 32]> = SmallVec::new();
        for level in 0..d {
            let start = level_start(level);
            for (p, &q) in cur.iter().enumerate() {
                f(start + p, start + q as usize);
            }
            if level + 1 < d {
                next.clear();
                next.reserve(cur.len() * 2);
                for (p, &q) in cur.iter().enumerate() {
                    let swap = self.bit(start + p) as u32;
                    next.push(2 * q + swap);
                    next.push(2 * q + (1 ^ swap));
                }
                std::mem::swap(&mut cur, &mut next);
            }
        }
    }

    /// Image of the word `w` (requires `|w| <= depth`).
    pub fn apply(&self, w: &Vertex) -> Result<Vertex> {
        if w.len() > self.depth() {
            return Err(Error::WordTooLong {
                len: w.len(),
                depth: self.depth(),
            });
        }
        let mut out = Vertex::root();
        let mut prefix = Vertex::root();
        for x in w.symbols() {
            let label = self.bit(prefix.heap_index()) as u8;
            out = out.child(x ^ label);
            prefix = prefix.child(x);
        }
        Ok(out)
    }

    /// The product `self · g` (apply `g` first, then `self`).
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.check_same_depth(g)?;
        let mut r = g.clone();
        self.compose_into(g, &mut r);
        Ok(r)
    }

    /// `r` must be a copy of `g`; writes `self · g` into it.
    fn compose_into(&self, g: &Self, r: &mut Self) {
        g.for_each_image(|u, gu| {
            if self.bit(gu) {
                r.flip(u);
            }
        });
    }

    pub fn invert(&self) -> Self {
        let mut r = Self::zeroed(self.depth());
        self.for_each_image(|u, gu| {
            if self.bit(u) {
                r.set_bit(gu, true);
            }
        });
        r
    }

    /// `g^{-1} h g` where `self = h`.
    pub fn conjugate_by(&self, g: &Self) -> Result<Self> {
        g.invert().compose(&self.compose(g)?)
    }

    /// The commutator `[g, h] = g^{-1} h^{-1} g h` with `self = g`.
    pub fn commutator(&self, h: &Self) -> Result<Self> {
        let gh = self.compose(h)?;
        let hg = h.compose(self)?;
        hg.invert().compose(&gh)
    }

    /// Section at `w`: the element of `G(d - |w|)` describing the action
    /// below `w`.
    pub fn section(&self, w: &Vertex) -> Result<Self> {
        if w.len() >= self.depth() {
            return Err(Error::WordTooLong {
                len: w.len(),
                depth: self.depth() - 1,
            });
        }
        Ok(self.extract(w, self.depth() - w.len()))
    }

    /// Restriction to the first `k` levels.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.depth() {
            return Err(Error::LevelOutOfRange {
                level: k,
                depth: self.depth(),
            });
        }
        Ok(self.extract(&Vertex::root(), k))
    }

    /// The size-`k` pattern rooted at `v`.
    pub fn subpattern(&self, v: &Vertex, k: usize) -> Result<Self> {
        if k == 0 || v.len() + k > self.depth() {
            return Err(Error::WordTooLong {
                len: v.len() + k,
                depth: self.depth(),
            });
        }
        Ok(self.extract(v, k))
    }

    /// Whether the pattern `p` appears at `w`.
    pub fn pattern_appears(&self, p: &Self, w: &Vertex) -> Result<bool> {
        Ok(self.subpattern(w, p.depth())? == *p)
    }

    fn extract(&self, v: &Vertex, k: usize) -> Self {
        let mut r = Self::zeroed(k);
        for j in 0..k {
            let src = level_start(v.len() + j) + (v.path() << j);
            let dst = level_start(j);
            copy_bits(&self.words, src, &mut r.words, dst, 1 << j);
        }
        r
    }

    /// Writes the labels of `pattern` into the subtree rooted at `v`.
    pub(crate) fn write_pattern(&mut self, v: &Vertex, pattern: &Self) {
        for j in 0..pattern.depth() {
            let dst = level_start(v.len() + j) + (v.path() << j);
            copy_bits(&pattern.words, level_start(j), &mut self.words, dst, 1 << j);
        }
    }

    /// Copy of `self` extended by zero labels to depth `depth`.
    pub(crate) fn extend_to(&self, depth: usize) -> Self {
        let mut r = Self::zeroed(depth);
        copy_bits(&self.words, 0, &mut r.words, 0, portrait_len(self.depth()));
        r
    }

    pub fn root_activity(&self) -> Parity {
        Parity(self.bit(0))
    }

    pub fn activity_at(&self, v: &Vertex) -> Result<Parity> {
        if v.len() >= self.depth() {
            return Err(Error::WordTooLong {
                len: v.len(),
                depth: self.depth() - 1,
            });
        }
        Ok(Parity(self.bit(v.heap_index())))
    }

    /// Parity of the labels in heap range `start..start+len`.
    pub fn range_parity(&self, start: usize, len: usize) -> Parity {
        Parity(range_popcount(&self.words, start, len) & 1 == 1)
    }

    pub fn level_parity(&self, level: usize) -> Parity {
        self.range_parity(level_start(level), 1 << level)
    }

    /// Activity within the level set `levels`.
    pub fn alpha(&self, levels: LevelSet) -> Result<Parity> {
        if let Some(top) = levels.top() {
            if top >= self.depth() {
                return Err(Error::LevelOutOfRange {
                    level: top,
                    depth: self.depth(),
                });
            }
        }
        Ok(levels.iter().map(|j| self.level_parity(j)).sum())
    }

    /// Whether every label on levels `0..n` vanishes.
    pub fn stabilizes_level(&self, n: usize) -> bool {
        range_popcount(&self.words, 0, portrait_len(n.min(self.depth()))) == 0
    }

    pub fn distance(&self, other: &Self) -> Result<Distance> {
        self.check_same_depth(other)?;
        let first = self
            .words
            .iter()
            .zip(other.words.iter())
            .enumerate()
            .find_map(|(i, (a, b))| {
                let x = a ^ b;
                (x != 0).then(|| i * 64 + x.trailing_zeros() as usize)
            });
        Ok(Distance {
            depth: self.depth(),
            first_difference_level: first.map(|idx| Vertex::from_heap_index(idx).len()),
        })
    }

    /// Portrait bytes: bit `k` (byte `k / 8`, bit `k % 8` from the least
    /// significant end) is the label at heap index `k`.
    pub fn encode(&self) -> Vec<u8> {
        let nbytes = portrait_len(self.depth()).div_ceil(8);
        self.words
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(nbytes)
            .collect()
    }

    pub fn decode(bytes: &[u8], depth: usize) -> Result<Self> {
        check_depth(depth)?;
        let n = portrait_len(depth);
        let nbytes = n.div_ceil(8);
        if bytes.len() != nbytes {
            return Err(Error::BadEncoding(format!(
                "expected {nbytes} bytes for depth {depth}, got {}",
                bytes.len()
            )));
        }
        let mut g = Self::zeroed(depth);
        for (i, chunk) in bytes.chunks(8).enumerate() {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            g.words[i] = u64::from_le_bytes(buf);
        }
        if g.words.last().copied().unwrap_or(0) & !last_word_mask(n) != 0 {
            return Err(Error::BadEncoding(
                "trailing bits beyond the portrait must be zero".into(),
            ));
        }
        Ok(g)
    }

    /// Lowercase hex of [`encode`](Self::encode), the canonical text form.
    pub fn to_hex(&self) -> String {
        hex::encode(self.encode())
    }

    pub fn from_hex(s: &str, depth: usize) -> Result<Self> {
        let bytes = hex::decode(s.trim()).map_err(|e| Error::BadEncoding(e.to_string()))?;
        Self::decode(&bytes, depth)
    }
}

impl fmt::Debug for FiniteAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({})[{}]", self.depth, self.to_hex())
    }
}

impl PartialOrd for FiniteAutomorphism {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteAutomorphism {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.depth
            .cmp(&other.depth)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

#[inline]
fn last_word_mask(n: usize) -> u64 {
    match n % 64 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

fn copy_bits(src: &[u64], src_start: usize, dst: &mut [u64], dst_start: usize, len: usize) {
    let mut done = 0;
    while done < len {
        let s = src_start + done;
        let t = dst_start + done;
        let chunk = (len - done).min(64 - (s & 63)).min(64 - (t & 63));
        let mask = if chunk == 64 { u64::MAX } else { (1u64 << chunk) - 1 };
        let bits = (src[s >> 6] >> (s & 63)) & mask;
        dst[t >> 6] = (dst[t >> 6] & !(mask << (t & 63))) | (bits << (t & 63));
        done += chunk;
    }
}

fn range_popcount(words: &[u64], start: usize, len: usize) -> u32 {
    let mut count = 0;
    let mut done = 0;
    while done < len {
        let s = start + done;
        let chunk = (len - done).min(64 - (s & 63));
        let mask = if chunk == 64 { u64::MAX } else { (1u64 << chunk) - 1 };
        count += ((words[s >> 6] >> (s & 63)) & mask).count_ones();
        done += chunk;
    }
    count
}

/// A set of tree levels, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LevelSet(u32);

impl LevelSet {
    pub const EMPTY: LevelSet = LevelSet(0);

    pub fn from_mask(mask: u32) -> Self {
        LevelSet(mask)
    }

    pub fn single(level: usize) -> Self {
        LevelSet(1 << level)
    }

    pub fn mask(&self) -> u32 {
        self.0
    }

    pub fn contains(&self, level: usize) -> bool {
        level < 32 && (self.0 >> level) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn top(&self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    pub fn insert(&mut self, level: usize) {
        self.0 |= 1 << level;
    }

    pub fn without(&self, level: usize) -> LevelSet {
        LevelSet(self.0 & !(1 << level))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |j| (mask >> j) & 1 == 1)
    }

    /// All nonempty subsets of `{0,..,depth-1}`, ordered by mask.
    pub fn all_nonempty(depth: usize) -> impl Iterator<Item = LevelSet> {
        (1u32..1 << depth).map(LevelSet)
    }
}

impl FromIterator<usize> for LevelSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = LevelSet::EMPTY;
        for j in iter {
            s.insert(j);
        }
        s
    }
}

impl fmt::Debug for LevelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for LevelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, j) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}}")
    }
}

/// Truncated-metric distance between two elements of `G(d)`.
///
/// Equal to `1 / [G : G_n] = 1 / 2^(2^n - 1)` where `n` is the first level
/// with a differing label. Identical portraits only agree to depth `d`, which
/// is reported as distance 0 with `agrees_to_full_depth` set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Distance {
    pub depth: usize,
    pub first_difference_level: Option<usize>,
}

impl Distance {
    pub fn is_zero(&self) -> bool {
        self.first_difference_level.is_none()
    }

    pub fn agrees_to_full_depth(&self) -> bool {
        self.is_zero()
    }

    /// `log2` of the reciprocal distance, i.e. `2^n - 1`.
    pub fn inverse_log2(&self) -> Option<u64> {
        self.first_difference_level.map(|n| (1u64 << n) - 1)
    }

    /// `self <= other` as metric values.
    pub fn is_at_most(&self, other: &Distance) -> bool {
        match (self.first_difference_level, other.first_difference_level) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a >= b,
        }
    }

    /// Exact value when the denominator fits in a `u64`.
    pub fn to_ratio(&self) -> Option<Ratio<u64>> {
        match self.inverse_log2() {
            None => Some(Ratio::from_integer(0)),
            Some(k) if k < 64 => Some(Ratio::new(1, 1u64 << k)),
            Some(_) => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.to_ratio(), self.inverse_log2()) {
            (Some(r), _) if *r.numer() == 0 => write!(f, "0"),
            (Some(r), _) => write!(f, "{r}"),
            (None, Some(k)) => write!(f, "1/2^{k}"),
            (None, None) => unreachable!(),
        }
    }
}
