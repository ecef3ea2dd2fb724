//! Bit-packed linear algebra over GF(2).
//!
//! Vectors use the same little-endian word layout as portraits, so the
//! portrait of an element of `G(d)` is directly a vector of length `2^d - 1`.
//! Subgroups cut out by parity constraints (such as `P_J` or `M_V`) are
//! exactly the subspaces handled here.

pub type Row = Vec<u64>;

pub fn zero_row(n: usize) -> Row {
    vec![0; n.div_ceil(64)]
}

#[inline]
pub fn get(row: &[u64], i: usize) -> bool {
    (row[i >> 6] >> (i & 63)) & 1 == 1
}

#[inline]
pub fn flip(row: &mut [u64], i: usize) {
    row[i >> 6] ^= 1 << (i & 63);
}

#[inline]
pub fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

pub fn dot(a: &[u64], b: &[u64]) -> bool {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones())
        .sum::<u32>()
        & 1
        == 1
}

pub fn is_zero(row: &[u64]) -> bool {
    row.iter().all(|&w| w == 0)
}

/// Row with bits set at each index in `indices`.
pub fn row_from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Row {
    let mut r = zero_row(n);
    for i in indices {
        flip(&mut r, i);
    }
    r
}

/// Reduces `rows` to reduced row echelon form in place and returns the pivot
/// column of each surviving row. Zero rows are dropped.
fn rref(rows: &mut Vec<Row>, n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| get(&rows[i], col)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && get(row, col) {
                xor_into(row, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Row], n: usize) -> usize {
    let mut rows = rows.to_vec();
    rref(&mut rows, n).len()
}

/// A subspace of `GF(2)^n`, kept as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    basis: Vec<Row>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(n: usize, rows: impl IntoIterator<Item = Row>) -> Self {
        let mut basis: Vec<Row> = rows.into_iter().collect();
        let pivots = rref(&mut basis, n);
        Subspace { n, basis, pivots }
    }

    pub fn full(n: usize) -> Self {
        Self::span(n, (0..n).map(|i| row_from_indices(n, [i])))
    }

    /// Common kernel of the linear functionals `functionals`.
    pub fn kernel(n: usize, functionals: &[Row]) -> Self {
        let mut rows = functionals.to_vec();
        let pivots = rref(&mut rows, n);
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis = (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = row_from_indices(n, [f]);
                for (row, &p) in rows.iter().zip(&pivots) {
                    if get(row, f) {
                        flip(&mut v, p);
                    }
                }
                v
            })
            .collect::<Vec<_>>();
        Self::span(n, basis)
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Row] {
        &self.basis
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if get(&v, p) {
                xor_into(&mut v, row);
            }
        }
        is_zero(&v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// `self ∩ ker(f)` for every `f` in `functionals`.
    pub fn intersect_kernel(&self, functionals: &[Row]) -> Subspace {
        let k = self.dim();
        if k == 0 || functionals.is_empty() {
            return self.clone();
        }
        // Coefficient vectors c with F · (sum c_i b_i) = 0.
        let constraints: Vec<Row> = functionals
            .iter()
            .map(|f| row_from_indices(k, (0..k).filter(|&i| dot(f, &self.basis[i]))))
            .collect();
        let combos = Subspace::kernel(k, &constraints);
        let rows = combos.basis.iter().map(|c| {
            let mut v = zero_row(self.n);
            for i in 0..k {
                if get(c, i) {
                    xor_into(&mut v, &self.basis[i]);
                }
            }
            v
        });
        Subspace::span(self.n, rows.collect::<Vec<_>>())
    }

    /// Functionals vanishing on `self` (a basis of the annihilator).
    pub fn annihilator(&self) -> Vec<Row> {
        Subspace::kernel(self.n, &self.basis).basis
    }

    /// Image under the linear map `f: GF(2)^n -> GF(2)^m`.
    pub fn image(&self, m: usize, f: impl Fn(&[u64]) -> Row) -> Subspace {
        Subspace::span(m, self.basis.iter().map(|b| f(b)).collect::<Vec<_>>())
    }
}
