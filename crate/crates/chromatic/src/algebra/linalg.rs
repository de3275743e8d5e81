//! Dense linear algebra over `F_p`. Vectors are `Vec<u64>` with entries
//! in `[0, p)`. Pivots are always the leftmost nonzero column, so callers
//! choose the pivot order by choosing the column order.

use super::ring::inv_mod;

#[inline]
fn axpy(p: u64, row: &mut [u64], f: u64, other: &[u64], from: usize) {
    // row -= f * other, on columns >= from
    let g = p - f;
    for (a, &b) in row[from..].iter_mut().zip(&other[from..]) {
        if b != 0 {
            *a = (*a + g * b) % p;
        }
    }
}

/// A subspace of `F_p^ncols` held as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub p: u64,
    pub ncols: usize,
    /// Basis rows, each with a leading 1 at `pivots[i]`, sorted by pivot.
    pub rows: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
    /// `pivot_of[c]` is the index of the row with pivot `c`.
    pivot_of: Vec<Option<usize>>,
    reduced: bool,
}

impl Echelon {
    pub fn new(p: u64, ncols: usize) -> Self {
        Self { p, ncols, rows: Vec::new(), pivots: Vec::new(), pivot_of: vec![None; ncols], reduced: true }
    }

    pub fn from_rows<I: IntoIterator<Item = Vec<u64>>>(p: u64, ncols: usize, rows: I) -> Self {
        let mut e = Self::new(p, ncols);
        for r in rows {
            e.insert(r);
        }
        e.finish();
        e
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_of[c].is_some()
    }

    pub fn pivot_row(&self, c: usize) -> Option<&[u64]> {
        self.pivot_of[c].map(|i| self.rows[i].as_slice())
    }

    /// Reduce `v` against the current basis (clears every pivot column).
    pub fn reduce(&self, v: &mut [u64]) {
        let p = self.p;
        for c in 0..self.ncols {
            let x = v[c];
            if x == 0 {
                continue;
            }
            if let Some(i) = self.pivot_of[c] {
                axpy(p, v, x, &self.rows[i], c);
            }
        }
    }

    /// Add a vector to the span. Returns `true` if the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        for x in v.iter_mut() {
            *x %= self.p;
        }
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[c], self.p).unwrap();
        for x in v[c..].iter_mut() {
            *x = *x * inv % self.p;
        }
        self.pivot_of[c] = Some(self.rows.len());
        self.rows.push(v);
        self.pivots.push(c);
        self.reduced = false;
        true
    }

    /// Back-substitute to reduced row echelon form and sort rows by pivot.
    pub fn finish(&mut self) {
        if self.reduced {
            return;
        }
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<Vec<u64>> = order.iter().map(|&i| std::mem::take(&mut self.rows[i])).collect();
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        let p = self.p;
        for i in (0..rows.len()).rev() {
            let (upper, lower) = rows.split_at_mut(i);
            let pr = &lower[0];
            let c = pivots[i];
            for r in upper.iter_mut() {
                let x = r[c];
                if x != 0 {
                    axpy(p, r, x, pr, c);
                }
            }
        }
        self.pivot_of = vec![None; self.ncols];
        for (i, &c) in pivots.iter().enumerate() {
            self.pivot_of[c] = Some(i);
        }
        self.rows = rows;
        self.pivots = pivots;
        self.reduced = true;
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w: Vec<u64> = v.iter().map(|x| x % self.p).collect();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn contains_all(&self, other: &Echelon) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn same_span(&self, other: &Echelon) -> bool {
        self.dim() == other.dim() && self.contains_all(other)
    }

    /// Columns that carry no pivot: the complement basis.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_of[c].is_none()).collect()
    }
}

/// Rank of a list of vectors.
pub fn rank(p: u64, ncols: usize, rows: &[Vec<u64>]) -> usize {
    Echelon::from_rows(p, ncols, rows.iter().cloned()).dim()
}

/// Basis of `{x : sum_j x_j cols[j] = 0}`, returned as vectors of length
/// `cols.len()`.
pub fn kernel(p: u64, cols: &[Vec<u64>], dim_out: usize) -> Vec<Vec<u64>> {
    let n = cols.len();
    // Row-reduce [A^T | I]; rows whose A^T part vanishes give the kernel.
    let width = dim_out + n;
    let mut ech = Echelon::new(p, width);
    let mut kernel_rows = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        let mut v = vec![0u64; width];
        for (i, &x) in col.iter().enumerate() {
            v[i] = x % p;
        }
        v[dim_out + j] = 1;
        ech.reduce(&mut v);
        if v[..dim_out].iter().all(|&x| x == 0) {
            kernel_rows.push(v[dim_out..].to_vec());
            // keep the identity block consistent for later rows
            ech.insert(v);
        } else {
            ech.insert(v);
        }
    }
    let mut k = Echelon::from_rows(p, n, kernel_rows);
    k.finish();
    k.rows
}

/// Solve `sum_j x_j cols[j] = target`, if possible.
pub fn solve(p: u64, cols: &[Vec<u64>], target: &[u64]) -> Option<Vec<u64>> {
    let dim_out = target.len();
    let n = cols.len();
    let width = dim_out + n;
    let mut ech = Echelon::new(p, width);
    for (j, col) in cols.iter().enumerate() {
        let mut v = vec![0u64; width];
        for (i, &x) in col.iter().enumerate() {
            v[i] = x % p;
        }
        v[dim_out + j] = 1;
        ech.insert(v);
    }
    let mut t = vec![0u64; width];
    for (i, &x) in target.iter().enumerate() {
        t[i] = x % p;
    }
    ech.reduce(&mut t);
    if t[..dim_out].iter().any(|&x| x != 0) {
        return None;
    }
    // t = target - sum x_j col_j in the first block, and -x in the second.
    Some(t[dim_out..].iter().map(|&x| (p - x) % p).collect())
}

/// If `w = lambda * v` for a unique nonzero scalar, return it.
pub fn unit_ratio(p: u64, v: &[u64], w: &[u64]) -> Option<u64> {
    let i = v.iter().position(|&x| x % p != 0)?;
    let lambda = w[i] % p * inv_mod(v[i] % p, p)? % p;
    if lambda == 0 {
        return None;
    }
    v.iter().zip(w).all(|(&a, &b)| a * lambda % p == b % p).then_some(lambda)
}
