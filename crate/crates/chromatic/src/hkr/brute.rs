//! Brute-force subspace enumeration over `F_Q` for `Q` in {2, 3, 4}.
//! Subspaces of `F_Q^m` are bitmasks over the `Q^m` vectors, so `Q^m <= 64`.

use itertools::Itertools;

use super::HkrError;

/// Arithmetic in `F_2`, `F_3` or `F_4 = F_2[w]/(w^2 + w + 1)`; elements of
/// `F_4` are `a + b w` encoded as `a + 2b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallField {
    pub order: u64,
}

impl SmallField {
    pub fn new(order: u64) -> Result<Self, HkrError> {
        match order {
            2..=4 => Ok(Self { order }),
            _ => Err(HkrError::BadField(order)),
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        match self.order {
            4 => a ^ b,
            q => (a + b) % q,
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match self.order {
            4 => {
                let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
                // (a0 + a1 w)(b0 + b1 w), w^2 = w + 1
                let c0 = (a0 & b0) ^ (a1 & b1);
                let c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
                c0 | (c1 << 1)
            }
            q => a * b % q,
        }
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u64 {
        match self.order {
            2 => 1,
            3 => 2,
            _ => 2,
        }
    }
}

/// Vectors of `F_Q^m` indexed by base-`Q` digits.
pub struct VectorSpace {
    pub field: SmallField,
    pub m: u32,
    pub size: u64,
    add_table: Vec<Vec<u64>>,
    scale_table: Vec<Vec<u64>>,
}

impl VectorSpace {
    pub fn new(q: u64, m: u32) -> Result<Self, HkrError> {
        let field = SmallField::new(q)?;
        let size = q.pow(m);
        if size > 64 {
            return Err(HkrError::Infeasible(format!("F_{q}^{m} has {size} vectors")));
        }
        let mut space = Self { field, m, size, add_table: Vec::new(), scale_table: Vec::new() };
        space.add_table = (0..size).map(|a| (0..size).map(|b| space.add_slow(a, b)).collect()).collect();
        space.scale_table = (0..q).map(|c| (0..size).map(|a| space.scale_slow(c, a)).collect()).collect();
        Ok(space)
    }

    pub fn coords(&self, v: u64) -> Vec<u64> {
        (0..self.m).map(|i| v / self.field.order.pow(i) % self.field.order).collect()
    }

    pub fn vector(&self, c: &[u64]) -> u64 {
        c.iter().enumerate().map(|(i, &x)| x * self.field.order.pow(i as u32)).sum()
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add_table[a as usize][b as usize]
    }

    pub fn scale(&self, c: u64, a: u64) -> u64 {
        self.scale_table[c as usize][a as usize]
    }

    fn add_slow(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.coords(a), self.coords(b));
        self.vector(&x.iter().zip(&y).map(|(&s, &t)| self.field.add(s, t)).collect::<Vec<_>>())
    }

    fn scale_slow(&self, c: u64, a: u64) -> u64 {
        self.vector(&self.coords(a).iter().map(|&x| self.field.mul(c, x)).collect::<Vec<_>>())
    }

    /// Span of a set of vectors as a bitmask.
    pub fn span(&self, gens: &[u64]) -> u64 {
        let mut mask = 1u64; // the zero vector
        for &g in gens {
            let mut next = mask;
            for v in 0..self.size {
                if mask >> v & 1 == 1 {
                    for c in 0..self.field.order {
                        next |= 1 << self.add(v, self.scale(c, g));
                    }
                }
            }
            mask = next;
        }
        mask
    }

    /// All subspaces of dimension `a`, one per reduced row echelon form.
    pub fn subspaces(&self, a: u32) -> Vec<u64> {
        let q = self.field.order;
        let m = self.m as usize;
        let mut out = Vec::new();
        for pivots in (0..m).combinations(a as usize) {
            // free entries: row i, columns after its pivot that are not pivots
            let slots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| ((c + 1)..m).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
                .collect();
            for fill in 0..q.pow(slots.len() as u32) {
                let mut rows = vec![vec![0u64; m]; a as usize];
                for (i, &c) in pivots.iter().enumerate() {
                    rows[i][c] = 1;
                }
                let mut f = fill;
                for &(i, j) in &slots {
                    rows[i][j] = f % q;
                    f /= q;
                }
                let gens: Vec<u64> = rows.iter().map(|r| self.vector(r)).collect();
                out.push(self.span(&gens));
            }
        }
        out.sort();
        out
    }

    pub fn dim_of(&self, mask: u64) -> u32 {
        let mut n = mask.count_ones() as u64;
        let mut d = 0;
        while n > 1 {
            n /= self.field.order;
            d += 1;
        }
        d
    }

    /// Ordered pairs `(U, U')` with `U + U' = F_Q^m` direct and `dim U = a`.
    pub fn splittings(&self, a: u32) -> Vec<(u64, u64)> {
        let small = self.subspaces(a);
        let big = self.subspaces(self.m - a);
        let mut out = Vec::new();
        for &u in &small {
            for &w in &big {
                if u & w == 1 {
                    out.push((u, w));
                }
            }
        }
        out
    }

    /// Whether a subspace is stable under the diagonal map with the given
    /// eigenvalues.
    pub fn is_invariant(&self, mask: u64, eigenvalues: &[u64]) -> bool {
        (0..self.size).filter(|v| mask >> v & 1 == 1).all(|v| {
            let c = self.coords(v);
            let image: Vec<u64> = c.iter().zip(eigenvalues).map(|(&x, &e)| self.field.mul(e, x)).collect();
            mask >> self.vector(&image) & 1 == 1
        })
    }

    /// Eigenvalue multiplicities of the diagonal map restricted to an
    /// invariant subspace, by brute force on eigenvectors.
    pub fn restricted_type(&self, mask: u64, eigenvalues: &[u64]) -> Vec<(u64, u32)> {
        let mut distinct: Vec<u64> = eigenvalues.to_vec();
        distinct.sort();
        distinct.dedup();
        distinct
            .into_iter()
            .map(|lambda| {
                let eigen: Vec<u64> = (0..self.size)
                    .filter(|&v| mask >> v & 1 == 1)
                    .filter(|&v| {
                        let c = self.coords(v);
                        c.iter().zip(eigenvalues).all(|(&x, &e)| self.field.mul(e, x) == self.field.mul(lambda, x))
                    })
                    .collect();
                (lambda, self.dim_of(self.span(&eigen)))
            })
            .collect()
    }
}

/// Number of `a`-dimensional subspaces of `F_Q^m`, by enumeration.
pub fn count_subspaces(q: u64, m: u32, a: u32) -> Result<usize, HkrError> {
    Ok(VectorSpace::new(q, m)?.subspaces(a).len())
}

/// Number of ordered direct splittings `F_Q^m = U (+) U'` with `dim U = a`.
pub fn count_splittings(q: u64, m: u32, a: u32) -> Result<usize, HkrError> {
    Ok(VectorSpace::new(q, m)?.splittings(a).len())
}
