use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::linalg::Echelon;
use crate::algebra::{Monomial, MultiPoly};
use crate::numerics::ChromaticParams;

use super::KringError;

/// How a monomial in the generators is brought to normal form.
#[derive(Clone, Debug)]
pub enum Reducer {
    /// Row-reduced span of the relations in weighted degree at most `bound`,
    /// columns ordered grlex-descending so pivots are the largest monomials.
    Linear { bound: u32, columns: HashMap<Monomial, usize>, monomials: Vec<Monomial>, echelon: Echelon },
    /// Every exponent below `exponent_bound`, everything else zero.
    Truncated { exponent_bound: u32 },
}

/// A finite-dimensional commutative `F_p`-algebra presented as a quotient
/// of a weighted polynomial ring, with a monomial basis.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub params: ChromaticParams,
    pub d: usize,
    pub names: Vec<String>,
    pub weights: Vec<u32>,
    /// Standard monomials, grlex-ascending; `basis[0] = 1` when nonzero.
    pub basis: Vec<Monomial>,
    basis_index: HashMap<Monomial, usize>,
    pub reducer: Reducer,
    /// `table[i * dim + j]` is the normal form of `basis[i] * basis[j]`, sparse.
    table: Vec<Vec<(usize, u64)>>,
}

/// Coordinates over the monomial basis of a [`QuotientAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraElement {
    pub coords: Vec<u64>,
}

impl AlgebraElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl QuotientAlgebra {
    pub(crate) fn assemble(
        params: ChromaticParams,
        d: usize,
        names: Vec<String>,
        weights: Vec<u32>,
        basis: Vec<Monomial>,
        reducer: Reducer,
    ) -> Self {
        let basis_index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut alg = Self { params, d, names, weights, basis, basis_index, reducer, table: Vec::new() };
        let dim = alg.dim();
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let m = alg.basis[i].mul(&alg.basis[j]);
                table.push(alg.nf_monomial(&m));
            }
        }
        alg.table = table;
        alg
    }

    pub fn p(&self) -> u64 {
        self.params.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn bound(&self) -> Option<u32> {
        match &self.reducer {
            Reducer::Linear { bound, .. } => Some(*bound),
            Reducer::Truncated { .. } => None,
        }
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u32 {
        m.weighted_degree(&self.weights)
    }

    /// Normal form of a monomial as sparse coordinates.
    pub fn nf_monomial(&self, m: &Monomial) -> Vec<(usize, u64)> {
        if let Some(&i) = self.basis_index.get(m) {
            return vec![(i, 1)];
        }
        match &self.reducer {
            Reducer::Truncated { .. } => Vec::new(),
            Reducer::Linear { bound, columns, monomials, echelon } => {
                if self.weighted_degree(m) > *bound {
                    return Vec::new();
                }
                let p = self.p();
                let col = columns[m];
                let row = echelon.pivot_row(col).expect("non-basis monomial is a pivot");
                row.iter()
                    .enumerate()
                    .filter(|&(c, &x)| x != 0 && c != col)
                    .map(|(c, &x)| (self.basis_index[&monomials[c]], (p - x) % p))
                    .collect()
            }
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { coords: vec![0; self.dim()] }
    }

    pub fn one(&self) -> AlgebraElement {
        self.from_monomial(&Monomial::one())
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let mut e = self.zero();
        e.coords[i] = 1;
        e
    }

    pub fn from_monomial(&self, m: &Monomial) -> AlgebraElement {
        let mut e = self.zero();
        for (i, c) in self.nf_monomial(m) {
            e.coords[i] = c;
        }
        e
    }

    /// The generator `c_i` (1-based).
    pub fn generator(&self, i: usize) -> AlgebraElement {
        self.from_monomial(&Monomial::var(i - 1))
    }

    /// Normal form of a polynomial in the generators with coefficients in `[0, p)`.
    pub fn from_poly(&self, f: &MultiPoly<u64>) -> AlgebraElement {
        let p = self.p();
        let mut e = self.zero();
        for (m, &c) in &f.terms {
            for (i, x) in self.nf_monomial(m) {
                e.coords[i] = (e.coords[i] + c % p * x) % p;
            }
        }
        e
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let p = self.p();
        AlgebraElement { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| (x + y) % p).collect() }
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let p = self.p();
        AlgebraElement { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| (x + p - y) % p).collect() }
    }

    pub fn scale(&self, a: &AlgebraElement, c: u64) -> AlgebraElement {
        let p = self.p();
        AlgebraElement { coords: a.coords.iter().map(|x| x * (c % p) % p).collect() }
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let p = self.p();
        let dim = self.dim();
        let mut acc = vec![0u64; dim];
        for (i, &x) in a.coords.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coords.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = x * y % p;
                for &(k, z) in &self.table[i * dim + j] {
                    acc[k] = (acc[k] + xy * z) % p;
                }
            }
        }
        AlgebraElement { coords: acc }
    }

    pub fn pow(&self, a: &AlgebraElement, e: u64) -> AlgebraElement {
        let mut out = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul(&out, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        out
    }

    /// Matrix of `y -> a y` as a list of columns (images of basis elements).
    pub fn multiplication_columns(&self, a: &AlgebraElement) -> Vec<Vec<u64>> {
        (0..self.dim()).map(|j| self.mul(a, &self.basis_element(j)).coords).collect()
    }

    /// Smallest `e` with `a^e = 0`, if below `limit`.
    pub fn nilpotency_index(&self, a: &AlgebraElement, limit: u64) -> Option<u64> {
        let mut x = self.one();
        for e in 0..=limit {
            if x.is_zero() {
                return Some(e);
            }
            x = self.mul(&x, a);
        }
        None
    }

    /// Human-readable form such as `2*c1^2*c3 + c2`.
    pub fn format(&self, a: &AlgebraElement) -> String {
        let mut parts = Vec::new();
        for (i, &c) in a.coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = format_monomial(&self.basis[i], &self.names);
            parts.push(match (c, mono.as_str()) {
                (_, "1") => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Check that the stored table is associative and commutative on the basis.
    pub fn check_structure(&self) -> Result<(), KringError> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                if self.table[i * dim + j] != self.table[j * dim + i] {
                    return Err(KringError::Structure(format!("product of basis {i} and {j} is not commutative")));
                }
            }
        }
        for i in 0..dim {
            let bi = self.basis_element(i);
            for j in 0..dim {
                let bij = self.mul(&bi, &self.basis_element(j));
                for k in 0..dim {
                    let bk = self.basis_element(k);
                    let left = self.mul(&bij, &bk);
                    let right = self.mul(&bi, &self.mul(&self.basis_element(j), &bk));
                    if left != right {
                        return Err(KringError::Structure(format!("basis triple ({i}, {j}, {k}) is not associative")));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, name) in names.iter().enumerate() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}
