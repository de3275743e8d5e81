//! Subspaces and ideals of a [`QuotientAlgebra`], held as row echelon bases
//! over the monomial basis.

use crate::algebra::linalg::{kernel, unit_ratio, Echelon};

use super::quotient::{AlgebraElement, QuotientAlgebra};
use super::KringError;

/// A subspace of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub echelon: Echelon,
}

impl Subspace {
    pub fn from_elements(alg: &QuotientAlgebra, elems: &[AlgebraElement]) -> Self {
        Self { echelon: Echelon::from_rows(alg.p(), alg.dim(), elems.iter().map(|e| e.coords.clone())) }
    }

    pub fn whole(alg: &QuotientAlgebra) -> Self {
        Self::from_elements(alg, &(0..alg.dim()).map(|i| alg.basis_element(i)).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.echelon.dim()
    }

    pub fn basis(&self) -> Vec<AlgebraElement> {
        self.echelon.rows.iter().map(|r| AlgebraElement { coords: r.clone() }).collect()
    }

    pub fn contains(&self, a: &AlgebraElement) -> bool {
        self.echelon.contains(&a.coords)
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.echelon.same_span(&other.echelon)
    }

    pub fn is_ideal(&self, alg: &QuotientAlgebra) -> bool {
        let gens: Vec<AlgebraElement> = (1..=alg.d).map(|i| alg.generator(i)).collect();
        self.basis().iter().all(|b| gens.iter().all(|g| self.contains(&alg.mul(g, b))))
    }
}

/// The ideal generated by a list of elements.
pub fn ideal_generated(alg: &QuotientAlgebra, gens: &[AlgebraElement]) -> Subspace {
    let mut rows = Vec::new();
    for g in gens {
        for j in 0..alg.dim() {
            rows.push(alg.mul(g, &alg.basis_element(j)));
        }
    }
    Subspace::from_elements(alg, &rows)
}

/// The product ideal `I J`.
pub fn product(alg: &QuotientAlgebra, a: &Subspace, b: &Subspace) -> Subspace {
    let mut rows = Vec::new();
    for x in a.basis() {
        for y in b.basis() {
            rows.push(alg.mul(&x, &y));
        }
    }
    Subspace::from_elements(alg, &rows)
}

/// `{ y : s y = 0 for all s in S }`.
pub fn annihilator(alg: &QuotientAlgebra, s: &[AlgebraElement]) -> Subspace {
    let dim = alg.dim();
    if s.is_empty() {
        return Subspace::whole(alg);
    }
    let columns: Vec<Vec<u64>> = (0..dim)
        .map(|j| {
            let b = alg.basis_element(j);
            s.iter().flat_map(|x| alg.mul(x, &b).coords).collect()
        })
        .collect();
    let ker = kernel(alg.p(), &columns, dim * s.len());
    Subspace::from_elements(alg, &ker.into_iter().map(|coords| AlgebraElement { coords }).collect::<Vec<_>>())
}

pub fn annihilator_of(alg: &QuotientAlgebra, x: &Subspace) -> Subspace {
    annihilator(alg, &x.basis())
}

/// The maximal ideal `(c_1, .., c_d)`.
pub fn maximal_ideal(alg: &QuotientAlgebra) -> Subspace {
    let gens: Vec<AlgebraElement> = (1..=alg.d).map(|i| alg.generator(i)).collect();
    ideal_generated(alg, &gens)
}

/// The annihilator of the maximal ideal, required to be one-dimensional.
pub fn socle(alg: &QuotientAlgebra) -> Result<Subspace, KringError> {
    let gens: Vec<AlgebraElement> = (1..=alg.d).map(|i| alg.generator(i)).collect();
    let soc = annihilator(alg, &gens);
    if soc.dim() != 1 {
        return Err(KringError::NotFrobenius { socle_dim: soc.dim() });
    }
    Ok(soc)
}

/// The scalar `lambda` with `w = lambda v`, if there is one.
pub fn unit_multiple(alg: &QuotientAlgebra, v: &AlgebraElement, w: &AlgebraElement) -> Option<u64> {
    unit_ratio(alg.p(), &v.coords, &w.coords)
}

/// Kernel of a linear map given by the images of the basis elements.
pub fn kernel_of_map(alg: &QuotientAlgebra, images: &[Vec<u64>], target_dim: usize) -> Subspace {
    let ker = kernel(alg.p(), images, target_dim);
    Subspace::from_elements(alg, &ker.into_iter().map(|coords| AlgebraElement { coords }).collect::<Vec<_>>())
}
