use std::collections::HashMap;

use super::poly::{Monomial, MultiPoly};
use super::ring::{CoeffRing, PolyRing};
use super::AlgebraError;

/// The elementary symmetric polynomials `e_0 .. e_d` in the variables of
/// `x_ring`.
pub fn elementary_polys<R: CoeffRing>(x_ring: &PolyRing<R>) -> Vec<MultiPoly<R::Elem>> {
    let d = x_ring.nvars();
    // Coefficients of prod_j (1 + x_j t), built one variable at a time.
    let mut e = vec![x_ring.one()];
    for j in 0..d {
        let xj = x_ring.var(j);
        let mut next = e.clone();
        next.push(x_ring.zero());
        for k in 1..next.len() {
            next[k] = x_ring.add(&next[k], &x_ring.mul(&e[k - 1], &xj));
        }
        e = next;
    }
    e
}

pub fn is_symmetric<R: CoeffRing>(x_ring: &PolyRing<R>, f: &MultiPoly<R::Elem>) -> bool {
    let d = x_ring.nvars();
    (0..d.saturating_sub(1)).all(|i| {
        f.terms.iter().all(|(m, c)| f.terms.get(&m.swap(i, i + 1)) == Some(c))
    })
}

/// Rewrite a symmetric polynomial in `x_1 .. x_d` as a polynomial in
/// `e_1 .. e_d`, by repeated subtraction of the grlex-leading term.
/// `e_ring` must have `d` variables of weights `1 .. d`.
pub fn express_in_elementary<R: CoeffRing>(
    x_ring: &PolyRing<R>,
    e_ring: &PolyRing<R>,
    f: &MultiPoly<R::Elem>,
) -> Result<MultiPoly<R::Elem>, AlgebraError> {
    let d = x_ring.nvars();
    if e_ring.nvars() != d || e_ring.weights != (1..=d as u32).collect::<Vec<_>>() {
        return Err(AlgebraError::Shape("e-ring must have weights 1..d".into()));
    }
    if !is_symmetric(x_ring, f) {
        return Err(AlgebraError::NotSymmetric);
    }
    let elem = elementary_polys(x_ring);
    let mut powers: HashMap<(usize, u32), MultiPoly<R::Elem>> = HashMap::new();
    let mut rem = f.clone();
    let mut out = e_ring.zero();
    while let Some((lead, c)) = rem.leading(&x_ring.weights) {
        let lam: Vec<u32> = (0..d).map(|j| lead.exp(j)).collect();
        if lam.windows(2).any(|w| w[0] < w[1]) {
            return Err(AlgebraError::NotSymmetric);
        }
        let a: Vec<u32> = (0..d).map(|j| lam[j] - lam.get(j + 1).copied().unwrap_or(0)).collect();
        let mut prod = x_ring.constant(c.clone());
        for (j, &aj) in a.iter().enumerate() {
            if aj == 0 {
                continue;
            }
            let pw = powers
                .entry((j, aj))
                .or_insert_with(|| {
                    let mut acc = x_ring.one();
                    for _ in 0..aj {
                        acc = x_ring.mul(&acc, &elem[j + 1]);
                    }
                    acc
                })
                .clone();
            prod = x_ring.mul(&prod, &pw);
        }
        let next = x_ring.sub(&rem, &prod);
        if next.terms.get(&lead).is_some() {
            return Err(AlgebraError::NotSymmetric);
        }
        rem = next;
        out = e_ring.add(&out, &e_ring.monomial(Monomial::from_exps(&a), c));
    }
    Ok(out)
}
