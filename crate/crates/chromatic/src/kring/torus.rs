use crate::algebra::{monomials_up_to, Monomial};
use crate::fgl::{FglContext, FglMode};
use crate::numerics::ChromaticParams;

use super::ideals::socle;
use super::quotient::{AlgebraElement, QuotientAlgebra, Reducer};
use super::KringError;

const MAX_TORUS_DIM: u128 = 4096;

/// `F_p[x_1 .. x_d]/([q-1](x_j))`, where `[q-1](x)` is a unit multiple of
/// `x^{p^{nr}}` modulo `p`.
pub fn build_torus_ring(params: &ChromaticParams, d: usize) -> Result<QuotientAlgebra, KringError> {
    let e = params.p.pow(params.n * params.r) as u32;
    let size = (e as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if size > MAX_TORUS_DIM {
        return Err(KringError::Infeasible(size));
    }
    let ctx = FglContext::new(params.p, params.n, e as usize + 1, FglMode::ModP)?;
    let w = ctx.m_series(params.q as i64 - 1)?.wdegree;
    if w != Some(e as usize) {
        return Err(KringError::Identity(format!("[q-1] has Weierstrass degree {w:?}, expected {e}")));
    }
    let weights = vec![1; d];
    let basis: Vec<Monomial> = monomials_up_to(&weights, d as u32 * (e - 1))
        .into_iter()
        .filter(|m| (0..d).all(|i| m.exp(i) < e))
        .collect();
    let names = (1..=d).map(|i| format!("x{i}")).collect();
    Ok(QuotientAlgebra::assemble(*params, d, names, weights, basis, Reducer::Truncated { exponent_bound: e }))
}

/// Restriction from the Tanabe quotient to the torus ring,
/// `c_k -> (-1)^k e_k(x_1 .. x_d)`.
pub struct Restriction<'a> {
    pub source: &'a QuotientAlgebra,
    pub target: &'a QuotientAlgebra,
    images: Vec<AlgebraElement>,
}

impl<'a> Restriction<'a> {
    pub fn new(source: &'a QuotientAlgebra, target: &'a QuotientAlgebra) -> Result<Self, KringError> {
        if source.d != target.d {
            return Err(KringError::Structure("rank mismatch".into()));
        }
        let d = source.d;
        let p = source.p();
        // prod_j (1 + x_j t) gives e_k as the t^k coefficient.
        let mut elem = vec![target.one()];
        for j in 1..=d {
            let x = target.generator(j);
            let mut next = elem.clone();
            next.push(target.zero());
            for k in 0..elem.len() {
                next[k + 1] = target.add(&next[k + 1], &target.mul(&elem[k], &x));
            }
            elem = next;
        }
        let images = (1..=d)
            .map(|k| if k % 2 == 1 { target.scale(&elem[k], p - 1) } else { elem[k].clone() })
            .collect();
        Ok(Self { source, target, images })
    }

    pub fn of_monomial(&self, m: &Monomial) -> AlgebraElement {
        let t = self.target;
        let mut out = t.one();
        for (i, img) in self.images.iter().enumerate() {
            let e = m.exp(i);
            if e > 0 {
                out = t.mul(&out, &t.pow(img, e as u64));
            }
        }
        out
    }

    pub fn apply(&self, a: &AlgebraElement) -> AlgebraElement {
        let t = self.target;
        let mut out = t.zero();
        for (i, &c) in a.coords.iter().enumerate() {
            if c != 0 {
                out = t.add(&out, &t.scale(&self.of_monomial(&self.source.basis[i]), c));
            }
        }
        out
    }

    /// Every monomial of the source maps compatibly with its normal form,
    /// and monomials beyond the relation bound map to zero.
    pub fn is_ring_map(&self) -> bool {
        let s = self.source;
        let Some(bound) = s.bound() else { return false };
        let tops_vanish = {
            let e = s.params.p.pow(s.params.n * s.params.r) as u32;
            bound + 1 > s.d as u32 * (e - 1)
        };
        tops_vanish
            && monomials_up_to(&s.weights, bound)
                .iter()
                .all(|m| self.apply(&s.from_monomial(m)) == self.of_monomial(m))
    }

    /// The image of the socle generator.
    pub fn socle_image(&self) -> Result<AlgebraElement, KringError> {
        let soc = socle(self.source)?;
        Ok(self.apply(&soc.basis()[0]))
    }
}
