use std::collections::HashMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::charpoly::{charpoly, det};
use crate::algebra::linalg::Echelon;
use crate::algebra::{grlex_cmp, monomials_up_to, CoeffRing, Monomial, MultiPoly, PolyRing, PrimeField};
use crate::fgl::{FglContext, FglMode};
use crate::numerics::{poincare_series, ChromaticParams};

use super::quotient::{QuotientAlgebra, Reducer};
use super::KringError;

pub type CRing = PolyRing<PrimeField>;
pub type CPoly = MultiPoly<u64>;

/// Limits for the saturation loop.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_bound: u32,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_bound: 200, deadline: None }
    }
}

impl Budget {
    fn exhausted(&self, bound: u32) -> bool {
        bound > self.max_bound || self.deadline.is_some_and(|t| Instant::now() > t)
    }
}

/// The polynomial ring `F_p[c_1 .. c_d]` with `w(c_i) = i`, truncated above `bound`.
pub fn c_ring(p: u64, d: usize, bound: u32) -> Result<CRing, KringError> {
    let names = (1..=d).map(|i| format!("c{i}")).collect();
    let weights = (1..=d as u32).collect();
    Ok(PolyRing::new(PrimeField::new(p), names, weights, Some(bound))?)
}

/// Arithmetic in `R[T]/f(T)` with `f(T) = T^d + c_1 T^{d-1} + .. + c_d`
/// over the truncated polynomial ring `R`, elements stored as the
/// coefficients of `1, T, .., T^{d-1}`.
pub struct TowerRing {
    pub ring: CRing,
    pub d: usize,
}

impl TowerRing {
    pub fn new(ring: CRing) -> Self {
        let d = ring.nvars();
        Self { ring, d }
    }

    /// `T^0, T^1, .., T^{count-1}` reduced modulo `f`.
    pub fn powers_of_t(&self, count: usize) -> Vec<Vec<CPoly>> {
        let r = &self.ring;
        let d = self.d;
        let mut out = Vec::with_capacity(count);
        let mut cur = vec![r.zero(); d];
        cur[0] = r.one();
        for _ in 0..count {
            out.push(cur.clone());
            let top = cur[d - 1].clone();
            let mut next = vec![r.zero(); d];
            next[1..d].clone_from_slice(&cur[..(d - 1)]);
            if !top.is_empty() {
                for k in 1..=d {
                    let ck = r.var(k - 1);
                    next[d - k] = r.sub(&next[d - k], &r.mul(&ck, &top));
                }
            }
            cur = next;
        }
        out
    }

    /// Matrix of multiplication by `g(T) = sum_m g_m T^m` on the basis `T^j`.
    pub fn multiplication_matrix(&self, g: &[u64]) -> Vec<Vec<CPoly>> {
        let r = &self.ring;
        let d = self.d;
        let pw = self.powers_of_t(g.len() + d);
        let mut mat = vec![vec![r.zero(); d]; d];
        for j in 0..d {
            for (m, &gm) in g.iter().enumerate() {
                if gm == 0 {
                    continue;
                }
                for (i, row) in mat.iter_mut().enumerate() {
                    let t = &pw[m + j][i];
                    if !t.is_empty() {
                        row[j] = r.add(&row[j], &r.scale(t, &gm));
                    }
                }
            }
        }
        mat
    }
}

/// `[q](x)` modulo `(p, u)` to the given order, as residues.
pub fn q_series_mod_p(params: &ChromaticParams, order: usize) -> Result<Vec<u64>, KringError> {
    let ctx = FglContext::new(params.p, params.n, order.max(2), FglMode::ModP)?;
    Ok(ctx.m_series(params.q as i64)?.series.coeffs().to_vec())
}

/// `phi^*(c_1) .. phi^*(c_d)`: coefficients of the characteristic polynomial
/// of multiplication by `[q](T)` on `R[T]/f(T)`.
pub fn adams_images(params: &ChromaticParams, ring: &CRing) -> Result<Vec<CPoly>, KringError> {
    let d = ring.nvars();
    if d == 0 {
        return Ok(Vec::new());
    }
    let bound = ring.bound.unwrap_or(0) as usize;
    let g = q_series_mod_p(params, bound + d + 1)?;
    let tower = TowerRing::new(ring.clone());
    let mat = tower.multiplication_matrix(&g);
    Ok(charpoly(ring, &mat).into_iter().skip(1).collect())
}

/// `prod_j <q>(x_j)` written in the `c_i`: the determinant of multiplication
/// by `[q](T)/T`.
pub fn fix_polynomial(params: &ChromaticParams, ring: &CRing) -> Result<CPoly, KringError> {
    let d = ring.nvars();
    if d == 0 {
        return Ok(ring.one());
    }
    let bound = ring.bound.unwrap_or(0) as usize;
    let g = q_series_mod_p(params, bound + d + 2)?;
    let angle = g[1..].to_vec();
    let tower = TowerRing::new(ring.clone());
    let mat = tower.multiplication_matrix(&angle);
    Ok(det(ring, &mat))
}

/// The relations `r_i = phi^*(c_i) - c_i`, truncated.
pub fn tanabe_relations(params: &ChromaticParams, ring: &CRing) -> Result<Vec<CPoly>, KringError> {
    let images = adams_images(params, ring)?;
    Ok(images.iter().enumerate().map(|(i, a)| ring.sub(a, &ring.var(i))).collect())
}

/// Outcome of the saturation protocol.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SaturationReport {
    pub bound: u32,
    /// Every monomial of weighted degree in `(B - d, B]` reduces to zero,
    /// which forces the truncated quotient to equal the true quotient.
    pub closed: bool,
    /// Dimension unchanged at the next bound.
    pub stable: bool,
    /// `c_i^{p^{n(k+r)}} = 0` for `p^k <= d < p^{k+1}`.
    pub nilpotent: bool,
    pub ps_coefficient: u64,
    pub ps_match: bool,
    /// Dimensions seen along the way, as `(bound, dim)`.
    pub history: Vec<(u32, usize)>,
}

impl SaturationReport {
    pub fn saturated(&self) -> bool {
        self.closed && self.stable && self.nilpotent && self.ps_match
    }
}

/// The Tanabe quotient truncated at weighted degree `bound`, without any
/// saturation check.
pub fn build_at_bound(params: &ChromaticParams, d: usize, bound: u32) -> Result<QuotientAlgebra, KringError> {
    let p = params.p;
    if d == 0 {
        return Ok(unit_algebra(params));
    }
    let ring = c_ring(p, d, bound)?;
    let rels = tanabe_relations(params, &ring)?;
    let weights = ring.weights.clone();
    let mut monomials = monomials_up_to(&weights, bound);
    monomials.reverse();
    let columns: HashMap<Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let ncols = monomials.len();
    let mut echelon = Echelon::new(p, ncols);
    for rel in &rels {
        let Some(low) = rel.low_degree(&weights) else { continue };
        let mut terms: Vec<(Monomial, u64)> = rel.terms.iter().map(|(m, c)| (*m, *c)).collect();
        terms.sort_by(|a, b| grlex_cmp(&b.0, &a.0, &weights));
        for m in monomials.iter().rev() {
            if m.weighted_degree(&weights) + low > bound {
                continue;
            }
            let mut row = vec![0u64; ncols];
            for (t, c) in &terms {
                let mm = m.mul(t);
                if mm.weighted_degree(&weights) <= bound {
                    let col = columns[&mm];
                    row[col] = (row[col] + c) % p;
                }
            }
            echelon.insert(row);
        }
    }
    echelon.finish();
    let mut basis: Vec<Monomial> = echelon.free_columns().into_iter().map(|c| monomials[c]).collect();
    basis.reverse();
    Ok(QuotientAlgebra::assemble(
        *params,
        d,
        ring.names.clone(),
        weights,
        basis,
        Reducer::Linear { bound, columns, monomials, echelon },
    ))
}

pub fn unit_algebra(params: &ChromaticParams) -> QuotientAlgebra {
    QuotientAlgebra::assemble(*params, 0, Vec::new(), Vec::new(), vec![Monomial::one()], Reducer::Truncated {
        exponent_bound: 0,
    })
}

/// Whether every monomial of weighted degree in `(bound - d, bound]` is zero.
pub fn top_degrees_vanish(alg: &QuotientAlgebra) -> bool {
    let Some(bound) = alg.bound() else { return true };
    let lo = bound.saturating_sub(alg.d as u32) + 1;
    monomials_up_to(&alg.weights, bound)
        .iter()
        .filter(|m| alg.weighted_degree(m) >= lo)
        .all(|m| alg.nf_monomial(m).is_empty())
}

/// The exponent `p^{n(k+r)}` with `p^k <= d < p^{k+1}`.
pub fn nilpotency_bound(params: &ChromaticParams, d: usize) -> u64 {
    params.p.pow(params.n * (params.level_of(d as u64) + params.r))
}

pub fn ps_coefficient(params: &ChromaticParams, d: usize) -> u64 {
    let ps = poincare_series(params, d);
    u64::try_from(&ps[d]).unwrap_or(u64::MAX)
}

/// Starting bound for the saturation search.
pub fn initial_bound(params: &ChromaticParams, d: usize) -> u32 {
    (params.p.pow(params.n * params.r) as u32 + d as u32).saturating_sub(1).max(d as u32)
}

/// Raise the bound until the truncated quotient is provably the full
/// quotient, then confirm stability, nilpotency and the dimension count.
/// A budget stop returns the last algebra with `closed = false`.
pub fn saturate(
    params: &ChromaticParams,
    d: usize,
    start: Option<u32>,
    budget: Budget,
) -> Result<(QuotientAlgebra, SaturationReport), KringError> {
    let ps = ps_coefficient(params, d);
    if d == 0 {
        let alg = unit_algebra(params);
        let report = SaturationReport {
            bound: 0,
            closed: true,
            stable: true,
            nilpotent: true,
            ps_coefficient: ps,
            ps_match: ps == 1,
            history: vec![(0, 1)],
        };
        return Ok((alg, report));
    }
    let mut bound = start.unwrap_or_else(|| initial_bound(params, d));
    let mut history = Vec::new();
    loop {
        let alg = build_at_bound(params, d, bound)?;
        history.push((bound, alg.dim()));
        let closed = top_degrees_vanish(&alg);
        if closed || budget.exhausted(bound + 1) {
            let stable = if closed {
                let next = build_at_bound(params, d, bound + 1)?;
                history.push((bound + 1, next.dim()));
                next.dim() == alg.dim()
            } else {
                false
            };
            let e = nilpotency_bound(params, d);
            let nilpotent = (1..=d).all(|i| alg.pow(&alg.generator(i), e).is_zero());
            let report = SaturationReport {
                bound,
                closed,
                stable,
                nilpotent,
                ps_coefficient: ps,
                ps_match: alg.dim() as u64 == ps,
                history,
            };
            return Ok((alg, report));
        }
        bound += 1;
    }
}

/// Build and saturate, failing if the budget runs out or a check fails.
pub fn build_gl_ring(params: &ChromaticParams, d: usize, budget: Budget) -> Result<QuotientAlgebra, KringError> {
    let (alg, report) = saturate(params, d, None, budget)?;
    if !report.closed {
        return Err(KringError::Unsaturated { bound: report.bound, dim: alg.dim() });
    }
    if !report.saturated() {
        return Err(KringError::SaturationCheck(Box::new(report)));
    }
    Ok(alg)
}

/// Images `phi^*(c_i)` and the class `fix` as algebra elements.
pub fn adams_and_fix(alg: &QuotientAlgebra) -> Result<(Vec<super::AlgebraElement>, super::AlgebraElement), KringError> {
    let params = alg.params;
    if alg.d == 0 {
        return Ok((Vec::new(), alg.one()));
    }
    let bound = alg.bound().ok_or_else(|| KringError::Structure("needs a relation bound".into()))?;
    let ring = c_ring(params.p, alg.d, bound)?;
    let images = adams_images(&params, &ring)?.iter().map(|f| alg.from_poly(f)).collect();
    let fix = alg.from_poly(&fix_polynomial(&params, &ring)?);
    Ok((images, fix))
}
