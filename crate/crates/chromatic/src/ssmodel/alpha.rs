//! The operation `alpha_k(a) = theta_k^{-1}[a^{p-1} delta_k a]` on even
//! elements of `S[k]`.

use serde::Serialize;

use crate::numerics::ChromaticParams;

use super::homology::Theta;
use super::mono::SPoly;
use super::page::{Bounds, GenKind, PageIndex, PageTable, SSPage};
use super::SsError;

#[derive(Clone, Debug, Serialize)]
pub struct AlphaGeneratorCheck {
    pub generator: String,
    pub expected: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaAdditivityCheck {
    pub a: String,
    pub b: String,
    /// `alpha(a+b) - alpha(a) - alpha(b)` is `delta` of the explicit witness.
    pub witness_ok: bool,
    /// The same difference is a boundary by linear algebra.
    pub boundary_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaReport {
    pub k: u32,
    pub generators: Vec<AlphaGeneratorCheck>,
    pub additivity: Vec<AlphaAdditivityCheck>,
    pub p_power_vanishes: bool,
}

impl AlphaReport {
    pub fn all_ok(&self) -> bool {
        self.p_power_vanishes
            && self.generators.iter().all(|g| g.ok)
            && self.additivity.iter().all(|a| a.witness_ok && a.boundary_ok)
    }
}

/// The cycle `a^{p-1} delta(a)` representing `theta(alpha(a))`.
pub fn alpha_representative(page: &SSPage, a: &SPoly) -> SPoly {
    let p = page.p();
    a.pow(p as u32 - 1, p).mul(&page.delta(a), p)
}

/// `sum_{0<j<p} (binom(p, j) / p) a^j b^{p-j}`, whose boundary is the
/// additivity defect of `alpha`.
pub fn additivity_witness(a: &SPoly, b: &SPoly, p: u64) -> SPoly {
    let mut out = SPoly::zero();
    let mut binom = 1u128;
    for j in 1..p {
        binom = binom * (p - j + 1) as u128 / j as u128;
        let c = ((binom / p as u128) % p as u128) as u64;
        out = out.add(&a.pow(j as u32, p).mul(&b.pow((p - j) as u32, p), p).scale(c, p), p);
    }
    out
}

pub fn additivity_check(page: &SSPage, a: &SPoly, b: &SPoly) -> AlphaAdditivityCheck {
    let p = page.p();
    let sum = a.add(b, p);
    let defect = alpha_representative(page, &sum)
        .sub(&alpha_representative(page, a), p)
        .sub(&alpha_representative(page, b), p);
    let witness = additivity_witness(a, b, p);
    AlphaAdditivityCheck {
        a: page.format(a),
        b: page.format(b),
        witness_ok: page.delta(&witness) == defect,
        boundary_ok: page.is_boundary(&defect),
    }
}

/// Check `alpha_k` on the generators `b_{k,i}` for `Nbar_{k-1} <= i <= imax`,
/// additivity on all pairs of them, and vanishing on a `p`th power.
pub fn alpha_check(params: &ChromaticParams, k: u32, imax: u64) -> Result<AlphaReport, SsError> {
    let tab = PageTable::new(params, k + 1)?;
    let p = params.p;
    let (pk, pk1) = (tab.p_pow(k as u64)?, tab.p_pow(k as u64 + 1)?);
    let (nbar, nstar1) = (tab.nbar(k)?, tab.nstar(k + 1)?);
    let imax = imax.max(nbar + 1);
    // a^p for a of internal degree up to 2 p^k (2 imax + 1) stays in range
    let bounds = Bounds { internal: 2 * p * pk * (2 * imax + 1), groupoid: p * pk };
    let page = SSPage::generators_only(params, PageIndex::Finite(k), bounds)?;
    let next = SSPage::generators_only(params, PageIndex::Finite(k + 1), Bounds { internal: bounds.internal, groupoid: pk1 })?;
    let theta = Theta::new(&next, &page)?;

    let lo = tab.nbar_prev(k)?;
    let mut generators = Vec::new();
    for i in lo..=imax {
        let a = page.generator(GenKind::B { m: k, i })?;
        let rep = alpha_representative(&page, &a);
        let (expected_name, expected) = if i < nbar {
            ("0".to_string(), SPoly::zero())
        } else {
            let e = next.generator(GenKind::E { k: k + 1, i: i - nbar + nstar1 })?;
            (next.format(&e), theta.apply(&e))
        };
        let diff = rep.sub(&expected, p);
        let ok = page.delta(&rep).is_zero() && page.is_boundary(&diff);
        generators.push(AlphaGeneratorCheck { generator: page.format(&a), expected: expected_name, ok });
    }

    let mut additivity = Vec::new();
    let candidates: Vec<SPoly> =
        (lo..=imax).map(|i| page.generator(GenKind::B { m: k, i })).collect::<Result<_, _>>()?;
    for (x, a) in candidates.iter().enumerate() {
        for b in &candidates[x + 1..] {
            additivity.push(additivity_check(&page, a, b));
        }
    }
    let mixed = candidates[0].scale(2 % p, p).add(&candidates[candidates.len() - 1], p);
    additivity.push(additivity_check(&page, &mixed, &candidates[1]));

    let x = page.generator(GenKind::B { m: k, i: nbar })?;
    let p_power_vanishes = alpha_representative(&page, &x.pow(p as u32, p)).is_zero();
    Ok(AlphaReport { k, generators, additivity, p_power_vanishes })
}
