//! Generating series `b_k(s) = sum_i b_{ki} s^{p^k i}` and
//! `e_k(s) = sum_i e_{ki} s^{p^k i}`, and the identities they satisfy.

use serde::Serialize;

use crate::numerics::ChromaticParams;

use super::homology::Theta;
use super::mono::SPoly;
use super::page::{Bounds, GenKind, PageIndex, PageTable, SSPage};
use super::SsError;

/// Coefficients of `s^0 .. s^order`.
pub type SSeries = Vec<SPoly>;

pub fn series_mul(a: &SSeries, b: &SSeries, p: u64) -> SSeries {
    let n = a.len().min(b.len());
    let mut out = vec![SPoly::zero(); n];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y, p), p);
            }
        }
    }
    out
}

pub fn series_pow(a: &SSeries, e: u32, p: u64) -> SSeries {
    let mut out = vec![SPoly::zero(); a.len()];
    out[0] = SPoly::one(p);
    for _ in 0..e {
        out = series_mul(&out, a, p);
    }
    out
}

/// `b_k(s)` in `page = S[k]`, using extended generators below `Nbar_{k-1}`.
pub fn b_series(page: &SSPage, tab: &PageTable, k: u32, order: usize) -> Result<SSeries, SsError> {
    let pk = tab.p_pow(k as u64)? as usize;
    let mut out = vec![SPoly::zero(); order + 1];
    for i in 0..=order / pk {
        out[i * pk] = extended(page, tab, k, i as u64)?;
    }
    Ok(out)
}

fn extended(page: &SSPage, tab: &PageTable, k: u32, i: u64) -> Result<SPoly, SsError> {
    let family = tab.table.family_of(i).map(|m| m as u32);
    match family {
        Some(m) if m < k => page.extended_b(k, i),
        _ => page.generator(GenKind::B { m: k, i }),
    }
}

pub fn e_series(page: &SSPage, tab: &PageTable, k: u32, order: usize) -> Result<SSeries, SsError> {
    let pk = tab.p_pow(k as u64)? as usize;
    let mut out = vec![SPoly::zero(); order + 1];
    let mut i = tab.nstar(k)? as usize;
    while i * pk <= order {
        out[i * pk] = page.generator(GenKind::E { k, i: i as u64 })?;
        i += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesIdentityReport {
    pub k: u32,
    pub order: usize,
    /// `delta_k(b_k(s)) = s^E e_k(s)` with `u` collapsed.
    pub delta_identity: bool,
    /// `theta_k(b_{k+1}(s)) = b_k(s)^p`.
    pub theta_identity: bool,
    pub failures: Vec<usize>,
}

pub fn series_identities(params: &ChromaticParams, k: u32, order: usize) -> Result<SeriesIdentityReport, SsError> {
    let tab = PageTable::new(params, k + 1)?;
    let p = params.p;
    let pk1 = tab.p_pow(k as u64 + 1)?;
    let bounds = Bounds { internal: 2 * order as u64 + 1, groupoid: pk1 * order as u64 };
    let page = SSPage::generators_only(params, PageIndex::Finite(k), bounds)?;
    let next = SSPage::generators_only(params, PageIndex::Finite(k + 1), bounds)?;
    let e_big = tab.exponent(k)? as usize;
    let mut failures = Vec::new();

    let b = b_series(&page, &tab, k, order)?;
    let e = e_series(&page, &tab, k, order)?;
    let mut delta_identity = true;
    for (j, bj) in b.iter().enumerate() {
        let rhs = if j >= e_big { e[j - e_big].clone() } else { SPoly::zero() };
        if page.delta(bj) != rhs {
            delta_identity = false;
            failures.push(j);
        }
    }

    let theta = Theta::new(&next, &page)?;
    let b_next = b_series(&next, &tab, k + 1, order)?;
    let lhs: SSeries = b_next.iter().map(|x| theta.apply(x)).collect();
    let rhs = series_pow(&b, p as u32, p);
    let theta_identity = lhs == rhs;
    Ok(SeriesIdentityReport { k, order, delta_identity, theta_identity, failures })
}
