//! Run the pages until they stabilise and compare the stable dimensions
//! with the Poincare series.

use serde::Serialize;

use crate::numerics::{poincare_series, ChromaticParams};

use super::homology::{homology_vs_next_page, HomologyReport};
use super::page::{Bounds, PageIndex, SSPage, Tridegree};
use super::SsError;

#[derive(Clone, Debug, Serialize)]
pub struct GroupoidTotal {
    pub groupoid: u64,
    pub total_dim: usize,
    pub ps_coefficient: String,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub params: ChromaticParams,
    pub bounds: Bounds,
    /// One comparison per page `k` with `p^k <= G`.
    pub pages: Vec<HomologyReport>,
    /// First page with `p^k > G`.
    pub stable_page: u32,
    pub stable_equals_infinity: bool,
    pub stable_mismatches: Vec<Tridegree>,
    /// Totals of `S[inf]` over all internal degrees.
    pub totals: Vec<GroupoidTotal>,
}

impl ConvergenceReport {
    pub fn all_ok(&self) -> bool {
        self.pages.iter().all(HomologyReport::all_ok)
            && self.stable_equals_infinity
            && self.totals.iter().all(|t| t.matches)
    }
}

/// Iterate `H(S[k]) = S[k+1]` up to the first `k` with `p^k > G`, then
/// compare that page with `S[inf]` and the stable totals with the
/// Poincare series coefficients.
pub fn em_convergence(params: &ChromaticParams, bounds: Bounds) -> Result<ConvergenceReport, SsError> {
    let mut pages = Vec::new();
    let mut k = 0u32;
    while (params.p as u128).pow(k) <= bounds.groupoid as u128 {
        pages.push(homology_vs_next_page(params, k, bounds)?);
        k += 1;
    }
    let stable = SSPage::new(params, PageIndex::Finite(k), bounds)?;
    let infinity = SSPage::new(params, PageIndex::Infinity, bounds)?;
    let mut keys: Vec<(u64, u64)> = stable.basis.keys().chain(infinity.basis.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    let stable_mismatches: Vec<Tridegree> = keys
        .into_iter()
        .filter(|key| stable.basis.get(key).map_or(0, Vec::len) != infinity.basis.get(key).map_or(0, Vec::len))
        .map(|(t, g)| Tridegree { internal: t as i64, bott: 0, groupoid: g })
        .collect();

    let all = SSPage::new(params, PageIndex::Infinity, Bounds { internal: u64::MAX / 4, groupoid: bounds.groupoid })?;
    let ps = poincare_series(params, bounds.groupoid as usize);
    let totals = (0..=bounds.groupoid)
        .map(|g| {
            let total_dim: usize = all.basis.iter().filter(|((_, h), _)| *h == g).map(|(_, v)| v.len()).sum();
            let coeff = &ps[g as usize];
            GroupoidTotal {
                groupoid: g,
                total_dim,
                ps_coefficient: coeff.to_string(),
                matches: coeff.to_string() == total_dim.to_string(),
            }
        })
        .collect();
    Ok(ConvergenceReport {
        params: *params,
        bounds,
        pages,
        stable_page: k,
        stable_equals_infinity: stable_mismatches.is_empty(),
        stable_mismatches,
        totals,
    })
}
