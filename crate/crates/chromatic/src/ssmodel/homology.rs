//! Homology of `(S[k], delta_k)` against the next page, and the comparison
//! map `theta_k: S[k+1] -> H(S[k])`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::linalg::Echelon;
use crate::numerics::ChromaticParams;

use super::mono::{Mono, SPoly};
use super::page::{Bounds, GenKind, PageIndex, PageTable, SSPage, Tridegree};
use super::SsError;

#[derive(Clone, Debug, Serialize)]
pub struct TridegreeComparison {
    pub tridegree: Tridegree,
    pub page_dim: usize,
    pub homology_dim: usize,
    pub next_page_dim: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ThetaReport {
    pub images_checked: usize,
    pub all_cycles: bool,
    pub independent: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub params: ChromaticParams,
    pub k: u32,
    pub bounds: Bounds,
    pub delta_squared_checked: usize,
    pub entries: Vec<TridegreeComparison>,
    pub theta: ThetaReport,
}

impl HomologyReport {
    pub fn dims_agree(&self) -> bool {
        self.entries.iter().all(|e| e.agree)
    }

    pub fn mismatches(&self) -> Vec<&TridegreeComparison> {
        self.entries.iter().filter(|e| !e.agree).collect()
    }

    pub fn all_ok(&self) -> bool {
        self.dims_agree() && self.theta.all_cycles && self.theta.independent
    }
}

/// The ring map `theta_k` on generators of `S[k+1]`, valued in `S[k]`.
pub struct Theta<'a> {
    pub source: &'a SSPage,
    pub target: &'a SSPage,
    images: HashMap<u32, SPoly>,
}

impl<'a> Theta<'a> {
    pub fn new(source: &'a SSPage, target: &'a SSPage) -> Result<Self, SsError> {
        let PageIndex::Finite(k1) = source.index else {
            return Err(SsError::OutOfRange("theta needs a finite page".into()));
        };
        if k1 == 0 || target.index != PageIndex::Finite(k1 - 1) {
            return Err(SsError::OutOfRange("theta maps S[k+1] to S[k]".into()));
        }
        let k = k1 - 1;
        let tab = PageTable::new(&source.params, k1)?;
        let (nbar, nstar, nstar1) = (tab.nbar(k)?, tab.nstar(k)?, tab.nstar(k1)?);
        let p = source.p();
        let mut images = HashMap::new();
        for (id, gen) in source.gens.iter().enumerate() {
            let image = match gen.kind {
                GenKind::B { m, i } if m <= k => target.generator(GenKind::B { m, i })?,
                GenKind::B { i, .. } => target.generator(GenKind::B { m: k, i })?.pow(p as u32, p),
                GenKind::E { i, .. } => {
                    let j = i - nstar1;
                    let b = target.generator(GenKind::B { m: k, i: j + nbar })?;
                    let e = target.generator(GenKind::E { k, i: j + nstar })?;
                    b.pow(p as u32 - 1, p).mul(&e, p)
                }
            };
            images.insert(id as u32, image);
        }
        Ok(Self { source, target, images })
    }

    pub fn apply_mono(&self, m: &Mono) -> SPoly {
        let p = self.source.p();
        let mut out = SPoly::one(p);
        for &(id, e) in &m.b {
            out = out.mul(&self.images[&id].pow(e, p), p);
        }
        for id in &m.e {
            out = out.mul(&self.images[id], p);
        }
        out
    }

    pub fn apply(&self, f: &SPoly) -> SPoly {
        let p = self.source.p();
        let mut out = SPoly::zero();
        for (m, &c) in &f.terms {
            out = out.add(&self.apply_mono(m).scale(c, p), p);
        }
        out
    }
}

/// Per-block ranks of `delta` out of each internal degree, and whether
/// `delta^2` vanishes on the block.
fn block_ranks(page: &SSPage, members: &[Mono]) -> (HashMap<u64, usize>, bool) {
    let p = page.p();
    let index: HashMap<&Mono, usize> = members.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let rows: Vec<Vec<(usize, u64)>> = members
        .iter()
        .map(|m| page.delta_mono(m).terms.iter().map(|(n, c)| (index[n], *c)).collect())
        .collect();
    let mut square_zero = true;
    for row in &rows {
        let mut acc = vec![0u64; members.len()];
        for &(j, c) in row {
            for &(l, d) in &rows[j] {
                acc[l] = (acc[l] + c * d) % p;
            }
        }
        square_zero &= acc.iter().all(|&x| x == 0);
    }
    let mut by_degree: BTreeMap<u64, Echelon> = BTreeMap::new();
    for (m, row) in members.iter().zip(&rows) {
        if row.is_empty() {
            continue;
        }
        let mut dense = vec![0u64; members.len()];
        for &(j, c) in row {
            dense[j] = c;
        }
        by_degree.entry(page.degree(m).0).or_insert_with(|| Echelon::new(p, members.len())).insert(dense);
    }
    (by_degree.into_iter().map(|(t, e)| (t, e.dim())).collect(), square_zero)
}

/// Compare `H(S[k], delta_k)` with `S[k+1]` in internal degrees up to
/// `bounds.internal` and groupoid degrees up to `bounds.groupoid`.
pub fn homology_vs_next_page(params: &ChromaticParams, k: u32, bounds: Bounds) -> Result<HomologyReport, SsError> {
    let tab = PageTable::new(params, k + 1)?;
    let up = 2 * tab.exponent(k)? - 1;
    let wide = Bounds { internal: bounds.internal + up, groupoid: bounds.groupoid };
    let page = SSPage::new(params, PageIndex::Finite(k), wide)?;
    let next = SSPage::new(params, PageIndex::Finite(k + 1), bounds)?;
    let mut delta_squared_checked = 0;
    let mut homology: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    for (&(_, g), list) in &page.basis {
        for lowest in list.iter().filter(|m| page.is_block_lowest(m)) {
            let members: Vec<Mono> = page
                .block_members(&page.block_key(lowest))
                .into_iter()
                .filter(|m| page.degree(m).0 <= wide.internal)
                .collect();
            let (ranks, square_zero) = block_ranks(&page, &members);
            if !square_zero {
                return Err(SsError::DeltaSquared(page.format_mono(lowest)));
            }
            delta_squared_checked += members.len();
            add_block_homology(&page, &members, &ranks, g, bounds.internal, up, &mut homology);
        }
    }

    let mut keys: Vec<(u64, u64)> = page.basis.keys().filter(|(t, _)| *t <= bounds.internal).copied().collect();
    keys.extend(next.basis.keys().copied());
    keys.sort();
    keys.dedup();
    let entries = keys
        .into_iter()
        .map(|(t, g)| {
            let homology_dim = homology.get(&(t, g)).copied().unwrap_or(0);
            let next_page_dim = next.basis.get(&(t, g)).map_or(0, Vec::len);
            TridegreeComparison {
                tridegree: Tridegree { internal: t as i64, bott: 0, groupoid: g },
                page_dim: page.basis.get(&(t, g)).map_or(0, Vec::len),
                homology_dim,
                next_page_dim,
                agree: homology_dim == next_page_dim,
            }
        })
        .collect();

    let theta = check_theta(&page, &next)?;
    Ok(HomologyReport { params: *params, k, bounds, delta_squared_checked, entries, theta })
}

fn add_block_homology(
    page: &SSPage,
    members: &[Mono],
    ranks: &HashMap<u64, usize>,
    g: u64,
    top: u64,
    up: u64,
    homology: &mut BTreeMap<(u64, u64), usize>,
) {
    let mut count: BTreeMap<u64, usize> = BTreeMap::new();
    for m in members {
        *count.entry(page.degree(m).0).or_default() += 1;
    }
    for (&t, &n) in &count {
        if t > top {
            continue;
        }
        let h = n - ranks.get(&t).copied().unwrap_or(0) - ranks.get(&(t + up)).copied().unwrap_or(0);
        *homology.entry((t, g)).or_default() += h;
    }
}

/// Images of all monomials of `next` under `theta` are cycles, and per
/// block they stay independent modulo boundaries.
fn check_theta(page: &SSPage, next: &SSPage) -> Result<ThetaReport, SsError> {
    let p = page.p();
    let theta = Theta::new(next, page)?;
    let mut report = ThetaReport { all_cycles: true, independent: true, ..Default::default() };
    let mut per_block: HashMap<Mono, Vec<(String, SPoly)>> = HashMap::new();
    for list in next.basis.values() {
        for m in list {
            let img = theta.apply_mono(m);
            report.images_checked += 1;
            if img.is_zero() || !page.delta(&img).is_zero() {
                report.all_cycles = false;
                report.failures.push(format!("theta({}) is not a nonzero cycle", next.format_mono(m)));
                continue;
            }
            let lead = img.terms.keys().next().expect("nonzero");
            per_block.entry(page.block_key(lead)).or_default().push((next.format_mono(m), img));
        }
    }
    for (key, images) in per_block {
        let members = page.block_members(&key);
        let index: HashMap<&Mono, usize> = members.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ech = Echelon::new(p, members.len());
        for m in &members {
            let img = page.delta_mono(m);
            if img.is_zero() {
                continue;
            }
            let mut row = vec![0u64; members.len()];
            for (n, c) in &img.terms {
                row[index[n]] = *c;
            }
            ech.insert(row);
        }
        for (name, img) in images {
            let mut row = vec![0u64; members.len()];
            for (n, c) in &img.terms {
                match index.get(n) {
                    Some(&i) => row[i] = *c,
                    None => return Err(SsError::OutOfRange(format!("theta({name}) leaves its block"))),
                }
            }
            if !ech.insert(row) {
                report.independent = false;
                report.failures.push(format!("theta({name}) is dependent modulo boundaries"));
            }
        }
    }
    Ok(report)
}
