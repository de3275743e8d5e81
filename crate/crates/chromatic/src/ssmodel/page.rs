//! The pages `S[k]` and `S[inf]`: generators, bounded monomial bases and
//! the differential with `u` collapsed to Bott degree zero.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::linalg::Echelon;
use crate::numerics::{ChromaticParams, NkTable};

use super::mono::{Mono, SPoly};
use super::SsError;

/// Hard cap on the number of stored monomials.
pub const MAX_MONOMIALS: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GenKind {
    B { m: u32, i: u64 },
    E { k: u32, i: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PageIndex {
    Finite(u32),
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub internal: u64,
    pub groupoid: u64,
}

/// `(internal, bott, groupoid)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Tridegree {
    pub internal: i64,
    pub bott: i64,
    pub groupoid: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SSGenerator {
    pub kind: GenKind,
    pub internal: u64,
    pub groupoid: u64,
}

impl SSGenerator {
    pub fn tridegree(&self) -> Tridegree {
        Tridegree { internal: self.internal as i64, bott: 0, groupoid: self.groupoid }
    }

    pub fn name(&self) -> String {
        match self.kind {
            GenKind::B { m, i } => format!("b_{{{m},{i}}}"),
            GenKind::E { k, i } => format!("e_{{{k},{i}}}"),
        }
    }
}

/// Indices shared by the pages of one parameter set.
#[derive(Clone, Debug)]
pub struct PageTable {
    pub params: ChromaticParams,
    pub table: NkTable,
}

impl PageTable {
    pub fn new(params: &ChromaticParams, kmax: u32) -> Result<Self, SsError> {
        Ok(Self { params: *params, table: NkTable::new(*params, kmax as usize + 1)? })
    }

    fn get(v: Option<u64>) -> Result<u64, SsError> {
        v.ok_or(SsError::TooLarge("N_k exceeds 64 bits".into()))
    }

    pub fn nbar(&self, k: u32) -> Result<u64, SsError> {
        Self::get(self.table.nbar_u64(k as usize))
    }

    /// `Nbar_{k-1}`, zero for `k = 0`.
    pub fn nbar_prev(&self, k: u32) -> Result<u64, SsError> {
        if k == 0 {
            Ok(0)
        } else {
            self.nbar(k - 1)
        }
    }

    pub fn nstar(&self, k: u32) -> Result<u64, SsError> {
        Self::get(self.table.nstar_u64(k as usize))
    }

    pub fn p_pow(&self, e: u64) -> Result<u64, SsError> {
        u32::try_from(e)
            .ok()
            .and_then(|e| self.params.p.checked_pow(e))
            .ok_or_else(|| SsError::TooLarge(format!("p^{e}")))
    }

    /// `E = p^{n(k+r)}`, the Bott shift of the page-`k` differential.
    pub fn exponent(&self, k: u32) -> Result<u64, SsError> {
        self.p_pow(self.params.n as u64 * (k as u64 + self.params.r as u64))
    }
}

#[derive(Clone, Debug)]
pub struct SSPage {
    pub params: ChromaticParams,
    pub index: PageIndex,
    pub bounds: Bounds,
    pub gens: Vec<SSGenerator>,
    lookup: HashMap<GenKind, u32>,
    /// Pair partners: `b` id to `e` id with `delta(b) = u^{E-1} e`.
    partner_of_b: HashMap<u32, u32>,
    partner_of_e: HashMap<u32, u32>,
    /// Monomial basis keyed by `(internal, groupoid)`.
    pub basis: BTreeMap<(u64, u64), Vec<Mono>>,
    /// `E` for finite pages, `0` for the infinite page.
    pub exponent: u64,
}

impl SSPage {
    /// Build `S[k]` (or `S[inf]`) restricted to the given bounds.
    pub fn new(params: &ChromaticParams, index: PageIndex, bounds: Bounds) -> Result<Self, SsError> {
        let mut page = Self::generators_only(params, index, bounds)?;
        page.enumerate()?;
        Ok(page)
    }

    /// The generator table and differential without a stored basis.
    pub fn generators_only(params: &ChromaticParams, index: PageIndex, bounds: Bounds) -> Result<Self, SsError> {
        let top = match index {
            PageIndex::Finite(k) => k,
            PageIndex::Infinity => {
                let mut m = 0u32;
                while (params.p as u128).pow(m + 1) <= bounds.groupoid as u128 {
                    m += 1;
                }
                m
            }
        };
        let tab = PageTable::new(params, top)?;
        let mut gens = Vec::new();
        let push = |gens: &mut Vec<SSGenerator>, kind: GenKind, internal: u64, groupoid: u64| {
            if internal <= bounds.internal && groupoid <= bounds.groupoid {
                gens.push(SSGenerator { kind, internal, groupoid });
            }
        };
        let families = match index {
            PageIndex::Finite(k) => k,
            PageIndex::Infinity => top + 1,
        };
        for m in 0..families {
            let pm = tab.p_pow(m as u64)?;
            for i in tab.nbar_prev(m)?..tab.nbar(m)? {
                push(&mut gens, GenKind::B { m, i }, 2 * pm * i, pm);
            }
        }
        let mut exponent = 0;
        if let PageIndex::Finite(k) = index {
            exponent = tab.exponent(k)?;
            let pk = tab.p_pow(k as u64)?;
            if pk <= bounds.groupoid {
                let mut i = tab.nbar_prev(k)?;
                while 2 * pk * i <= bounds.internal {
                    push(&mut gens, GenKind::B { m: k, i }, 2 * pk * i, pk);
                    i += 1;
                }
                let mut i = tab.nstar(k)?;
                while 2 * pk * i < bounds.internal {
                    push(&mut gens, GenKind::E { k, i }, 2 * pk * i + 1, pk);
                    i += 1;
                }
            }
        }
        let lookup: HashMap<GenKind, u32> = gens.iter().enumerate().map(|(id, g)| (g.kind, id as u32)).collect();
        let mut partner_of_b = HashMap::new();
        let mut partner_of_e = HashMap::new();
        if let PageIndex::Finite(k) = index {
            let (nbar, nstar) = (tab.nbar(k)?, tab.nstar(k)?);
            for (id, g) in gens.iter().enumerate() {
                if let GenKind::B { m, i } = g.kind {
                    if m == k && i >= nbar {
                        if let Some(&e) = lookup.get(&GenKind::E { k, i: i - nbar + nstar }) {
                            partner_of_b.insert(id as u32, e);
                            partner_of_e.insert(e, id as u32);
                        }
                    }
                }
            }
        }
        Ok(Self {
            params: *params,
            index,
            bounds,
            gens,
            lookup,
            partner_of_b,
            partner_of_e,
            basis: BTreeMap::new(),
            exponent,
        })
    }

    fn enumerate(&mut self) -> Result<(), SsError> {
        let mut out: BTreeMap<(u64, u64), Vec<Mono>> = BTreeMap::new();
        let mut count = 0usize;
        let mut current = Mono::one();
        self.dfs(0, self.bounds.internal, self.bounds.groupoid, &mut current, &mut out, &mut count)?;
        for list in out.values_mut() {
            list.sort();
        }
        self.basis = out;
        Ok(())
    }

    fn dfs(
        &self,
        from: usize,
        internal_left: u64,
        groupoid_left: u64,
        current: &mut Mono,
        out: &mut BTreeMap<(u64, u64), Vec<Mono>>,
        count: &mut usize,
    ) -> Result<(), SsError> {
        *count += 1;
        if *count > MAX_MONOMIALS {
            return Err(SsError::TooLarge(format!("more than {MAX_MONOMIALS} monomials")));
        }
        let t = self.bounds.internal - internal_left;
        let g = self.bounds.groupoid - groupoid_left;
        out.entry((t, g)).or_default().push(current.clone());
        for id in from..self.gens.len() {
            let gen = &self.gens[id];
            if gen.groupoid > groupoid_left || gen.internal > internal_left {
                continue;
            }
            match gen.kind {
                GenKind::B { .. } => {
                    let mut e = 1u64;
                    while e * gen.groupoid <= groupoid_left && e * gen.internal <= internal_left {
                        current.b.push((id as u32, e as u32));
                        self.dfs(
                            id + 1,
                            internal_left - e * gen.internal,
                            groupoid_left - e * gen.groupoid,
                            current,
                            out,
                            count,
                        )?;
                        current.b.pop();
                        e += 1;
                    }
                }
                GenKind::E { .. } => {
                    current.e.push(id as u32);
                    self.dfs(id + 1, internal_left - gen.internal, groupoid_left - gen.groupoid, current, out, count)?;
                    current.e.pop();
                }
            }
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.params.p
    }

    pub fn id_of(&self, kind: GenKind) -> Option<u32> {
        self.lookup.get(&kind).copied()
    }

    pub fn generator(&self, kind: GenKind) -> Result<SPoly, SsError> {
        let id = self.id_of(kind).ok_or_else(|| SsError::OutOfRange(format!("{kind:?}")))?;
        Ok(match kind {
            GenKind::B { .. } => SPoly::monomial(Mono::b_power(id, 1), 1, self.p()),
            GenKind::E { .. } => SPoly::monomial(Mono::e_gen(id), 1, self.p()),
        })
    }

    /// `b_{m,i}` for any `m` at least the family of `i`, written as a power
    /// of the listed generator.
    pub fn extended_b(&self, m: u32, i: u64) -> Result<SPoly, SsError> {
        if let Some(id) = self.id_of(GenKind::B { m, i }) {
            return Ok(SPoly::monomial(Mono::b_power(id, 1), 1, self.p()));
        }
        if m == 0 {
            return Err(SsError::OutOfRange(format!("b_{{0,{i}}}")));
        }
        let lower = self.extended_b(m - 1, i)?;
        Ok(lower.pow(self.p() as u32, self.p()))
    }

    pub fn degree(&self, m: &Mono) -> (u64, u64) {
        let mut t = 0;
        let mut g = 0;
        for &(id, e) in &m.b {
            t += self.gens[id as usize].internal * e as u64;
            g += self.gens[id as usize].groupoid * e as u64;
        }
        for &id in &m.e {
            t += self.gens[id as usize].internal;
            g += self.gens[id as usize].groupoid;
        }
        (t, g)
    }

    pub fn format_mono(&self, m: &Mono) -> String {
        if m.b.is_empty() && m.e.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for &(id, e) in &m.b {
            let name = self.gens[id as usize].name();
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
        }
        for &id in &m.e {
            parts.push(self.gens[id as usize].name());
        }
        parts.join(" ")
    }

    pub fn format(&self, f: &SPoly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        f.terms
            .iter()
            .map(|(m, c)| if *c == 1 { self.format_mono(m) } else { format!("{c} {}", self.format_mono(m)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Internal-degree shift of the differential, `1 - 2E`.
    pub fn internal_shift(&self) -> i64 {
        1 - 2 * self.exponent as i64
    }

    /// Tridegree of the differential with `u` kept explicit.
    pub fn differential_tridegree(&self) -> Tridegree {
        Tridegree { internal: self.internal_shift(), bott: 2 * self.exponent as i64 - 2, groupoid: 0 }
    }

    /// Differential of a monomial. `delta` is the derivation with
    /// `delta(b) = e` on pairs and zero on every other generator.
    pub fn delta_mono(&self, m: &Mono) -> SPoly {
        let p = self.p();
        let mut out = SPoly::zero();
        for (pos, &(id, exp)) in m.b.iter().enumerate() {
            let Some(&e) = self.partner_of_b.get(&id) else { continue };
            if m.has_e(e) || (exp as u64) % p == 0 {
                continue;
            }
            let mut b = m.b.clone();
            if exp == 1 {
                b.remove(pos);
            } else {
                b[pos].1 -= 1;
            }
            let slot = m.e.partition_point(|&x| x < e);
            let mut es = m.e.clone();
            es.insert(slot, e);
            let c = (exp as u64) % p;
            out.add_term(Mono { b, e: es }, if slot % 2 == 1 { p - c } else { c }, p);
        }
        out
    }

    pub fn delta(&self, f: &SPoly) -> SPoly {
        let p = self.p();
        let mut out = SPoly::zero();
        for (m, &c) in &f.terms {
            out = out.add(&self.delta_mono(m).scale(c, p), p);
        }
        out
    }

    /// Block key: every paired `e` is traded for its `b`. The differential
    /// preserves it, so blocks split every computation.
    pub fn block_key(&self, m: &Mono) -> Mono {
        let mut key = Mono { b: m.b.clone(), e: Vec::new() };
        for &id in &m.e {
            match self.partner_of_e.get(&id) {
                Some(&b) => {
                    let (k, _) = key.mul(&Mono::b_power(b, 1)).expect("even factor");
                    key = k;
                }
                None => key.e.push(id),
            }
        }
        key
    }

    /// Whether `m` has the lowest internal degree in its block, i.e. every
    /// paired `b` in it comes with its `e`.
    pub fn is_block_lowest(&self, m: &Mono) -> bool {
        m.b.iter().all(|(id, _)| self.partner_of_b.get(id).is_none_or(|e| m.has_e(*e)))
    }

    /// All monomials sharing a block key.
    pub fn block_members(&self, key: &Mono) -> Vec<Mono> {
        let mut members = vec![Mono { b: Vec::new(), e: key.e.clone() }];
        for &(id, exp) in &key.b {
            let mut next = Vec::with_capacity(members.len() * 2);
            for m in &members {
                let (plain, _) = m.mul(&Mono::b_power(id, exp)).expect("even factor");
                next.push(plain);
                if let Some(&e) = self.partner_of_b.get(&id) {
                    if let Some((with_e, _)) = m.mul(&Mono::b_power(id, exp - 1)).and_then(|(x, _)| x.mul(&Mono::e_gen(e))) {
                        next.push(with_e);
                    }
                }
            }
            members = next;
        }
        members.sort();
        members
    }

    /// Dense differential matrix from the `(t, g)` piece to
    /// `(t + 1 - 2E, g)`; row `j` is the image of the `j`th source monomial.
    pub fn differential_matrix(&self, t: u64, g: u64) -> Vec<Vec<u64>> {
        let empty = Vec::new();
        let source = self.basis.get(&(t, g)).unwrap_or(&empty);
        let target_t = t as i64 + self.internal_shift();
        let target = if target_t >= 0 { self.basis.get(&(target_t as u64, g)).unwrap_or(&empty) } else { &empty };
        let index: HashMap<&Mono, usize> = target.iter().enumerate().map(|(i, m)| (m, i)).collect();
        source
            .iter()
            .map(|m| {
                let mut row = vec![0u64; target.len()];
                for (n, c) in &self.delta_mono(m).terms {
                    row[index[n]] = *c;
                }
                row
            })
            .collect()
    }

    /// Hard check of `delta^2 = 0` on every stored monomial.
    pub fn check_delta_squared(&self) -> Result<usize, SsError> {
        let mut checked = 0;
        for list in self.basis.values() {
            for m in list {
                let dd = self.delta(&self.delta_mono(m));
                if !dd.is_zero() {
                    return Err(SsError::DeltaSquared(self.format_mono(m)));
                }
                checked += 1;
            }
        }
        Ok(checked)
    }

    /// Whether a homogeneous-by-parts element is a boundary. Works block by
    /// block, so it needs no stored basis.
    pub fn is_boundary(&self, f: &SPoly) -> bool {
        let p = self.p();
        let mut by_block: HashMap<(Mono, u64), Vec<(Mono, u64)>> = HashMap::new();
        for (m, &c) in &f.terms {
            by_block.entry((self.block_key(m), self.degree(m).0)).or_default().push((m.clone(), c));
        }
        let up = 2 * self.exponent - 1;
        for ((key, t), terms) in by_block {
            let members = self.block_members(&key);
            let index: HashMap<&Mono, usize> = members.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut ech = Echelon::new(p, members.len());
            for src in members.iter().filter(|m| self.degree(m).0 == t + up) {
                let mut row = vec![0u64; members.len()];
                for (n, c) in &self.delta_mono(src).terms {
                    row[index[n]] = *c;
                }
                ech.insert(row);
            }
            let mut v = vec![0u64; members.len()];
            for (m, c) in terms {
                v[index[&m]] = c;
            }
            if !ech.contains(&v) {
                return false;
            }
        }
        true
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    /// Dimensions per `(internal, groupoid)`.
    pub fn dims(&self) -> BTreeMap<(u64, u64), usize> {
        self.basis.iter().map(|(k, v)| (*k, v.len())).collect()
    }
}
