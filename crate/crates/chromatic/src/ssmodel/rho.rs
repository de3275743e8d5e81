//! Homology models `P[b_i] (x) E[e_i]` and the maps `rho_*` between levels,
//! given by `b(s) -> b(s)^{p^m}` and `e(s) -> b(s)^{p^m - 1} e(s)`.

use serde::Serialize;

use super::identities::{series_mul, series_pow, SSeries};
use super::mono::{Mono, SPoly};

/// The element `b_i` (or `e_i`) of a homology model.
pub fn b_gen(i: u32, p: u64) -> SPoly {
    SPoly::monomial(Mono::b_power(i, 1), 1, p)
}

pub fn e_gen(i: u32, p: u64) -> SPoly {
    SPoly::monomial(Mono::e_gen(i), 1, p)
}

fn generic_series(order: usize, p: u64, gen: fn(u32, u64) -> SPoly) -> SSeries {
    (0..=order).map(|i| gen(i as u32, p)).collect()
}

/// `rho_*` from level `n + m` to level `n`, on generators of index up to
/// `order`.
#[derive(Clone, Debug, Serialize)]
pub struct RhoMap {
    pub p: u64,
    pub level: u32,
    pub m: u32,
    pub order: usize,
    pub b_images: Vec<SPoly>,
    pub e_images: Vec<SPoly>,
}

impl RhoMap {
    pub fn new(p: u64, level: u32, m: u32, order: usize) -> Self {
        let b = generic_series(order, p, b_gen);
        let e = generic_series(order, p, e_gen);
        let pm = p.pow(m) as u32;
        let b_images = series_pow(&b, pm, p);
        let e_images = series_mul(&series_pow(&b, pm - 1, p), &e, p);
        Self { p, level, m, order, b_images, e_images }
    }

    pub fn apply_mono(&self, mono: &Mono) -> SPoly {
        let p = self.p;
        let mut out = SPoly::one(p);
        for &(i, exp) in &mono.b {
            out = out.mul(&self.b_images[i as usize].pow(exp, p), p);
        }
        for &i in &mono.e {
            out = out.mul(&self.e_images[i as usize], p);
        }
        out
    }

    pub fn apply(&self, f: &SPoly) -> SPoly {
        let mut out = SPoly::zero();
        for (m, &c) in &f.terms {
            out = out.add(&self.apply_mono(m).scale(c, self.p), self.p);
        }
        out
    }
}

/// `(b_{i/p^m})^{p^m}` when `p^m | i`, else zero.
pub fn coefficient_form(p: u64, m: u32, i: usize) -> SPoly {
    let pm = p.pow(m) as usize;
    if i % pm == 0 {
        b_gen((i / pm) as u32, p).pow(pm as u32, p)
    } else {
        SPoly::zero()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RhoReport {
    pub p: u64,
    pub level: u32,
    pub m: u32,
    pub order: usize,
    pub coefficient_form: bool,
    /// `rho_1` applied twice equals `rho_2`, on `b_i` and `e_i`.
    pub composition: bool,
    pub failures: Vec<String>,
}

impl RhoReport {
    pub fn all_ok(&self) -> bool {
        self.coefficient_form && self.composition
    }
}

/// Build `rho_*` for level `n` and step `m`, check its coefficient form and
/// the composition law.
pub fn rho_star(p: u64, level: u32, m: u32, order: usize) -> (RhoMap, RhoReport) {
    let map = RhoMap::new(p, level, m, order);
    let mut failures = Vec::new();
    for i in 0..=order {
        if map.b_images[i] != coefficient_form(p, m, i) {
            failures.push(format!("coefficient form at b_{i}"));
        }
    }
    let coefficient_form_ok = failures.is_empty();

    let inner = RhoMap::new(p, level + 1, 1, order);
    let outer = RhoMap::new(p, level, 1, order);
    let double = RhoMap::new(p, level, 2, order);
    for i in 0..=order {
        if outer.apply(&inner.b_images[i]) != double.b_images[i] {
            failures.push(format!("composition at b_{i}"));
        }
        if outer.apply(&inner.e_images[i]) != double.e_images[i] {
            failures.push(format!("composition at e_{i}"));
        }
    }
    let composition = !failures.iter().any(|f| f.starts_with("composition"));
    let report = RhoReport { p, level, m, order, coefficient_form: coefficient_form_ok, composition, failures };
    (map, report)
}
