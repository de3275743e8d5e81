use serde::Serialize;

use crate::fgl::{FglContext, FglMode};

use super::gl::adams_and_fix;
use super::ideals::{annihilator, ideal_generated, socle, unit_multiple};
use super::quotient::{AlgebraElement, QuotientAlgebra};
use super::KringError;

/// The class `fix`, checked against `euler * fix = phi^*(euler)`.
pub fn fix_class(alg: &QuotientAlgebra) -> Result<AlgebraElement, KringError> {
    let (images, fix) = adams_and_fix(alg)?;
    if alg.d == 0 {
        return Ok(fix);
    }
    let euler = alg.generator(alg.d);
    if alg.mul(&euler, &fix) != images[alg.d - 1] {
        return Err(KringError::Identity("euler * fix != phi^*(euler)".into()));
    }
    Ok(fix)
}

/// Facts about `fix` and `euler = c_d`.
#[derive(Clone, Debug, Serialize)]
pub struct FixReport {
    pub fix: String,
    pub fix_invertible: bool,
    pub fix_minus_one_nilpotent: bool,
    /// `ann(euler)` equals the ideal generated by `fix - 1`.
    pub ann_euler_is_fix_ideal: bool,
    pub ann_euler_dim: usize,
}

pub fn fix_report(alg: &QuotientAlgebra) -> Result<FixReport, KringError> {
    let fix = fix_class(alg)?;
    let one = alg.one();
    let fm1 = alg.sub(&fix, &one);
    let fix_invertible = fix.coords.first().is_some_and(|&c| c != 0);
    let fix_minus_one_nilpotent = alg.nilpotency_index(&fm1, alg.dim() as u64 + 1).is_some();
    let (ann_euler_is_fix_ideal, ann_euler_dim) = if alg.d == 0 {
        (fm1.is_zero(), 0)
    } else {
        let ann = annihilator(alg, &[alg.generator(alg.d)]);
        (ann.same_as(&ideal_generated(alg, &[fm1])), ann.dim())
    };
    Ok(FixReport { fix: alg.format(&fix), fix_invertible, fix_minus_one_nilpotent, ann_euler_is_fix_ideal, ann_euler_dim })
}

/// Comparison of `(fix - 1)^d` with the socle generator `c_d^{Nbar_k - 1}`
/// for `d = p^k`.
#[derive(Clone, Debug, Serialize)]
pub struct SocSocReport {
    pub d: usize,
    pub k: u32,
    pub socle_generator: String,
    pub socle_matches_power: bool,
    pub lhs: String,
    /// The unit with `(fix - 1)^d = lambda c_d^{Nbar_k - 1}`, if any.
    pub lambda: Option<u64>,
}

pub fn soc_soc(alg: &QuotientAlgebra) -> Result<SocSocReport, KringError> {
    let params = alg.params;
    let d = alg.d;
    let k = params.level_of(d as u64);
    if d == 0 || params.p.pow(k) != d as u64 {
        return Err(KringError::NotPrimePower(d));
    }
    let fam = super::family(&params, k)?;
    let top = alg.pow(&alg.generator(d), fam.nbar - 1);
    let soc = socle(alg)?;
    let fix = fix_class(alg)?;
    let lhs = alg.pow(&alg.sub(&fix, &alg.one()), d as u64);
    Ok(SocSocReport {
        d,
        k,
        socle_generator: alg.format(&top),
        socle_matches_power: !top.is_zero() && soc.contains(&top),
        lhs: alg.format(&lhs),
        lambda: unit_multiple(alg, &top, &lhs),
    })
}

/// `R[T]/f(T)` for `f(T) = T^d + c_1 T^{d-1} + .. + c_d` over a built algebra.
pub struct Extension<'a> {
    pub alg: &'a QuotientAlgebra,
    /// `T^e` for `e` up to the nilpotency index of `T`.
    t_powers: Vec<Vec<AlgebraElement>>,
}

impl<'a> Extension<'a> {
    pub fn new(alg: &'a QuotientAlgebra, limit: usize) -> Result<Self, KringError> {
        let d = alg.d;
        let mut cur: Vec<AlgebraElement> = (0..d).map(|_| alg.zero()).collect();
        cur[0] = alg.one();
        let mut t_powers = Vec::new();
        while cur.iter().any(|c| !c.is_zero()) {
            if t_powers.len() > limit {
                return Err(KringError::Structure("T is not nilpotent within the limit".into()));
            }
            t_powers.push(cur.clone());
            let top = cur[d - 1].clone();
            let mut next: Vec<AlgebraElement> = (0..d).map(|_| alg.zero()).collect();
            next[1..d].clone_from_slice(&cur[..(d - 1)]);
            for j in 1..=d {
                next[d - j] = alg.sub(&next[d - j], &alg.mul(&alg.generator(j), &top));
            }
            cur = next;
        }
        Ok(Self { alg, t_powers })
    }

    pub fn dim(&self) -> usize {
        self.alg.d * self.alg.dim()
    }

    pub fn t_nilpotency(&self) -> usize {
        self.t_powers.len()
    }

    fn zero(&self) -> Vec<AlgebraElement> {
        (0..self.alg.d).map(|_| self.alg.zero()).collect()
    }

    pub fn is_zero(&self, a: &[AlgebraElement]) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    /// The image of a series `sum g_e T^e` with `F_p` coefficients.
    pub fn series(&self, g: &[u64]) -> Vec<AlgebraElement> {
        let alg = self.alg;
        let mut out = self.zero();
        for (e, &ge) in g.iter().enumerate().take(self.t_powers.len()) {
            if ge == 0 {
                continue;
            }
            for (o, t) in out.iter_mut().zip(&self.t_powers[e]) {
                *o = alg.add(o, &alg.scale(t, ge));
            }
        }
        out
    }

    pub fn mul(&self, a: &[AlgebraElement], b: &[AlgebraElement]) -> Vec<AlgebraElement> {
        let alg = self.alg;
        let d = alg.d;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = alg.mul(x, y);
                if xy.is_zero() || i + j >= self.t_powers.len() {
                    continue;
                }
                for (o, t) in out.iter_mut().zip(&self.t_powers[i + j]).take(d) {
                    *o = alg.add(o, &alg.mul(&xy, t));
                }
            }
        }
        out
    }
}

/// Result of checking `prod_{k=1}^{d} [q^k - 1](T) = 0` in `R[T]/f(T)`.
#[derive(Clone, Debug, Serialize)]
pub struct DivisorReport {
    pub d: usize,
    pub extension_dim: usize,
    pub holds: bool,
    /// Coefficients of the product when it fails.
    pub witness: Option<Vec<String>>,
}

pub fn divisor_relation_check(alg: &QuotientAlgebra) -> Result<DivisorReport, KringError> {
    let d = alg.d;
    if d == 0 {
        return Ok(DivisorReport { d, extension_dim: 0, holds: true, witness: None });
    }
    let ext = Extension::new(alg, 100_000)?;
    let order = ext.t_nilpotency() + 1;
    let params = alg.params;
    let ctx = FglContext::new(params.p, params.n, order.max(2), FglMode::ModP)?;
    let mut prod = ext.series(&[1]);
    for k in 1..=d as u32 {
        let m = params.q.pow(k) as i64 - 1;
        let s = ctx.m_series(m)?.series;
        prod = ext.mul(&prod, &ext.series(s.coeffs()));
    }
    let holds = ext.is_zero(&prod);
    let witness = (!holds).then(|| prod.iter().map(|c| alg.format(c)).collect());
    Ok(DivisorReport { d, extension_dim: ext.dim(), holds, witness })
}
