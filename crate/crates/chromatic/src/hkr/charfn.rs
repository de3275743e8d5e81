//! Rational-valued class functions on representations and their products.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::rep::{RepClass, RepContext};
use super::HkrError;

pub fn rational(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// A class function on representations of dimension at most `dmax`,
/// stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharFn {
    pub dmax: u32,
    pub values: BTreeMap<RepClass, BigRational>,
}

#[derive(Serialize)]
struct CharFnEntry {
    class: Vec<u32>,
    value: String,
}

impl Serialize for CharFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<CharFnEntry> =
            self.values.iter().map(|(c, v)| CharFnEntry { class: c.mult.clone(), value: v.to_string() }).collect();
        entries.serialize(s)
    }
}

impl CharFn {
    pub fn zero(ctx: &RepContext) -> Self {
        Self { dmax: ctx.dmax, values: BTreeMap::new() }
    }

    pub fn from_fn(ctx: &RepContext, f: impl Fn(&RepClass) -> BigRational) -> Self {
        let mut out = Self::zero(ctx);
        for c in &ctx.classes {
            out.set(c.clone(), f(c));
        }
        out
    }

    /// Indicator of a single class.
    pub fn delta(ctx: &RepContext, a: &RepClass) -> Result<Self, HkrError> {
        ctx.check(a)?;
        let mut out = Self::zero(ctx);
        out.set(a.clone(), BigRational::one());
        Ok(out)
    }

    /// `chi_A(V) = |Iso(A, V)|`.
    pub fn chi(ctx: &RepContext, a: &RepClass) -> Result<Self, HkrError> {
        ctx.check(a)?;
        let mut out = Self::zero(ctx);
        out.set(a.clone(), rational(ctx.aut_count(a)));
        Ok(out)
    }

    pub fn fix(ctx: &RepContext) -> Self {
        Self::from_fn(ctx, |v| rational(ctx.fix_value(v)))
    }

    pub fn set(&mut self, c: RepClass, x: BigRational) {
        if x.is_zero() {
            self.values.remove(&c);
        } else {
            self.values.insert(c, x);
        }
    }

    pub fn add_at(&mut self, c: RepClass, x: BigRational) {
        let cur = self.values.remove(&c).unwrap_or_else(BigRational::zero);
        self.set(c, cur + x);
    }

    pub fn get(&self, ctx: &RepContext, v: &RepClass) -> Result<BigRational, HkrError> {
        ctx.check(v)?;
        Ok(self.values.get(v).cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn add(&self, other: &CharFn) -> CharFn {
        let mut out = self.clone();
        for (c, x) in &other.values {
            out.add_at(c.clone(), x.clone());
        }
        out
    }

    pub fn scale(&self, x: &BigRational) -> CharFn {
        let mut out = CharFn { dmax: self.dmax, values: BTreeMap::new() };
        for (c, y) in &self.values {
            out.set(c.clone(), y * x);
        }
        out
    }

    /// Pointwise product.
    pub fn mul_pointwise(&self, other: &CharFn) -> CharFn {
        let mut out = CharFn { dmax: self.dmax, values: BTreeMap::new() };
        for (c, x) in &self.values {
            if let Some(y) = other.values.get(c) {
                out.set(c.clone(), x * y);
            }
        }
        out
    }
}

/// Sum over ordered splittings with a weight on the summand types.
fn splitting_product(
    ctx: &RepContext,
    f: &CharFn,
    g: &CharFn,
    count: impl Fn(&RepClass, &RepClass, &RepClass) -> BigRational,
) -> CharFn {
    let mut out = CharFn::zero(ctx);
    for (a, x) in &f.values {
        for (b, y) in &g.values {
            let v = a.sum(b);
            if ctx.dim(&v) > ctx.dmax as u64 {
                continue;
            }
            let c = count(&v, a, b);
            out.add_at(v, c * x * y);
        }
    }
    out
}

/// `(f (*) g)(V) = sum_{V = V_0 (+) V_1} f(V_0) g(V_1)`.
pub fn convolve(ctx: &RepContext, f: &CharFn, g: &CharFn) -> CharFn {
    splitting_product(ctx, f, g, |v, a, b| rational(ctx.decomposition_count(v, a, b)))
}

/// `(f * g)(W) = sum_{U <= W} f(U) g(W/U)`.
pub fn hc_product(ctx: &RepContext, f: &CharFn, g: &CharFn) -> CharFn {
    splitting_product(ctx, f, g, |v, a, b| rational(ctx.subrep_count(v, a, b)))
}

/// Verify `w(A, B) = prod_{S,T} w(S, T)^{m_S(A) m_T(B)}` on every pair of
/// total dimension at most `dmax`; this covers `w(0, -) = w(-, 0) = 1`.
pub fn check_biexponential(
    ctx: &RepContext,
    w: &dyn Fn(&RepClass, &RepClass) -> BigRational,
) -> Result<(), HkrError> {
    let n = ctx.width();
    let base: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| w(&ctx.irreducible(i, 1), &ctx.irreducible(j, 1))).collect())
        .collect();
    for a in &ctx.classes {
        for b in &ctx.classes {
            if ctx.dim(a) + ctx.dim(b) > ctx.dmax as u64 {
                continue;
            }
            let mut expected = BigRational::one();
            for i in 0..n {
                for j in 0..n {
                    let e = a.mult[i] * b.mult[j];
                    if e > 0 {
                        if base[i][j].is_zero() {
                            return Err(HkrError::NotBiexponential(format!("w vanishes at ({i}, {j})")));
                        }
                        expected *= num_traits::pow(base[i][j].clone(), e as usize);
                    }
                }
            }
            if w(a, b) != expected {
                return Err(HkrError::NotBiexponential(format!("{} , {}", ctx.format(a), ctx.format(b))));
            }
        }
    }
    Ok(())
}

/// `(f (*)_w g)(V) = sum_{V = V_0 (+) V_1} w(V_0, V_1) f(V_0) g(V_1)`.
pub fn twisted_convolve(
    ctx: &RepContext,
    f: &CharFn,
    g: &CharFn,
    w: &dyn Fn(&RepClass, &RepClass) -> BigRational,
) -> Result<CharFn, HkrError> {
    check_biexponential(ctx, w)?;
    Ok(splitting_product(ctx, f, g, |v, a, b| rational(ctx.decomposition_count(v, a, b)) * w(a, b)))
}

/// The weight `w(V_0, V_1) = |Hom(V_1, V_0)|^{-1}`.
pub fn hom_inverse_weight(ctx: &RepContext) -> impl Fn(&RepClass, &RepClass) -> BigRational + '_ {
    move |a, b| rational(ctx.hom_count(b, a)).recip()
}

/// `s = prod_{i<d} (fix - q^i)`.
pub fn socle_char(ctx: &RepContext, d: u32) -> CharFn {
    let q = BigUint::from(ctx.params.q);
    CharFn::from_fn(ctx, |v| {
        let fix = ctx.fix_value(v);
        (0..d).map(|i| BigRational::from_integer(BigInt::from(fix.clone()) - BigInt::from(q.pow(i)))).product()
    })
}

/// `s(V) = 0` unless `V = triv^d`, where it is `|GL_d(F_q)|`.
pub fn socle_char_check(ctx: &RepContext, d: u32) -> bool {
    let s = socle_char(ctx, d);
    let gl = rational(crate::numerics::gl_order(&BigUint::from(ctx.params.q), d));
    ctx.classes_of_dim(d as u64).all(|v| {
        let expected = if *v == ctx.trivial(d) { gl.clone() } else { BigRational::zero() };
        s.values.get(v).cloned().unwrap_or_else(BigRational::zero) == expected
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoproductReport {
    pub pairs_checked: usize,
    pub holds: bool,
    pub witness: Option<String>,
}

/// Check `sigma^*(f (*) g) = sigma^*(f) (*)_t sigma^*(g)` on pairs
/// `(V_0, V_1)` of total dimension at most `dmax`, where
/// `t((D_0, D_1), (E_0, E_1)) = hom(D_0, E_1) hom(D_1, E_0)^2`.
pub fn coproduct_twist_check(ctx: &RepContext, f: &CharFn, g: &CharFn, dmax: u32) -> Result<CoproductReport, HkrError> {
    let dmax = dmax.min(ctx.dmax);
    let fg = convolve(ctx, f, g);
    let value = |h: &CharFn, v: &RepClass| h.values.get(v).cloned().unwrap_or_else(BigRational::zero);
    let mut pairs_checked = 0;
    for v0 in &ctx.classes {
        for v1 in &ctx.classes {
            if ctx.dim(v0) + ctx.dim(v1) > dmax as u64 {
                continue;
            }
            pairs_checked += 1;
            let lhs = value(&fg, &v0.sum(v1));
            let mut rhs = BigRational::zero();
            for (d0, e0) in v0.splittings() {
                for (d1, e1) in v1.splittings() {
                    let x = value(f, &d0.sum(&d1));
                    let y = value(g, &e0.sum(&e1));
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    let count = ctx.decomposition_count(v0, &d0, &e0)
                        * ctx.decomposition_count(v1, &d1, &e1)
                        * ctx.hom_count(&d0, &e1)
                        * ctx.hom_count(&d1, &e0).pow(2);
                    rhs += rational(count) * x * y;
                }
            }
            if lhs != rhs {
                return Ok(CoproductReport {
                    pairs_checked,
                    holds: false,
                    witness: Some(format!("({}, {})", ctx.format(v0), ctx.format(v1))),
                });
            }
        }
    }
    Ok(CoproductReport { pairs_checked, holds: true, witness: None })
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub dmax: u32,
    pub classes: usize,
    pub convolution_unital: bool,
    pub convolution_commutative: bool,
    pub convolution_associative: bool,
    pub hc_unital: bool,
    pub hc_associative: bool,
    pub hc_equals_twisted: bool,
    pub chi_multiplicative: bool,
    pub decomposition_relation: bool,
    pub failures: Vec<String>,
}

impl LawReport {
    pub fn all_ok(&self) -> bool {
        self.convolution_unital
            && self.convolution_commutative
            && self.convolution_associative
            && self.hc_unital
            && self.hc_associative
            && self.hc_equals_twisted
            && self.chi_multiplicative
            && self.decomposition_relation
    }
}

/// Check the product laws on indicator functions of every class; both
/// products are bilinear, so this covers all class functions on the domain.
pub fn check_laws(ctx: &RepContext) -> Result<LawReport, HkrError> {
    let deltas: Vec<CharFn> = ctx.classes.iter().map(|c| CharFn::delta(ctx, c)).collect::<Result<_, _>>()?;
    let dims: Vec<u64> = ctx.classes.iter().map(|c| ctx.dim(c)).collect();
    let unit = CharFn::delta(ctx, &ctx.zero())?;
    let dmax = ctx.dmax as u64;
    let mut failures = Vec::new();
    let mut fail = |name: &str, what: String| failures.push(format!("{name}: {what}"));

    let (mut cu, mut hu, mut cc, mut ca, mut ha, mut ht, mut chi, mut rel) = (true, true, true, true, true, true, true, true);
    let weight = hom_inverse_weight(ctx);
    check_biexponential(ctx, &weight)?;
    for (i, a) in ctx.classes.iter().enumerate() {
        let fa = &deltas[i];
        if convolve(ctx, &unit, fa) != *fa || convolve(ctx, fa, &unit) != *fa {
            cu = false;
            fail("convolution unit", ctx.format(a));
        }
        if hc_product(ctx, &unit, fa) != *fa || hc_product(ctx, fa, &unit) != *fa {
            hu = false;
            fail("hc unit", ctx.format(a));
        }
        for (j, b) in ctx.classes.iter().enumerate() {
            if dims[i] + dims[j] > dmax {
                continue;
            }
            let fb = &deltas[j];
            let ab = convolve(ctx, fa, fb);
            if ab != convolve(ctx, fb, fa) {
                cc = false;
                fail("convolution commutative", format!("{} , {}", ctx.format(a), ctx.format(b)));
            }
            let hab = hc_product(ctx, fa, fb);
            if hab != splitting_product(ctx, fa, fb, |v, x, y| rational(ctx.decomposition_count(v, x, y)) * weight(x, y)) {
                ht = false;
                fail("hc = twisted", format!("{} , {}", ctx.format(a), ctx.format(b)));
            }
            let v = a.sum(b);
            if ctx.decomposition_count(&v, a, b) != ctx.subrep_count(&v, a, b) * ctx.hom_count(b, a) {
                rel = false;
                fail("decomposition relation", format!("{} , {}", ctx.format(a), ctx.format(b)));
            }
            let chis = convolve(ctx, &CharFn::chi(ctx, a)?, &CharFn::chi(ctx, b)?);
            if chis != CharFn::chi(ctx, &v)? {
                chi = false;
                fail("chi multiplicative", format!("{} , {}", ctx.format(a), ctx.format(b)));
            }
            for (k, c) in ctx.classes.iter().enumerate() {
                if dims[i] + dims[j] + dims[k] > dmax {
                    continue;
                }
                let fc = &deltas[k];
                if convolve(ctx, &ab, fc) != convolve(ctx, fa, &convolve(ctx, fb, fc)) {
                    ca = false;
                    fail("convolution associative", format!("{} {} {}", ctx.format(a), ctx.format(b), ctx.format(c)));
                }
                if hc_product(ctx, &hab, fc) != hc_product(ctx, fa, &hc_product(ctx, fb, fc)) {
                    ha = false;
                    fail("hc associative", format!("{} {} {}", ctx.format(a), ctx.format(b), ctx.format(c)));
                }
            }
        }
    }
    Ok(LawReport {
        dmax: ctx.dmax,
        classes: ctx.classes.len(),
        convolution_unital: cu,
        convolution_commutative: cc,
        convolution_associative: ca,
        hc_unital: hu,
        hc_associative: ha,
        hc_equals_twisted: ht,
        chi_multiplicative: chi,
        decomposition_relation: rel,
        failures,
    })
}
