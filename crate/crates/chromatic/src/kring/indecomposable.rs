use serde::Serialize;

use crate::algebra::{monomials_up_to, Monomial, PrimeField, TruncatedSeries};
use crate::fgl::{FglContext, FglMode};

use super::ideals::{annihilator_of, ideal_generated, kernel_of_map, product, Subspace};
use super::quotient::{AlgebraElement, QuotientAlgebra};
use super::KringError;

type Fp = TruncatedSeries<PrimeField>;

/// The map `c_j -> (-1)^j e_j(x, [q]x, .., [q^{p^k - 1}]x)` into
/// `F_p[x]/(x^D)`, `D = p^k N_k`.
pub struct AlphaMap<'a> {
    pub alg: &'a QuotientAlgebra,
    pub k: u32,
    pub target_order: usize,
    images: Vec<Fp>,
    /// `s = prod_i [q^i](x)`.
    pub s: Fp,
}

impl<'a> AlphaMap<'a> {
    pub fn new(alg: &'a QuotientAlgebra) -> Result<Self, KringError> {
        let params = alg.params;
        let d = alg.d;
        let k = params.level_of(d as u64);
        if d == 0 || params.p.pow(k) != d as u64 {
            return Err(KringError::NotPrimePower(d));
        }
        let order = d * super::family(&params, k)?.n as usize;
        let field = PrimeField::new(params.p);
        let ctx = FglContext::new(params.p, params.n, order.max(2), FglMode::ModP)?;
        let big = FglContext::new(params.p, params.n, order + 1, FglMode::ModP)?;
        let expected_w = if k == 0 {
            big.m_series(params.p.pow(params.r) as i64)?.wdegree
        } else {
            big.divided_p_series(params.r, k)?.1.wdegree
        };
        if expected_w != Some(order) {
            return Err(KringError::Identity(format!("f_k has Weierstrass degree {expected_w:?}, expected {order}")));
        }
        // prod_i (T - [q^i](x)), coefficient of T^{d-j} is (-1)^j e_j.
        let mut poly: Vec<Fp> = vec![TruncatedSeries::one(field, order)];
        let mut s = TruncatedSeries::one(field, order);
        for i in 0..d as u32 {
            let qi = ctx.m_series(params.q.pow(i) as i64)?.series.map(field, |c| Ok(*c))?;
            s = s.mul(&qi);
            let mut next: Vec<Fp> = vec![TruncatedSeries::zero(field, order); poly.len() + 1];
            for (j, c) in poly.iter().enumerate() {
                next[j + 1] = next[j + 1].add(c);
                next[j] = next[j].sub(&c.mul(&qi));
            }
            poly = next;
        }
        let images = (1..=d).map(|j| poly[d - j].clone()).collect();
        Ok(Self { alg, k, target_order: order, images, s })
    }

    pub fn of_monomial(&self, m: &Monomial) -> Fp {
        let field = self.s.ring;
        let mut out = TruncatedSeries::one(field, self.target_order);
        for (i, img) in self.images.iter().enumerate() {
            let e = m.exp(i);
            if e > 0 {
                out = out.mul(&img.pow(e as u64));
            }
        }
        out
    }

    pub fn apply(&self, a: &AlgebraElement) -> Fp {
        let field = self.s.ring;
        let mut out = TruncatedSeries::zero(field, self.target_order);
        for (i, &c) in a.coords.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.of_monomial(&self.alg.basis[i]).scale(&c));
            }
        }
        out
    }

    pub fn image(&self, j: usize) -> &Fp {
        &self.images[j - 1]
    }

    /// `alpha(mu) = alpha(NF(mu))` on every monomial below the bound, and
    /// monomials above it land in `(x^D)`.
    pub fn well_defined(&self) -> bool {
        let alg = self.alg;
        let Some(bound) = alg.bound() else { return false };
        bound as usize + 1 >= self.target_order
            && monomials_up_to(&alg.weights, bound)
                .iter()
                .all(|m| self.apply(&alg.from_monomial(m)) == self.of_monomial(m))
    }
}

/// Verification record for the indecomposable quotient at `d = p^k`.
#[derive(Clone, Debug, Serialize)]
pub struct IndecomposableReport {
    pub d: usize,
    pub k: u32,
    pub target_order: usize,
    pub alpha_well_defined: bool,
    pub dim_r: usize,
    pub dim_jbar: usize,
    /// `dim R/J`, expected `N_k`.
    pub dim_quotient: usize,
    pub n_k: u64,
    pub dim_ibar: usize,
    /// `I = ann(J)` equals the ideal generated by `c_{p^k}^{Nbar_{k-1}}`.
    pub ibar_principal: bool,
    pub ibar_generator: String,
    pub ibar_times_jbar_zero: bool,
    /// `R/J -> I`, `a -> a g`, is bijective.
    pub ibar_free_rank_one: bool,
    /// `alpha(c_{p^k}) = +-s`.
    pub alpha_top_is_s: bool,
    /// `s^{N_k} = 0` and `s^{N_k - 1} != 0`.
    pub s_height_ok: bool,
}

impl IndecomposableReport {
    pub fn all_ok(&self) -> bool {
        self.alpha_well_defined
            && self.dim_quotient as u64 == self.n_k
            && self.dim_ibar as u64 == self.n_k
            && self.ibar_principal
            && self.ibar_times_jbar_zero
            && self.ibar_free_rank_one
            && self.alpha_top_is_s
            && self.s_height_ok
    }
}

pub struct Indecomposables {
    pub jbar: Subspace,
    pub ibar: Subspace,
    pub report: IndecomposableReport,
}

pub fn indecomposable_quotient(alg: &QuotientAlgebra) -> Result<Indecomposables, KringError> {
    let alpha = AlphaMap::new(alg)?;
    let params = alg.params;
    let (d, k) = (alg.d, alpha.k);
    let fam = super::family(&params, k)?;
    let n_k = fam.n;
    let order = alpha.target_order;
    let images: Vec<Vec<u64>> =
        (0..alg.dim()).map(|i| alpha.of_monomial(&alg.basis[i]).coeffs().to_vec()).collect();
    let jbar = kernel_of_map(alg, &images, order);
    let ibar = annihilator_of(alg, &jbar);
    let g = alg.pow(&alg.generator(d), fam.nbar_prev);
    let principal = ideal_generated(alg, &[g.clone()]);
    let times_g: Vec<Vec<u64>> = alg.multiplication_columns(&g);
    let ker_g = kernel_of_map(alg, &times_g, alg.dim());
    let s = &alpha.s;
    let top = alpha.image(d);
    let alpha_top_is_s = top == s || *top == s.neg();
    let s_height_ok = s.pow(n_k).is_zero() && !s.pow(n_k - 1).is_zero();
    let report = IndecomposableReport {
        d,
        k,
        target_order: order,
        alpha_well_defined: alpha.well_defined(),
        dim_r: alg.dim(),
        dim_jbar: jbar.dim(),
        dim_quotient: alg.dim() - jbar.dim(),
        n_k,
        dim_ibar: ibar.dim(),
        ibar_principal: ibar.same_as(&principal),
        ibar_generator: alg.format(&g),
        ibar_times_jbar_zero: product(alg, &ibar, &jbar).dim() == 0,
        ibar_free_rank_one: ker_g.same_as(&jbar) && principal.dim() + jbar.dim() == alg.dim(),
        alpha_top_is_s,
        s_height_ok,
    };
    Ok(Indecomposables { jbar, ibar, report })
}
