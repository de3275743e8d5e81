//! The formal group law with logarithm
//! `log(x) = x + (1/p) sum_{i=1}^{n} log(u_i x^{p^i})`, `u_n = 1`, its
//! reduction modulo `(p, u_1, .., u_{n-1})` and modulo `(p^a, u_1, ..)`,
//! m-series, the divided p-series and Weierstrass degrees.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::ring::rational_to_residue;
use crate::algebra::{
    AlgebraError, CoeffRing, ModPrimePower, Monomial, MultiPoly, PolyRing, Rationals, TruncatedSeries,
};
use crate::numerics::{vp_u64, ChromaticParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FglError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("operation needs a reduced mode, context is rational")]
    NeedsReducedMode,
    #[error("truncation order must be at least 2")]
    OrderTooSmall,
    #[error("k must be positive")]
    BadK,
}

/// Coefficient regime of a context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FglMode {
    /// Rationals with polynomial variables `u_1 .. u_{n-1}`.
    RationalWithU,
    /// All `u_i = 0`, coefficients in `F_p`.
    ModP,
    /// All `u_i = 0`, coefficients in `Z/p^a`.
    ModPPower(u32),
}

pub type URing = PolyRing<Rationals>;
pub type USeries = TruncatedSeries<URing>;
pub type ResidueSeries = TruncatedSeries<ModPrimePower>;

/// A reduced series with the index of its first unit coefficient.
#[derive(Clone, Debug)]
pub struct WeierstrassData {
    pub series: ResidueSeries,
    /// `None` when no unit coefficient appears below the truncation order.
    pub wdegree: Option<usize>,
}

impl WeierstrassData {
    pub fn new(series: ResidueSeries) -> Self {
        let wdegree = series.first_unit();
        Self { series, wdegree }
    }
}

/// A bivariate expansion of `x +_F y` to total degree below the order.
#[derive(Clone, Debug)]
pub struct FglSum<R: CoeffRing> {
    pub ring: PolyRing<R>,
    pub poly: MultiPoly<R::Elem>,
}

pub struct FglContext {
    pub p: u64,
    pub n: u32,
    pub order: usize,
    pub mode: FglMode,
    u_ring: URing,
    log: OnceLock<USeries>,
    exp: OnceLock<USeries>,
    log0: OnceLock<TruncatedSeries<Rationals>>,
    exp0: OnceLock<TruncatedSeries<Rationals>>,
}

impl FglContext {
    pub fn new(p: u64, n: u32, order: usize, mode: FglMode) -> Result<Self, FglError> {
        if order < 2 {
            return Err(FglError::OrderTooSmall);
        }
        let u_ring = PolyRing::uniform(Rationals, "u", (n - 1) as usize, Some(order as u32))?;
        Ok(Self {
            p,
            n,
            order,
            mode,
            u_ring,
            log: OnceLock::new(),
            exp: OnceLock::new(),
            log0: OnceLock::new(),
            exp0: OnceLock::new(),
        })
    }

    /// The truncation order `2 p^{n(r + kmax)} + 1`.
    pub fn default_order(params: &ChromaticParams, kmax: u32) -> usize {
        2 * params.p.pow(params.n * (params.r + kmax)) as usize + 1
    }

    pub fn u_ring(&self) -> &URing {
        &self.u_ring
    }

    /// The residue ring of a reduced mode.
    pub fn residue_ring(&self) -> Result<ModPrimePower, FglError> {
        match self.mode {
            FglMode::RationalWithU => Err(FglError::NeedsReducedMode),
            FglMode::ModP => Ok(ModPrimePower::new(self.p, 1)?),
            FglMode::ModPPower(a) => Ok(ModPrimePower::new(self.p, a)?),
        }
    }

    /// The logarithm over `Q[u_1 .. u_{n-1}]`, solved coefficient by
    /// coefficient from the functional equation.
    pub fn log_series(&self) -> &USeries {
        self.log.get_or_init(|| {
            let ring = &self.u_ring;
            let m = self.order;
            let inv_p = ring.constant(BigRational::new(BigInt::one(), BigInt::from(self.p)));
            let mut coeffs = vec![ring.zero(); m];
            if m > 1 {
                coeffs[1] = ring.one();
            }
            for big_n in 2..m {
                let mut acc = ring.zero();
                let mut pi = 1usize;
                for i in 1..=self.n as usize {
                    pi *= self.p as usize;
                    if pi > big_n {
                        break;
                    }
                    if big_n % pi != 0 {
                        continue;
                    }
                    let j = big_n / pi;
                    let ui_pow = if i == self.n as usize {
                        ring.one()
                    } else {
                        ring.pow(&ring.var(i - 1), j as u64)
                    };
                    acc = ring.add(&acc, &ring.mul(&ui_pow, &coeffs[j]));
                }
                coeffs[big_n] = ring.mul(&inv_p, &acc);
            }
            TruncatedSeries::new(ring.clone(), coeffs, m)
        })
    }

    /// The exponential (compositional inverse of the logarithm) over `Q[u]`.
    pub fn exp_series(&self) -> Result<&USeries, FglError> {
        if let Some(e) = self.exp.get() {
            return Ok(e);
        }
        let e = self.log_series().reversion()?;
        Ok(self.exp.get_or_init(|| e))
    }

    /// The logarithm with every `u_i` set to zero.
    pub fn log_u0(&self) -> &TruncatedSeries<Rationals> {
        self.log0.get_or_init(|| {
            specialize_u0(self.log_series())
        })
    }

    /// The exponential with every `u_i` set to zero. Evaluation at `u = 0`
    /// is a ring map, so this is the reversion of [`Self::log_u0`].
    pub fn exp_u0(&self) -> Result<&TruncatedSeries<Rationals>, FglError> {
        if let Some(e) = self.exp0.get() {
            return Ok(e);
        }
        let e = self.log_u0().reversion()?;
        Ok(self.exp0.get_or_init(|| e))
    }

    /// `[m](x) = exp(m log x)` over `Q[u]`.
    pub fn m_series_rational(&self, m: i64) -> Result<USeries, FglError> {
        let ring = &self.u_ring;
        let scaled = self.log_series().scale(&ring.from_i64(m));
        Ok(self.exp_series()?.compose(&scaled)?)
    }

    /// `[m](x)` over `Q` with `u = 0`.
    pub fn m_series_u0(&self, m: i64) -> Result<TruncatedSeries<Rationals>, FglError> {
        if m == 0 {
            return Ok(TruncatedSeries::zero(Rationals, self.order));
        }
        let scaled = self.log_u0().scale(&BigRational::from_integer(BigInt::from(m)));
        Ok(self.exp_u0()?.compose(&scaled)?)
    }

    /// Reduce a `u = 0` rational series into the residue ring, failing on
    /// any coefficient that is not `p`-integral.
    pub fn reduce(&self, s: &TruncatedSeries<Rationals>) -> Result<ResidueSeries, FglError> {
        let ring = self.residue_ring()?;
        let (p, modulus) = (ring.p, ring.modulus);
        Ok(s.map(ring, |c| rational_to_residue(c, p, modulus))?)
    }

    /// `[m](x)` in the reduced mode, with its Weierstrass degree.
    pub fn m_series(&self, m: i64) -> Result<WeierstrassData, FglError> {
        self.residue_ring()?;
        Ok(WeierstrassData::new(self.reduce(&self.m_series_u0(m)?)?))
    }

    /// `<p>(t) = [p](t)/t` and `f_k(t) = <p>([p^{r+k-1}](t))` in the
    /// reduced mode.
    pub fn divided_p_series(&self, r: u32, k: u32) -> Result<(WeierstrassData, WeierstrassData), FglError> {
        if k == 0 {
            return Err(FglError::BadK);
        }
        let angle = self.m_series(self.p as i64)?.series.shift_down(1)?;
        let e = r + k - 1;
        let inner = self.m_series(self.p.pow(e) as i64)?.series;
        let fk = angle.compose(&inner)?;
        Ok((WeierstrassData::new(angle), WeierstrassData::new(fk)))
    }

    /// `x +_F y` over `Q[u]`, total degree below the order.
    pub fn sum_rational(&self) -> Result<FglSum<URing>, FglError> {
        let ring = PolyRing::new(self.u_ring.clone(), vec!["x".into(), "y".into()], vec![1, 1], Some(self.order as u32 - 1))?;
        let poly = formal_sum(self.log_series(), self.exp_series()?, &ring);
        Ok(FglSum { ring, poly })
    }

    /// `x +_F y` over `Q` with `u = 0`.
    pub fn sum_u0(&self) -> Result<FglSum<Rationals>, FglError> {
        let ring = PolyRing::new(Rationals, vec!["x".into(), "y".into()], vec![1, 1], Some(self.order as u32 - 1))?;
        let poly = formal_sum(self.log_u0(), self.exp_u0()?, &ring);
        Ok(FglSum { ring, poly })
    }

    /// `x +_F y` in the reduced mode, computed over `Q` and then reduced
    /// with an integrality check on every coefficient.
    pub fn sum_reduced(&self) -> Result<FglSum<ModPrimePower>, FglError> {
        let target = self.residue_ring()?;
        let rational = self.sum_u0()?;
        let ring = PolyRing::new(target, vec!["x".into(), "y".into()], vec![1, 1], rational.ring.bound)?;
        let mut terms = std::collections::BTreeMap::new();
        for (m, c) in &rational.poly.terms {
            let v = rational_to_residue(c, target.p, target.modulus)?;
            if v != 0 {
                terms.insert(*m, v);
            }
        }
        Ok(FglSum { ring, poly: MultiPoly { terms } })
    }
}

/// Set every `u_i` to zero.
pub fn specialize_u0(s: &USeries) -> TruncatedSeries<Rationals> {
    let coeffs = s.coeffs().iter().map(|c| s.ring.constant_term(c)).collect();
    TruncatedSeries::new(Rationals, coeffs, s.order())
}

/// `exp(log x + log y)` in a two-variable ring over the series' base ring.
pub fn formal_sum<R: CoeffRing>(
    log: &TruncatedSeries<R>,
    exp: &TruncatedSeries<R>,
    ring: &PolyRing<R>,
) -> MultiPoly<R::Elem> {
    let mut l = ring.zero();
    for (i, c) in log.coeffs().iter().enumerate() {
        if ring.base.is_zero(c) {
            continue;
        }
        let ix = i as u32;
        l = ring.add(&l, &ring.monomial(Monomial::from_exps(&[ix, 0]), c.clone()));
        l = ring.add(&l, &ring.monomial(Monomial::from_exps(&[0, ix]), c.clone()));
    }
    let mut out = ring.zero();
    let mut power = ring.one();
    for (k, c) in exp.coeffs().iter().enumerate() {
        if k > 0 {
            power = ring.mul(&power, &l);
            if power.is_empty() {
                break;
            }
        }
        if !ring.base.is_zero(c) {
            out = ring.add(&out, &ring.scale(&power, c));
        }
    }
    out
}

/// Evaluate a two-variable expansion at a pair of one-variable series.
pub fn eval_bivariate<R: CoeffRing>(
    poly: &MultiPoly<R::Elem>,
    a: &TruncatedSeries<R>,
    b: &TruncatedSeries<R>,
) -> TruncatedSeries<R> {
    let ring = a.ring.clone();
    let order = a.order().min(b.order());
    let mut pa = vec![TruncatedSeries::one(ring.clone(), order)];
    let mut pb = vec![TruncatedSeries::one(ring.clone(), order)];
    let mut out = TruncatedSeries::zero(ring.clone(), order);
    for (m, c) in &poly.terms {
        let (i, j) = (m.exp(0) as usize, m.exp(1) as usize);
        while pa.len() <= i {
            let next = pa.last().unwrap().mul(a);
            pa.push(next);
        }
        while pb.len() <= j {
            let next = pb.last().unwrap().mul(b);
            pb.push(next);
        }
        out = out.add(&pa[i].mul(&pb[j]).scale(c));
    }
    out
}

/// Results of the group-law axiom checks on an expansion.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub unit: bool,
    pub commutative: bool,
    pub associative: bool,
    /// Every monomial `x^i y^j` has `i + j = 1 (mod p - 1)`.
    pub support_mod_p_minus_1: bool,
    /// The stricter pattern `i + j = 1 (mod p)`, reported but not required.
    pub support_mod_p: bool,
}

impl AxiomReport {
    pub fn all_required(&self) -> bool {
        self.unit && self.commutative && self.associative && self.support_mod_p_minus_1
    }
}

/// Check unit, commutativity, associativity and the support congruence of
/// an expansion to total degree below `bound + 1`.
pub fn check_axioms<R: CoeffRing>(sum: &FglSum<R>, p: u64) -> AxiomReport {
    let ring = &sum.ring;
    let base = &ring.base;
    let f = &sum.poly;
    let unit = f.terms.iter().all(|(m, c)| {
        if m.exp(1) == 0 {
            m.exp(0) == 1 && base.is_one(c)
        } else {
            true
        }
    }) && f.terms.get(&Monomial::var(0)).is_some_and(|c| base.is_one(c));
    let commutative = f.terms.iter().all(|(m, c)| f.terms.get(&m.swap(0, 1)) == Some(c));
    let support_mod_p_minus_1 = f.terms.keys().all(|m| (m.total_degree() as u64 + p - 2) % (p - 1) == 0);
    let support_mod_p = f.terms.keys().all(|m| (m.total_degree() as u64 + p - 1) % p == 0);
    let tri = PolyRing::new(base.clone(), vec!["x".into(), "y".into(), "z".into()], vec![1, 1, 1], ring.bound)
        .expect("three variables");
    let x = tri.var(0);
    let y = tri.var(1);
    let z = tri.var(2);
    let fxy = tri.substitute(f, &[x.clone(), y.clone()]);
    let fyz = tri.substitute(f, &[y, z.clone()]);
    let left = tri.substitute(f, &[fxy, z]);
    let right = tri.substitute(f, &[x, fyz]);
    AxiomReport { unit, commutative, associative: left == right, support_mod_p_minus_1, support_mod_p }
}

/// True when every nonzero coefficient of `s` sits at an exponent
/// congruent to 1 modulo `p - 1`.
pub fn support_congruent<R: CoeffRing>(s: &TruncatedSeries<R>, p: u64) -> bool {
    s.support().iter().all(|&i| (i as u64 + p - 2) % (p - 1) == 0)
}

/// Weierstrass degree predicted for `[m]` in the reduced mode:
/// `p^{n v_p(m)}`.
pub fn predicted_wdegree(p: u64, n: u32, m: u64) -> Option<u64> {
    let v = vp_u64(m, p).ok()?;
    p.checked_pow(n * v)
}

/// True if every coefficient of a rational series is zero.
pub fn is_zero_rational(s: &TruncatedSeries<Rationals>) -> bool {
    s.coeffs().iter().all(|c| c.is_zero())
}
