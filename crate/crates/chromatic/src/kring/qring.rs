use serde::Serialize;

use crate::algebra::{CoeffRing, ModPrimePower, TruncatedSeries};
use crate::fgl::{FglContext, FglMode};
use crate::numerics::ChromaticParams;

use super::KringError;

type Zpa = TruncatedSeries<ModPrimePower>;

/// `Z/p^a[x]/(f)` for a series `f` of Weierstrass degree `D`, elements
/// stored as polynomials of degree below `D`.
pub struct WeierstrassQuotient {
    pub ring: ModPrimePower,
    pub degree: usize,
    /// `x^D` rewritten as a series with coefficients divisible by `p`.
    tail: Zpa,
    work_order: usize,
}

impl WeierstrassQuotient {
    /// `f` must be known to order at least `(a + 1) D`.
    pub fn new(f: &Zpa) -> Result<Self, KringError> {
        let ring = f.ring;
        let degree = f.first_unit().ok_or_else(|| KringError::Identity("series has no unit coefficient".into()))?;
        let work_order = ring.a as usize * degree;
        if f.order() < work_order + degree {
            return Err(KringError::Identity("series known to too low an order".into()));
        }
        let low = TruncatedSeries::new(ring, f.coeffs()[..degree].to_vec(), work_order);
        let high = f.coeffs()[degree..].to_vec();
        let unit = TruncatedSeries::new(ring, high, work_order);
        let tail = low.mul(&unit.inverse()?).neg();
        Ok(Self { ring, degree, tail, work_order })
    }

    /// Reduce a series known to order at least `a D` to a polynomial of
    /// degree below `D`, using `x^D = tail` and `x^{aD} = 0`.
    pub fn reduce(&self, g: &Zpa) -> Zpa {
        let d = self.degree;
        let mut cur = g.with_order(self.work_order);
        for _ in 0..=self.ring.a {
            let high: Vec<u64> = cur.coeffs().iter().skip(d).copied().collect();
            if high.iter().all(|&c| c == 0) {
                break;
            }
            let low = TruncatedSeries::new(self.ring, cur.coeffs()[..d].to_vec(), self.work_order);
            let high = TruncatedSeries::new(self.ring, high, self.work_order);
            cur = low.add(&high.mul(&self.tail));
        }
        cur
    }

    pub fn mul(&self, a: &Zpa, b: &Zpa) -> Zpa {
        self.reduce(&a.mul(b))
    }

    pub fn vector(&self, a: &Zpa) -> Vec<u64> {
        a.coeffs()[..self.degree].to_vec()
    }
}

/// Presentation of the primitive quotient as `Z/p^a[[t]]/g_k(t)`.
#[derive(Clone, Debug, Serialize)]
pub struct QRingPresentation {
    pub params: ChromaticParams,
    pub k: u32,
    pub precision: u32,
    /// Rank of `Z/p^a[x]/f_k` over `Z/p^a`.
    pub ambient_rank: usize,
    /// Coefficients of the monic `g_k`, constant term first.
    pub g: Vec<u64>,
    pub degree: usize,
    pub n_k: u64,
    /// `v_p(g_k(0))`, expected 1 for `k > 0`; `g_0(0) = 0`.
    pub constant_valuation: u32,
    /// All non-leading coefficients divisible by `p`.
    pub weierstrass: bool,
    /// `s` is a unit times `x^{p^k}` modulo `(p, x^{p^k + 1})`.
    pub s_leading_ok: bool,
}

impl QRingPresentation {
    pub fn all_ok(&self) -> bool {
        let constant_ok = if self.k == 0 { self.g[0] == 0 } else { self.constant_valuation == 1 };
        self.degree as u64 == self.n_k && constant_ok && self.weierstrass && self.s_leading_ok
    }
}

/// Solve `sum_j x_j cols[j] = target` over `Z/p^a` when the columns are
/// independent modulo `p`.
fn solve_unit_pivots(ring: &ModPrimePower, cols: &[Vec<u64>], target: &[u64]) -> Option<Vec<u64>> {
    let n = cols.len();
    let m = target.len();
    let mut rows: Vec<Vec<u64>> = (0..m)
        .map(|i| {
            let mut r: Vec<u64> = cols.iter().map(|c| c[i]).collect();
            r.push(target[i]);
            r
        })
        .collect();
    let mut pivot_rows = Vec::with_capacity(n);
    for j in 0..n {
        let pr = (0..m).find(|&i| !pivot_rows.contains(&i) && rows[i][j] % ring.p != 0)?;
        let inv = ring.inv(&rows[pr][j])?;
        rows[pr] = rows[pr].iter().map(|x| ring.mul(x, &inv)).collect();
        for i in 0..m {
            if i != pr && rows[i][j] != 0 {
                let f = rows[i][j];
                let pivot = rows[pr].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x = ring.sub(x, &ring.mul(&f, y));
                }
            }
        }
        pivot_rows.push(pr);
    }
    if (0..m).any(|i| !pivot_rows.contains(&i) && rows[i][n] != 0) {
        return None;
    }
    Some(pivot_rows.iter().map(|&i| rows[i][n]).collect())
}

pub fn q_ring(params: &ChromaticParams, k: u32, precision: u32) -> Result<QRingPresentation, KringError> {
    let p = params.p;
    let n_k = super::family(params, k)?.n;
    let width = p.pow(k) as usize;
    let rank = width * n_k as usize;
    let order = precision as usize * rank + rank + 1;
    let ctx = FglContext::new(p, params.n, order, FglMode::ModPPower(precision))?;
    let f = if k == 0 {
        ctx.m_series(p.pow(params.r) as i64)?.series
    } else {
        ctx.divided_p_series(params.r, k)?.1.series
    };
    let quotient = WeierstrassQuotient::new(&f)?;
    if quotient.degree != rank {
        return Err(KringError::Identity(format!("ambient rank {} differs from p^k N_k = {rank}", quotient.degree)));
    }
    let ring = quotient.ring;
    let mut s = TruncatedSeries::one(ring, order);
    for i in 0..width as u32 {
        s = s.mul(&ctx.m_series(params.q.pow(i) as i64)?.series);
    }
    let s_leading_ok = (0..width).all(|i| s.coeff(i) % p == 0) && s.coeff(width) % p != 0;
    let s_red = quotient.reduce(&s);
    let mut powers = vec![quotient.reduce(&TruncatedSeries::one(ring, order))];
    for _ in 0..n_k {
        let next = quotient.mul(powers.last().unwrap(), &s_red);
        powers.push(next);
    }
    let cols: Vec<Vec<u64>> = powers[..n_k as usize].iter().map(|x| quotient.vector(x)).collect();
    let target = quotient.vector(&powers[n_k as usize]);
    let c = solve_unit_pivots(&ring, &cols, &target)
        .ok_or_else(|| KringError::Identity(format!("powers of s do not close at degree {n_k}")))?;
    let mut g: Vec<u64> = c.iter().map(|x| ring.neg(x)).collect();
    g.push(1);
    let constant_valuation = ring.valuation(g[0]);
    let weierstrass = g[..n_k as usize].iter().all(|x| x % p == 0);
    Ok(QRingPresentation {
        params: *params,
        k,
        precision,
        ambient_rank: rank,
        degree: n_k as usize,
        g,
        n_k,
        constant_valuation,
        weierstrass,
        s_leading_ok,
    })
}
