//! Integer combinatorics: valuations, group orders, the `N_k` family,
//! the Poincaré series of the representation groupoid and Gaussian
//! binomials.
//!
//! Everything here is arbitrary precision.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericsError {
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("p = {0} is not an odd prime")]
    BadPrime(u64),
    #[error("height n must be positive")]
    BadHeight,
    #[error("r must be positive")]
    BadR,
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("q = {q} is divisible by p = {p}")]
    QDivisibleByP { p: u64, q: u64 },
    #[error("v_{p}(q - 1) = {actual} for q = {q}, expected r = {r}")]
    WrongR { p: u64, q: u64, r: u32, actual: u32 },
    #[error("N-identity ({which}) fails at k = {k}")]
    IdentityFailure { which: char, k: usize },
}

/// The standing parameters: odd prime `p`, height `n`, `r = v_p(q - 1)`
/// and the field size `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChromaticParams {
    pub p: u64,
    pub n: u32,
    pub r: u32,
    pub q: u64,
}

impl ChromaticParams {
    pub fn new(p: u64, n: u32, r: u32, q: u64) -> Result<Self, NumericsError> {
        if p < 3 || !is_prime(p) {
            return Err(NumericsError::BadPrime(p));
        }
        if n == 0 {
            return Err(NumericsError::BadHeight);
        }
        if r == 0 {
            return Err(NumericsError::BadR);
        }
        if prime_power(q).is_none() {
            return Err(NumericsError::NotPrimePower(q));
        }
        if q % p == 0 {
            return Err(NumericsError::QDivisibleByP { p, q });
        }
        let actual = vp_u64(q - 1, p)?;
        if actual != r {
            return Err(NumericsError::WrongR { p, q, r, actual });
        }
        Ok(Self { p, n, r, q })
    }

    /// `p^e` as a big integer.
    pub fn p_pow(&self, e: u64) -> BigUint {
        big_pow(self.p, e)
    }

    /// `p^{n(k + r)}`, the nilpotency exponent attached to level `k`.
    pub fn nilpotency_exponent(&self, k: u32) -> BigUint {
        self.p_pow(self.n as u64 * (k + self.r) as u64)
    }

    /// The largest `k` with `p^k <= d` (zero for `d <= 1`).
    pub fn level_of(&self, d: u64) -> u32 {
        let mut k = 0;
        let mut pk = self.p;
        while pk <= d {
            k += 1;
            pk = pk.saturating_mul(self.p);
        }
        k
    }
}

pub fn big_pow(base: u64, e: u64) -> BigUint {
    num_traits::pow::pow(BigUint::from(base), e as usize)
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut f = 2u64;
    while f * f <= m {
        if m % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

/// Returns `(ell, e)` with `q = ell^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut f = 2u64;
    while f * f <= q {
        if q % f == 0 {
            break;
        }
        f += 1;
    }
    let ell = if f * f > q { q } else { f };
    let mut rest = q;
    let mut e = 0;
    while rest % ell == 0 {
        rest /= ell;
        e += 1;
    }
    (rest == 1).then_some((ell, e))
}

/// The `p`-adic valuation of a nonzero integer.
pub fn vp(m: &BigInt, p: u64) -> Result<u32, NumericsError> {
    if m.is_zero() {
        return Err(NumericsError::ZeroValuation);
    }
    let p = BigInt::from(p);
    let mut m = m.abs();
    let mut e = 0;
    loop {
        let (quot, rem) = m.div_rem(&p);
        if !rem.is_zero() {
            return Ok(e);
        }
        m = quot;
        e += 1;
    }
}

pub fn vp_u64(m: u64, p: u64) -> Result<u32, NumericsError> {
    if m == 0 {
        return Err(NumericsError::ZeroValuation);
    }
    let mut m = m;
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    Ok(e)
}

/// Sum of the base-`p` digits of `d`.
pub fn digit_sum(d: u64, p: u64) -> u64 {
    let mut d = d;
    let mut s = 0;
    while d > 0 {
        s += d % p;
        d /= p;
    }
    s
}

/// `|GL_d(F_q)| = prod_{k<d} (q^d - q^k)`.
pub fn gl_order(q: &BigUint, d: u32) -> BigUint {
    let qd = num_traits::pow::pow(q.clone(), d as usize);
    let mut qk = BigUint::one();
    let mut out = BigUint::one();
    for _ in 0..d {
        out *= &qd - &qk;
        qk *= q;
    }
    out
}

/// `v_p` of the index of `prod_i GL_{p^i}^{d_i}` in `GL_d`, where
/// `d = sum_i d_i p^i` is the base-`p` expansion.
pub fn block_index_valuation(params: &ChromaticParams, d: u32) -> u32 {
    let q = BigUint::from(params.q);
    let whole = BigInt::from(gl_order(&q, d));
    let mut sub = BigUint::one();
    let mut rest = d as u64;
    let mut pi = 1u64;
    while rest > 0 {
        let di = rest % params.p;
        let block = gl_order(&q, pi as u32);
        for _ in 0..di {
            sub *= &block;
        }
        rest /= params.p;
        pi *= params.p;
    }
    let sub = BigInt::from(sub);
    vp(&whole, params.p).unwrap() - vp(&sub, params.p).unwrap()
}

/// The integer family `N_k`, its partial sums `Nbar_k` and `N*_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NkTable {
    pub params: ChromaticParams,
    pub n: Vec<BigInt>,
    pub nbar: Vec<BigInt>,
    pub nstar: Vec<BigInt>,
}

impl NkTable {
    pub fn new(params: ChromaticParams, kmax: usize) -> Result<Self, NumericsError> {
        let (p, n, r) = (params.p, params.n as u64, params.r as u64);
        let pw = |e: u64| BigInt::from(big_pow(p, e));
        let mut nk = Vec::with_capacity(kmax + 1);
        let mut nbar = Vec::with_capacity(kmax + 1);
        let mut nstar = Vec::with_capacity(kmax + 1);
        let mut acc = BigInt::zero();
        for k in 0..=kmax as u64 {
            let v = if k == 0 {
                pw(n * r)
            } else {
                pw((n - 1) * k + n * (r - 1)) * (pw(n) - 1)
            };
            acc += &v;
            nk.push(v);
            nbar.push(acc.clone());
            nstar.push(&acc - pw(n * k + n * r - k));
        }
        let table = Self { params, n: nk, nbar, nstar };
        table.verify()?;
        Ok(table)
    }

    pub fn kmax(&self) -> usize {
        self.n.len() - 1
    }

    /// `Nbar_{k}` with the convention `Nbar_{-1} = 0`.
    pub fn nbar_before(&self, k: usize) -> BigInt {
        if k == 0 {
            BigInt::zero()
        } else {
            self.nbar[k - 1].clone()
        }
    }

    pub fn n_u64(&self, k: usize) -> Option<u64> {
        self.n[k].to_u64()
    }

    pub fn nbar_u64(&self, k: usize) -> Option<u64> {
        self.nbar[k].to_u64()
    }

    pub fn nstar_u64(&self, k: usize) -> Option<u64> {
        self.nstar[k].to_u64()
    }

    /// The index `m` with `i` in `[Nbar_{m-1}, Nbar_m)`, if it lies in the table.
    pub fn family_of(&self, i: u64) -> Option<usize> {
        let i = BigInt::from(i);
        self.nbar.iter().position(|nb| i < *nb)
    }

    /// Truth values of identities (A) to (E) at level `k`. Identities (D)
    /// and (E) need `k + 1` to be in the table and report `true` otherwise.
    pub fn identities_at(&self, k: usize) -> [bool; 5] {
        let p = self.params.p;
        let n = self.params.n as u64;
        let r = self.params.r as u64;
        let pw = |e: u64| BigInt::from(big_pow(p, e));
        let ku = k as u64;
        let pk = pw(ku);
        let a = if k == 0 {
            &pk * &self.n[0] == pw(n * r)
        } else {
            &pk * &self.n[k] == pw(n * (r + ku)) - pw(n * (r + ku - 1))
        };
        let b = (0..=k).map(|j| pw(j as u64) * &self.n[j]).sum::<BigInt>() == pw(n * (r + ku));
        let c = &pk * (&self.nbar[k] - &self.nstar[k]) == pw(n * (ku + r));
        let (d, e) = if k < self.kmax() {
            let pk1 = pw(ku + 1);
            let d = &pk1 * (&self.nbar[k] - &self.nstar[k + 1]) == pw(n * (ku + r));
            let e = &pk1 * &self.nstar[k + 1]
                == BigInt::from(p - 1) * &pk * &self.nbar[k] + &pk * &self.nstar[k];
            (d, e)
        } else {
            (true, true)
        };
        [a, b, c, d, e]
    }

    pub fn verify(&self) -> Result<(), NumericsError> {
        for k in 0..=self.kmax() {
            for (flag, which) in self.identities_at(k).iter().zip(['A', 'B', 'C', 'D', 'E']) {
                if !flag {
                    return Err(NumericsError::IdentityFailure { which, k });
                }
            }
        }
        Ok(())
    }
}

/// Coefficients of `t^0 .. t^tmax` in `prod_k (1 - t^{p^k})^{-N_k}`.
pub fn poincare_series(params: &ChromaticParams, tmax: usize) -> Vec<BigUint> {
    let mut kmax = 0usize;
    while (params.p as u128).pow(kmax as u32 + 1) <= tmax as u128 {
        kmax += 1;
    }
    let table = NkTable::new(*params, kmax).expect("N-table identities");
    let mut coeffs = vec![BigUint::zero(); tmax + 1];
    coeffs[0] = BigUint::one();
    for k in 0..=kmax {
        let step = params.p.pow(k as u32) as usize;
        let reps = table.n[k].to_biguint().expect("nonnegative");
        // Multiply by (1 - t^step)^{-N}: coefficient of t^{step j} is C(N + j - 1, j).
        let mut factor = vec![BigUint::zero(); tmax / step + 1];
        factor[0] = BigUint::one();
        for j in 1..factor.len() {
            let jb = BigUint::from(j);
            factor[j] = &factor[j - 1] * (&reps + &jb - 1u32) / &jb;
        }
        let mut next = vec![BigUint::zero(); tmax + 1];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, f) in factor.iter().enumerate() {
                let t = i + j * step;
                if t > tmax {
                    break;
                }
                next[t] += c * f;
            }
        }
        coeffs = next;
    }
    coeffs
}

/// Number of `a`-dimensional subspaces of an `m`-dimensional space over a
/// field of order `big_q`. Zero when `a > m`.
pub fn gauss_binom(m: u32, a: u32, big_q: &BigUint) -> BigUint {
    if a > m {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..a {
        num *= num_traits::pow::pow(big_q.clone(), (m - i) as usize) - 1u32;
        den *= num_traits::pow::pow(big_q.clone(), (i + 1) as usize) - 1u32;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(19), Some((19, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn level_of_matches_powers() {
        let params = ChromaticParams::new(3, 1, 1, 4).unwrap();
        assert_eq!(params.level_of(1), 0);
        assert_eq!(params.level_of(2), 0);
        assert_eq!(params.level_of(3), 1);
        assert_eq!(params.level_of(9), 2);
    }
}
