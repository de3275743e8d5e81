use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{Monomial, MultiPoly, MAX_VARS};
use super::AlgebraError;

/// A commutative coefficient ring. The ring value carries the context
/// (modulus, variable names, truncation) and elements are plain data.
pub trait CoeffRing: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Multiplicative inverse, if `a` is a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn describe(&self) -> String;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(v))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inv(a).is_some()
    }
    fn pow(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        let mut out = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul(&out, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl CoeffRing for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn describe(&self) -> String {
        "Q".into()
    }
}

/// `Z/p` with canonical representatives in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        Self { p }
    }
}

impl CoeffRing for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.p)
    }
    fn describe(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// `Z/p^a` with canonical representatives in `[0, p^a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModPrimePower {
    pub p: u64,
    pub a: u32,
    pub modulus: u64,
}

impl ModPrimePower {
    pub fn new(p: u64, a: u32) -> Result<Self, AlgebraError> {
        let modulus = p
            .checked_pow(a)
            .filter(|m| *m < (1u64 << 62))
            .ok_or(AlgebraError::ModulusTooLarge { p, a })?;
        Ok(Self { p, a, modulus })
    }

    /// `v_p` of a residue, with `a` standing in for zero.
    pub fn valuation(&self, x: u64) -> u32 {
        if x == 0 {
            return self.a;
        }
        let mut x = x;
        let mut e = 0;
        while x % self.p == 0 {
            x /= self.p;
            e += 1;
        }
        e
    }
}

impl CoeffRing for ModPrimePower {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.modulus)).to_u64().unwrap()
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a % self.modulus) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.modulus)
    }
    fn describe(&self) -> String {
        format!("Z/{}^{}", self.p, self.a)
    }
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let g = BigInt::from(a).extended_gcd(&BigInt::from(m));
    if !g.gcd.is_one() {
        return None;
    }
    g.x.mod_floor(&BigInt::from(m)).to_u64()
}

/// Reduce a rational into `Z/m`, failing if the denominator shares a
/// factor with `p`.
pub fn rational_to_residue(x: &BigRational, p: u64, m: u64) -> Result<u64, AlgebraError> {
    let den = x.denom();
    if (den % BigInt::from(p)).is_zero() {
        return Err(AlgebraError::NotIntegral { p, value: x.to_string() });
    }
    let m_big = BigInt::from(m);
    let num = x.numer().mod_floor(&m_big);
    let den = den.mod_floor(&m_big);
    let inv = inv_mod(den.to_u64().unwrap(), m).ok_or_else(|| AlgebraError::NotIntegral {
        p,
        value: x.to_string(),
    })?;
    Ok(((num.to_u64().unwrap() as u128 * inv as u128) % m as u128) as u64)
}

/// Lift a residue to its symmetric representative in `(-m/2, m/2]`.
pub fn symmetric_lift(x: u64, m: u64) -> i64 {
    if x > m / 2 {
        x as i64 - m as i64
    } else {
        x as i64
    }
}

/// Weighted multivariate polynomials over a base ring, truncated above a
/// weighted degree bound when one is set.
#[derive(Clone, Debug)]
pub struct PolyRing<R: CoeffRing> {
    pub base: R,
    pub names: Vec<String>,
    pub weights: Vec<u32>,
    pub bound: Option<u32>,
    truncated: Arc<AtomicBool>,
}

impl<R: CoeffRing> PolyRing<R> {
    pub fn new(base: R, names: Vec<String>, weights: Vec<u32>, bound: Option<u32>) -> Result<Self, AlgebraError> {
        if names.len() != weights.len() {
            return Err(AlgebraError::Shape("names and weights differ in length".into()));
        }
        if names.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(names.len()));
        }
        Ok(Self { base, names, weights, bound, truncated: Arc::new(AtomicBool::new(false)) })
    }

    /// Variables named `prefix1 .. prefixN`, all of weight one.
    pub fn uniform(base: R, prefix: &str, nvars: usize, bound: Option<u32>) -> Result<Self, AlgebraError> {
        let names = (1..=nvars).map(|i| format!("{prefix}{i}")).collect();
        Self::new(base, names, vec![1; nvars], bound)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn truncation_occurred(&self) -> bool {
        self.truncated.load(Ordering::Relaxed)
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u32 {
        m.weighted_degree(&self.weights)
    }

    fn admits(&self, m: &Monomial) -> bool {
        match self.bound {
            Some(b) => self.weighted_degree(m) <= b,
            None => true,
        }
    }

    pub fn var(&self, i: usize) -> MultiPoly<R::Elem> {
        self.monomial(Monomial::var(i), self.base.one())
    }

    pub fn constant(&self, c: R::Elem) -> MultiPoly<R::Elem> {
        self.monomial(Monomial::one(), c)
    }

    pub fn monomial(&self, m: Monomial, c: R::Elem) -> MultiPoly<R::Elem> {
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&c) {
            if self.admits(&m) {
                terms.insert(m, c);
            } else {
                self.truncated.store(true, Ordering::Relaxed);
            }
        }
        MultiPoly { terms }
    }

    pub fn scale(&self, a: &MultiPoly<R::Elem>, c: &R::Elem) -> MultiPoly<R::Elem> {
        let terms = a
            .terms
            .iter()
            .filter_map(|(m, x)| {
                let y = self.base.mul(x, c);
                (!self.base.is_zero(&y)).then(|| (*m, y))
            })
            .collect();
        MultiPoly { terms }
    }

    /// Multiply by a single monomial term.
    pub fn mul_term(&self, a: &MultiPoly<R::Elem>, m: &Monomial, c: &R::Elem) -> MultiPoly<R::Elem> {
        let mut terms = BTreeMap::new();
        for (am, ac) in &a.terms {
            let prod = am.mul(m);
            if !self.admits(&prod) {
                self.truncated.store(true, Ordering::Relaxed);
                continue;
            }
            let v = self.base.mul(ac, c);
            if !self.base.is_zero(&v) {
                terms.insert(prod, v);
            }
        }
        MultiPoly { terms }
    }

    /// Substitute `images[i]` for variable `i` of a polynomial over the
    /// same base ring. The images live in `self`; `source_nvars` is the
    /// number of variables of `poly`.
    pub fn substitute(&self, poly: &MultiPoly<R::Elem>, images: &[MultiPoly<R::Elem>]) -> MultiPoly<R::Elem> {
        let mut powers: Vec<Vec<MultiPoly<R::Elem>>> = images.iter().map(|_| vec![self.one()]).collect();
        let mut out = self.zero();
        for (m, c) in &poly.terms {
            let mut term = self.constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate().take(images.len()) {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = self.mul(powers[i].last().unwrap(), &images[i]);
                    powers[i].push(next);
                }
                term = self.mul(&term, &powers[i][e as usize]);
                if term.terms.is_empty() {
                    break;
                }
            }
            out = self.add(&out, &term);
        }
        out
    }

    /// Evaluate all variables at zero.
    pub fn constant_term(&self, a: &MultiPoly<R::Elem>) -> R::Elem {
        a.terms.get(&Monomial::one()).cloned().unwrap_or_else(|| self.base.zero())
    }
}

impl<R: CoeffRing> CoeffRing for PolyRing<R> {
    type Elem = MultiPoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        MultiPoly { terms: BTreeMap::new() }
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn from_bigint(&self, v: &BigInt) -> Self::Elem {
        self.constant(self.base.from_bigint(v))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            match terms.get_mut(m) {
                Some(x) => {
                    let s = self.base.add(x, c);
                    if self.base.is_zero(&s) {
                        terms.remove(m);
                    } else {
                        *x = s;
                    }
                }
                None => {
                    terms.insert(*m, c.clone());
                }
            }
        }
        MultiPoly { terms }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        MultiPoly { terms: a.terms.iter().map(|(m, c)| (*m, self.base.neg(c))).collect() }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.terms.len() == 1 {
            let (m, c) = a.terms.iter().next().unwrap();
            return self.mul_term(b, m, c);
        }
        if b.terms.len() == 1 {
            let (m, c) = b.terms.iter().next().unwrap();
            return self.mul_term(a, m, c);
        }
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
        let bdeg: Vec<(u32, &Monomial, &R::Elem)> =
            b.terms.iter().map(|(m, c)| (self.weighted_degree(m), m, c)).collect();
        for (am, ac) in &a.terms {
            let ad = self.weighted_degree(am);
            for (bd, bm, bc) in &bdeg {
                if let Some(bound) = self.bound {
                    if ad + bd > bound {
                        self.truncated.store(true, Ordering::Relaxed);
                        continue;
                    }
                }
                let prod = am.mul(bm);
                let v = self.base.mul(ac, bc);
                match acc.get_mut(&prod) {
                    Some(x) => *x = self.base.add(x, &v),
                    None => {
                        acc.insert(prod, v);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !self.base.is_zero(c)).collect();
        MultiPoly { terms }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.terms.is_empty()
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        // Only constants with unit value are inverted; bounded rings would
        // also admit unit power series but nothing here needs them.
        if a.terms.len() == 1 {
            if let Some(c) = a.terms.get(&Monomial::one()) {
                return self.base.inv(c).map(|i| self.constant(i));
            }
        }
        None
    }
    fn describe(&self) -> String {
        let bound = self.bound.map(|b| format!(", deg <= {b}")).unwrap_or_default();
        format!("{}[{}{}]", self.base.describe(), self.names.join(","), bound)
    }
}

/// Map every coefficient of a polynomial through `f`.
pub fn map_poly<E, F, G>(a: &MultiPoly<E>, target: &G, f: F) -> Result<MultiPoly<G::Elem>, AlgebraError>
where
    G: CoeffRing,
    F: Fn(&E) -> Result<G::Elem, AlgebraError>,
{
    let mut terms = BTreeMap::new();
    for (m, c) in &a.terms {
        let v = f(c)?;
        if !target.is_zero(&v) {
            terms.insert(*m, v);
        }
    }
    Ok(MultiPoly { terms })
}

/// True when the rational is a `p`-adic integer.
pub fn is_p_integral(x: &BigRational, p: u64) -> bool {
    !(x.denom() % BigInt::from(p)).is_zero()
}

