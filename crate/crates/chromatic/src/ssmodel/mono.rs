//! Monomials in a free graded-commutative algebra `P[b] (x) E[e]` over
//! `F_p`, written as the even part followed by the exterior part in
//! increasing generator order.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Default)]
pub struct Mono {
    /// `(generator, exponent)`, sorted by generator, exponents positive.
    pub b: Vec<(u32, u32)>,
    /// Exterior generators, strictly increasing.
    pub e: Vec<u32>,
}

impl Mono {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn b_power(g: u32, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        Self { b: vec![(g, exp)], e: Vec::new() }
    }

    pub fn e_gen(g: u32) -> Self {
        Self { b: Vec::new(), e: vec![g] }
    }

    pub fn b_exp(&self, g: u32) -> u32 {
        self.b.binary_search_by_key(&g, |x| x.0).map(|i| self.b[i].1).unwrap_or(0)
    }

    pub fn has_e(&self, g: u32) -> bool {
        self.e.binary_search(&g).is_ok()
    }

    pub fn is_odd(&self) -> bool {
        self.e.len() % 2 == 1
    }

    /// Product with sign `+1` or `-1`, or `None` when an exterior
    /// generator repeats.
    pub fn mul(&self, other: &Mono) -> Option<(Mono, bool)> {
        let mut b = Vec::with_capacity(self.b.len() + other.b.len());
        let (mut i, mut j) = (0, 0);
        while i < self.b.len() || j < other.b.len() {
            match (self.b.get(i), other.b.get(j)) {
                (Some(x), Some(y)) if x.0 == y.0 => {
                    b.push((x.0, x.1 + y.1));
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x.0 < y.0 => {
                    b.push(*x);
                    i += 1;
                }
                (Some(x), None) => {
                    b.push(*x);
                    i += 1;
                }
                (_, Some(y)) => {
                    b.push(*y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let mut e = Vec::with_capacity(self.e.len() + other.e.len());
        let mut inversions = 0usize;
        let (mut i, mut j) = (0, 0);
        while i < self.e.len() || j < other.e.len() {
            match (self.e.get(i), other.e.get(j)) {
                (Some(x), Some(y)) if x == y => return None,
                (Some(x), Some(y)) if x < y => {
                    e.push(*x);
                    i += 1;
                }
                (Some(x), None) => {
                    e.push(*x);
                    i += 1;
                }
                (_, Some(y)) => {
                    // y moves past the remaining entries of self.e
                    inversions += self.e.len() - i;
                    e.push(*y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Some((Mono { b, e }, inversions % 2 == 1))
    }

    pub fn pow(&self, n: u32) -> Option<Mono> {
        if n == 0 {
            return Some(Mono::one());
        }
        if !self.e.is_empty() && n > 1 {
            return None;
        }
        Some(Mono { b: self.b.iter().map(|&(g, x)| (g, x * n)).collect(), e: self.e.clone() })
    }
}

/// A polynomial: monomial to coefficient in `[1, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct SPoly {
    pub terms: BTreeMap<Mono, u64>,
}

impl SPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Mono, c: u64, p: u64) -> Self {
        let mut s = Self::zero();
        s.add_term(m, c, p);
        s
    }

    pub fn one(p: u64) -> Self {
        Self::monomial(Mono::one(), 1, p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: u64, p: u64) {
        let c = c % p;
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let x = (*o.get() + c) % p;
                if x == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = x;
                }
            }
        }
    }

    pub fn add(&self, other: &SPoly, p: u64) -> SPoly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c, p);
        }
        out
    }

    pub fn scale(&self, c: u64, p: u64) -> SPoly {
        let mut out = SPoly::zero();
        for (m, &x) in &self.terms {
            out.add_term(m.clone(), x * (c % p), p);
        }
        out
    }

    pub fn neg(&self, p: u64) -> SPoly {
        self.scale(p - 1, p)
    }

    pub fn sub(&self, other: &SPoly, p: u64) -> SPoly {
        self.add(&other.neg(p), p)
    }

    pub fn mul(&self, other: &SPoly, p: u64) -> SPoly {
        let mut out = SPoly::zero();
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                if let Some((m, neg)) = a.mul(b) {
                    let c = x * y % p;
                    out.add_term(m, if neg { p - c } else { c }, p);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32, p: u64) -> SPoly {
        let mut out = SPoly::one(p);
        for _ in 0..n {
            out = out.mul(self, p);
        }
        out
    }

    /// Keep the terms accepted by the filter.
    pub fn retain(&self, keep: impl Fn(&Mono) -> bool) -> SPoly {
        SPoly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), *c)).collect() }
    }
}
