use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const MAX_VARS: usize = 8;

/// An exponent vector in at most [`MAX_VARS`] variables. The derived order
/// is lexicographic on the exponent vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Monomial(pub [u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Self([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Self(e)
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut e = [0; MAX_VARS];
        for (slot, &x) in e.iter_mut().zip(exps) {
            *slot = u16::try_from(x).expect("exponent overflow");
        }
        Self(e)
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Self(e)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Self(e))
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&x| x as u32).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(&x, &w)| x as u32 * w).sum()
    }

    pub fn swap(&self, i: usize, j: usize) -> Self {
        let mut e = self.0;
        e.swap(i, j);
        Self(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn to_vec(&self, nvars: usize) -> Vec<u32> {
        self.0[..nvars].iter().map(|&x| x as u32).collect()
    }
}

/// Graded lexicographic comparison on weighted degree, ties broken
/// lexicographically on the exponent vector.
pub fn grlex_cmp(a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
    a.weighted_degree(weights)
        .cmp(&b.weighted_degree(weights))
        .then_with(|| a.cmp(b))
}

/// All monomials in `nvars` variables of weighted degree at most `bound`,
/// sorted by [`grlex_cmp`].
pub fn monomials_up_to(weights: &[u32], bound: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut [u32], out: &mut Vec<Monomial>) {
        if i == weights.len() {
            out.push(Monomial::from_exps(cur));
            return;
        }
        let w = weights[i];
        let mut e = 0;
        while e * w <= left {
            cur[i] = e;
            rec(weights, i + 1, left - e * w, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; weights.len()];
    rec(weights, 0, bound, &mut cur, &mut out);
    out.sort_by(|a, b| grlex_cmp(a, b, weights));
    out
}

/// A sparse polynomial: exponent vector to nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct MultiPoly<E> {
    pub terms: BTreeMap<Monomial, E>,
}

impl<E: Clone> MultiPoly<E> {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    /// The grlex-largest monomial with its coefficient.
    pub fn leading(&self, weights: &[u32]) -> Option<(Monomial, E)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex_cmp(a.0, b.0, weights))
            .map(|(m, c)| (*m, c.clone()))
    }

    /// Lowest weighted degree of a stored term.
    pub fn low_degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.keys().map(|m| m.weighted_degree(weights)).min()
    }

    pub fn high_degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.keys().map(|m| m.weighted_degree(weights)).max()
    }

    /// Keep only terms of weighted degree at most `bound`.
    pub fn truncate(&self, weights: &[u32], bound: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(weights) <= bound)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }
}
