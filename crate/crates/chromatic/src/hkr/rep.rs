//! Representations as multisets of orbits, and the counting functions of a
//! semisimple category whose simple objects have endomorphism fields of
//! order `Q_S = q^{|S|}`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::numerics::{gauss_binom, gl_order, ChromaticParams};

use super::orbits::{enumerate_orbits, OrbitLabel};
use super::HkrError;

/// Multiplicities indexed by position in [`RepContext::irreducibles`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Default)]
pub struct RepClass {
    pub mult: Vec<u32>,
}

impl RepClass {
    pub fn zero(width: usize) -> Self {
        Self { mult: vec![0; width] }
    }

    pub fn sum(&self, other: &RepClass) -> RepClass {
        RepClass { mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// `self - other` when `other` is a summand.
    pub fn minus(&self, other: &RepClass) -> Option<RepClass> {
        let mult: Option<Vec<u32>> = self.mult.iter().zip(&other.mult).map(|(a, b)| a.checked_sub(*b)).collect();
        mult.map(|mult| RepClass { mult })
    }

    /// Every summand type `A` of `self`, paired with its complement.
    pub fn splittings(&self) -> Vec<(RepClass, RepClass)> {
        let mut out = vec![(Vec::new(), Vec::new())];
        for &m in &self.mult {
            let mut next = Vec::with_capacity(out.len() * (m as usize + 1));
            for (a, b) in &out {
                for x in 0..=m {
                    let (mut a2, mut b2): (Vec<u32>, Vec<u32>) = (a.clone(), b.clone());
                    a2.push(x);
                    b2.push(m - x);
                    next.push((a2, b2));
                }
            }
            out = next;
        }
        out.into_iter().map(|(a, b)| (RepClass { mult: a }, RepClass { mult: b })).collect()
    }
}

/// Orbits at a fixed level with the irreducibles of dimension at most
/// `dmax`, and every representation class up to that dimension.
#[derive(Clone, Debug, Serialize)]
pub struct RepContext {
    pub params: ChromaticParams,
    pub level: u32,
    pub dmax: u32,
    pub orbits: Vec<OrbitLabel>,
    pub irreducibles: Vec<OrbitLabel>,
    /// `Q_S = q^{|S|}` per irreducible.
    pub field_orders: Vec<BigUint>,
    pub classes: Vec<RepClass>,
    trivial: usize,
}

impl RepContext {
    /// Rejects levels too small to see every irreducible of dimension at most
    /// `dmax`.
    pub fn new(params: &ChromaticParams, level: u32, dmax: u32) -> Result<Self, HkrError> {
        let mut needed = params.r;
        while params.p.pow(needed + 1 - params.r) <= dmax as u64 {
            needed += 1;
        }
        if level < needed {
            return Err(HkrError::LevelTooSmall { level, needed });
        }
        let orbits = enumerate_orbits(params, level)?;
        let irreducibles: Vec<OrbitLabel> = orbits.iter().filter(|o| o.size <= dmax as u64).cloned().collect();
        let trivial = irreducibles.iter().position(OrbitLabel::is_zero).expect("zero orbit");
        let field_orders = irreducibles.iter().map(|o| BigUint::from(params.q).pow(o.size as u32)).collect();
        let mut ctx = Self { params: *params, level, dmax, orbits, irreducibles, field_orders, classes: Vec::new(), trivial };
        ctx.classes = ctx.enumerate_classes();
        Ok(ctx)
    }

    fn enumerate_classes(&self) -> Vec<RepClass> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.irreducibles.len()];
        self.fill(0, self.dmax as u64, &mut cur, &mut out);
        out.sort_by_key(|c| (self.dim(c), c.clone()));
        out
    }

    fn fill(&self, i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<RepClass>) {
        if i == self.irreducibles.len() {
            out.push(RepClass { mult: cur.clone() });
            return;
        }
        let size = self.irreducibles[i].size;
        let mut m = 0u64;
        while m * size <= left {
            cur[i] = m as u32;
            self.fill(i + 1, left - m * size, cur, out);
            m += 1;
        }
        cur[i] = 0;
    }

    pub fn width(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn zero(&self) -> RepClass {
        RepClass::zero(self.width())
    }

    pub fn trivial_index(&self) -> usize {
        self.trivial
    }

    /// The class `S^m` of an irreducible.
    pub fn irreducible(&self, i: usize, m: u32) -> RepClass {
        let mut c = self.zero();
        c.mult[i] = m;
        c
    }

    pub fn trivial(&self, m: u32) -> RepClass {
        self.irreducible(self.trivial, m)
    }

    /// Index of the irreducible with the given representative.
    pub fn find(&self, representative: &[u64]) -> Option<usize> {
        self.irreducibles.iter().position(|o| o.representative == representative)
    }

    pub fn dim(&self, v: &RepClass) -> u64 {
        v.mult.iter().zip(&self.irreducibles).map(|(&m, o)| m as u64 * o.size).sum()
    }

    pub fn check(&self, v: &RepClass) -> Result<(), HkrError> {
        if v.mult.len() != self.width() {
            return Err(HkrError::Shape(v.mult.len()));
        }
        let d = self.dim(v);
        if d > self.dmax as u64 {
            return Err(HkrError::OutOfDomain { dim: d, dmax: self.dmax });
        }
        Ok(())
    }

    pub fn classes_of_dim(&self, d: u64) -> impl Iterator<Item = &RepClass> {
        self.classes.iter().filter(move |c| self.dim(c) == d)
    }

    pub fn format(&self, v: &RepClass) -> String {
        let parts: Vec<String> = v
            .mult
            .iter()
            .zip(&self.irreducibles)
            .filter(|(m, _)| **m > 0)
            .map(|(m, o)| if *m == 1 { o.label() } else { format!("{}^{m}", o.label()) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    /// `|Hom(V, W)| = prod_S Q_S^{m_S(V) m_S(W)}`.
    pub fn hom_count(&self, v: &RepClass, w: &RepClass) -> BigUint {
        let mut out = BigUint::one();
        for ((a, b), q) in v.mult.iter().zip(&w.mult).zip(&self.field_orders) {
            out *= q.pow(a * b);
        }
        out
    }

    /// `|Fix(V)| = q^{m_triv(V)}`.
    pub fn fix_value(&self, v: &RepClass) -> BigUint {
        BigUint::from(self.params.q).pow(v.mult[self.trivial])
    }

    pub fn aut_count(&self, v: &RepClass) -> BigUint {
        v.mult.iter().zip(&self.field_orders).map(|(&m, q)| gl_order(q, m)).product()
    }

    /// `|Iso(A, V)|`.
    pub fn iso_count(&self, a: &RepClass, v: &RepClass) -> BigUint {
        if a == v {
            self.aut_count(v)
        } else {
            BigUint::zero()
        }
    }

    /// Subrepresentations `U <= W` with `U = A` and `W/U = B`.
    pub fn subrep_count(&self, w: &RepClass, a: &RepClass, b: &RepClass) -> BigUint {
        if a.sum(b) != *w {
            return BigUint::zero();
        }
        w.mult.iter().zip(&a.mult).zip(&self.field_orders).map(|((&m, &x), q)| gauss_binom(m, x, q)).product()
    }

    /// Ordered internal splittings `W = V_0 (+) V_1` with `V_0 = A`, `V_1 = B`.
    pub fn decomposition_count(&self, w: &RepClass, a: &RepClass, b: &RepClass) -> BigUint {
        if a.sum(b) != *w {
            return BigUint::zero();
        }
        let mut out = BigUint::one();
        for (((&m, &x), &y), q) in w.mult.iter().zip(&a.mult).zip(&b.mult).zip(&self.field_orders) {
            out *= gauss_binom(m, x, q) * q.pow(x * y);
        }
        out
    }
}
