use super::ring::CoeffRing;
use super::AlgebraError;

/// A one-variable power series known modulo `x^order`, stored densely.
#[derive(Clone, Debug)]
pub struct TruncatedSeries<R: CoeffRing> {
    pub ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: CoeffRing> PartialEq for TruncatedSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: CoeffRing> TruncatedSeries<R> {
    /// Build from leading coefficients, padding with zeros or cutting to `order`.
    pub fn new(ring: R, mut coeffs: Vec<R::Elem>, order: usize) -> Self {
        coeffs.resize(order, ring.zero());
        Self { ring, coeffs }
    }

    pub fn zero(ring: R, order: usize) -> Self {
        Self::new(ring, Vec::new(), order)
    }

    pub fn one(ring: R, order: usize) -> Self {
        let one = ring.one();
        Self::new(ring, vec![one], order)
    }

    /// The series `x`.
    pub fn x(ring: R, order: usize) -> Self {
        Self::monomial(ring, 1, order)
    }

    pub fn monomial(ring: R, k: usize, order: usize) -> Self {
        let mut c = vec![ring.zero(); order];
        if k < order {
            c[k] = ring.one();
        }
        Self { ring, coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn set_coeff(&mut self, i: usize, c: R::Elem) {
        if i < self.coeffs.len() {
            self.coeffs[i] = c;
        }
    }

    /// Cut down (or zero-pad) to a new order.
    pub fn with_order(&self, order: usize) -> Self {
        Self::new(self.ring.clone(), self.coeffs.clone(), order)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.ring.is_zero(c))
    }

    /// Index of the first coefficient that is a unit: the Weierstrass degree.
    pub fn first_unit(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| self.ring.is_unit(c))
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..order).map(|i| self.ring.add(&self.coeffs[i], &other.coeffs[i])).collect();
        Self { ring: self.ring.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..order).map(|i| self.ring.sub(&self.coeffs[i], &other.coeffs[i])).collect();
        Self { ring: self.ring.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Self { ring: self.ring.clone(), coeffs }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        Self { ring: self.ring.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![self.ring.zero(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order - i) {
                if self.ring.is_zero(b) {
                    continue;
                }
                out[i + j] = self.ring.add(&out[i + j], &self.ring.mul(a, b));
            }
        }
        Self { ring: self.ring.clone(), coeffs: out }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut out = Self::one(self.ring.clone(), self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Divide by `x^k`; the order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self, AlgebraError> {
        if self.coeffs.iter().take(k).any(|c| !self.ring.is_zero(c)) {
            return Err(AlgebraError::NotDivisible(k));
        }
        Ok(Self { ring: self.ring.clone(), coeffs: self.coeffs.iter().skip(k).cloned().collect() })
    }

    /// Multiply by `x^k`; the order grows by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![self.ring.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { ring: self.ring.clone(), coeffs }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.ring.mul(&self.ring.from_i64(i as i64), c))
            .collect();
        Self { ring: self.ring.clone(), coeffs }
    }

    /// Multiplicative inverse of a series with unit constant term.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let c0 = self.coeff(0);
        let inv0 = self.ring.inv(&c0).ok_or(AlgebraError::NotInvertible)?;
        let order = self.order();
        let mut out = vec![self.ring.zero(); order];
        if order == 0 {
            return Ok(Self { ring: self.ring.clone(), coeffs: out });
        }
        out[0] = inv0.clone();
        for k in 1..order {
            let mut acc = self.ring.zero();
            for j in 1..=k {
                acc = self.ring.add(&acc, &self.ring.mul(&self.coeffs[j], &out[k - j]));
            }
            out[k] = self.ring.neg(&self.ring.mul(&acc, &inv0));
        }
        Ok(Self { ring: self.ring.clone(), coeffs: out })
    }

    /// `self(g(x))`. The result is correct modulo
    /// `x^{min(order(self) * v(g), order(g))}`.
    pub fn compose(&self, g: &Self) -> Result<Self, AlgebraError> {
        if g.order() > 0 && !self.ring.is_zero(&g.coeffs[0]) {
            return Err(AlgebraError::CompositionDomain);
        }
        let v = g.valuation().unwrap_or(g.order());
        let order = g.order().min(self.order().saturating_mul(v.max(1)));
        let g = g.with_order(order);
        let top = if v == 0 { self.order() } else { self.order().min(order / v + 1) };
        let support: Vec<usize> = (0..top).filter(|&k| !self.ring.is_zero(&self.coeffs[k])).collect();
        let bits = usize::BITS - top.leading_zeros();
        if support.len() * (bits as usize + 1) < top {
            // Sparse outer series: sum of a_k g^k over the support only.
            let mut acc = Self::zero(self.ring.clone(), order);
            let mut last = (0usize, Self::one(self.ring.clone(), order));
            for &k in &support {
                let step = g.pow((k - last.0) as u64);
                let gk = last.1.mul(&step);
                acc = acc.add(&gk.scale(&self.coeffs[k]));
                last = (k, gk);
            }
            return Ok(acc);
        }
        // Horner's scheme, skipping the top coefficients that cannot matter.
        let mut acc = Self::zero(self.ring.clone(), order);
        for k in (0..top).rev() {
            acc = acc.mul(&g);
            if order > 0 {
                acc.coeffs[0] = self.ring.add(&acc.coeffs[0], &self.coeffs[k]);
            }
        }
        Ok(acc)
    }

    /// The compositional inverse `g` with `self(g(x)) = x = g(self(x))`.
    pub fn reversion(&self) -> Result<Self, AlgebraError> {
        let order = self.order();
        if order > 0 && !self.ring.is_zero(&self.coeffs[0]) {
            return Err(AlgebraError::CompositionDomain);
        }
        if order <= 1 {
            return Ok(Self::zero(self.ring.clone(), order));
        }
        let c1 = self.coeff(1);
        let c1_inv = self.ring.inv(&c1).ok_or(AlgebraError::NotInvertible)?;
        if order <= 2 {
            return Ok(Self::new(self.ring.clone(), vec![self.ring.zero(), c1_inv], order));
        }
        let deriv = self.derivative();
        let mut g = Self::new(self.ring.clone(), vec![self.ring.zero(), c1_inv], 2);
        let mut prec = 2;
        while prec < order {
            let old = prec;
            prec = (2 * prec).min(order);
            let gp = g.with_order(prec);
            let fg = self.with_order(prec).compose(&gp)?;
            let residual = fg.sub(&Self::x(self.ring.clone(), prec));
            // residual vanishes below `old`; divide by f'(g) at the reduced order.
            let r = residual.shift_down(old)?;
            let dfg = deriv.with_order(prec - old).compose(&gp.with_order(prec - old))?;
            let corr = r.mul(&dfg.inverse()?).shift_up(old);
            g = gp.sub(&corr);
        }
        Ok(g)
    }

    /// Apply a fallible coefficient map into another ring.
    pub fn map<S: CoeffRing, F>(&self, target: S, f: F) -> Result<TruncatedSeries<S>, AlgebraError>
    where
        F: Fn(&R::Elem) -> Result<S::Elem, AlgebraError>,
    {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries { ring: target, coeffs })
    }

    /// Indices of nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..self.order()).filter(|&i| !self.ring.is_zero(&self.coeffs[i])).collect()
    }
}
