use super::ring::Ring;

/// Dense univariate polynomial over a ring, with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| C::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x);
            acc.plus_assign(c);
        }
        acc
    }

    /// Sum of coefficients, i.e. the value at 1.
    pub fn sum(&self) -> C {
        let mut acc = C::zero();
        for c in &self.coeffs {
            acc.plus_assign(c);
        }
        acc
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Ring::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    fn one() -> Self {
        Self::constant(C::one())
    }

    fn from_i64(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn plus_assign(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), C::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.plus_assign(b);
        }
        self.trim();
    }

    fn minus_assign(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), C::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.minus_assign(b);
        }
        self.trim();
    }

    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j].add_product(a, b);
            }
        }
        Self::new(out)
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let len = a.coeffs.len() + b.coeffs.len() - 1;
        if self.coeffs.len() < len {
            self.coeffs.resize(len, C::zero());
        }
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                self.coeffs[i + j].add_product(x, y);
            }
        }
        self.trim();
    }

    fn negate(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(Ring::negate).collect(),
        }
    }

    /// Exact long division from the leading term down; `None` unless the
    /// remainder vanishes and every step divides exactly.
    fn try_div(&self, other: &Self) -> Option<Self> {
        let dd = other.degree()?;
        let Some(nd) = self.degree() else {
            return Some(Self::zero());
        };
        if nd < dd {
            return None;
        }
        if dd == 0 {
            let c = &other.coeffs[0];
            return self
                .coeffs
                .iter()
                .map(|a| a.try_div(c))
                .collect::<Option<Vec<C>>>()
                .map(Self::new);
        }
        let lead = &other.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut q = vec![C::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let qk = top.try_div(lead)?;
            for (j, d) in other.coeffs.iter().enumerate() {
                let prod = qk.times(d);
                rem[k + j].minus_assign(&prod);
            }
            q[k] = qk;
        }
        rem.iter().all(Ring::is_zero).then(|| Self::new(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Poly<BigInt>;

    #[test]
    fn arithmetic() {
        let a = P::from_i64s(&[1, 1]);
        let sq = a.times(&a);
        assert_eq!(sq, P::from_i64s(&[1, 2, 1]));
        assert_eq!(sq.minus(&sq), P::zero());
        assert_eq!(sq.eval(&BigInt::from(2)), BigInt::from(9));
        assert_eq!(sq.sum(), BigInt::from(4));
        assert_eq!(P::var().degree(), Some(1));
        assert_eq!(P::zero().degree(), None);
    }

    #[test]
    fn exact_division() {
        let a = P::from_i64s(&[2, -3]);
        let b = P::from_i64s(&[1, 4, 1]);
        let prod = a.times(&b);
        assert_eq!(prod.try_div(&a), Some(b.clone()));
        assert_eq!(prod.try_div(&b), Some(a.clone()));
        assert_eq!(b.try_div(&a), None);
        assert_eq!(
            P::from_i64s(&[4, 6]).try_div(&P::from_i64s(&[2])),
            Some(P::from_i64s(&[2, 3]))
        );
        assert_eq!(P::from_i64s(&[3]).try_div(&P::from_i64s(&[2])), None);
    }

    #[test]
    fn nested_polynomials() {
        let t: Poly<P> = Poly::var();
        let l: Poly<P> = Poly::constant(P::var());
        let s = t.plus(&l);
        let sq = s.times(&s);
        // (t + l)^2 = l^2 + 2 l t + t^2
        assert_eq!(sq.coeff(0), P::from_i64s(&[0, 0, 1]));
        assert_eq!(sq.coeff(1), P::from_i64s(&[0, 2]));
        assert_eq!(sq.coeff(2), P::one());
        assert_eq!(sq.try_div(&s), Some(s));
    }
}
