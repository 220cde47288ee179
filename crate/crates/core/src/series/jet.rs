use super::ring::Ring;

/// Truncated expansion `c0 + c1·ε + c2·ε²` with `ε³ = 0`.
///
/// Substituting `x = 1 + ε` for a marker turns a marker polynomial `F(x)` into
/// `F(1) + F'(1)·ε + F''(1)/2·ε²`, which is all the moment formulas need.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Jet<C> {
    pub c: [C; 3],
}

impl<C: Ring> Jet<C> {
    pub fn new(c0: C, c1: C, c2: C) -> Self {
        Self { c: [c0, c1, c2] }
    }

    /// `1 + ε`.
    pub fn unit_marker() -> Self {
        Self::new(C::one(), C::one(), C::zero())
    }

    pub fn constant(c0: C) -> Self {
        Self::new(c0, C::zero(), C::zero())
    }
}

impl<C: Ring> Ring for Jet<C> {
    fn zero() -> Self {
        Self::constant(C::zero())
    }

    fn one() -> Self {
        Self::constant(C::one())
    }

    fn from_i64(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(Ring::is_zero)
    }

    fn plus_assign(&mut self, other: &Self) {
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            a.plus_assign(b);
        }
    }

    fn minus_assign(&mut self, other: &Self) {
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            a.minus_assign(b);
        }
    }

    fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        out.add_product(self, other);
        out
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        let [a0, a1, a2] = &a.c;
        let [b0, b1, b2] = &b.c;
        self.c[0].add_product(a0, b0);
        self.c[1].add_product(a0, b1);
        self.c[1].add_product(a1, b0);
        self.c[2].add_product(a0, b2);
        self.c[2].add_product(a1, b1);
        self.c[2].add_product(a2, b0);
    }

    fn negate(&self) -> Self {
        Self {
            c: [self.c[0].negate(), self.c[1].negate(), self.c[2].negate()],
        }
    }

    /// Solves `q · other = self` one order at a time; needs exact division
    /// by the constant term of `other`.
    fn try_div(&self, other: &Self) -> Option<Self> {
        let d0 = &other.c[0];
        let q0 = self.c[0].try_div(d0)?;
        let mut r1 = self.c[1].clone();
        r1.minus_assign(&q0.times(&other.c[1]));
        let q1 = r1.try_div(d0)?;
        let mut r2 = self.c[2].clone();
        r2.minus_assign(&q0.times(&other.c[2]));
        r2.minus_assign(&q1.times(&other.c[1]));
        let q2 = r2.try_div(d0)?;
        Some(Self::new(q0, q1, q2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Poly;
    use num_bigint::BigInt;

    fn j(a: i64, b: i64, c: i64) -> Jet<BigInt> {
        Jet::new(a.into(), b.into(), c.into())
    }

    #[test]
    fn polynomial_at_one_plus_eps() {
        // F(x) = 3 + 2x + 5x^3: F(1) = 10, F'(1) = 17, F''(1)/2 = 15
        let f: Poly<Jet<BigInt>> = Poly::from_i64s(&[3, 2, 0, 5]);
        assert_eq!(f.eval(&Jet::unit_marker()), j(10, 17, 15));
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = j(4, 2, 0);
        let b = j(3, -1, 7);
        assert_eq!(a.times(&b).try_div(&a), Some(b.clone()));
        assert_eq!(j(1, 0, 0).try_div(&j(2, 0, 0)), None);
    }
}
