use super::ring::Ring;
use crate::error::{Error, Result};

/// Power series in `z` truncated after `z^order`, over a coefficient ring.
///
/// Every operation is exact through the order of its result. Binary
/// operations return the smaller of the two orders; division by a series of
/// valuation `v` loses `v` orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> Series<C> {
    /// Pads or truncates `coeffs` to `order + 1` terms.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(Vec::new(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::from_coeffs(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        Self::monomial(C::one(), 1, order)
    }

    /// `c·z^k`.
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        if k <= order {
            coeffs[k] = c;
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Number of coefficients up to the last nonzero one.
    fn effective_len(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map_or(0, |i| i + 1)
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| self.coeffs[n].plus(&other.coeffs[n]))
            .collect();
        Self { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| self.coeffs[n].minus(&other.coeffs[n]))
            .collect();
        Self { coeffs }
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::negate)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.times(c))
    }

    /// Multiplication by `z^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![C::zero(); order + 1];
        for n in k..=order {
            coeffs[n] = self.coeffs[n - k].clone();
        }
        Self { coeffs }
    }

    /// Truncated product; short (polynomial-like) factors cost only their
    /// effective length.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let la = self.effective_len().min(order + 1);
        let lb = other.effective_len().min(order + 1);
        let mut coeffs = vec![C::zero(); order + 1];
        for i in 0..la {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in 0..lb.min(order + 1 - i) {
                coeffs[i + j].add_product(a, &other.coeffs[j]);
            }
        }
        Self { coeffs }
    }

    /// Exact quotient `self / other`.
    ///
    /// Leading zeros of the divisor are cancelled against the dividend (which
    /// must vanish to the same order), and each quotient coefficient needs an
    /// exact division by the divisor's first nonzero coefficient.
    pub fn try_div(&self, other: &Self) -> Result<Self> {
        let v = other.valuation().ok_or(Error::NonInvertible)?;
        if self.coeffs.iter().take(v).any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        let order = self
            .order()
            .min(other.order())
            .checked_sub(v)
            .ok_or(Error::InexactDivision)?;
        let num = &self.coeffs[v..];
        let den = &other.coeffs[v..];
        let ld = den.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
        let d0 = &den[0];
        let mut q: Vec<C> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = num[n].clone();
            for k in 1..ld.min(n + 1) {
                let prod = den[k].times(&q[n - k]);
                acc.minus_assign(&prod);
            }
            q.push(acc.try_div(d0).ok_or(Error::InexactDivision)?);
        }
        Ok(Self { coeffs: q })
    }

    /// `1 / self`; needs a unit constant term.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NonInvertible);
        }
        Self::one(self.order())
            .try_div(self)
            .map_err(|_| Error::NonInvertible)
    }

    /// `1 / (1 - self)`.
    pub fn seq(&self) -> Result<Self> {
        Self::one(self.order()).sub(self).inverse()
    }

    /// `self / (1 - self)`.
    pub fn seq_plus(&self) -> Result<Self> {
        Ok(self.mul(&self.seq()?))
    }

    fn halve(&self) -> Result<Self> {
        let two = C::from_i64(2);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.try_div(&two).ok_or(Error::InexactDivision))
            .collect::<Result<Vec<C>>>()?;
        Ok(Self { coeffs })
    }

    fn check_sqrt_constant(&self) -> Result<()> {
        if self.coeffs[0] != C::one() {
            return Err(Error::SqrtConstant);
        }
        Ok(())
    }

    /// Square root with constant term 1, by Newton iteration
    /// `s ← s + (f − s²)/(2s)` with doubling precision.
    pub fn sqrt(&self) -> Result<Self> {
        self.check_sqrt_constant()?;
        let order = self.order();
        let mut s = Self::one(0);
        let mut known = 1;
        while known < order + 1 {
            let next = (2 * known).min(order + 1);
            let o = next - 1;
            let s_ext = Self::from_coeffs(s.coeffs.clone(), o);
            let residual = self.truncate(o).sub(&s_ext.mul(&s_ext));
            let corr = residual.try_div(&s_ext)?.halve()?;
            s = s_ext.add(&corr);
            known = next;
        }
        Ok(Self::from_coeffs(s.coeffs, order))
    }

    /// Square root with constant term 1 from `s_n = (f_n − Σ s_k s_{n−k}) / 2`.
    pub fn sqrt_by_recurrence(&self) -> Result<Self> {
        self.check_sqrt_constant()?;
        let order = self.order();
        let two = C::from_i64(2);
        let mut s: Vec<C> = vec![C::one()];
        for n in 1..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                let prod = s[k].times(&s[n - k]);
                acc.minus_assign(&prod);
            }
            s.push(acc.try_div(&two).ok_or(Error::InexactDivision)?);
        }
        Ok(Self { coeffs: s })
    }

    /// Square root of a polynomial `p` with `p(0) = 1`, from the linear
    /// recurrence implied by `2·p·s' = p'·s`; linear in `order` for fixed
    /// degree.
    pub fn sqrt_of_polynomial(p: &[C], order: usize) -> Result<Self> {
        if p.first() != Some(&C::one()) {
            return Err(Error::SqrtConstant);
        }
        let d = p.len() - 1;
        let mut s: Vec<C> = vec![C::one()];
        for n in 0..order {
            // 2(n+1)·s_{n+1} = Σ_{i=1..d} (3i − 2n − 2)·p_i·s_{n+1−i}
            let mut acc = C::zero();
            for i in 1..=d.min(n + 1) {
                let w = C::from_i64(3 * i as i64 - 2 * n as i64 - 2);
                acc.add_product(&p[i].times(&w), &s[n + 1 - i]);
            }
            let denom = C::from_i64(2 * (n as i64 + 1));
            s.push(acc.try_div(&denom).ok_or(Error::InexactDivision)?);
        }
        Ok(Self { coeffs: s })
    }

    /// `d/dz`, one order shorter.
    pub fn derivative(&self) -> Self {
        let order = self.order();
        if order == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..=order)
            .map(|n| self.coeffs[n].scale_i64(n as i64))
            .collect();
        Self { coeffs }
    }
}

/// Builds the series of a polynomial in `z` given by its coefficients.
pub fn poly_series<C: Ring>(coeffs: Vec<C>, order: usize) -> Series<C> {
    Series::from_coeffs(coeffs, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Poly;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type S = Series<BigInt>;

    fn ints(v: &[i64], order: usize) -> S {
        Series::from_coeffs(v.iter().map(|&x| BigInt::from(x)).collect(), order)
    }

    fn as_i64(s: &S) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn geometric_and_products() {
        let z = S::z(6);
        assert_eq!(as_i64(&z.seq().unwrap()), vec![1; 7]);
        let sp = z.seq_plus().unwrap();
        assert_eq!(as_i64(&sp.mul(&sp)), vec![0, 0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn sqrt_of_one_minus_six_z() {
        let f = ints(&[1, -6, 5], 10);
        let s = f.sqrt().unwrap();
        assert_eq!(&as_i64(&s)[..3], &[1, -3, -2]);
        assert_eq!(s.mul(&s), f);
        assert_eq!(f.sqrt_by_recurrence().unwrap(), s);
        assert_eq!(
            S::sqrt_of_polynomial(&[1, -6, 5].map(BigInt::from), 10).unwrap(),
            s
        );
    }

    #[test]
    fn sqrt_errors() {
        assert_eq!(ints(&[4, 1], 3).sqrt(), Err(Error::SqrtConstant));
        // sqrt(1 - z) has coefficient -1/2
        assert_eq!(ints(&[1, -1], 3).sqrt(), Err(Error::InexactDivision));
    }

    #[test]
    fn inverse_errors() {
        assert_eq!(ints(&[0, 1], 3).inverse(), Err(Error::NonInvertible));
        assert_eq!(ints(&[2, 1], 3).inverse(), Err(Error::NonInvertible));
        assert_eq!(ints(&[1], 3).seq(), Err(Error::NonInvertible));
    }

    #[test]
    fn division_by_z_loses_an_order() {
        let num = ints(&[0, 2, 4, 6], 5);
        let den = ints(&[0, 2], 5);
        let q = num.try_div(&den).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(as_i64(&q), vec![1, 2, 3, 0, 0]);
        assert_eq!(ints(&[1, 1], 3).try_div(&den), Err(Error::InexactDivision));
    }

    #[test]
    fn division_with_polynomial_leading_coefficient() {
        // (2 - 3l)(1 + lz) / (2 - 3l) over Z[l]
        let p = |v: &[i64]| Poly::<BigInt>::from_i64s(v);
        let d = Series::from_coeffs(vec![p(&[2, -3])], 4);
        let n = Series::from_coeffs(vec![p(&[2, -3]), p(&[0, 2, -3])], 4);
        let q = n.try_div(&d).unwrap();
        assert_eq!(q.coeff(0), &p(&[1]));
        assert_eq!(q.coeff(1), &p(&[0, 1]));
    }

    #[test]
    fn derivative_and_shift() {
        let f = ints(&[1, 1, 1, 1], 3);
        assert_eq!(as_i64(&f.derivative()), vec![1, 2, 3]);
        assert_eq!(as_i64(&f.shift(2)), vec![0, 0, 1, 1]);
    }

    proptest! {
        #[test]
        fn sqrt_squares_back(cs in proptest::collection::vec(-20i64..20, 1..12)) {
            // (1 + z·g)^2 has an integral square root
            let order = 14;
            let mut v = vec![1i64];
            v.extend(cs);
            let g = ints(&v, order);
            let f = g.mul(&g);
            let s = f.sqrt().unwrap();
            prop_assert_eq!(&s, &g);
            prop_assert_eq!(f.sqrt_by_recurrence().unwrap(), s);
        }

        #[test]
        fn division_inverts_multiplication(a in proptest::collection::vec(-9i64..9, 1..10),
                                           b in proptest::collection::vec(-9i64..9, 1..10)) {
            let order = 12;
            let mut bv = vec![1i64];
            bv.extend(b);
            let a = ints(&a, order);
            let b = ints(&bv, order);
            prop_assert_eq!(a.mul(&b).try_div(&b).unwrap(), a);
        }

        #[test]
        fn product_is_commutative_and_associative(a in proptest::collection::vec(-9i64..9, 1..8),
                                                  b in proptest::collection::vec(-9i64..9, 1..8),
                                                  c in proptest::collection::vec(-9i64..9, 1..8)) {
            let (a, b, c) = (ints(&a, 9), ints(&b, 9), ints(&c, 9));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }
    }
}
