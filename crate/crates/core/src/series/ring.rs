use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative ring with exact (partial) division, the coefficient domain of
/// [`Series`](super::Series).
///
/// Method names avoid the `std::ops` ones so generic code reads the same for
/// every implementor and never silently clones through operator overloads.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus_assign(&mut self, other: &Self);
    fn minus_assign(&mut self, other: &Self);
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;

    /// `self += a * b`.
    fn add_product(&mut self, a: &Self, b: &Self) {
        self.plus_assign(&a.times(b));
    }

    /// The `q` with `q * other == self`, if one exists in the ring.
    fn try_div(&self, other: &Self) -> Option<Self>;

    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.plus_assign(other);
        out
    }

    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.minus_assign(other);
        out
    }

    fn scale_i64(&self, k: i64) -> Self {
        self.times(&Self::from_i64(k))
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn plus_assign(&mut self, other: &Self) {
        *self += other;
    }

    fn minus_assign(&mut self, other: &Self) {
        *self -= other;
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn negate(&self) -> Self {
        -self
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        if !Zero::is_zero(a) && !Zero::is_zero(b) {
            *self += a * b;
        }
    }

    fn try_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn plus_assign(&mut self, other: &Self) {
        *self += other;
    }

    fn minus_assign(&mut self, other: &Self) {
        *self -= other;
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn negate(&self) -> Self {
        -self
    }

    fn try_div(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
}
