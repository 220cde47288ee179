//! Decimal fixed-point evaluation of the few irrational constants needed by
//! coefficient asymptotics: square roots of rationals and `π`.
//!
//! Values are returned as rationals with denominator `10^digits`, so the rest
//! of a computation can stay exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default number of decimal digits.
pub const DEFAULT_DIGITS: u32 = 64;

const GUARD: u32 = 10;

fn ten_pow(d: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), d as usize)
}

/// `arctan(1/x)·10^d`, truncated.
fn arctan_inv(x: u64, d: u32) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = ten_pow(d) / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// `π` to `digits` decimals, from Machin's formula
/// `π/4 = 4·arctan(1/5) − arctan(1/239)`.
pub fn pi(digits: u32) -> BigRational {
    let d = digits + GUARD;
    let scaled = (arctan_inv(5, d) * 16 - arctan_inv(239, d) * 4) / ten_pow(GUARD);
    BigRational::new(scaled, ten_pow(digits))
}

/// `√x` to `digits` decimals (truncated towards zero).
pub fn sqrt(x: &BigRational, digits: u32) -> Result<BigRational> {
    if x.is_negative() {
        return Err(Error::Precondition(format!(
            "square root of negative value {x}"
        )));
    }
    let scale = ten_pow(2 * digits);
    let scaled = (x.numer() * scale) / x.denom();
    Ok(BigRational::new(scaled.sqrt(), ten_pow(digits)))
}

/// `x` rounded to `digits` decimals.
pub fn round(x: &BigRational, digits: u32) -> BigRational {
    let scale = BigRational::from_integer(ten_pow(digits));
    let scaled = (x * &scale).round();
    scaled / scale
}

/// Relative error `|estimate/exact − 1|` as a float.
pub fn relative_error(estimate: &BigRational, exact: &BigRational) -> Result<f64> {
    if exact.is_zero() {
        return Err(Error::Precondition("relative error against zero".into()));
    }
    let r = (estimate / exact - BigRational::one()).abs();
    Ok(num_traits::ToPrimitive::to_f64(&r).unwrap_or(f64::INFINITY))
}
