//! Algebraic closed forms of `H(z,t)`, `D(z)`, `D(z,1,ℓ)` and `D(z,t,1)`,
//! expanded with exact series arithmetic.

use num_bigint::BigInt;

use super::fps::{poly_series, Series};
use super::poly::Poly;
use super::ring::Ring;
use crate::error::Result;

/// How the square root in a closed form is expanded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SqrtMethod {
    /// Formal Newton iteration on series.
    #[default]
    Newton,
    /// The linear recurrence satisfied by the square root of a polynomial.
    Recurrence,
}

fn sqrt_poly<C: Ring>(p: Vec<C>, order: usize, method: SqrtMethod) -> Result<Series<C>> {
    match method {
        SqrtMethod::Newton => poly_series(p, order).sqrt(),
        SqrtMethod::Recurrence => Series::sqrt_of_polynomial(&p, order),
    }
}

/// `Σ k_i·x^i` evaluated in the ring at `x`.
fn poly_at<C: Ring>(ks: &[i64], x: &C) -> C {
    let mut acc = C::zero();
    for &k in ks.iter().rev() {
        acc = acc.times(x);
        acc.plus_assign(&C::from_i64(k));
    }
    acc
}

/// `1 − (2t+4)z + t(t+4)z²`, which equals `(1 − (t+2)z)² − 4z²`.
fn radicand<C: Ring>(t: &C) -> Vec<C> {
    vec![C::one(), poly_at(&[-4, -2], t), poly_at(&[0, 4, 1], t)]
}

/// `H(z,t) = (1 − (t+2)z + 2tz² − √(1 − (2t+4)z + t(t+4)z²)) / (2z(t + 1 − tz))`.
pub fn closed_form_h_with<C: Ring>(order: usize, t: &C, method: SqrtMethod) -> Result<Series<C>> {
    let o = order + 1;
    let root = sqrt_poly(radicand(t), o, method)?;
    let lead = poly_series(
        vec![C::one(), poly_at(&[-2, -1], t), poly_at(&[0, 2], t)],
        o,
    );
    let num = lead.sub(&root);
    let den = poly_series(
        vec![C::zero(), poly_at(&[2, 2], t), poly_at(&[0, -2], t)],
        o,
    );
    num.try_div(&den)
}

/// `D(z) = (1−2z)(−1 + 5z − 7z² + 2z³ + (1−z)√(1−6z+5z²)) / (1 − 10z + 24z² − 20z³ + 4z⁴)`.
pub fn closed_form_d_with<C: Ring>(order: usize, method: SqrtMethod) -> Result<Series<C>> {
    let ints = |v: &[i64]| poly_series(v.iter().map(|&k| C::from_i64(k)).collect(), order);
    let root = sqrt_poly(
        vec![C::one(), C::from_i64(-6), C::from_i64(5)],
        order,
        method,
    )?;
    let inner = ints(&[-1, 5, -7, 2]).add(&ints(&[1, -1]).mul(&root));
    let num = ints(&[1, -2]).mul(&inner);
    num.try_div(&ints(&[1, -10, 24, -20, 4]))
}

/// `D(z,1,ℓ) = (1 − z − zℓ)(P1 − (1 − zℓ)(1 − ℓ + zℓ + zℓ²)√(1−6z+5z²)) / (2z·P2)`.
pub fn closed_form_d_left_with<C: Ring>(
    order: usize,
    l: &C,
    method: SqrtMethod,
) -> Result<Series<C>> {
    let o = order + 1;
    let at = |ks: &[i64]| poly_at(ks, l);
    let p1 = poly_series(
        vec![
            at(&[1, -1]),
            at(&[-3, 3, 2]),
            at(&[2, -4, -7, -1]),
            at(&[0, 2, 9, 3]),
            at(&[0, 0, -2, -2]),
        ],
        o,
    );
    let p2 = poly_series(
        vec![
            at(&[2, -3]),
            at(&[-3, 5, 8]),
            at(&[1, -3, -15, -7]),
            at(&[0, 1, 8, 9, 2]),
            at(&[0, 0, -1, -2, -1]),
        ],
        o,
    );
    let root = sqrt_poly(vec![C::one(), C::from_i64(-6), C::from_i64(5)], o, method)?;
    let f1 = poly_series(vec![C::one(), at(&[-1, -1])], o);
    let f2 = poly_series(vec![C::one(), at(&[0, -1])], o);
    let f3 = poly_series(vec![at(&[1, -1]), at(&[0, 1, 1])], o);
    let num = f1.mul(&p1.sub(&f2.mul(&f3).mul(&root)));
    let den = p2.scale(&C::from_i64(2)).shift(1);
    num.try_div(&den)
}

/// `D(z,t,1) = (1−2z)(P3 − (1−z)(1 + t − 2tz)√(1 − (2t+4)z + t(t+4)z²)) / (2·P4)`.
pub fn closed_form_d_top_with<C: Ring>(
    order: usize,
    t: &C,
    method: SqrtMethod,
) -> Result<Series<C>> {
    let at = |ks: &[i64]| poly_at(ks, t);
    let ints = |v: &[i64]| poly_series(v.iter().map(|&k| C::from_i64(k)).collect(), order);
    let one_minus_2z = ints(&[1, -2]);
    let one_minus_tz = poly_series(vec![C::one(), at(&[0, -1])], order);
    let third = poly_series(vec![at(&[1, 1]), at(&[-3, -3]), at(&[0, 2])], order);
    let p3 = one_minus_2z.mul(&one_minus_tz).mul(&third);
    let p4 = poly_series(
        vec![
            C::from_i64(-1),
            at(&[7, 3, 1]),
            at(&[-14, -14, -6]),
            at(&[9, 22, 13]),
            at(&[0, -12, -12]),
            at(&[0, 0, 4]),
        ],
        order,
    );
    let root = sqrt_poly(radicand(t), order, method)?;
    let lin = poly_series(vec![at(&[1, 1]), at(&[0, -2])], order);
    let num = one_minus_2z.mul(&p3.sub(&ints(&[1, -1]).mul(&lin).mul(&root)));
    num.try_div(&p4.scale(&C::from_i64(2)))
}

/// `H(z,t)` over `Z[t]`.
pub fn closed_form_h(order: usize) -> Result<Series<Poly<BigInt>>> {
    closed_form_h_with(order, &Poly::var(), SqrtMethod::Newton)
}

/// `D(z)` over `Z`.
pub fn closed_form_d(order: usize) -> Result<Series<BigInt>> {
    closed_form_d_with(order, SqrtMethod::Newton)
}

/// `D(z,1,ℓ)` over `Z[ℓ]`.
pub fn closed_form_d_left(order: usize) -> Result<Series<Poly<BigInt>>> {
    closed_form_d_left_with(order, &Poly::var(), SqrtMethod::Newton)
}

/// `D(z,t,1)` over `Z[t]`.
pub fn closed_form_d_top(order: usize) -> Result<Series<Poly<BigInt>>> {
    closed_form_d_top_with(order, &Poly::var(), SqrtMethod::Newton)
}
