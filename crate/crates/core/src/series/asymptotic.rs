//! Coefficient asymptotics of functions with an algebraic singularity.
//!
//! If `F(z) ~ λ·(1 − z/ρ)^α` near its unique dominant singularity `ρ`, then
//!
//! ```text
//! [z^n] F ~ λ/Γ(−α) · ρ^{−n} · n^{−α−1} · (1 + Σ_{k≥1} e_k / n^k)
//! e_k = Σ_{l=k..2k} λ_{k,l} · (α+1)(α+2)⋯(α+l)
//! λ_{k,l} = [v^k t^l] exp(t − (1 + 1/v)·log(1 + vt))
//! ```

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use super::poly::Poly;
use super::precise;
use super::ring::Ring;
use crate::error::{Error, Result};

/// `coefficient · √radicand`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub coefficient: BigRational,
    pub radicand: u64,
}

impl Surd {
    pub fn new(coefficient: BigRational, radicand: u64) -> Self {
        Self {
            coefficient,
            radicand,
        }
    }

    pub fn rational(q: BigRational) -> Self {
        Self::new(q, 1)
    }

    pub fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.coefficient).unwrap_or(f64::NAN)
            * (self.radicand as f64).sqrt()
    }
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Local behaviour `λ·(1 − z/ρ)^α` at the dominant singularity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticModel {
    pub amplitude: Surd,
    pub rho: BigRational,
    pub alpha: BigRational,
}

impl AsymptoticModel {
    /// Checks `ρ > 0` and that `α` is not a non-negative integer.
    pub fn new(amplitude: Surd, rho: BigRational, alpha: BigRational) -> Result<Self> {
        if !rho.is_positive() {
            return Err(Error::Precondition(format!(
                "singularity {rho} must be positive"
            )));
        }
        if alpha.is_integer() && !alpha.is_negative() {
            return Err(Error::IntegerExponent(alpha.to_string()));
        }
        Ok(Self {
            amplitude,
            rho,
            alpha,
        })
    }

    /// `H(z) ≈ c − (5√5/9)·√(1 − 5z)`.
    pub fn class_h() -> Self {
        Self::new(Surd::new(ratio(-5, 9), 5), ratio(1, 5), ratio(1, 2)).expect("valid model")
    }

    /// `D(z) ≈ c − (129√5/121)·√(1 − 5z)`.
    pub fn class_d() -> Self {
        Self::new(Surd::new(ratio(-129, 121), 5), ratio(1, 5), ratio(1, 2)).expect("valid model")
    }

    /// `(1 − z)^{1/2}` itself.
    pub fn sqrt_one_minus_z() -> Self {
        Self::new(Surd::rational(ratio(1, 1)), ratio(1, 1), ratio(1, 2)).expect("valid model")
    }

    /// `e_1, …, e_K`.
    pub fn corrections(&self, k: usize) -> Vec<BigRational> {
        correction_terms(&self.alpha, k)
    }
}

/// `λ_{k,l}` for `k ≤ k_max`, indexed `[k][l]` with `l ≤ 2k`.
pub fn lambda_table(k_max: usize) -> Vec<Vec<BigRational>> {
    let t_max = 2 * k_max;
    let truncate =
        |p: Poly<BigRational>| Poly::new(p.into_coeffs().into_iter().take(k_max + 1).collect());
    // exponent coefficients E_m(v): E_1 = −v, E_m = (−1)^m (v^m + v^{m−1}) / m
    let mut e: Vec<Poly<BigRational>> = vec![Poly::zero(); t_max + 1];
    if t_max >= 1 {
        e[1] = truncate(Poly::new(vec![BigRational::zero(), -BigRational::one()]));
    }
    for (m, em) in e.iter_mut().enumerate().skip(2) {
        let c = ratio(if m % 2 == 0 { 1 } else { -1 }, m as i64);
        let mut coeffs = vec![BigRational::zero(); m + 1];
        coeffs[m - 1] = c.clone();
        coeffs[m] = c;
        *em = truncate(Poly::new(coeffs));
    }
    // g = exp(E) via g_n = (1/n) Σ_{j=1..n} j·E_j·g_{n−j}
    let mut g: Vec<Poly<BigRational>> = vec![Poly::one()];
    for n in 1..=t_max {
        let mut acc = Poly::zero();
        for j in 1..=n {
            let term = e[j].times(&g[n - j]).scale_i64(j as i64);
            acc.plus_assign(&term);
        }
        let inv = Poly::constant(ratio(1, n as i64));
        g.push(truncate(acc.times(&inv)));
    }
    (0..=k_max)
        .map(|k| (0..=2 * k).map(|l| g[l].coeff(k)).collect())
        .collect()
}

/// `e_1, …, e_K` for exponent `α`.
pub fn correction_terms(alpha: &BigRational, k_max: usize) -> Vec<BigRational> {
    let lambda = lambda_table(k_max);
    // rising[l] = (α+1)(α+2)⋯(α+l)
    let mut rising = vec![BigRational::one()];
    for j in 1..=2 * k_max {
        let next = &rising[j - 1] * (alpha + BigRational::from_integer(BigInt::from(j)));
        rising.push(next);
    }
    (1..=k_max)
        .map(|k| {
            (k..=2 * k).fold(BigRational::zero(), |acc, l| {
                acc + &lambda[k][l] * &rising[l]
            })
        })
        .collect()
}

/// `Γ(x)` for `x` a half-integer or positive integer, as `(r, h)` with
/// `Γ(x) = r·π^{h/2}`.
pub fn gamma_exact(x: &BigRational) -> Result<(BigRational, bool)> {
    let one = BigRational::one();
    if x.is_integer() {
        if !x.is_positive() {
            return Err(Error::IntegerExponent((-x).to_string()));
        }
        let mut r = one.clone();
        let mut k = one.clone();
        while &k < x {
            r *= &k;
            k += &one;
        }
        return Ok((r, false));
    }
    if x.denom() != &BigInt::from(2) {
        return Err(Error::UnsupportedExponent(format!(
            "Γ({x}) is only evaluated at half-integers"
        )));
    }
    let mut cur = ratio(1, 2);
    let mut r = one.clone();
    while &cur < x {
        r *= &cur;
        cur += &one;
    }
    while &cur > x {
        cur -= &one;
        r /= &cur;
    }
    Ok((r, true))
}

/// The `K`-term estimate of `[z^n] F` with the default precision.
pub fn asymptotic_estimate(model: &AsymptoticModel, n: u64, k: usize) -> Result<BigRational> {
    asymptotic_estimate_with(model, n, k, precise::DEFAULT_DIGITS)
}

/// The `K`-term estimate of `[z^n] F`, with irrational factors evaluated to
/// `digits` decimals.
pub fn asymptotic_estimate_with(
    model: &AsymptoticModel,
    n: u64,
    k: usize,
    digits: u32,
) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Precondition(
            "asymptotic estimate needs n ≥ 1".into(),
        ));
    }
    let alpha = &model.alpha;
    let (gamma, gamma_has_pi) = gamma_exact(&-alpha)?;
    let nq = BigRational::from_integer(BigInt::from(n));
    // n^{−α−1} = n^{b/2}: an integer power of n, times √n when b is odd
    let b = (-(alpha * ratio(2, 1)) - ratio(2, 1)).to_integer();
    let half_power = b.is_odd();
    let int_exp = num_traits::ToPrimitive::to_i64(&if half_power { (&b - 1) / 2 } else { &b / 2 })
        .ok_or_else(|| Error::UnsupportedExponent(alpha.to_string()))?;
    let n_power = if int_exp >= 0 {
        num_traits::pow(nq.clone(), int_exp as usize)
    } else {
        num_traits::pow(nq.recip(), (-int_exp) as usize)
    };
    let rho_power = num_traits::pow(model.rho.recip(), n as usize);
    let mut series = BigRational::one();
    let mut n_k = BigRational::one();
    for e in correction_terms(alpha, k) {
        n_k *= &nq;
        series += e / &n_k;
    }
    let rational = &model.amplitude.coefficient / gamma * rho_power * n_power * series;

    // remaining irrational factor √(m · n^{[half]} / π^{[gamma_has_pi]})
    let mut under = BigRational::from_integer(BigInt::from(model.amplitude.radicand));
    if half_power {
        under *= &nq;
    }
    if gamma_has_pi {
        under /= precise::pi(digits + 10);
    }
    let irrational = precise::sqrt(&under, digits)?;
    Ok(rational * irrational)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn lambda_values() {
        let l = lambda_table(2);
        assert_eq!(l[1][1], ratio(-1, 1));
        assert_eq!(l[1][2], ratio(1, 2));
        assert_eq!(l[0][0], ratio(1, 1));
        // e_1 = α(α+1)/2 and e_2 = α(α+1)(α+2)(3α+1)/24
        let a = ratio(1, 2);
        let e = correction_terms(&a, 2);
        assert_eq!(e[0], ratio(3, 8));
        assert_eq!(e[1], ratio(25, 128));
        let a = ratio(-3, 2);
        let e = correction_terms(&a, 2);
        assert_eq!(e[0], &a * (&a + ratio(1, 1)) / ratio(2, 1));
    }

    #[test]
    fn gamma_at_half_integers() {
        assert_eq!(gamma_exact(&ratio(1, 2)).unwrap(), (ratio(1, 1), true));
        assert_eq!(gamma_exact(&ratio(-1, 2)).unwrap(), (ratio(-2, 1), true));
        assert_eq!(gamma_exact(&ratio(5, 2)).unwrap(), (ratio(3, 4), true));
        assert_eq!(gamma_exact(&ratio(4, 1)).unwrap(), (ratio(6, 1), false));
        assert!(matches!(
            gamma_exact(&ratio(0, 1)),
            Err(Error::IntegerExponent(_))
        ));
        assert!(matches!(
            gamma_exact(&ratio(1, 3)),
            Err(Error::UnsupportedExponent(_))
        ));
    }

    #[test]
    fn model_validation() {
        let s = Surd::rational(ratio(1, 1));
        assert!(matches!(
            AsymptoticModel::new(s.clone(), ratio(1, 1), ratio(2, 1)),
            Err(Error::IntegerExponent(_))
        ));
        assert!(AsymptoticModel::new(s.clone(), ratio(-1, 1), ratio(1, 2)).is_err());
        let pole = AsymptoticModel::new(s.clone(), ratio(1, 2), ratio(-1, 1)).unwrap();
        // 1/(1 − 2z): the estimate is exactly 2^n
        let est = asymptotic_estimate(&pole, 10, 0).unwrap();
        assert_eq!(est, BigRational::from_integer(1024.into()));
        let third = AsymptoticModel::new(s, ratio(1, 1), ratio(1, 3)).unwrap();
        assert!(matches!(
            asymptotic_estimate(&third, 10, 0),
            Err(Error::UnsupportedExponent(_))
        ));
    }

    fn sqrt_coefficient(n: u64) -> BigRational {
        // [z^n] (1 − z)^{1/2} = −C(2n, n) / ((2n − 1)·4^n)
        let mut c = BigInt::one();
        for i in 0..n {
            c = c * BigInt::from(2 * n - i) / BigInt::from(i + 1);
        }
        let den = BigInt::from(2 * n - 1) * num_traits::pow(BigInt::from(4), n as usize);
        BigRational::new(-c, den)
    }

    #[test]
    fn binomial_oracle() {
        let m = AsymptoticModel::sqrt_one_minus_z();
        let mut last = f64::INFINITY;
        for k in 0..=3 {
            let est = asymptotic_estimate(&m, 200, k).unwrap();
            let err = precise::relative_error(&est, &sqrt_coefficient(200)).unwrap();
            assert!(err < last);
            last = err;
        }
        let est = asymptotic_estimate(&m, 50, 0).unwrap();
        let expected = -1.0 / (2.0 * std::f64::consts::PI.sqrt()) * 50f64.powf(-1.5);
        assert!((est.to_f64().unwrap() / expected - 1.0).abs() < 1e-12);
    }

    #[test]
    fn leading_constant_of_h() {
        // (5/18)·√(5/π)·5^n·n^{−3/2}
        let est = asymptotic_estimate(&AsymptoticModel::class_h(), 10, 0).unwrap();
        let expected =
            5.0 / 18.0 * (5.0 / std::f64::consts::PI).sqrt() * 5f64.powi(10) * 10f64.powf(-1.5);
        assert!((est.to_f64().unwrap() / expected - 1.0).abs() < 1e-12);
    }
}
