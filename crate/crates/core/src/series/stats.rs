//! Moments and exact distributions of the marked statistics.
//!
//! Moments come from marker derivatives at 1, obtained by substituting the
//! jet `1 + ε` for the marker. Full distributions at large sizes are
//! recovered from residues: for each of several word-sized primes the closed
//! form is expanded at marker values `0..=n`, the coefficient polynomial of
//! `z^n` is interpolated, and the integers are rebuilt by Chinese remaindering.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use super::closed::{
    closed_form_d_left_with, closed_form_d_top_with, closed_form_d_with, closed_form_h_with,
    SqrtMethod,
};
use super::fps::Series;
use super::jet::Jet;
use super::modular::{large_primes, with_modulus, Fp};
use super::poly::Poly;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Coefficient types that can report `F(1)`, `F'(1)` and `F''(1)`.
pub trait MarkerDerivatives {
    fn at_unit(&self) -> [BigInt; 3];
}

impl MarkerDerivatives for Poly<BigInt> {
    fn at_unit(&self) -> [BigInt; 3] {
        let mut out = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (k, c) in self.coeffs().iter().enumerate() {
            let k = BigInt::from(k);
            out[0] += c;
            out[1] += &k * c;
            out[2] += &k * (&k - 1) * c;
        }
        out
    }
}

impl MarkerDerivatives for Jet<BigInt> {
    fn at_unit(&self) -> [BigInt; 3] {
        [self.c[0].clone(), self.c[1].clone(), &self.c[2] * 2]
    }
}

/// Exact mean and variance of a statistic over objects of one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moments {
    pub n: usize,
    pub count: BigInt,
    pub mean: BigRational,
    pub variance: BigRational,
}

impl Moments {
    pub fn mean_f64(&self) -> f64 {
        self.mean.to_f64().unwrap_or(f64::NAN)
    }

    pub fn variance_f64(&self) -> f64 {
        self.variance.to_f64().unwrap_or(f64::NAN)
    }

    pub fn sd_f64(&self) -> f64 {
        self.variance_f64().sqrt()
    }
}

/// Mean `F'(1)/F(1)` and variance `F''(1)/F(1) + mean − mean²` of the marker
/// in `[z^n] F`.
pub fn moments<C: Ring + MarkerDerivatives>(f: &Series<C>, n: usize) -> Result<Moments> {
    if n > f.order() {
        return Err(Error::OrderTooLarge {
            requested: n,
            available: f.order(),
        });
    }
    let [f0, f1, f2] = f.coeff(n).at_unit();
    if f0.is_zero() {
        return Err(Error::ZeroCount(n));
    }
    let mean = BigRational::new(f1, f0.clone());
    let second = BigRational::new(f2, f0.clone());
    let variance = second + &mean - &mean * &mean;
    Ok(Moments {
        n,
        count: f0,
        mean,
        variance,
    })
}

/// The marked statistics with closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// Top points of members of H, marked by `t` in `H(z,t)`.
    HTop,
    /// Top points of members of D, marked by `t` in `D(z,t,1)`.
    DTop,
    /// Left points of members of D, marked by `ℓ` in `D(z,1,ℓ)`.
    DLeft,
}

impl Statistic {
    pub fn class_name(self) -> &'static str {
        match self {
            Statistic::HTop => "H",
            Statistic::DTop | Statistic::DLeft => "D",
        }
    }

    pub fn marker_name(self) -> &'static str {
        match self {
            Statistic::HTop | Statistic::DTop => "top",
            Statistic::DLeft => "left",
        }
    }

    /// Expansion of the statistic's generating function with the marker set
    /// to `x`.
    pub fn series_at<C: Ring>(self, order: usize, x: &C, method: SqrtMethod) -> Result<Series<C>> {
        match self {
            Statistic::HTop => closed_form_h_with(order, x, method),
            Statistic::DTop => closed_form_d_top_with(order, x, method),
            Statistic::DLeft => closed_form_d_left_with(order, x, method),
        }
    }

    /// Marker polynomials `[z^n]` for every `n ≤ order`.
    pub fn series(self, order: usize) -> Result<Series<Poly<BigInt>>> {
        self.series_at(order, &Poly::var(), SqrtMethod::Newton)
    }

    /// Class sizes through `order`.
    pub fn class_counts(self, order: usize) -> Result<Series<BigInt>> {
        match self {
            Statistic::HTop => closed_form_h_with(order, &BigInt::one(), SqrtMethod::Newton),
            Statistic::DTop | Statistic::DLeft => closed_form_d_with(order, SqrtMethod::Newton),
        }
    }

    /// Exact moments at size `n`.
    pub fn moments(self, n: usize) -> Result<Moments> {
        let s = self.series_at(n, &Jet::unit_marker(), SqrtMethod::Newton)?;
        moments(&s, n)
    }

    /// Exact distribution at size `n`.
    pub fn distribution(self, n: usize) -> Result<Distribution> {
        let total = self.class_counts(n)?.coeff(n).clone();
        if total.is_zero() {
            return Err(Error::ZeroCount(n));
        }
        let counts = self.modular_coefficients(n, &total)?;
        let sum = counts.iter().fold(BigInt::zero(), |acc, c| acc + c);
        if sum != total {
            return Err(Error::Inconsistent(format!(
                "distribution sums to {sum}, expected {total}"
            )));
        }
        Distribution::new(n, counts)
    }

    fn modular_coefficients(self, n: usize, bound: &BigInt) -> Result<Vec<BigInt>> {
        // enough primes for the product to exceed twice the largest coefficient
        let target = bound * 2;
        let mut primes = Vec::new();
        let mut product = BigInt::one();
        let candidates = large_primes(2 + bound.bits() as usize / 30);
        for p in candidates {
            if product > target {
                break;
            }
            product *= p;
            primes.push(p);
        }
        let residues: Vec<Vec<u64>> = primes
            .par_iter()
            .map(|&p| with_modulus(p, || self.coefficient_mod(n)))
            .collect::<Result<_>>()?;
        Ok(crt(&primes, &residues))
    }

    /// `[z^n x^k] F mod p` for `k = 0..=n`, under the current modulus.
    fn coefficient_mod(self, n: usize) -> Result<Vec<u64>> {
        let values = (0..=n)
            .map(|x| {
                Ok(self
                    .series_at(n, &Fp::from_i64(x as i64), SqrtMethod::Recurrence)?
                    .coeff(n)
                    .0)
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(interpolate_mod(&values))
    }
}

/// Monomial coefficients of the polynomial of degree ≤ `len − 1` taking
/// `values[x]` at `x = 0, 1, …`, under the current modulus.
fn interpolate_mod(values: &[u64]) -> Vec<u64> {
    let m = values.len();
    let mut diffs: Vec<Fp> = values.iter().map(|&v| Fp(v)).collect();
    // forward differences Δ^k y_0 in place
    for k in 1..m {
        for i in (k..m).rev() {
            diffs[i] = diffs[i].minus(&diffs[i - 1]);
        }
    }
    let mut out = vec![Fp::zero(); m];
    // basis = x(x−1)⋯(x−k+1)/k!
    let mut basis = vec![Fp::one()];
    for k in 0..m {
        if k > 0 {
            let shift = Fp::from_i64(k as i64 - 1);
            let inv_k = Fp::from_i64(k as i64)
                .inverse()
                .expect("k below the modulus");
            let mut next = vec![Fp::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1].plus_assign(b);
                next[i].minus_assign(&b.times(&shift));
            }
            basis = next.into_iter().map(|c| c.times(&inv_k)).collect();
        }
        for (o, b) in out.iter_mut().zip(&basis) {
            o.add_product(&diffs[k], b);
        }
    }
    out.into_iter().map(|c| c.0).collect()
}

/// Least non-negative integers with the given residues.
fn crt(primes: &[u64], residues: &[Vec<u64>]) -> Vec<BigInt> {
    let len = residues.first().map_or(0, Vec::len);
    let mut values = vec![BigInt::zero(); len];
    let mut modulus = BigInt::one();
    for (&p, res) in primes.iter().zip(residues) {
        let pb = BigInt::from(p);
        let inv = with_modulus(p, || {
            Fp::from_bigint(&modulus)
                .inverse()
                .expect("distinct primes")
        });
        for (v, &r) in values.iter_mut().zip(res) {
            let cur = with_modulus(p, || Fp::from_bigint(v));
            let delta = with_modulus(p, || Fp(r).minus(&cur).times(&inv));
            *v += &modulus * BigInt::from(delta.0);
        }
        modulus *= pb;
    }
    values
}

/// Standard normal distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Exact law of an integer statistic over the objects of one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    n: usize,
    counts: Vec<BigInt>,
    total: BigInt,
}

impl Distribution {
    /// `counts[k]` objects have statistic `k`; trailing zeros are dropped.
    pub fn new(n: usize, mut counts: Vec<BigInt>) -> Result<Self> {
        while counts.last().is_some_and(Ring::is_zero) {
            counts.pop();
        }
        if counts.iter().any(Signed::is_negative) {
            return Err(Error::Inconsistent("negative count in distribution".into()));
        }
        let total = counts.iter().fold(BigInt::zero(), |acc, c| acc + c);
        if total.is_zero() {
            return Err(Error::ZeroCount(n));
        }
        Ok(Self { n, counts, total })
    }

    /// From the marker polynomial `[z^n] F`.
    pub fn from_poly(n: usize, p: &Poly<BigInt>) -> Result<Self> {
        Self::new(n, p.coeffs().to_vec())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn total(&self) -> &BigInt {
        &self.total
    }

    /// Largest value with nonzero probability.
    pub fn max_value(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, k: usize) -> BigInt {
        self.counts.get(k).cloned().unwrap_or_default()
    }

    pub fn probability(&self, k: usize) -> BigRational {
        BigRational::new(self.count(k), self.total.clone())
    }

    pub fn probability_f64(&self, k: usize) -> f64 {
        self.probability(k).to_f64().unwrap_or(f64::NAN)
    }

    /// `P(X ≤ k)` for `k = 0..=max_value`.
    pub fn cdf_f64(&self) -> Vec<f64> {
        let mut acc = BigInt::zero();
        self.counts
            .iter()
            .map(|c| {
                acc += c;
                BigRational::new(acc.clone(), self.total.clone())
                    .to_f64()
                    .unwrap_or(f64::NAN)
            })
            .collect()
    }

    pub fn mean(&self) -> BigRational {
        let s = self
            .counts
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (k, c)| acc + c * BigInt::from(k));
        BigRational::new(s, self.total.clone())
    }

    pub fn variance(&self) -> BigRational {
        let s2 = self
            .counts
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (k, c)| acc + c * BigInt::from(k * k));
        let m = self.mean();
        BigRational::new(s2, self.total.clone()) - &m * &m
    }

    /// Most likely value (the smallest one on ties).
    pub fn mode(&self) -> usize {
        let mut best = 0;
        for (k, c) in self.counts.iter().enumerate() {
            if c > &self.counts[best] {
                best = k;
            }
        }
        best
    }

    /// `sup_x |F(x) − Φ((x − mean)/sd)|`, where the supremum over the jumps
    /// of the step function `F` is taken on both sides of each jump.
    pub fn kolmogorov_distance_normal(&self, mean: f64, variance: f64) -> f64 {
        let sd = variance.sqrt();
        let cdf = self.cdf_f64();
        let mut worst: f64 = 0.0;
        let mut below = 0.0;
        for (k, &f) in cdf.iter().enumerate() {
            let phi = normal_cdf((k as f64 - mean) / sd);
            worst = worst.max((f - phi).abs()).max((below - phi).abs());
            below = f;
        }
        // the tail beyond the support
        worst.max(1.0 - normal_cdf((self.max_value() as f64 - mean) / sd))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::closed::closed_form_h;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn single_point_has_no_markers() {
        let m = Statistic::HTop.moments(1).unwrap();
        assert_eq!(m.mean, q(0, 1));
        assert_eq!(m.variance, q(0, 1));
        let d = Statistic::HTop.distribution(1).unwrap();
        assert_eq!(d.probability(0), q(1, 1));
    }

    #[test]
    fn left_points_at_size_four() {
        let d = Statistic::DLeft.distribution(4).unwrap();
        assert_eq!(d.probability(0), q(21, 22));
        assert_eq!(d.probability(1), q(1, 22));
        assert_eq!(d.mode(), 0);
    }

    #[test]
    fn jets_match_polynomials() {
        for stat in [Statistic::HTop, Statistic::DTop, Statistic::DLeft] {
            let polys = stat.series(25).unwrap();
            for n in 1..=25 {
                let from_poly = moments(&polys, n).unwrap();
                let from_jet = stat.moments(n).unwrap();
                assert_eq!(from_poly, from_jet, "{stat:?} at {n}");
                let d = Distribution::from_poly(n, polys.coeff(n)).unwrap();
                assert_eq!(d.mean(), from_poly.mean);
                assert_eq!(d.variance(), from_poly.variance);
            }
        }
    }

    #[test]
    fn modular_reconstruction_matches_polynomials() {
        for stat in [Statistic::HTop, Statistic::DTop, Statistic::DLeft] {
            let polys = stat.series(30).unwrap();
            for n in [1, 2, 7, 30] {
                let exact = Distribution::from_poly(n, polys.coeff(n)).unwrap();
                assert_eq!(stat.distribution(n).unwrap(), exact, "{stat:?} at {n}");
            }
        }
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        with_modulus(1_000_003, || {
            let p: Vec<u64> = vec![5, 0, 7, 1];
            let values: Vec<u64> = (0..4u64)
                .map(|x| p.iter().rev().fold(0, |acc, c| (acc * x + c) % 1_000_003))
                .collect();
            assert_eq!(interpolate_mod(&values), p);
        });
    }

    #[test]
    fn errors() {
        let h = closed_form_h(5).unwrap();
        assert!(matches!(moments(&h, 6), Err(Error::OrderTooLarge { .. })));
        assert!(matches!(moments(&h, 0), Err(Error::ZeroCount(0))));
        assert!(Distribution::new(3, vec![BigInt::zero()]).is_err());
    }

    #[test]
    fn normal_distance() {
        assert!((normal_cdf(0.0) - 0.5).abs() < 1e-15);
        assert!((normal_cdf(1.96) - 0.975).abs() < 1e-3);
        // a point mass is at distance 1/2 from any normal centred on it
        let d = Distribution::new(1, vec![BigInt::one()]).unwrap();
        assert!((d.kolmogorov_distance_normal(0.0, 1.0) - 0.5).abs() < 1e-12);
    }
}
