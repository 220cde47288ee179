//! One test per acceptance criterion. Each prints a single PASS/FAIL line to
//! stderr, bypassing output capture.

use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use permclass::sampler::{chi_square_uniform, frequency_table, Class, Sampler};
use permclass::series::asymptotic::{asymptotic_estimate, AsymptoticModel};
use permclass::series::{class_counts, precise, Statistic};
use permclass::verify::{check_census, check_round_trip, check_splitting, check_triple};
use permclass::{avoids_all, enumerate_class, iterate_class, PatternBasis, Permutation};

fn report(criterion: u32, passed: bool, detail: &str) {
    let mark = if passed { "PASS" } else { "FAIL" };
    // Raw descriptor 2, so the line survives the harness's output capture.
    #[cfg(unix)]
    {
        use std::os::fd::FromRawFd;
        let mut err = std::mem::ManuallyDrop::new(unsafe { std::fs::File::from_raw_fd(2) });
        let _ = writeln!(err, "criterion {criterion:>2}: {mark} {detail}");
    }
    #[cfg(not(unix))]
    eprintln!("criterion {criterion:>2}: {mark} {detail}");
    assert!(passed, "criterion {criterion}: {detail}");
}

fn ints(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn ratio(a: &BigInt, b: &BigInt) -> f64 {
    BigRational::new(a.clone(), b.clone()).to_f64().unwrap()
}

#[test]
fn criterion_01_sequences() {
    let h_known = ints(&[
        1, 2, 6, 21, 79, 311, 1265, 5275, 22431, 96900, 424068, 1876143,
    ]);
    let d_known = ints(&[
        1, 2, 6, 22, 88, 366, 1556, 6720, 29396, 129996, 580276, 2611290,
    ]);
    let (h, d) = class_counts(13).unwrap();
    let series_ok = h[1..=12] == h_known[..] && d[1..=12] == d_known[..];

    let start = Instant::now();
    let bh = enumerate_class(&PatternBasis::class_h(), 10).unwrap();
    let bd = enumerate_class(&PatternBasis::class_d(), 10).unwrap();
    let elapsed = start.elapsed();
    let brute_ok = bh.from_one() == &h_known[..10] && bd.from_one() == &d_known[..10];
    let fast = elapsed < Duration::from_secs(600);
    report(
        1,
        series_ok && brute_ok && fast,
        &format!(
            "series n<=12 {series_ok}, brute force n<=10 {brute_ok} in {:.1}s",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_02_triple_agreement() {
    let check = check_triple(100);
    let fast = check.seconds < 60.0;
    report(
        2,
        check.passed && fast,
        &format!("{} in {:.1}s", check.detail, check.seconds),
    );
}

#[test]
fn criterion_03_census() {
    let check = check_census(9);
    report(3, check.passed, &check.detail);
}

#[test]
fn criterion_04_splitting() {
    let check = check_splitting(8);
    report(4, check.passed, &check.detail);
}

#[test]
fn criterion_05_round_trip() {
    let check = check_round_trip(9);
    report(5, check.passed, &check.detail);
}

#[test]
fn criterion_06_ratio() {
    let h = Statistic::HTop.class_counts(501).unwrap();
    let d = Statistic::DTop.class_counts(501).unwrap();
    let target = 121.0 / 216.0;
    let r250 = ratio(h.coeff(250), d.coeff(250));
    let r500 = ratio(h.coeff(500), d.coeff(500));
    let extrapolated = 2.0 * r500 - r250;
    let (e250, e500) = ((r250 - target).abs(), (r500 - target).abs());
    let ok = e500 < 0.02 && e500 < e250 && (extrapolated - target).abs() < 0.003;
    report(
        6,
        ok,
        &format!("H/D at 250 = {r250:.6}, at 500 = {r500:.6}, Richardson {extrapolated:.6} vs {target:.6}"),
    );
}

#[test]
fn criterion_07_moments() {
    let top = Statistic::DTop.moments(500).unwrap();
    let left = Statistic::DLeft.moments(500).unwrap();
    let top_ratio = top.mean_f64() / 500.0;
    let top_ok = (top_ratio - 0.2).abs() < 0.01;
    let mean_target = 175.0 / 132.0;
    let sd_target = 74795f64.sqrt() / 132.0;
    let mean_err = (left.mean_f64() - mean_target).abs() / mean_target;
    let sd_err = (left.sd_f64() - sd_target).abs() / sd_target;
    let ok = top_ok && mean_err < 0.02 && sd_err < 0.03;
    report(
        7,
        ok,
        &format!(
            "top mean/n = {top_ratio:.5}; left mean = {:.5} ({:.2}% off {mean_target:.5}); left sd = {:.5} ({:.2}% off {sd_target:.5})",
            left.mean_f64(),
            100.0 * mean_err,
            left.sd_f64(),
            100.0 * sd_err
        ),
    );
}

#[test]
fn criterion_08_transfer() {
    let n = 1000u64;
    let mut c = BigInt::from(1);
    for i in 0..n {
        c = c * BigInt::from(2 * n - i) / BigInt::from(i + 1);
    }
    let den = BigInt::from(2 * n - 1) * num_traits::pow(BigInt::from(4), n as usize);
    let exact = BigRational::new(-c, den);
    let est = asymptotic_estimate(&AsymptoticModel::sqrt_one_minus_z(), n, 2).unwrap();
    let err = precise::relative_error(&est, &exact).unwrap();

    let (h, _) = class_counts(201).unwrap();
    let err_h = |m: usize| {
        let est = asymptotic_estimate(&AsymptoticModel::class_h(), m as u64, 0).unwrap();
        precise::relative_error(&est, &BigRational::from_integer(h[m].clone())).unwrap()
    };
    let (e100, e200) = (err_h(100), err_h(200));
    let ok = err < 1e-4 && e100 < 0.05 && e200 < e100;
    report(
        8,
        ok,
        &format!("sqrt(1-z) K=2 at 1000: {err:.2e}; H K=0 at 100: {e100:.4}, at 200: {e200:.4}"),
    );
}

#[test]
fn criterion_09_distribution_shape() {
    let n = 400usize;
    let top = Statistic::DTop.distribution(n).unwrap();
    let ks = top.kolmogorov_distance_normal(n as f64 / 5.0, 4.0 * n as f64 / 25.0);
    let left = Statistic::DLeft.distribution(200).unwrap();
    let p0 = left.probability_f64(0);
    let target = 121.0 / 216.0;
    let p0_ok = (p0 - target).abs() < 0.02;
    let mode_ok = left.mode() == 0;
    let decays = (1..=left.max_value()).all(|k| left.count(k) <= left.count(k - 1));
    let ok = ks < 0.05 && p0_ok && mode_ok && decays;
    report(
        9,
        ok,
        &format!(
            "KS(top, N(n/5, 4n/25)) at 400 = {ks:.5}; left P(0) at 200 = {p0:.5} vs {target:.5}, mode {}, monotone decay {decays}",
            left.mode()
        ),
    );
}

/// Upper `alpha` quantile of chi-square with `df` degrees of freedom
/// (Wilson–Hilferty), with `z` the matching standard normal quantile.
fn chi_square_critical(df: f64, z: f64) -> f64 {
    let a = 2.0 / (9.0 * df);
    df * (1.0 - a + z * a.sqrt()).powi(3)
}

/// Standard normal upper quantile by bisection on the complementary CDF.
fn normal_upper_quantile(alpha: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 10.0f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if 1.0 - permclass::series::normal_cdf(mid) > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn criterion_10_sampler() {
    let n = 6;
    let trials = 50_000;
    let sampler = Sampler::new(Class::D, n);
    let samples = sampler.sample_many(n, trials, 20240611).unwrap();
    let basis = PatternBasis::class_d();
    let all_members = samples
        .iter()
        .all(|p| p.len() == n && avoids_all(p, &basis));
    let members: Vec<Permutation> = iterate_class(&basis, n).unwrap().collect();
    let freq = frequency_table(&samples, &members);
    let stat = chi_square_uniform(&freq);
    let critical = chi_square_critical((members.len() - 1) as f64, normal_upper_quantile(1e-3));

    let render = |v: &[Permutation]| v.iter().map(|p| format!("{p}\n")).collect::<String>();
    let again = sampler.sample_many(n, trials, 20240611).unwrap();
    let reproducible = render(&samples) == render(&again);
    let distinct: HashSet<&Permutation> = samples.iter().collect();

    let ok = members.len() == 366 && all_members && stat < critical && reproducible;
    report(
        10,
        ok,
        &format!(
            "chi-square {stat:.1} vs critical {critical:.1} (df {}), {} distinct, members {all_members}, byte-identical {reproducible}",
            members.len() - 1,
            distinct.len()
        ),
    );
}
