use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use permclass::sampler::{Class, Sampler};
use permclass::series::{Ring, Series, Statistic};
use permclass::structure::{canonical_gridding_d, canonical_gridding_h, rebuild};
use permclass::{avoids_all, contains, PatternBasis, Permutation};

const N_MAX: usize = 40;

fn sampler(class: Class) -> &'static Sampler {
    use std::sync::OnceLock;
    static D: OnceLock<Sampler> = OnceLock::new();
    static H: OnceLock<Sampler> = OnceLock::new();
    match class {
        Class::D => D.get_or_init(|| Sampler::new(Class::D, N_MAX)),
        Class::H => H.get_or_init(|| Sampler::new(Class::H, N_MAX)),
    }
}

fn permutation(max_len: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_len)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn small_series() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..20, 1..8)
}

fn to_series(v: &[i64], order: usize) -> Series<BigRational> {
    Series::from_coeffs(
        v.iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect(),
        order,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_members_rebuild(n in 1..=N_MAX, seed in any::<u64>()) {
        let sk = sampler(Class::D).sample_skeleton(n, seed).unwrap();
        let sigma = rebuild(&sk).unwrap();
        prop_assert_eq!(sigma.len(), n);
        prop_assert!(avoids_all(&sigma, &PatternBasis::class_d()));
        let cg = canonical_gridding_d(&sigma).unwrap();
        prop_assert_eq!(&cg.skeleton(), &sk);
        prop_assert_eq!(cg.rebuild().unwrap(), sigma);
    }

    #[test]
    fn h_samples_lie_in_both_classes(n in 1..=N_MAX, seed in any::<u64>()) {
        let sigma = sampler(Class::H).sample(n, seed).unwrap();
        prop_assert!(avoids_all(&sigma, &PatternBasis::class_h()));
        let cg = canonical_gridding_h(&sigma).unwrap();
        prop_assert_eq!(cg.left_count(), 0);
        prop_assert_eq!(cg.rebuild().unwrap(), sigma.clone());
        prop_assert_eq!(canonical_gridding_d(&sigma).unwrap().left_count(), 0);
    }

    #[test]
    fn gridding_exists_iff_member(sigma in permutation(9)) {
        let member = avoids_all(&sigma, &PatternBasis::class_d());
        prop_assert_eq!(canonical_gridding_d(&sigma).is_ok(), member);
        if member {
            let cg = canonical_gridding_d(&sigma).unwrap();
            prop_assert_eq!(cg.top_count() + cg.left_count() <= sigma.len(), true);
        }
    }

    #[test]
    fn containment_respects_inverse(sigma in permutation(9), beta in permutation(4)) {
        prop_assert_eq!(contains(&sigma, &beta), contains(&sigma.inverse(), &beta.inverse()));
    }

    #[test]
    fn permutation_text_round_trips(sigma in permutation(12)) {
        let parsed: Permutation = sigma.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &sigma);
        let json = serde_json::to_string(&sigma).unwrap();
        let back: Permutation = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, sigma);
    }

    #[test]
    fn series_inverse_and_sqrt(mut a in small_series(), b in small_series()) {
        let order = 12;
        a[0] = 1;
        let sa = to_series(&a, order);
        let sb = to_series(&b, order);
        prop_assert_eq!(sa.mul(&sa.inverse().unwrap()), Series::one(order));
        prop_assert_eq!(sb.mul(&sa).try_div(&sa).unwrap(), sb.clone());
        let sq = sa.sqrt().unwrap();
        prop_assert_eq!(sq.mul(&sq), sa.clone());
        prop_assert_eq!(sq, sa.sqrt_by_recurrence().unwrap());
    }

    #[test]
    fn distributions_sum_to_class_size(n in 1usize..40) {
        let d = Statistic::DTop.class_counts(n).unwrap();
        for stat in [Statistic::DTop, Statistic::DLeft] {
            let dist = stat.distribution(n).unwrap();
            prop_assert_eq!(dist.total(), d.coeff(n));
            let p: BigRational = (0..=dist.max_value()).map(|k| dist.probability(k)).fold(BigRational::zero(), |a, b| a + b);
            prop_assert!(p == BigRational::one());
        }
    }
}
