//! Cross-check suites comparing independent derivations of the same numbers.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::Result;
use crate::perm::{
    all_permutations, contains, enumerate_class, iterate_class, PatternBasis, Permutation,
};
use crate::sampler::{Class, Sampler};
use crate::series::asymptotic::{asymptotic_estimate, AsymptoticModel};
use crate::series::closed::{closed_form_d, closed_form_d_left, closed_form_d_top, closed_form_h};
use crate::series::grammar::{grammar_d, grammar_d_with, grammar_h};
use crate::series::polysystem::polysystem_d;
use crate::series::{class_counts, precise, Poly};
use crate::structure::{all_griddings, canonical_gridding_d, gridding_avoids_2143, rebuild};

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

/// How much work the suite does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Fast,
    All,
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Suite::Fast),
            "all" => Ok(Suite::All),
            other => Err(crate::Error::Precondition(format!(
                "unknown suite {other:?}, expected fast or all"
            ))),
        }
    }
}

fn timed(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    Check {
        name: name.to_string(),
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Class sizes from the grammar against pruned exhaustive generation.
pub fn check_counts(max_n: usize) -> Check {
    timed("counts", || {
        let (h, d) = class_counts(max_n)?;
        let bh = enumerate_class(&PatternBasis::class_h(), max_n)?;
        let bd = enumerate_class(&PatternBasis::class_d(), max_n)?;
        let ok = (1..=max_n).all(|n| bh.counts()[n] == h[n] && bd.counts()[n] == d[n]);
        Ok((ok, format!("H and D for n = 1..={max_n}")))
    })
}

/// Grammar, closed forms and the polynomial system, compared at every
/// specialisation with a closed form.
pub fn check_triple(order: usize) -> Check {
    timed("triple agreement", || {
        let one = BigInt::from(1);
        let t: Poly<BigInt> = Poly::var();
        let top = grammar_d_with(order, &t, &Poly::constant(one.clone()))?.d;
        let left = grammar_d_with(order, &Poly::constant(one.clone()), &t)?.d;
        let uni = grammar_d_with(order, &one, &one)?.d;
        let mut failures = Vec::new();
        if top != closed_form_d_top(order)? {
            failures.push("D(z,t,1) grammar vs closed form");
        }
        if top != polysystem_d(order)? {
            failures.push("D(z,t,1) grammar vs polynomial system");
        }
        if left != closed_form_d_left(order)? {
            failures.push("D(z,1,l) grammar vs closed form");
        }
        if uni != closed_form_d(order)? {
            failures.push("D(z) grammar vs closed form");
        }
        if grammar_h(order)? != closed_form_h(order)? {
            failures.push("H(z,t) grammar vs closed form");
        }
        if failures.is_empty() {
            Ok((true, format!("through order {order}")))
        } else {
            Ok((false, failures.join("; ")))
        }
    })
}

/// `(top, left) -> count` over the canonical griddings of `D_n`.
pub fn canonical_census(n: usize) -> Result<HashMap<(usize, usize), u64>> {
    let mut census = HashMap::new();
    for sigma in iterate_class(&PatternBasis::class_d(), n)? {
        let cg = canonical_gridding_d(&sigma)?;
        *census.entry((cg.top_count(), cg.left_count())).or_insert(0) += 1;
    }
    Ok(census)
}

/// The trivariate grammar against the canonical-gridding census.
pub fn check_census(max_n: usize) -> Check {
    timed("census", || {
        let d = grammar_d(max_n)?;
        for n in 1..=max_n {
            let census = canonical_census(n)?;
            let mut from_series = HashMap::new();
            for (a, poly) in d.coeff(n).coeffs().iter().enumerate() {
                for (b, c) in poly.coeffs().iter().enumerate() {
                    let c = c.to_u64().unwrap_or(u64::MAX);
                    if c != 0 {
                        from_series.insert((a, b), c);
                    }
                }
            }
            if census != from_series {
                return Ok((false, format!("mismatch at n = {n}")));
            }
        }
        Ok((true, format!("joint top/left counts for n = 1..={max_n}")))
    })
}

/// Splitting conditions against pattern containment over every gridding.
pub fn check_splitting(max_n: usize) -> Check {
    timed("splitting conditions", || {
        let pattern: Permutation = "2143".parse()?;
        let mut griddings = 0u64;
        for n in 0..=max_n {
            for sigma in all_permutations(n)? {
                let avoids = !contains(&sigma, &pattern);
                for g in all_griddings(&sigma) {
                    griddings += 1;
                    if gridding_avoids_2143(&g) != avoids {
                        return Ok((
                            false,
                            format!("{sigma} with cuts ({}, {})", g.col_cut(), g.row_cut()),
                        ));
                    }
                }
            }
        }
        Ok((
            true,
            format!("{griddings} griddings of permutations of length ≤ {max_n}"),
        ))
    })
}

/// Decomposition followed by rebuilding is the identity on `D_n`.
pub fn check_round_trip(max_n: usize) -> Check {
    timed("round trip", || {
        let mut total = 0u64;
        for n in 0..=max_n {
            for sigma in iterate_class(&PatternBasis::class_d(), n)? {
                total += 1;
                let cg = canonical_gridding_d(&sigma)?;
                if rebuild(&cg.skeleton())? != sigma || cg.rebuild()? != sigma {
                    return Ok((false, format!("{sigma}")));
                }
            }
        }
        Ok((true, format!("{total} members of D of size ≤ {max_n}")))
    })
}

/// Every rank of the sampler unranks to a distinct class member.
pub fn check_sampler(max_n: usize) -> Check {
    timed("sampler bijection", || {
        for (class, basis) in [
            (Class::D, PatternBasis::class_d()),
            (Class::H, PatternBasis::class_h()),
        ] {
            let sampler = Sampler::new(class, max_n);
            for n in 1..=max_n {
                let count = sampler.count(n)?.to_u64().unwrap_or(u64::MAX);
                let mut seen = HashSet::new();
                for r in 0..count {
                    seen.insert(sampler.unrank_permutation(n, &BigInt::from(r))?);
                }
                let members: HashSet<Permutation> = iterate_class(&basis, n)?.collect();
                if seen != members {
                    return Ok((false, format!("class {} at n = {n}", class.name())));
                }
            }
        }
        Ok((true, format!("H and D for n = 1..={max_n}")))
    })
}

/// Transfer estimates against the exact coefficients of `√(1 − z)` and of H.
pub fn check_transfer() -> Check {
    timed("transfer estimates", || {
        let n = 1000u64;
        let mut c = BigInt::from(1);
        for i in 0..n {
            c = c * BigInt::from(2 * n - i) / BigInt::from(i + 1);
        }
        let den = BigInt::from(2 * n - 1) * num_traits::pow(BigInt::from(4), n as usize);
        let exact = num_rational::BigRational::new(-c, den);
        let est = asymptotic_estimate(&AsymptoticModel::sqrt_one_minus_z(), n, 2)?;
        let err = precise::relative_error(&est, &exact)?;
        let h = class_counts(200)?.0;
        let err_h = |m: usize| -> Result<f64> {
            let est = asymptotic_estimate(&AsymptoticModel::class_h(), m as u64, 0)?;
            precise::relative_error(&est, &num_rational::BigRational::from_integer(h[m].clone()))
        };
        let (e100, e200) = (err_h(100)?, err_h(200)?);
        let ok = err < 1e-4 && e100 < 0.05 && e200 < e100;
        Ok((
            ok,
            format!("sqrt(1-z) K=2 at 1000: {err:.2e}; H K=0 at 100: {e100:.4}, at 200: {e200:.4}"),
        ))
    })
}

/// Runs a suite, returning one entry per check.
pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Fast => vec![
            check_counts(8),
            check_triple(40),
            check_census(7),
            check_splitting(6),
            check_round_trip(7),
            check_sampler(6),
            check_transfer(),
        ],
        Suite::All => vec![
            check_counts(10),
            check_triple(100),
            check_census(9),
            check_splitting(8),
            check_round_trip(9),
            check_sampler(8),
            check_transfer(),
        ],
    }
}
