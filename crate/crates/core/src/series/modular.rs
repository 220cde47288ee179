//! Arithmetic modulo word-sized primes.
//!
//! The modulus lives in a thread-local so that [`Fp`] can implement the
//! [`Ring`] trait (whose constructors take no context). Every computation over
//! `Fp` must run inside [`with_modulus`].

use std::cell::Cell;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ring::Ring;

thread_local! {
    static MODULUS: Cell<u64> = const { Cell::new(0) };
}

fn modulus() -> u64 {
    let p = MODULUS.with(Cell::get);
    debug_assert!(p > 1, "Fp used outside with_modulus");
    p
}

/// Runs `f` with arithmetic in `Z/pZ`, restoring any previous modulus.
pub fn with_modulus<R>(p: u64, f: impl FnOnce() -> R) -> R {
    assert!(p > 1 && p < 1 << 32, "modulus must fit in 32 bits");
    let prev = MODULUS.with(|m| m.replace(p));
    let out = f();
    MODULUS.with(|m| m.set(prev));
    out
}

/// A residue modulo the current thread's prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Fp(pub u64);

impl Fp {
    pub fn from_bigint(v: &BigInt) -> Self {
        let p = BigInt::from(modulus());
        let mut r = v % &p;
        if r.sign() == num_bigint::Sign::Minus {
            r += p;
        }
        Fp(r.to_u64().expect("residue fits"))
    }

    pub fn pow(self, mut e: u64) -> Self {
        let p = modulus();
        let mut base = self.0;
        let mut acc = 1 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc)
    }

    pub fn inverse(self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(modulus() - 2))
    }
}

impl Ring for Fp {
    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp(1)
    }

    fn from_i64(v: i64) -> Self {
        let p = modulus() as i64;
        Fp(v.rem_euclid(p) as u64)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn plus_assign(&mut self, other: &Self) {
        let p = modulus();
        self.0 += other.0;
        if self.0 >= p {
            self.0 -= p;
        }
    }

    fn minus_assign(&mut self, other: &Self) {
        let p = modulus();
        self.0 = if self.0 >= other.0 {
            self.0 - other.0
        } else {
            self.0 + p - other.0
        };
    }

    fn times(&self, other: &Self) -> Self {
        Fp(self.0 * other.0 % modulus())
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        let p = modulus();
        self.0 = (self.0 + a.0 * b.0 % p) % p;
    }

    fn negate(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { modulus() - self.0 })
    }

    fn try_div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self.times(&inv))
    }
}

/// Deterministic Miller-Rabin, valid for all `n < 3_215_031_751`.
pub fn is_prime_u32(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2, 3, 5, 7] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % n;
            }
            b = b * b % n;
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^31`, in decreasing order.
pub fn large_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n: u64 = (1 << 31) - 1;
    while out.len() < count {
        if is_prime_u32(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        with_modulus(7, || {
            let a = Fp::from_i64(-3);
            assert_eq!(a, Fp(4));
            assert_eq!(a.times(&Fp(2)), Fp(1));
            assert_eq!(Fp(3).try_div(&Fp(5)), Some(Fp(2)));
            assert_eq!(Fp(3).try_div(&Fp(0)), None);
            assert_eq!(Fp::from_bigint(&BigInt::from(-15)), Fp(6));
            let mut x = Fp(6);
            x.add_product(&Fp(6), &Fp(6));
            assert_eq!(x, Fp(0));
        });
    }

    #[test]
    fn primes_by_trial_division() {
        let trial = |n: u64| n > 1 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime_u32(n), trial(n), "{n}");
        }
        let ps = large_primes(5);
        assert_eq!(ps[0], 2147483647);
        for &p in &ps {
            assert!(trial(p));
        }
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        // nothing skipped between consecutive entries
        for w in ps.windows(2) {
            assert!((w[1] + 1..w[0]).all(|n| !trial(n)));
        }
    }
}
