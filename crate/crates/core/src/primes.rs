//! Miller-Rabin primality testing on arbitrary-precision integers.
//!
//! The first 13 primes as witnesses decide primality for every
//! `n < 3.317 * 10^24`. Above that the test runs 64 rounds with further
//! prime bases and the answer is only probable.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// 3317044064679887385961981; the deterministic bound for `SMALL_PRIMES`.
const DETERMINISTIC_LIMIT: &str = "3317044064679887385961981";

const PROBABILISTIC_ROUNDS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Primality {
    Composite,
    Prime,
    /// Passed every round above the deterministic range.
    ProbablePrime,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        !matches!(self, Primality::Composite)
    }
}

fn strong_probable_prime(n: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let n_minus_1 = n - 1u32;
    let mut x = a.modpow(d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n_minus_1 {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

pub fn primality_biguint(n: &BigUint) -> Primality {
    if n < &BigUint::from(2u32) {
        return Primality::Composite;
    }
    for &p in &SMALL_PRIMES {
        if n == &BigUint::from(p) {
            return Primality::Prime;
        }
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n > 2");
    let d = &n_minus_1 >> s;
    let witnesses_pass = |mut bases: Box<dyn Iterator<Item = BigUint>>| bases.all(|a| strong_probable_prime(n, &d, s, &a));
    if !witnesses_pass(Box::new(SMALL_PRIMES.iter().map(|&p| BigUint::from(p)))) {
        return Primality::Composite;
    }
    let limit: BigUint = DETERMINISTIC_LIMIT.parse().expect("constant");
    if n < &limit {
        return Primality::Prime;
    }
    if witnesses_pass(Box::new(primes_after(41).take(PROBABILISTIC_ROUNDS).map(BigUint::from))) {
        Primality::ProbablePrime
    } else {
        Primality::Composite
    }
}

/// Primality of a signed value; zero, units and negatives are composite.
pub fn primality(n: &BigInt) -> Primality {
    match n.sign() {
        Sign::Plus => primality_biguint(n.magnitude()),
        _ => Primality::Composite,
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    primality_biguint(&BigUint::from(n)).is_prime()
}

/// `n` is an odd prime (so `n >= 3`).
pub fn is_odd_prime(n: &BigInt) -> bool {
    n.is_odd() && primality(n).is_prime()
}

fn primes_after(start: u32) -> impl Iterator<Item = u32> {
    (start + 1..).filter(|&k| k > 1 && (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
}

/// Prime factors found by trial division below `bound`, plus the cofactor
/// left over (1 when the factorization completed).
pub fn trial_factor(n: &BigInt, bound: u64) -> (Vec<BigInt>, BigInt) {
    let mut rest = n.magnitude().clone();
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d < bound && BigUint::from(d) * BigUint::from(d) <= rest {
        while (&rest % d).is_zero() {
            factors.push(BigInt::from(d));
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() && (BigUint::from(d) * BigUint::from(d) > rest || primality_biguint(&rest).is_prime()) {
        factors.push(BigInt::from(rest));
        rest = BigUint::one();
    }
    (factors, BigInt::from(rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn small_values() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn strong_pseudoprimes_are_caught() {
        // Strong pseudoprimes to several small bases.
        for n in [2047u64, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383, 341550071728321] {
            assert!(!is_prime_u64(n), "{n}");
        }
        assert!(!is_prime_u64(3825123056546413051));
        assert!(is_prime_u64(18446744073709551557));
    }

    #[test]
    fn above_deterministic_range() {
        // 2^89 - 1 is a Mersenne prime.
        let m89 = (BigInt::one() << 89) - 1;
        assert_eq!(primality(&m89), Primality::ProbablePrime);
        assert_eq!(primality(&(&m89 * &m89)), Primality::Composite);
    }

    #[test]
    fn signs_and_parity() {
        assert_eq!(primality(&BigInt::from(-7)), Primality::Composite);
        assert!(!is_odd_prime(&BigInt::from(2)));
        assert!(is_odd_prime(&BigInt::from(151)));
    }

    #[test]
    fn trial_division() {
        let (f, rest) = trial_factor(&BigInt::from(39), 1000);
        assert_eq!(f, vec![BigInt::from(3), BigInt::from(13)]);
        assert_eq!(rest, BigInt::one());
    }

    proptest! {
        #[test]
        fn agrees_with_trial_division(n in 0u64..200_000) {
            prop_assert_eq!(is_prime_u64(n), naive(n));
        }
    }
}
