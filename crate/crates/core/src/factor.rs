//! Integer factorization and primality for the group orders that show up in
//! primitivity tests (`p - 1`, `p^n - 1`).
//!
//! Strategy: trial division by the primes below a fixed bound, then
//! Pollard-Brent rho on whatever composite cofactor remains. Every reported
//! prime passes [`is_prime`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

/// Default trial-division bound.
pub const DEFAULT_TRIAL_BOUND: u32 = 1_000_000;
/// Default cap on the total number of Pollard-rho iterations for one input.
pub const DEFAULT_RHO_ITERATIONS: u64 = 20_000_000;

/// Work budget for [`factorize_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    pub trial_bound: u32,
    pub rho_iterations: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: DEFAULT_TRIAL_BOUND,
            rho_iterations: DEFAULT_RHO_ITERATIONS,
        }
    }
}

/// Complete prime factorization of a positive integer.
///
/// Entries are sorted by strictly increasing prime; the product of
/// `prime^exponent` over all entries equals `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(q, _)| q)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies the factors back together.
    pub fn reassemble(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (q, e)| acc * q.pow(*e))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (q, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{q}")?;
            } else {
                write!(f, "{q}^{e}")?;
            }
        }
        Ok(())
    }
}

fn sieve(limit: u32) -> Vec<u32> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Primes up to `DEFAULT_TRIAL_BOUND`, computed once.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(DEFAULT_TRIAL_BOUND))
}

/// Primes `<= limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit <= DEFAULT_TRIAL_BOUND as u64 {
        let table = small_primes();
        let end = table.partition_point(|&q| (q as u64) <= limit);
        return table[..end].iter().map(|&q| q as u64).collect();
    }
    sieve(u32::try_from(limit).expect("sieve limit fits in u32"))
        .into_iter()
        .map(u64::from)
        .collect()
}

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_BASES {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES[..12] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality test for arbitrary-precision naturals.
///
/// Miller-Rabin with the first 13 prime bases is deterministic below
/// 3.3 * 10^24; above that the extra bases make it a strong probable-prime
/// test.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &q in small_primes().iter().take(200) {
        if (n % q).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let bases = small_primes().iter().take(40).map(|&q| BigUint::from(q));
    'bases: for a in bases {
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn abs_diff(a: &BigUint, b: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// Pollard-Brent rho. Returns a nontrivial factor of the composite `n`, or
/// `None` once `budget` iterations have been spent.
fn pollard_brent(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    let batch = 128u64;
    for c in 1u32.. {
        let c = BigUint::from(c);
        let step = |v: &BigUint| (v * v + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = one.clone();
        let mut g = one.clone();
        let mut r = 1u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let chunk = batch.min(r - k);
                for _ in 0..chunk {
                    y = step(&y);
                    q = (q * abs_diff(&x, &y)) % n;
                }
                if *budget < chunk {
                    return None;
                }
                *budget -= chunk;
                g = q.gcd(n);
                k += batch;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = step(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    unreachable!("the constant sequence is unbounded")
}

/// Factorizes `n` with the default work budget.
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    factorize_with(n, &FactorConfig::default())
}

pub fn factorize_u64(n: u64) -> Result<Factorization> {
    factorize(&BigUint::from(n))
}

/// Factorizes `n`: trial division below `config.trial_bound`, then
/// Pollard-rho with primality certification of every cofactor.
///
/// `n = 0` is a domain error; running out of rho iterations reports the
/// cofactor that could not be split.
pub fn factorize_with(n: &BigUint, config: &FactorConfig) -> Result<Factorization> {
    if n.is_zero() {
        return domain("cannot factorize 0");
    }
    let mut found: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut rest = n.clone();
    let bound = config.trial_bound.min(DEFAULT_TRIAL_BOUND);
    if let Some(mut r) = rest.to_u64() {
        for &q in small_primes() {
            let q = q as u64;
            if q > bound as u64 || q * q > r {
                break;
            }
            while r % q == 0 {
                r /= q;
                *found.entry(BigUint::from(q)).or_insert(0) += 1;
            }
        }
        rest = BigUint::from(r);
    } else {
        for &q in small_primes() {
            if q > bound {
                break;
            }
            let qb = BigUint::from(q);
            if &qb * &qb > rest {
                break;
            }
            while (&rest % q).is_zero() {
                rest /= q;
                *found.entry(qb.clone()).or_insert(0) += 1;
            }
        }
    }
    let mut budget = config.rho_iterations;
    let mut pending = Vec::new();
    if !rest.is_one() {
        pending.push(rest);
    }
    while let Some(m) = pending.pop() {
        if is_prime(&m) {
            *found.entry(m).or_insert(0) += 1;
            continue;
        }
        match pollard_brent(&m, &mut budget) {
            Some(d) => {
                let other = &m / &d;
                pending.push(d);
                pending.push(other);
            }
            None => {
                return Err(Error::Infeasible(format!(
                    "factorization budget exhausted on cofactor {m}"
                )))
            }
        }
    }
    Ok(Factorization {
        n: n.clone(),
        factors: found.into_iter().collect(),
    })
}

/// `p^n - 1` factored with the default budget, memoized per `(p, n)`.
pub fn factorize_power_minus_one(p: u64, n: u32) -> Result<Factorization> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Factorization>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&(p, n)) {
        return Ok(f.clone());
    }
    let f = factorize(&(BigUint::from(p).pow(n) - 1u32))?;
    cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert((p, n), f.clone());
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors()
            .iter()
            .map(|(q, e)| (q.to_u64().unwrap(), *e))
            .collect()
    }

    #[test]
    fn factors_small_values() {
        assert_eq!(pairs(&factorize_u64(124).unwrap()), vec![(2, 2), (31, 1)]);
        assert!(factorize_u64(1).unwrap().is_empty());
        assert_eq!(
            pairs(&factorize_u64(78124).unwrap()),
            vec![(2, 2), (19531, 1)]
        );
    }

    #[test]
    fn cached_power_minus_one() {
        let f = factorize_power_minus_one(5, 3).unwrap();
        assert_eq!(pairs(&f), vec![(2, 2), (31, 1)]);
        assert_eq!(factorize_power_minus_one(5, 3).unwrap(), f);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(factorize(&BigUint::zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn rho_splits_semiprime_beyond_trial_bound() {
        // 1000003 * 1000033, both above the trial bound.
        let n = big(1_000_003) * big(1_000_033);
        let f = factorize(&n).unwrap();
        assert_eq!(pairs(&f), vec![(1_000_003, 1), (1_000_033, 1)]);
    }

    #[test]
    fn exhausted_budget_names_cofactor() {
        let n = big(1_000_003) * big(1_000_033);
        let config = FactorConfig {
            trial_bound: 100,
            rho_iterations: 0,
        };
        match factorize_with(&n, &config) {
            Err(Error::Infeasible(msg)) => assert!(msg.contains(&n.to_string())),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn large_power_minus_one() {
        // 2^128 - 1 = 3 * 5 * 17 * 257 * 641 * 65537 * 274177 * 6700417 * 67280421310721
        let n = (BigUint::one() << 128u32) - BigUint::one();
        let f = factorize(&n).unwrap();
        assert_eq!(f.reassemble(), n);
        let primes: Vec<String> = f.primes().map(|q| q.to_string()).collect();
        assert_eq!(
            primes,
            [
                "3",
                "5",
                "17",
                "257",
                "641",
                "65537",
                "274177",
                "6700417",
                "67280421310721"
            ]
        );
    }

    #[test]
    fn prime_tests_match_sieve() {
        let table = primes_up_to(10_000);
        for n in 0..10_000u64 {
            assert_eq!(is_prime_u64(n), table.binary_search(&n).is_ok(), "{n}");
        }
        assert!(is_prime(&BigUint::parse_bytes(b"170141183460469231731687303715884105727", 10).unwrap()));
        assert!(!is_prime(&(big(4_294_967_291) * big(4_294_967_279))));
    }

    #[test]
    fn display_lists_powers() {
        assert_eq!(factorize_u64(124).unwrap().to_string(), "2^2 * 31");
        assert_eq!(factorize_u64(1).unwrap().to_string(), "1");
    }
}
