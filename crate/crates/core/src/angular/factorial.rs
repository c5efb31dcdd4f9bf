//! Grow-on-demand factorial tables.
//!
//! Two views of `k!` are memoized: the big integer itself, and its prime
//! factorization (exponent per prime), which lets Clebsch-Gordan sums be
//! assembled without big-integer gcds.

use num_bigint::BigUint;
use num_traits::One;
use once_cell::sync::Lazy;
use parking_lot::RwLock;

static FACTORIALS: Lazy<RwLock<Vec<BigUint>>> = Lazy::new(|| RwLock::new(vec![BigUint::one()]));

/// `k!` as a big integer.
pub fn factorial(k: u64) -> BigUint {
    let k = k as usize;
    if let Some(v) = FACTORIALS.read().get(k) {
        return v.clone();
    }
    let mut table = FACTORIALS.write();
    while table.len() <= k {
        let next = table.last().unwrap() * BigUint::from(table.len());
        table.push(next);
    }
    table[k].clone()
}

/// Primes in ascending order plus factorial exponent vectors over them.
#[derive(Default)]
pub(crate) struct PrimeTable {
    primes: Vec<u64>,
    limit: u64,
    /// `fact_exps[k][i]` = exponent of `primes[i]` in `k!`; rows are padded
    /// lazily, so a row may be shorter than `primes`.
    fact_exps: Vec<Vec<u32>>,
}

static PRIME_TABLE: Lazy<RwLock<PrimeTable>> = Lazy::new(|| RwLock::new(PrimeTable::default()));

impl PrimeTable {
    fn grow(&mut self, limit: u64) {
        if limit <= self.limit {
            return;
        }
        let limit = limit.max(2 * self.limit).max(64);
        let mut sieve = vec![true; limit as usize + 1];
        self.primes.clear();
        for p in 2..=limit as usize {
            if sieve[p] {
                self.primes.push(p as u64);
                let mut q = p * p;
                while q <= limit as usize {
                    sieve[q] = false;
                    q += p;
                }
            }
        }
        self.fact_exps = (0..=limit)
            .map(|k| {
                self.primes
                    .iter()
                    .take_while(|&&p| p <= k)
                    .map(|&p| {
                        // Legendre: sum_i floor(k / p^i)
                        let (mut e, mut q) = (0u32, p);
                        while q <= k {
                            e += (k / q) as u32;
                            q *= p;
                        }
                        e
                    })
                    .collect()
            })
            .collect();
        self.limit = limit;
    }

    pub(crate) fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Adds `sign * exponents(k!)` into `acc` (which must span all primes).
    pub(crate) fn accumulate(&self, acc: &mut [i64], k: u64, sign: i64) {
        for (slot, &e) in acc.iter_mut().zip(&self.fact_exps[k as usize]) {
            *slot += sign * e as i64;
        }
    }

    /// Adds `sign * exponents(value)` for a small positive integer.
    pub(crate) fn accumulate_integer(&self, acc: &mut [i64], mut value: u64, sign: i64) {
        for (slot, &p) in acc.iter_mut().zip(&self.primes) {
            if value == 1 {
                break;
            }
            while value.is_multiple_of(p) {
                value /= p;
                *slot += sign;
            }
        }
        debug_assert_eq!(value, 1, "integer exceeds the prime table");
    }
}

/// Runs `f` with a prime table covering factorials up to `max_arg!`.
pub(crate) fn with_prime_table<R>(max_arg: u64, f: impl FnOnce(&PrimeTable) -> R) -> R {
    {
        let table = PRIME_TABLE.read();
        if table.limit >= max_arg {
            return f(&table);
        }
    }
    PRIME_TABLE.write().grow(max_arg);
    f(&PRIME_TABLE.read())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorials() {
        assert_eq!(factorial(0), BigUint::from(1u32));
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(factorial(20), BigUint::from(2_432_902_008_176_640_000u64));
    }

    #[test]
    fn prime_exponents_rebuild_factorial() {
        with_prime_table(30, |t| {
            for k in [0u64, 1, 7, 12, 30] {
                let mut acc = vec![0i64; t.primes().len()];
                t.accumulate(&mut acc, k, 1);
                let mut prod = BigUint::one();
                for (&p, &e) in t.primes().iter().zip(&acc) {
                    prod *= BigUint::from(p).pow(e as u32);
                }
                assert_eq!(prod, factorial(k), "k = {k}");
            }
        });
    }
}
