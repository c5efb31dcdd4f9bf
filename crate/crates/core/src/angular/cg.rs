//! Exact Clebsch-Gordan coefficients `<j1 m1; j2 m2 | J M>`.
//!
//! Values come from the Racah closed-form sum in the Condon-Shortley phase
//! convention. Everything is integer arithmetic on prime-exponent vectors: the
//! sum is brought over the least common denominator of its terms, and the
//! square is assembled as `S^2 * prod p^e` and reduced by trial division over
//! the few primes that appear. The result is a sign plus an exact square.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::factorial::{with_prime_table, PrimeTable};
use super::pairs::triangle;
use crate::numerics::{ExactRational, HalfInt};
use crate::{Error, Result};

/// A real CG coefficient as `sign * sqrt(square)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CgValue {
    pub sign: i8,
    pub square: ExactRational,
}

impl CgValue {
    pub fn zero() -> Self {
        CgValue { sign: 0, square: ExactRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * self.square.to_f64().sqrt()
    }
}

/// Nonzero coefficients `<j1 m1; j2 M-m1 | J M>` of one `(J, M, j1, j2)`
/// row, in ascending `m1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CgRow {
    pub entries: Vec<(HalfInt, CgValue)>,
}

impl CgRow {
    pub fn iter(&self) -> impl Iterator<Item = &(HalfInt, CgValue)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn check_pair(j: HalfInt, m: HalfInt, name: &str) -> Result<()> {
    if j.twice() < 0 || m.abs() > j || !j.same_parity(m) {
        return Err(Error::InvalidQuantumNumbers(format!("{name}: j = {j}, m = {m}")));
    }
    Ok(())
}

fn check_spin(j: HalfInt, name: &str) -> Result<()> {
    if j.twice() < 0 {
        return Err(Error::InvalidQuantumNumbers(format!("{name} = {j} is negative")));
    }
    Ok(())
}

/// `<j1 m1; j2 m2 | J M>`. Zero when `m1 + m2 != M` or the triangle rule fails.
pub fn cg(
    j: HalfInt,
    m: HalfInt,
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
) -> Result<CgValue> {
    check_pair(j, m, "J, M")?;
    check_pair(j1, m1, "j1, m1")?;
    check_pair(j2, m2, "j2, m2")?;
    if m1 + m2 != m || !triangle(j, j1, j2) {
        return Ok(CgValue::zero());
    }
    let max_arg = ((j1 + j2 + j).twice() / 2 + 1) as u64;
    Ok(with_prime_table(max_arg, |table| racah(table, j, m, j1, m1, j2, m2)))
}

type RowKey = (i64, i64, i64, i64);

static ROW_CACHE: Lazy<RwLock<HashMap<RowKey, Arc<CgRow>>>> = Lazy::new(Default::default);

/// The nonzero entries of `<j1 m1; j2 M-m1 | J M>` over `m1`, cached.
pub fn cg_row(j: HalfInt, m: HalfInt, j1: HalfInt, j2: HalfInt) -> Result<Arc<CgRow>> {
    check_pair(j, m, "J, M")?;
    check_spin(j1, "j1")?;
    check_spin(j2, "j2")?;
    let key = (j.twice(), m.twice(), j1.twice(), j2.twice());
    if let Some(row) = ROW_CACHE.read().get(&key) {
        return Ok(Arc::clone(row));
    }
    let row = Arc::new(compute_row(j, m, j1, j2));
    Ok(Arc::clone(ROW_CACHE.write().entry(key).or_insert(row)))
}

/// Drops all cached rows.
pub fn clear_cg_cache() {
    ROW_CACHE.write().clear();
}

fn compute_row(j: HalfInt, m: HalfInt, j1: HalfInt, j2: HalfInt) -> CgRow {
    if !triangle(j, j1, j2) {
        return CgRow::default();
    }
    let lo = (-j1).max(m - j2);
    let hi = j1.min(m + j2);
    let max_arg = ((j1 + j2 + j).twice() / 2 + 1) as u64;
    with_prime_table(max_arg, |table| {
        let entries = (lo.twice()..=hi.twice())
            .step_by(2)
            .map(HalfInt::from_twice)
            .map(|m1| (m1, racah(table, j, m, j1, m1, j2, m - m1)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        CgRow { entries }
    })
}

fn half(x: HalfInt) -> u64 {
    debug_assert!(x.is_integer() && x.twice() >= 0, "{x}");
    (x.twice() / 2) as u64
}

fn prime_power_product(primes: &[u64], exps: &[i64], positive: bool) -> BigUint {
    let mut prod = BigUint::one();
    for (&p, &e) in primes.iter().zip(exps) {
        let e = if positive { e } else { -e };
        if e > 0 {
            prod *= BigUint::from(p).pow(e as u32);
        }
    }
    prod
}

// Inputs already validated: triangle holds and m1 + m2 = M.
fn racah(
    table: &PrimeTable,
    j: HalfInt,
    m: HalfInt,
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
) -> CgValue {
    let primes = table.primes();
    let np = primes.len();

    let a = half(j1 + j2 - j);
    let b = half(j1 - m1);
    let c = half(j2 + m2);
    let d = (j - j2 + m1).twice() / 2;
    let e = (j - j1 - m2).twice() / 2;
    let k_min = 0i64.max(-d).max(-e) as u64;
    let k_max = a.min(b).min(c);
    if k_min > k_max {
        return CgValue::zero();
    }

    let term_exps: Vec<Vec<i64>> = (k_min..=k_max)
        .map(|k| {
            let mut acc = vec![0i64; np];
            for arg in [k, a - k, b - k, c - k, (d + k as i64) as u64, (e + k as i64) as u64] {
                table.accumulate(&mut acc, arg, 1);
            }
            acc
        })
        .collect();
    let mut lcd = vec![0i64; np];
    for exps in &term_exps {
        for (l, &x) in lcd.iter_mut().zip(exps) {
            *l = (*l).max(x);
        }
    }
    let mut sum = BigInt::zero();
    for (offset, exps) in term_exps.iter().enumerate() {
        let diff: Vec<i64> = lcd.iter().zip(exps).map(|(l, x)| l - x).collect();
        let term = BigInt::from(prime_power_product(primes, &diff, true));
        if (k_min + offset as u64).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return CgValue::zero();
    }

    // square = prefactor * sum^2 / lcd^2
    let mut exps = vec![0i64; np];
    table.accumulate_integer(&mut exps, j.multiplicity() as u64, 1);
    for arg in [j + j1 - j2, j - j1 + j2, j1 + j2 - j, j + m, j - m, j1 - m1, j1 + m1, j2 - m2, j2 + m2] {
        table.accumulate(&mut exps, half(arg), 1);
    }
    table.accumulate(&mut exps, half(j1 + j2 + j) + 1, -1);
    for (x, l) in exps.iter_mut().zip(&lcd) {
        *x -= 2 * l;
    }
    let sign = if sum.sign() == Sign::Minus { -1 } else { 1 };
    let mut s = sum.abs();
    for (i, &p) in primes.iter().enumerate() {
        let p_big = BigInt::from(p);
        while exps[i] < 0 && (&s % &p_big).is_zero() {
            s /= &p_big;
            exps[i] += 2;
        }
    }
    let numer = &s * &s * BigInt::from(prime_power_product(primes, &exps, true));
    let denom = BigInt::from(prime_power_product(primes, &exps, false));
    CgValue { sign, square: ExactRational::from_reduced(numer, denom) }
}
