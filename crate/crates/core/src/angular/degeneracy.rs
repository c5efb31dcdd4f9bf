use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use super::factorial::factorial;
use crate::numerics::HalfInt;
use crate::{Error, Result};

/// Smallest total spin reachable by `n` spin-1/2 particles: 0 or 1/2.
pub fn j_min(n: u32) -> HalfInt {
    HalfInt::from_twice((n % 2) as i64)
}

/// Checks `j_min(n) <= j <= n/2` with the parity of `n`.
pub fn validate_total_spin(j: HalfInt, n: u32) -> Result<()> {
    let t = j.twice();
    if n == 0 || t < 0 || t > n as i64 || (n as i64 - t) % 2 != 0 {
        return Err(Error::InvalidJ { j, n });
    }
    Ok(())
}

/// Number of orthogonal spin-`j` multiplets in `n` spin-1/2 particles:
/// `n! (2j+1) / ((n/2 - j)! (n/2 + j + 1)!)`.
pub fn degeneracy(j: HalfInt, n: u32) -> Result<BigUint> {
    validate_total_spin(j, n)?;
    Ok(degeneracy_unchecked(j, n))
}

pub(crate) fn degeneracy_unchecked(j: HalfInt, n: u32) -> BigUint {
    let t = j.twice() as u64;
    let n = n as u64;
    let lower = (n - t) / 2;
    let upper = (n + t) / 2 + 1;
    factorial(n) * BigUint::from(t + 1) / (factorial(lower) * factorial(upper))
}

/// All degeneracies `d^J_N` for one particle count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyTable {
    n: u32,
    values: BTreeMap<HalfInt, BigUint>,
}

impl DegeneracyTable {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidQuantumNumbers("N must be at least 1".into()));
        }
        let values = (j_min(n).twice()..=n as i64)
            .step_by(2)
            .map(|t| {
                let j = HalfInt::from_twice(t);
                (j, degeneracy_unchecked(j, n))
            })
            .collect();
        Ok(DegeneracyTable { n, values })
    }

    pub fn particles(&self) -> u32 {
        self.n
    }

    /// Zero for spins that do not occur.
    pub fn get(&self, j: HalfInt) -> BigUint {
        self.values.get(&j).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (HalfInt, &BigUint)> {
        self.values.iter().map(|(j, d)| (*j, d))
    }
}
