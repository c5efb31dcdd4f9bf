use super::ExactRational;
use crate::{Error, Result};

/// Eigenvalues or probabilities below this are treated as exactly zero.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;

const NEGATIVE_TOLERANCE: f64 = 1e-12;
const NORMALIZATION_TOLERANCE: f64 = 1e-9;

fn plogp(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Shannon entropy in bits, `-sum p log2 p` with `0 log 0 = 0`.
///
/// Values in `[-1e-12, 1e-12)` are clamped to zero first; anything more
/// negative is an error, as is a total more than `1e-9` away from one.
pub fn entropy_bits(probs: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for &p in probs {
        if p < -NEGATIVE_TOLERANCE || p.is_nan() {
            return Err(Error::NegativeProbability(p));
        }
        sum += p;
    }
    if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::NonNormalized { sum });
    }
    let h: f64 = probs
        .iter()
        .map(|&p| if p < EIGENVALUE_FLOOR { 0.0 } else { plogp(p) })
        .sum();
    Ok(h.max(0.0))
}

/// `sum_i w_i * (-p_i log2 p_i)` for exact weights and probabilities.
///
/// Everything stays rational until the logarithm; `p = 0` and `p = 1`
/// contribute exactly nothing.
pub fn rational_log2_entropy(terms: &[(ExactRational, ExactRational)]) -> Result<f64> {
    let one = ExactRational::one();
    let mut total = 0.0;
    for (weight, p) in terms {
        if p.is_negative() || *p > one {
            return Err(Error::ProbabilityOutOfRange(p.to_f64()));
        }
        if p.is_zero() || p.is_one() || weight.is_zero() {
            continue;
        }
        total += weight.to_f64() * plogp(p.to_f64());
    }
    Ok(total)
}
