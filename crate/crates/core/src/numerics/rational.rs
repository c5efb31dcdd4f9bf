use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// Panics if `denominator` is zero.
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::new(numerator.into(), denominator.into()))
    }

    /// Caller guarantees `numerator / denominator` is already reduced and the
    /// denominator is positive.
    pub(crate) fn from_reduced(numerator: BigInt, denominator: BigInt) -> Self {
        debug_assert!(denominator.is_positive());
        ExactRational(BigRational::new_raw(numerator, denominator))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(value.into()))
    }

    pub fn from_biguint(value: &BigUint) -> Self {
        Self::from_integer(BigInt::from(value.clone()))
    }

    /// Exact value of a finite float (every f64 is a dyadic rational).
    pub fn from_f64(value: f64) -> Option<Self> {
        BigRational::from_float(value).map(ExactRational)
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Self {
        ExactRational(self.0.recip())
    }

    pub fn pow(&self, exp: i32) -> Self {
        ExactRational(num_traits::Pow::pow(&self.0, exp))
    }

    /// Nearest f64. Ratios of integers far outside the f64 range are scaled
    /// before dividing, so huge-over-huge values convert accurately.
    pub fn to_f64(&self) -> f64 {
        if let Some(v) = self.0.to_f64() {
            if v.is_finite() && (v != 0.0 || self.0.is_zero()) {
                return v;
            }
        }
        // Fallback: keep the top 64 bits of each side.
        let (n, d) = (self.0.numer(), self.0.denom());
        let nb = n.bits() as i64;
        let db = d.bits() as i64;
        let ns = (nb - 64).max(0);
        let ds = (db - 64).max(0);
        let nf = (n >> ns as usize).to_f64().unwrap_or(f64::NAN);
        let df = (d >> ds as usize).to_f64().unwrap_or(f64::NAN);
        nf / df * 2f64.powi((ns - ds) as i32)
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for ExactRational {
    fn from(value: BigRational) -> Self {
        ExactRational(value)
    }
}

impl From<i64> for ExactRational {
    fn from(value: i64) -> Self {
        Self::from_integer(value)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational($tr::$method(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational($tr::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactRational> for ExactRational {
    fn sum<I: Iterator<Item = &'a ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| &acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduced_on_construction() {
        let r = ExactRational::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn huge_ratio_converts() {
        let big = BigInt::from(10u32).pow(400);
        let r = ExactRational::new(big.clone() * 3, big * 4);
        assert_eq!(r.to_f64(), 0.75);
        let tiny = ExactRational::new(BigInt::from(1), BigInt::from(3u32).pow(700));
        assert_eq!(tiny.to_f64(), 0.0);
    }

    proptest! {
        #[test]
        fn product_with_reciprocal_is_one(a in -1_000_000i64..1_000_000, b in 1i64..1_000_000) {
            prop_assume!(a != 0);
            let x = ExactRational::new(a, b);
            let y = ExactRational::new(b, a);
            prop_assert!((x * y).is_one());
        }
    }
}
