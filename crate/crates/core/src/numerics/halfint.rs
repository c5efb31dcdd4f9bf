use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

/// An angular-momentum quantum number stored as twice its value.
///
/// `HalfInt::from_twice(3)` is 3/2. Both total spins (`J`, `j1`, `j2`) and
/// projections (`M`, `m1`, `m2`) use this type, so all quantum-number
/// arithmetic is integer arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInt(2 * value)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// `2x + 1`, the multiplet dimension when `self` is a total spin.
    pub const fn multiplicity(self) -> i64 {
        self.0 + 1
    }

    /// True if `self` and `other` are both integers or both half-odd.
    pub const fn same_parity(self, other: HalfInt) -> bool {
        (self.0 - other.0) % 2 == 0
    }

    /// Value as an integer, if it is one.
    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// The projections `-self, -self + 1, ..., self`.
    pub fn projections(self) -> impl DoubleEndedIterator<Item = HalfInt> + Clone {
        let j = self.0;
        (-j..=j).step_by(2).map(HalfInt).collect::<Vec<_>>().into_iter()
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

/// Integers print plainly, half-odd values as a reduced fraction (`-5/2`).
impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {0:?} as an integer or half-integer")]
pub struct ParseHalfIntError(String);

/// Accepts `"3"`, `"-3/2"`, `"6/4"` (reduced exactly) and `"2.5"` / `"-0.50"`.
/// Anything that is not exactly a multiple of 1/2 is rejected.
impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseHalfIntError(s.to_string());
        let t = s.trim();
        if let Some((num, den)) = t.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| err())?;
            let den: i64 = den.trim().parse().map_err(|_| err())?;
            if den <= 0 || (2 * num) % den != 0 {
                return Err(err());
            }
            return Ok(HalfInt(2 * num / den));
        }
        if let Some((whole, frac)) = t.split_once('.') {
            let negative = whole.trim_start().starts_with('-');
            let whole_digits = whole.trim_start_matches(['-', '+']);
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let whole: i64 = if whole_digits.is_empty() {
                0
            } else {
                whole_digits.parse().map_err(|_| err())?
            };
            let frac = frac.trim_end_matches('0');
            let half = match frac {
                "" => 0,
                "5" => 1,
                _ => return Err(err()),
            };
            let twice = 2 * whole + half;
            return Ok(HalfInt(if negative { -twice } else { twice }));
        }
        t.parse::<i64>().map(HalfInt::from_int).map_err(|_| err())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("1/2".parse::<HalfInt>().unwrap(), HalfInt::HALF);
        assert_eq!("0.5".parse::<HalfInt>().unwrap(), HalfInt::HALF);
        assert_eq!("-2.50".parse::<HalfInt>().unwrap(), HalfInt::from_twice(-5));
        assert_eq!("-0.5".parse::<HalfInt>().unwrap(), HalfInt::from_twice(-1));
        assert_eq!("6/4".parse::<HalfInt>().unwrap(), HalfInt::from_twice(3));
        assert_eq!("4/2".parse::<HalfInt>().unwrap(), HalfInt::from_int(2));
        assert_eq!("7".parse::<HalfInt>().unwrap(), HalfInt::from_int(7));
        assert_eq!("3.0".parse::<HalfInt>().unwrap(), HalfInt::from_int(3));
        for bad in ["0.25", "1/3", "x", "1/0", "1.", "", "0.55"] {
            assert!(bad.parse::<HalfInt>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_reduced() {
        assert_eq!(HalfInt::from_twice(5).to_string(), "5/2");
        assert_eq!(HalfInt::from_twice(-1).to_string(), "-1/2");
        assert_eq!(HalfInt::from_twice(4).to_string(), "2");
        assert_eq!(HalfInt::ZERO.to_string(), "0");
    }

    #[test]
    fn projections_ascending() {
        let ms: Vec<_> = HalfInt::from_twice(3).projections().map(HalfInt::twice).collect();
        assert_eq!(ms, vec![-3, -1, 1, 3]);
    }

    proptest::proptest! {
        #[test]
        fn display_parse_roundtrip(twice in -400i64..400) {
            let h = HalfInt::from_twice(twice);
            proptest::prop_assert_eq!(h.to_string().parse::<HalfInt>().unwrap(), h);
        }
    }
}
