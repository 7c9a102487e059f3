use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;

use crate::Error;

/// Exact half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The value as an integer, if it is one.
    pub fn to_int(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    /// Integer value; panics on a proper half-integer.
    ///
    /// Used where the caller has already checked the selection rules.
    pub fn int_unchecked(self) -> i64 {
        assert!(self.is_integer(), "{} is not an integer", self);
        self.twice / 2
    }

    pub fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    /// Half of this value, when representable.
    pub fn halve(self) -> Option<Self> {
        if self.twice % 2 == 0 {
            Some(HalfInt { twice: self.twice / 2 })
        } else {
            None
        }
    }

    pub fn to_ratio(self) -> Ratio<i64> {
        Ratio::new(self.twice, 2)
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// True for 0, -1, -2, ...
    pub fn is_nonpositive_integer(self) -> bool {
        self.is_integer() && self.twice <= 0
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::int(n)
    }
}

impl From<HalfInt> for Ratio<i64> {
    fn from(h: HalfInt) -> Self {
        h.to_ratio()
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + o.twice }
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, o: i64) -> HalfInt {
        HalfInt { twice: self.twice + 2 * o }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - o.twice }
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: i64) -> HalfInt {
        HalfInt { twice: self.twice - 2 * o }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, k: i64) -> HalfInt {
        HalfInt { twice: self.twice * k }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let bad = || Error::Parse(format!("not a half-integer: {:?}", s));
        if let Some((num, den)) = t.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "2" => Ok(HalfInt::from_twice(num)),
                "1" => Ok(HalfInt::int(num)),
                _ => Err(bad()),
            }
        } else if let Some(stripped) = t.strip_suffix(".5") {
            // decimal form such as "1.5" or "-0.5"
            let neg = stripped.starts_with('-');
            let whole: i64 = stripped.parse().map_err(|_| bad())?;
            let twice = 2 * whole + if neg { -1 } else { 1 };
            Ok(HalfInt::from_twice(twice))
        } else {
            let t = t.strip_suffix(".0").unwrap_or(t);
            t.parse::<i64>().map(HalfInt::int).map_err(|_| bad())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for s in ["3/2", "-2", "0", "-1/2", "7/2", "5"] {
            let h: HalfInt = s.parse().unwrap();
            assert_eq!(h.to_string(), s);
        }
        assert_eq!("1.5".parse::<HalfInt>().unwrap(), HalfInt::from_twice(3));
        assert_eq!("-0.5".parse::<HalfInt>().unwrap(), HalfInt::from_twice(-1));
        assert_eq!("4/2".parse::<HalfInt>().unwrap(), HalfInt::int(2));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("x".parse::<HalfInt>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = HalfInt::from_twice(3);
        let b = HalfInt::from_twice(1);
        assert_eq!(a + b, HalfInt::int(2));
        assert_eq!(a - b, HalfInt::int(1));
        assert!((a + b).is_integer());
        assert!(!a.is_integer());
        assert_eq!((-a).twice(), -3);
        assert_eq!(a * 2, HalfInt::int(3));
        assert_eq!(HalfInt::int(-3).to_int(), Some(-3));
        assert!(HalfInt::ZERO.is_nonpositive_integer());
        assert!(!HalfInt::HALF.is_nonpositive_integer());
    }
}
