use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Round;
use rug::ops::Pow;
use rug::Float;

/// High-precision real carried through every formula.
///
/// Binary operations run at the larger precision of the two operands.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct QReal(Float);

impl QReal {
    pub fn new(f: Float) -> Self {
        QReal(f)
    }

    pub fn zero(prec: u32) -> Self {
        QReal(Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        QReal(Float::with_val(prec, 1))
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        QReal(Float::with_val(prec, v))
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        QReal(Float::with_val(prec, v))
    }

    /// Parse a decimal string at the given precision.
    pub fn parse(s: &str, prec: u32) -> Option<Self> {
        Float::parse(s.trim()).ok().map(|p| QReal(Float::with_val(prec, p)))
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    /// Copy at a different precision (rounded to nearest).
    pub fn with_prec(&self, prec: u32) -> Self {
        QReal(Float::with_val(prec, &self.0))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn abs(&self) -> Self {
        QReal(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Self {
        QReal(self.0.clone().sqrt())
    }

    pub fn square(&self) -> Self {
        QReal(self.0.clone().square())
    }

    pub fn recip(&self) -> Self {
        QReal(self.0.clone().recip())
    }

    pub fn ln(&self) -> Self {
        QReal(self.0.clone().ln())
    }

    pub fn exp(&self) -> Self {
        QReal(self.0.clone().exp())
    }

    pub fn log2(&self) -> Self {
        QReal(self.0.clone().log2())
    }

    pub fn powi(&self, k: i32) -> Self {
        QReal(Float::with_val(self.prec(), (&self.0).pow(k)))
    }

    pub fn max(self, other: Self) -> Self {
        if other.0 > self.0 {
            other
        } else {
            self
        }
    }

    /// Binary exponent of the value (0 for zero).
    pub fn exponent(&self) -> i32 {
        self.0.get_exp().unwrap_or(0)
    }

    /// Decimal string with `digits` significant digits.
    pub fn to_string_digits(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        self.0.to_string_radix_round(10, Some(digits), Round::Nearest)
    }

    /// Relative deviation |a-b| / max(|a|, |b|, floor).
    pub fn rel_diff(&self, other: &QReal, floor: &QReal) -> QReal {
        let d = (self - other).abs();
        let scale = self.abs().max(other.abs()).max(floor.clone());
        &d / &scale
    }
}

impl fmt::Display for QReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec() as f64) * std::f64::consts::LOG10_2).floor() as usize;
        write!(f, "{}", self.to_string_digits(digits.max(1)))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl<'a, 'b> $tr<&'b QReal> for &'a QReal {
            type Output = QReal;
            fn $m(self, o: &'b QReal) -> QReal {
                let p = self.prec().max(o.prec());
                QReal(Float::with_val(p, (&self.0).$m(&o.0)))
            }
        }
        impl $tr<QReal> for QReal {
            type Output = QReal;
            fn $m(self, o: QReal) -> QReal {
                (&self).$m(&o)
            }
        }
        impl<'b> $tr<&'b QReal> for QReal {
            type Output = QReal;
            fn $m(self, o: &'b QReal) -> QReal {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<QReal> for &'a QReal {
            type Output = QReal;
            fn $m(self, o: QReal) -> QReal {
                self.$m(&o)
            }
        }
        impl $tr<i64> for &QReal {
            type Output = QReal;
            fn $m(self, o: i64) -> QReal {
                QReal(Float::with_val(self.prec(), (&self.0).$m(o)))
            }
        }
        impl $tr<i64> for QReal {
            type Output = QReal;
            fn $m(self, o: i64) -> QReal {
                (&self).$m(o)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for QReal {
    type Output = QReal;
    fn neg(self) -> QReal {
        QReal(-self.0)
    }
}

impl Neg for &QReal {
    type Output = QReal;
    fn neg(self) -> QReal {
        QReal(Float::with_val(self.prec(), -&self.0))
    }
}

impl AddAssign<&QReal> for QReal {
    fn add_assign(&mut self, o: &QReal) {
        if o.prec() > self.prec() {
            self.0.set_prec(o.prec());
        }
        self.0 += &o.0;
    }
}

impl AddAssign<QReal> for QReal {
    fn add_assign(&mut self, o: QReal) {
        *self += &o;
    }
}

impl SubAssign<&QReal> for QReal {
    fn sub_assign(&mut self, o: &QReal) {
        if o.prec() > self.prec() {
            self.0.set_prec(o.prec());
        }
        self.0 -= &o.0;
    }
}

impl SubAssign<QReal> for QReal {
    fn sub_assign(&mut self, o: QReal) {
        *self -= &o;
    }
}

impl MulAssign<&QReal> for QReal {
    fn mul_assign(&mut self, o: &QReal) {
        if o.prec() > self.prec() {
            self.0.set_prec(o.prec());
        }
        self.0 *= &o.0;
    }
}

impl MulAssign<QReal> for QReal {
    fn mul_assign(&mut self, o: QReal) {
        *self *= &o;
    }
}

impl PartialEq<i64> for QReal {
    fn eq(&self, o: &i64) -> bool {
        self.0 == *o
    }
}

impl PartialOrd<i64> for QReal {
    fn partial_cmp(&self, o: &i64) -> Option<Ordering> {
        self.0.partial_cmp(o)
    }
}

impl PartialEq<f64> for QReal {
    fn eq(&self, o: &f64) -> bool {
        self.0 == *o
    }
}

impl PartialOrd<f64> for QReal {
    fn partial_cmp(&self, o: &f64) -> Option<Ordering> {
        self.0.partial_cmp(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ops_keep_max_precision() {
        let a = QReal::from_i64(3, 64);
        let b = QReal::from_i64(7, 256);
        assert_eq!((&a + &b).prec(), 256);
        assert_eq!((&a * &b).prec(), 256);
        assert_eq!((&b / &a).prec(), 256);
        let mut c = a.clone();
        c += &b;
        assert_eq!(c.prec(), 256);
        assert_eq!(c, 10);
    }

    #[test]
    fn decimal_round_trip() {
        let x = QReal::parse("0.3", 200).unwrap();
        let s = x.to_string_digits(50);
        let y = QReal::parse(&s, 200).unwrap();
        assert!((&x - &y).abs() < QReal::parse("1e-49", 200).unwrap());
        assert_eq!(QReal::zero(64).to_string_digits(10), "0");
    }
}
