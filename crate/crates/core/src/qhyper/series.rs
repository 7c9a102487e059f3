use std::fmt;

use crate::qcore::{guarded_sum, qnum, qpow_half, q_factorial, HalfInt, QContext, QReal};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn apply(self, h: HalfInt) -> HalfInt {
        match self {
            Sign::Plus => h,
            Sign::Minus => -h,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Terminating ₚ₊₁Fₚ with half-integer parameters and argument z = q^(±e).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperSeriesSpec {
    pub numerator: Vec<HalfInt>,
    pub denominator: Vec<HalfInt>,
    pub arg_exponent: HalfInt,
    pub arg_sign: Sign,
}

impl HyperSeriesSpec {
    pub fn new(numerator: Vec<HalfInt>, denominator: Vec<HalfInt>, z_exponent: HalfInt) -> Self {
        let (arg_exponent, arg_sign) = if z_exponent.twice() < 0 {
            (-z_exponent, Sign::Minus)
        } else {
            (z_exponent, Sign::Plus)
        };
        HyperSeriesSpec { numerator, denominator, arg_exponent, arg_sign }
    }

    /// Convenience constructor from doubled parameters.
    pub fn from_twice(num: &[i64], den: &[i64], z_twice: i64) -> Self {
        Self::new(
            num.iter().map(|&t| HalfInt::from_twice(t)).collect(),
            den.iter().map(|&t| HalfInt::from_twice(t)).collect(),
            HalfInt::from_twice(z_twice),
        )
    }

    /// Signed exponent of z.
    pub fn z_exponent(&self) -> HalfInt {
        self.arg_sign.apply(self.arg_exponent)
    }

    /// Same series read in base 1/q: the argument sign flips.
    pub fn flipped(&self) -> Self {
        HyperSeriesSpec { arg_sign: self.arg_sign.flip(), ..self.clone() }
    }

    /// Last index with a nonzero term, from the nonpositive-integer numerators.
    pub fn cutoff(&self) -> Option<usize> {
        self.numerator
            .iter()
            .filter(|a| a.is_nonpositive_integer())
            .map(|a| (-a.int_unchecked()) as usize)
            .min()
    }
}

impl fmt::Display for HyperSeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[HalfInt]| v.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(", ");
        write!(
            f,
            "{}F{}({}; {} | q^{})",
            self.numerator.len(),
            self.denominator.len(),
            list(&self.numerator),
            list(&self.denominator),
            self.z_exponent()
        )
    }
}

fn not_terminating(spec: &HyperSeriesSpec) -> Error {
    Error::Domain(format!("series does not terminate: {}", spec))
}

/// Σ_k Π(a_i|q)_k / Π(b_j|q)_k · z^k/[k]!
pub fn eval_terminating(spec: &HyperSeriesSpec, ctx: &QContext) -> Result<QReal> {
    if spec.numerator.iter().any(|a| a.twice() == 0) {
        return Ok(ctx.one());
    }
    let n = spec.cutoff().ok_or_else(|| not_terminating(spec))?;
    for b in &spec.denominator {
        if b.is_nonpositive_integer() {
            let first_zero = (-b.int_unchecked()) as usize + 1;
            if first_zero <= n {
                return Err(Error::IllPosed { index: first_zero });
            }
        }
    }
    let ze = spec.z_exponent();
    guarded_sum(ctx, |w| {
        let z = qpow_half(ze, w);
        let mut terms = Vec::with_capacity(n + 1);
        let mut t = w.one();
        terms.push(t.clone());
        for k in 0..n as i64 {
            for a in &spec.numerator {
                t *= qnum(*a + k, w);
            }
            let mut den = qnum(HalfInt::int(k + 1), w);
            for b in &spec.denominator {
                den *= qnum(*b + k, w);
            }
            t = &(&t * &z) / &den;
            terms.push(t.clone());
        }
        Ok(terms)
    })
}

/// Series with each denominator Pochhammer (b|q)_k replaced by 1/[b-1+k]!,
/// which stays finite for nonpositive integer b (1/[negative]! = 0).
/// Denominator parameters must be integers.
pub fn eval_regularized(spec: &HyperSeriesSpec, ctx: &QContext) -> Result<QReal> {
    let n = spec.cutoff().ok_or_else(|| not_terminating(spec))?;
    let dens: Vec<i64> = spec
        .denominator
        .iter()
        .map(|b| b.to_int().ok_or_else(|| Error::Pattern(format!("regularized series needs integer denominators: {}", spec))))
        .collect::<Result<_>>()?;
    let ze = spec.z_exponent();
    guarded_sum(ctx, |w| {
        let z = qpow_half(ze, w);
        let mut terms = Vec::with_capacity(n + 1);
        let mut num = w.one();
        let mut zk = w.one();
        for k in 0..=n as i64 {
            if k > 0 {
                for a in &spec.numerator {
                    num *= qnum(*a + (k - 1), w);
                }
                zk *= &z;
            }
            if dens.iter().any(|b| b - 1 + k < 0) {
                terms.push(w.zero());
                continue;
            }
            let mut den = q_factorial(k, w)?;
            for b in &dens {
                den *= q_factorial(b - 1 + k, w)?;
            }
            terms.push(&(&num * &zk) / &den);
        }
        Ok(terms)
    })
}

/// Basic series ₚ₊₁φₚ with bases q^a, q^b and a real argument z.
#[derive(Clone, Debug, PartialEq)]
pub struct BasicSeriesSpec {
    pub numerator: Vec<HalfInt>,
    pub denominator: Vec<HalfInt>,
    pub z: QReal,
}

fn one_minus_qpow(w: &QContext, e: HalfInt) -> QReal {
    &w.one() - &qpow_half(e, w)
}

/// Σ_k Π(q^a;q)_k / Π(q^b;q)_k · z^k/(q;q)_k
pub fn eval_basic(spec: &BasicSeriesSpec, ctx: &QContext) -> Result<QReal> {
    if ctx.is_classical() {
        return Err(Error::Domain("basic series degenerate at q = 1".into()));
    }
    if spec.numerator.iter().any(|a| a.twice() == 0) {
        return Ok(ctx.one());
    }
    let n = spec
        .numerator
        .iter()
        .filter(|a| a.is_nonpositive_integer())
        .map(|a| (-a.int_unchecked()) as usize)
        .min()
        .ok_or_else(|| Error::Domain("basic series does not terminate".into()))?;
    for b in &spec.denominator {
        if b.is_nonpositive_integer() {
            let first_zero = (-b.int_unchecked()) as usize + 1;
            if first_zero <= n {
                return Err(Error::IllPosed { index: first_zero });
            }
        }
    }
    guarded_sum(ctx, |w| {
        let z = spec.z.with_prec(w.bits());
        let mut terms = Vec::with_capacity(n + 1);
        let mut t = w.one();
        terms.push(t.clone());
        for k in 0..n as i64 {
            for a in &spec.numerator {
                t *= one_minus_qpow(w, *a + k);
            }
            let mut den = one_minus_qpow(w, HalfInt::int(k + 1));
            for b in &spec.denominator {
                den *= one_minus_qpow(w, *b + k);
            }
            t = &(&t * &z) / &den;
            terms.push(t.clone());
        }
        Ok(terms)
    })
}

/// Symmetric series equal to φ(q^a; q^b | q, q^ze), to be evaluated in base q^(1/2)
/// (see [`QContext::sqrt_base`]). The argument becomes q^(ze + (Σa - Σb - 1)/2),
/// whose exponent in base q^(1/2) is 2ze + Σa - Σb - 1.
pub fn basic_to_symmetric(
    numerator: &[HalfInt],
    denominator: &[HalfInt],
    z_exponent: HalfInt,
) -> HyperSeriesSpec {
    let sa = numerator.iter().fold(HalfInt::ZERO, |s, a| s + *a);
    let sb = denominator.iter().fold(HalfInt::ZERO, |s, b| s + *b);
    let e = z_exponent * 2 + sa - sb - 1;
    HyperSeriesSpec::new(numerator.to_vec(), denominator.to_vec(), e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::q_pochhammer;

    fn ctx(q: &str) -> QContext {
        QContext::new(q, 50).unwrap()
    }

    fn close(a: &QReal, b: &QReal, c: &QContext) -> bool {
        a.rel_diff(b, &c.tolerance()) < c.tolerance()
    }

    #[test]
    fn zero_numerator_gives_one() {
        let c = ctx("0.5");
        let s = HyperSeriesSpec::from_twice(&[0, 7, -4], &[3, -20], 2);
        assert_eq!(eval_terminating(&s, &c).unwrap(), 1);
        let s = HyperSeriesSpec::from_twice(&[-0, 5], &[-6], -1);
        assert_eq!(eval_terminating(&s, &c).unwrap(), 1);
    }

    #[test]
    fn vandermonde_instance() {
        let c = ctx("0.5");
        // 2F1(-2, 3; 7 | q^(3-7-2+1))
        let s = HyperSeriesSpec::from_twice(&[-4, 6], &[14], -10);
        let lhs = eval_terminating(&s, &c).unwrap();
        let h = HalfInt::int;
        let rhs = &(&q_pochhammer(h(4), 2, &c) / &q_pochhammer(h(7), 2, &c))
            * &qpow_half(h(6), &c);
        assert!(close(&lhs, &rhs, &c));
    }

    #[test]
    fn ill_posed_names_index() {
        let c = ctx("0.5");
        let s = HyperSeriesSpec::from_twice(&[-6, 2], &[-2], 0);
        assert_eq!(eval_terminating(&s, &c), Err(Error::IllPosed { index: 2 }));
        // denominator zero beyond the cutoff is shielded
        let s = HyperSeriesSpec::from_twice(&[-4, 2], &[-4], 0);
        assert!(eval_terminating(&s, &c).is_ok());
        let s = HyperSeriesSpec::from_twice(&[3, 2], &[5], 0);
        assert!(eval_terminating(&s, &c).is_err());
    }

    #[test]
    fn reciprocal_flips_argument() {
        let c = ctx("0.7");
        let s = HyperSeriesSpec::from_twice(&[-6, 3, 9], &[5, 11], 3);
        let a = eval_terminating(&s, &c).unwrap();
        let b = eval_terminating(&s.flipped(), &c.reciprocal()).unwrap();
        assert!(close(&a, &b, &c));
    }

    #[test]
    fn regularized_matches_plain_for_positive_denominators() {
        let c = ctx("0.5");
        let s = HyperSeriesSpec::from_twice(&[-6, 3, -9], &[4, 10], 2);
        let plain = eval_terminating(&s, &c).unwrap();
        let reg = eval_regularized(&s, &c).unwrap();
        // Freg = F / ([b1-1]! [b2-1]!)
        let scale = &q_factorial(1, &c).unwrap() * &q_factorial(4, &c).unwrap();
        assert!(close(&(&reg * &scale), &plain, &c));
    }

    #[test]
    fn basic_series_small_cases() {
        let c = ctx("0.5");
        let z = c.real("0.3").unwrap();
        let s = BasicSeriesSpec { numerator: vec![HalfInt::ZERO, HalfInt::ONE], denominator: vec![HalfInt::int(2)], z: z.clone() };
        assert_eq!(eval_basic(&s, &c).unwrap(), 1);
        // φ(q^-1, q^a; q^b | z) = 1 + (1-q^-1)(1-q^a) z/((1-q^b)(1-q))
        let h = HalfInt::from_twice;
        let s = BasicSeriesSpec { numerator: vec![h(-2), h(3)], denominator: vec![h(5)], z: z.clone() };
        let q = c.q();
        let one = c.one();
        let expect = &one
            + &(&(&(&one - &q.recip()) * &(&one - &qpow_half(h(3), &c))) * &z
                / &(&(&one - &qpow_half(h(5), &c)) * &(&one - &q)));
        assert!(close(&eval_basic(&s, &c).unwrap(), &expect, &c));
    }
}
