use std::sync::Arc;

use num_rational::Ratio;
use rug::ops::Pow;
use rug::Float;

use super::context::{QContext, GUARD_BITS};
use super::halfint::HalfInt;
use super::real::QReal;
use crate::{Error, Result};

/// (-1)^k
pub fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn pow_float(base: &Float, e: i64, ctx: &QContext) -> Float {
    let e = i32::try_from(e).expect("q-exponent out of range");
    Float::with_val(ctx.bits(), base.pow(e))
}

/// q^e for a rational exponent. Always 1 on the classical branch.
pub fn qpow(e: Ratio<i64>, ctx: &QContext) -> QReal {
    if ctx.is_classical() || *e.numer() == 0 {
        return ctx.one();
    }
    let den = u32::try_from(*e.denom()).expect("q-exponent denominator out of range");
    let base = ctx.root(den);
    QReal::new(pow_float(&base, *e.numer(), ctx))
}

/// q^h for a half-integer exponent.
pub fn qpow_half(h: HalfInt, ctx: &QContext) -> QReal {
    QReal::new(qpow_half_float(h.twice(), ctx))
}

pub(crate) fn qpow_half_float(twice: i64, ctx: &QContext) -> Float {
    if ctx.is_classical() || twice == 0 {
        return Float::with_val(ctx.bits(), 1);
    }
    if twice % 2 == 0 {
        pow_float(ctx.q_float(), twice / 2, ctx)
    } else {
        pow_float(&ctx.root(2), twice, ctx)
    }
}

/// q^x for a real exponent.
pub fn qpow_real(x: &QReal, ctx: &QContext) -> QReal {
    if ctx.is_classical() {
        return ctx.one();
    }
    let ln_q = Float::with_val(ctx.bits(), ctx.q_float().ln_ref());
    let p = ctx.bits().max(x.prec());
    QReal::new(Float::with_val(p, ln_q * x.as_float()).exp())
}

/// [x] as a raw float, x = twice/2.
pub(crate) fn qnum_float(twice: i64, ctx: &QContext) -> Float {
    if ctx.is_classical() {
        return Float::with_val(ctx.bits(), twice) / 2u32;
    }
    if twice == 0 {
        return Float::new(ctx.bits());
    }
    let a = qpow_half_float(twice, ctx);
    let inv = Float::with_val(ctx.bits(), a.recip_ref());
    let num = Float::with_val(ctx.bits(), &a - &inv);
    let qi = Float::with_val(ctx.bits(), ctx.q_float().recip_ref());
    let den = Float::with_val(ctx.bits(), ctx.q_float() - &qi);
    num / den
}

/// Symmetric quantum number [x] = (q^x - q^-x)/(q - q^-1); x itself at q = 1.
pub fn qnum(x: HalfInt, ctx: &QContext) -> QReal {
    QReal::new(qnum_float(x.twice(), ctx))
}

/// [x] for a real argument.
pub fn qnum_real(x: &QReal, ctx: &QContext) -> QReal {
    if ctx.is_classical() {
        return x.with_prec(ctx.bits().max(x.prec()));
    }
    let a = qpow_real(x, ctx);
    let num = &a - &a.recip();
    let q = ctx.q();
    let den = &q - &q.recip();
    &num / &den
}

/// [n]! = [1][2]...[n].
pub fn q_factorial(n: i64, ctx: &QContext) -> Result<QReal> {
    if n < 0 {
        return Err(Error::Domain(format!("q-factorial of negative integer {}", n)));
    }
    Ok(QReal::new(ctx.factorial_with(n as usize, |k| qnum_float(2 * k, ctx))))
}

/// (a|q)_n = [a][a+1]...[a+n-1].
pub fn q_pochhammer(a: HalfInt, n: usize, ctx: &QContext) -> QReal {
    if n == 0 {
        return ctx.one();
    }
    // a nonpositive integer above -n puts a zero factor in the product
    if a.is_nonpositive_integer() && a.twice() > -2 * n as i64 {
        return ctx.zero();
    }
    let t = a.twice();
    QReal::new(ctx.pochhammer_with(t, n, |m| qnum_float(t + 2 * m, ctx)))
}

pub fn q_pochhammer_real(a: &QReal, n: usize, ctx: &QContext) -> QReal {
    let mut acc = ctx.one();
    for m in 0..n {
        acc *= qnum_real(&(a + m as i64), ctx);
    }
    acc
}

/// q-binomial [n k] = [n]!/([k]![n-k]!), zero when k is out of range.
pub fn q_binomial(n: i64, k: i64, ctx: &QContext) -> QReal {
    if n < 0 || k < 0 || k > n {
        return ctx.zero();
    }
    let f = |x| q_factorial(x, ctx).expect("nonnegative");
    &f(n) / &(&f(k) * &f(n - k))
}

/// Sum of terms produced by `terms`, re-evaluated at a wider working
/// precision when cancellation eats into the guard bits.
///
/// `terms` receives the context to compute in; the result is rounded back
/// to the precision of `ctx`.
pub fn guarded_sum<F>(ctx: &QContext, terms: F) -> Result<QReal>
where
    F: Fn(&QContext) -> Result<Vec<QReal>>,
{
    const ATTEMPTS: usize = 4;
    let mut wide: Option<Arc<QContext>> = None;
    let mut extra = 0u32;
    for attempt in 0..ATTEMPTS {
        let work: &QContext = wide.as_deref().unwrap_or(ctx);
        let ts = terms(work)?;
        let mut sum = work.zero();
        let mut top: Option<i32> = None;
        for t in &ts {
            if !t.is_zero() {
                top = Some(top.map_or(t.exponent(), |e| e.max(t.exponent())));
            }
            sum += t;
        }
        let Some(top) = top else {
            return Ok(ctx.zero());
        };
        let lost = if sum.is_zero() {
            work.bits()
        } else {
            (top - sum.exponent()).max(0) as u32
        };
        if lost + 8 <= extra + GUARD_BITS || attempt + 1 == ATTEMPTS {
            return Ok(sum.with_prec(ctx.bits()));
        }
        extra = (lost + 32).max(2 * extra).min(16 * ctx.bits());
        wide = Some(ctx.widened_shared(extra));
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: &str) -> QContext {
        QContext::new(q, 50).unwrap()
    }

    fn close(a: &QReal, b: &QReal, c: &QContext) -> bool {
        a.rel_diff(b, &c.tolerance()) < c.tolerance()
    }

    #[test]
    fn small_values() {
        let c = ctx("0.5");
        assert!(qnum(HalfInt::ZERO, &c).is_zero());
        assert_eq!(qnum(HalfInt::ONE, &c), 1);
        assert!(close(&qnum(HalfInt::int(2), &c), &c.real("2.5").unwrap(), &c));
        let f3 = q_factorial(3, &c).unwrap();
        assert!(close(&f3, &c.real("13.125").unwrap(), &c));
        assert!(q_factorial(-1, &c).is_err());
        assert_eq!(q_factorial(0, &c).unwrap(), 1);
    }

    #[test]
    fn classical_branch() {
        let c = ctx("1");
        assert_eq!(qnum(HalfInt::from_twice(3), &c).to_f64(), 1.5);
        assert_eq!(q_factorial(3, &c).unwrap(), 6);
        assert_eq!(q_binomial(5, 2, &c), 10);
    }

    #[test]
    fn pochhammer_cases() {
        let c = ctx("0.5");
        assert!(q_pochhammer(HalfInt::int(-2), 3, &c).is_zero());
        assert_eq!(q_pochhammer(HalfInt::from_twice(7), 0, &c), 1);
        let p = q_pochhammer(HalfInt::ONE, 4, &c);
        assert!(close(&p, &q_factorial(4, &c).unwrap(), &c));
        let r = q_pochhammer_real(&c.real("0.5").unwrap(), 3, &c);
        assert!(close(&r, &q_pochhammer(HalfInt::HALF, 3, &c), &c));
    }

    #[test]
    fn binomial_range() {
        let c = ctx("0.5");
        assert!(q_binomial(3, 4, &c).is_zero());
        assert!(q_binomial(3, -1, &c).is_zero());
        let f = |n| q_factorial(n, &c).unwrap();
        let b = q_binomial(4, 2, &c);
        assert!(close(&b, &(&f(4) / &(&f(2) * &f(2))), &c));
    }

    #[test]
    fn memo_is_bit_identical() {
        let c = ctx("0.3");
        let plain = c.without_memo();
        for n in [0, 3, 7, 12, 5] {
            assert_eq!(q_factorial(n, &c).unwrap(), q_factorial(n, &plain).unwrap());
        }
        for (t, n) in [(3, 4), (-7, 2), (5, 6), (3, 9)] {
            let a = HalfInt::from_twice(t);
            assert_eq!(q_pochhammer(a, n, &c), q_pochhammer(a, n, &plain));
        }
    }

    #[test]
    fn guarded_sum_recovers_cancellation() {
        let c = ctx("0.5");
        // 1 + 2^-300 - 1 loses every bit at the base precision
        let s = guarded_sum(&c, |w| {
            let one = w.one();
            let tiny = QReal::new(Float::with_val(w.bits(), Float::i_exp(1, -300)));
            Ok(vec![one.clone(), &one + &tiny, -one.clone() * 2])
        })
        .unwrap();
        let expect = QReal::new(Float::with_val(c.bits(), Float::i_exp(1, -300)));
        assert!(close(&s, &expect, &c));
    }
}
