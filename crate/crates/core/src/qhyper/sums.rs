use crate::qcore::{guarded_sum, q_factorial, q_pochhammer, qpow_half, sign as parity, HalfInt, QContext, QReal};
use crate::{Error, Result};

use super::series::{HyperSeriesSpec, Sign};

fn domain(msg: String) -> Error {
    Error::Domain(msg)
}

fn fact(n: i64, ctx: &QContext) -> QReal {
    q_factorial(n, ctx).expect("nonnegative factorial argument")
}

/// 2F1(-n, b; c | q^(±(b-c-n+1)))
pub fn vandermonde_spec(n: i64, b: HalfInt, c: HalfInt, sign: Sign) -> HyperSeriesSpec {
    HyperSeriesSpec::new(vec![HalfInt::int(-n), b], vec![c], sign.apply(b - c - n + 1))
}

/// (c-b|q)_n/(c|q)_n · q^(±nb)
///
/// A negative integer b needs n < |b|; a nonpositive integer c needs n < |c|.
pub fn closed_sum_vandermonde(n: i64, b: HalfInt, c: HalfInt, sign: Sign, ctx: &QContext) -> Result<QReal> {
    if n < 0 {
        return Err(domain(format!("n = {} must be nonnegative", n)));
    }
    if b.is_nonpositive_integer() && b.twice() != 0 && n >= -b.int_unchecked() {
        return Err(domain(format!("n = {} must be below |b| = {}", n, -b)));
    }
    if c.is_nonpositive_integer() && n > 0 && n >= -c.int_unchecked() {
        return Err(domain(format!("n = {} must be below |c| = {}", n, -c)));
    }
    let v = &q_pochhammer(c - b, n as usize, ctx) / &q_pochhammer(c, n as usize, ctx);
    Ok(&v * &qpow_half(sign.apply(b * n), ctx))
}

fn check_positive(n: i64, b: i64, c: i64) -> Result<()> {
    if n < 0 || b <= 0 || c <= 0 {
        return Err(domain(format!("need n >= 0 and b, c > 0, got n={} b={} c={}", n, b, c)));
    }
    if c <= b {
        return Err(domain(format!("need c > b, got b={} c={}", b, c)));
    }
    if n >= b.min(c) {
        return Err(domain(format!("need n < min(b, c), got n={} b={} c={}", n, b, c)));
    }
    Ok(())
}

/// [c-b-1+n]! [c-1]! / ([c-b-1]! [c-1+n]!) · q^(±bn), the value of
/// [`vandermonde_spec`] for positive integers n < b < c.
pub fn closed_sum_positive(n: i64, b: i64, c: i64, sign: Sign, ctx: &QContext) -> Result<QReal> {
    check_positive(n, b, c)?;
    let v = &(&fact(c - b - 1 + n, ctx) * &fact(c - 1, ctx))
        / &(&fact(c - b - 1, ctx) * &fact(c - 1 + n, ctx));
    Ok(&v * &qpow_half(sign.apply(HalfInt::int(b * n)), ctx))
}

/// Σ_r (-1)^r [b-1+r]! / ([r]! [c-1+r]! [n-r]!) · q^(±(b-c-n+1)r)
pub fn rsum_positive(n: i64, b: i64, c: i64, sign: Sign, ctx: &QContext) -> Result<QReal> {
    check_positive(n, b, c)?;
    let e = sign.apply(HalfInt::int(b - c - n + 1));
    guarded_sum(ctx, |w| {
        Ok((0..=n)
            .map(|r| {
                let t = &fact(b - 1 + r, w) / &(&(&fact(r, w) * &fact(c - 1 + r, w)) * &fact(n - r, w));
                &t * &qpow_half(e * r, w) * parity(r)
            })
            .collect())
    })
}

/// [c-b-1+n]! [b-1]! / ([n]! [c-b-1]! [c-1+n]!) · q^(±bn)
pub fn closed_rsum_positive(n: i64, b: i64, c: i64, sign: Sign, ctx: &QContext) -> Result<QReal> {
    check_positive(n, b, c)?;
    let v = &(&fact(c - b - 1 + n, ctx) * &fact(b - 1, ctx))
        / &(&(&fact(n, ctx) * &fact(c - b - 1, ctx)) * &fact(c - 1 + n, ctx));
    Ok(&v * &qpow_half(sign.apply(HalfInt::int(b * n)), ctx))
}

fn check_negative(n: i64, b: i64, c: i64) -> Result<()> {
    if n < 0 || b <= 0 || c <= 0 {
        return Err(domain(format!("need n >= 0 and b, c > 0, got n={} b={} c={}", n, b, c)));
    }
    if b <= c {
        return Err(domain(format!("need b > c, got b={} c={}", b, c)));
    }
    if n > c {
        return Err(domain(format!("need n <= c, got n={} c={}", n, c)));
    }
    Ok(())
}

/// 2F1(-n, -b; -c | q^(±(b-c+n-1)))
pub fn negative_spec(n: i64, b: i64, c: i64, sign: Sign) -> HyperSeriesSpec {
    HyperSeriesSpec::new(
        vec![HalfInt::int(-n), HalfInt::int(-b)],
        vec![HalfInt::int(-c)],
        sign.apply(HalfInt::int(b - c + n - 1)),
    )
}

/// (-1)^n [c-n]! [b+n-c-1]! / ([c]! [b-c-1]!) · q^(±bn), for positive integers
/// n <= c < b.
pub fn closed_sum_negative(n: i64, b: i64, c: i64, sign: Sign, ctx: &QContext) -> Result<QReal> {
    check_negative(n, b, c)?;
    let v = &(&fact(c - n, ctx) * &fact(b + n - c - 1, ctx)) / &(&fact(c, ctx) * &fact(b - c - 1, ctx));
    Ok(&v * &qpow_half(sign.apply(HalfInt::int(b * n)), ctx) * parity(n))
}

/// Σ_r (-1)^r [c-r]! / ([r]! [b-r]! [n-r]!) · q^(±(b-c+n-1)r)
pub fn rsum_negative(n: i64, b: i64, c: i64, sign: Sign, ctx: &QContext) -> Result<QReal> {
    check_negative(n, b, c)?;
    let e = sign.apply(HalfInt::int(b - c + n - 1));
    guarded_sum(ctx, |w| {
        Ok((0..=n)
            .map(|r| {
                let t = &fact(c - r, w) / &(&(&fact(r, w) * &fact(b - r, w)) * &fact(n - r, w));
                &t * &qpow_half(e * r, w) * parity(r)
            })
            .collect())
    })
}

/// (-1)^n [c-n]! [b+n-c-1]! / ([b]! [n]! [b-c-1]!) · q^(±bn)
pub fn closed_rsum_negative(n: i64, b: i64, c: i64, sign: Sign, ctx: &QContext) -> Result<QReal> {
    check_negative(n, b, c)?;
    let v = &(&fact(c - n, ctx) * &fact(b + n - c - 1, ctx))
        / &(&(&fact(b, ctx) * &fact(n, ctx)) * &fact(b - c - 1, ctx));
    Ok(&v * &qpow_half(sign.apply(HalfInt::int(b * n)), ctx) * parity(n))
}

/// 3F2(-2n, b, c; 1-2n-b, 1-2n-c | q)
pub fn dixon_spec(n: i64, b: HalfInt, c: HalfInt) -> HyperSeriesSpec {
    HyperSeriesSpec::new(
        vec![HalfInt::int(-2 * n), b, c],
        vec![-b - 2 * n + 1, -c - 2 * n + 1],
        HalfInt::ONE,
    )
}

/// q^n [2n]! (b+c+n|q)_n / ([n]! (b+n|q)_n (c+n|q)_n)
pub fn closed_sum_dixon(n: i64, b: HalfInt, c: HalfInt, ctx: &QContext) -> Result<QReal> {
    if n < 0 {
        return Err(domain(format!("n = {} must be nonnegative", n)));
    }
    let k = n as usize;
    let den = &(&fact(n, ctx) * &q_pochhammer(b + n, k, ctx)) * &q_pochhammer(c + n, k, ctx);
    if den.is_zero() {
        return Err(domain(format!("Dixon closed form has a vanishing denominator (n={}, b={}, c={})", n, b, c)));
    }
    let num = &(&qpow_half(HalfInt::int(n), ctx) * &fact(2 * n, ctx)) * &q_pochhammer(b + c + n, k, ctx);
    Ok(&num / &den)
}
