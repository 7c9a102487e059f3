//! Closed forms of the su_q(2) Clebsch-Gordan coefficients.
//!
//! Each function returns exactly 0 for keys failing the selection rules.

use num_rational::Ratio;
use rug::{Float, Integer, Rational};

use crate::qcore::{guarded_sum, q_binomial, q_factorial, qnum, qpow, sign, HalfInt, QContext, QReal};
use crate::qhyper::{eval_regularized, eval_terminating, HyperSeriesSpec};
use crate::Result;

use super::key::CgcKey;

pub(crate) fn x(h: HalfInt) -> Ratio<i64> {
    h.to_ratio()
}

/// [h]! for an integral, nonnegative h.
pub(crate) fn fact(h: HalfInt, ctx: &QContext) -> QReal {
    q_factorial(h.int_unchecked(), ctx).expect("nonnegative factorial argument")
}

pub(crate) fn prod(items: &[HalfInt], ctx: &QContext) -> QReal {
    items.iter().fold(ctx.one(), |acc, h| &acc * &fact(*h, ctx))
}

/// q^(j1 m2 - j2 m1 + s·(j1+j2-j)(j1+j2+j+1)/2), s = ±1
pub(crate) fn standard_power(k: &CgcKey, s: i64, ctx: &QContext) -> QReal {
    let e = x(k.j1) * x(k.m2) - x(k.j2) * x(k.m1)
        + Ratio::from(s) * x(k.j1 + k.j2 - k.j) * x(k.j1 + k.j2 + k.j + 1) / 2;
    qpow(e, ctx)
}

fn int(h: HalfInt) -> i64 {
    h.int_unchecked()
}

/// Bounds of the Racah sum from nonnegativity of all six factorial arguments.
pub(crate) fn racah_range(k: &CgcKey) -> (i64, i64) {
    let lo = 0.max(-int(k.j - k.j2 + k.m1)).max(-int(k.j - k.j1 - k.m2));
    let hi = int(k.j1 + k.j2 - k.j).min(int(k.j2 + k.m2)).min(int(k.j1 - k.m1));
    (lo, hi)
}

fn racah_args(k: &CgcKey, r: i64) -> [HalfInt; 6] {
    [
        HalfInt::int(r),
        k.j1 + k.j2 - k.j - r,
        k.j2 + k.m2 - r,
        k.j1 - k.m1 - r,
        k.j - k.j2 + k.m1 + r,
        k.j - k.j1 - k.m2 + r,
    ]
}

/// Racah formula:
/// q^(j1m2-j2m1+(j1+j2-j)(j1+j2+j+1)/2) √[2j+1] √(Δ)
///   Σ_r (-1)^r q^(-(j1+j2+j+1)r) / ([r]![j1+j2-j-r]![j2+m2-r]![j1-m1-r]![j-j2+m1+r]![j-j1-m2+r]!)
pub fn cgc_racah(k: &CgcKey, ctx: &QContext) -> Result<QReal> {
    if !k.is_admissible() {
        return Ok(ctx.zero());
    }
    if ctx.is_classical() {
        return Ok(classical_racah(k, ctx));
    }
    let top = [
        k.j1 + k.m1, k.j1 - k.m1, k.j2 + k.m2, k.j2 - k.m2, k.j + k.m, k.j - k.m,
        k.j1 + k.j2 - k.j, k.j + k.j1 - k.j2, k.j + k.j2 - k.j1,
    ];
    let under = &prod(&top, ctx) / &fact(k.j1 + k.j2 + k.j + 1, ctx);
    let pre = &(&standard_power(k, 1, ctx) * &qnum(k.j * 2 + 1, ctx).sqrt()) * &under.sqrt();
    let (lo, hi) = racah_range(k);
    let big = int(k.j1 + k.j2 + k.j + 1);
    let s = guarded_sum(ctx, |w| {
        Ok((lo..=hi)
            .map(|r| {
                let t = &qpow(Ratio::from(-big * r), w) / &prod(&racah_args(k, r), w);
                t * sign(r)
            })
            .collect())
    })?;
    Ok(&pre * &s)
}

pub(crate) fn rat_fact(n: i64) -> Integer {
    Integer::factorial(n as u32).into()
}

/// Racah formula at q = 1 in exact arithmetic: the value is `s·√radicand`.
pub fn cgc_racah_exact(k: &CgcKey) -> Option<(Rational, Rational)> {
    if !k.is_admissible() {
        return None;
    }
    let (lo, hi) = racah_range(k);
    let mut s = Rational::new();
    for r in lo..=hi {
        let mut d = Integer::from(1);
        for a in racah_args(k, r) {
            d *= rat_fact(int(a));
        }
        s += Rational::from((Integer::from(sign(r)), d));
    }
    let mut radicand = Rational::from(int(k.j * 2 + 1));
    for h in [
        k.j1 + k.m1, k.j1 - k.m1, k.j2 + k.m2, k.j2 - k.m2, k.j + k.m, k.j - k.m,
        k.j1 + k.j2 - k.j, k.j + k.j1 - k.j2, k.j + k.j2 - k.j1,
    ] {
        radicand *= rat_fact(int(h));
    }
    radicand /= rat_fact(int(k.j1 + k.j2 + k.j + 1));
    Some((s, radicand))
}

pub(crate) fn exact_to_real(s: &Rational, radicand: &Rational, ctx: &QContext) -> QReal {
    if *s == 0 {
        return ctx.zero();
    }
    let root = Float::with_val(ctx.bits(), radicand).sqrt();
    QReal::new(root * Float::with_val(ctx.bits(), s))
}

fn classical_racah(k: &CgcKey, ctx: &QContext) -> QReal {
    match cgc_racah_exact(k) {
        Some((s, radicand)) => exact_to_real(&s, &radicand, ctx),
        None => ctx.zero(),
    }
}

/// Racah formula in q-binomial form, n = j1+j2-j:
/// q^(..) √([2j1 n][2j2 n] / ([j1+j2+j+1 n][2j1 j1-m1][2j2 j2-m2][2j j-m]))
///   Σ_r (-1)^r [n r][j+j1-j2 j1-m1-r][j+j2-j1 j2+m2-r] q^(-(j1+j2+j+1)r)
pub fn cgc_racah_binomial(k: &CgcKey, ctx: &QContext) -> Result<QReal> {
    if !k.is_admissible() {
        return Ok(ctx.zero());
    }
    let n = k.n();
    let b = |a: HalfInt, c: HalfInt, w: &QContext| q_binomial(int(a), int(c), w);
    let num = &b(k.j1 * 2, HalfInt::int(n), ctx) * &b(k.j2 * 2, HalfInt::int(n), ctx);
    let den = &(&b(k.j1 + k.j2 + k.j + 1, HalfInt::int(n), ctx) * &b(k.j1 * 2, k.j1 - k.m1, ctx))
        * &(&b(k.j2 * 2, k.j2 - k.m2, ctx) * &b(k.j * 2, k.j - k.m, ctx));
    let pre = &standard_power(k, 1, ctx) * &(&num / &den).sqrt();
    let big = int(k.j1 + k.j2 + k.j + 1);
    let s = guarded_sum(ctx, |w| {
        Ok((0..=n)
            .map(|r| {
                let t = &(&q_binomial(n, r, w) * &b(k.j + k.j1 - k.j2, k.j1 - k.m1 - r, w))
                    * &b(k.j + k.j2 - k.j1, k.j2 + k.m2 - r, w);
                (&t * &qpow(Ratio::from(-big * r), w)) * sign(r)
            })
            .collect())
    })?;
    Ok(&pre * &s)
}

/// √([2j+1][j1+j2+j+1]![j+j1-j2]![j1+j2-j]![j+m]![j2-m2]! /
///   ([j+j2-j1]![j-m]![j1+m1]![j1-m1]![j2+m2]!))
fn sum_prefactor(k: &CgcKey, ctx: &QContext) -> QReal {
    let top = prod(
        &[k.j1 + k.j2 + k.j + 1, k.j + k.j1 - k.j2, k.j1 + k.j2 - k.j, k.j + k.m, k.j2 - k.m2],
        ctx,
    );
    let bottom = prod(&[k.j + k.j2 - k.j1, k.j - k.m, k.j1 + k.m1, k.j1 - k.m1, k.j2 + k.m2], ctx);
    (&(&qnum(k.j * 2 + 1, ctx) * &top) / &bottom).sqrt()
}

/// Single-sum form over r = 0..min(j2-m2, j1+j2-j):
/// pre · q^(j1m2-j2m1-(j1+j2-j)(j1+j2+j+1)/2)
///   Σ_r (-1)^(n+r) [j1+j2-m-r]![2j2-r]! q^((j1+m1)r) / ([r]![j+j1+j2+1-r]![j2-m2-r]![n-r]!)
pub fn cgc_sum(k: &CgcKey, ctx: &QContext) -> Result<QReal> {
    if !k.is_admissible() {
        return Ok(ctx.zero());
    }
    let n = k.n();
    let hi = n.min(int(k.j2 - k.m2));
    let z = int(k.j1 + k.m1);
    let s = guarded_sum(ctx, |w| {
        Ok((0..=hi)
            .map(|r| {
                let num = &fact(k.j1 + k.j2 - k.m - r, w) * &fact(k.j2 * 2 - r, w);
                let den = prod(
                    &[HalfInt::int(r), k.j + k.j1 + k.j2 + 1 - r, k.j2 - k.m2 - r, HalfInt::int(n - r)],
                    w,
                );
                (&(&num / &den) * &qpow(Ratio::from(z * r), w)) * sign(n + r)
            })
            .collect())
    })?;
    Ok(&(&sum_prefactor(k, ctx) * &standard_power(k, -1, ctx)) * &s)
}

/// The same sum before the substitution r -> j1+j2-j-r:
/// pre · q^(m j1 - m1 j - (j2+j-j1+1)(j2-j+j1)/2)
///   Σ_r (-1)^r [j-m+r]![j+j2-j1+r]! q^(-(j1+m1)r) / ([r]![2j+1+r]![j-j1-m2+r]![j1+j2-j-r]!)
pub fn cgc_sum_alt(k: &CgcKey, ctx: &QContext) -> Result<QReal> {
    if !k.is_admissible() {
        return Ok(ctx.zero());
    }
    let n = k.n();
    let lo = 0.max(int(k.j1 - k.j + k.m2));
    let z = int(k.j1 + k.m1);
    let s = guarded_sum(ctx, |w| {
        Ok((lo..=n)
            .map(|r| {
                let num = &fact(k.j - k.m + r, w) * &fact(k.j + k.j2 - k.j1 + r, w);
                let den = prod(
                    &[HalfInt::int(r), k.j * 2 + 1 + r, k.j - k.j1 - k.m2 + r, HalfInt::int(n - r)],
                    w,
                );
                (&(&num / &den) * &qpow(Ratio::from(-z * r), w)) * sign(r)
            })
            .collect())
    })?;
    let e = x(k.m) * x(k.j1) - x(k.m1) * x(k.j)
        - x(k.j2 + k.j - k.j1 + 1) * x(k.j2 - k.j + k.j1) / 2;
    Ok(&(&sum_prefactor(k, ctx) * &qpow(e, ctx)) * &s)
}

/// (-1)^n q^(j1m2-j2m1-(j1+j2-j)(j1+j2+j+1)/2) [2j2]![j1+j2-m]! √([2j+1][j+m]![j+j1-j2]!)
///   / √([j1+j2+j+1]![j+j2-j1]![j1+j2-j]![j1+m1]![j1-m1]![j2+m2]![j2-m2]![j-m]!)
///   · 3F2(j-j1-j2, m2-j2, -j-j1-j2-1; m-j1-j2, -2j2 | q^(j1+m1))
pub fn cgc_3f2(k: &CgcKey, ctx: &QContext) -> Result<QReal> {
    if !k.is_admissible() {
        return Ok(ctx.zero());
    }
    let outer = &fact(k.j2 * 2, ctx) * &fact(k.j1 + k.j2 - k.m, ctx);
    let top = &qnum(k.j * 2 + 1, ctx) * &prod(&[k.j + k.m, k.j + k.j1 - k.j2], ctx);
    let bottom = prod(
        &[
            k.j1 + k.j2 + k.j + 1, k.j + k.j2 - k.j1, k.j1 + k.j2 - k.j, k.j1 + k.m1, k.j1 - k.m1,
            k.j2 + k.m2, k.j2 - k.m2, k.j - k.m,
        ],
        ctx,
    );
    let pre = &(&standard_power(k, -1, ctx) * &outer) * &(&top / &bottom).sqrt();
    let spec = HyperSeriesSpec::new(
        vec![k.j - k.j1 - k.j2, k.m2 - k.j2, -k.j - k.j1 - k.j2 - 1],
        vec![k.m - k.j1 - k.j2, -k.j2 * 2],
        k.j1 + k.m1,
    );
    Ok(&pre * &eval_terminating(&spec, ctx)? * sign(k.n()))
}

/// (-1)^n q^(j1m2-j2m1-(..)(..)/2)
///   √([2j+1][j1-m1]![j2+m2]![j-m]![j+m]![j+j1-j2]![j+j2-j1]! / ([j1+m1]![j2-m2]![j1+j2+j+1]![j1+j2-j]!))
///   · 3F2reg(j-j1-j2, m2-j2, -m1-j1; j-j2-m1+1, j-j1+m2+1 | q^(j1+j2+j+1))
pub fn cgc_3f2_rw1(k: &CgcKey, ctx: &QContext) -> Result<QReal> {
    if !k.is_admissible() {
        return Ok(ctx.zero());
    }
    let top = &qnum(k.j * 2 + 1, ctx)
        * &prod(&[k.j1 - k.m1, k.j2 + k.m2, k.j - k.m, k.j + k.m, k.j + k.j1 - k.j2, k.j + k.j2 - k.j1], ctx);
    let bottom = prod(&[k.j1 + k.m1, k.j2 - k.m2, k.j1 + k.j2 + k.j + 1, k.j1 + k.j2 - k.j], ctx);
    let pre = &standard_power(k, -1, ctx) * &(&top / &bottom).sqrt();
    let spec = HyperSeriesSpec::new(
        vec![k.j - k.j1 - k.j2, k.m2 - k.j2, -k.m1 - k.j1],
        vec![k.j - k.j2 - k.m1 + 1, k.j - k.j1 + k.m2 + 1],
        k.j1 + k.j2 + k.j + 1,
    );
    Ok(&pre * &eval_regularized(&spec, ctx)? * sign(k.n()))
}

/// q^(j1m2-j2m1+(..)(..)/2)
///   √([2j+1][j1+m1]![j2-m2]![j-m]![j+m]![j+j1-j2]![j+j2-j1]! / ([j1-m1]![j2+m2]![j1+j2+j+1]![j1+j2-j]!))
///   · 3F2reg(j-j1-j2, m1-j1, -m2-j2; j-j2+m1+1, j-j1-m2+1 | q^(-(j1+j2+j+1)))
pub fn cgc_3f2_rw2(k: &CgcKey, ctx: &QContext) -> Result<QReal> {
    if !k.is_admissible() {
        return Ok(ctx.zero());
    }
    let top = &qnum(k.j * 2 + 1, ctx)
        * &prod(&[k.j1 + k.m1, k.j2 - k.m2, k.j - k.m, k.j + k.m, k.j + k.j1 - k.j2, k.j + k.j2 - k.j1], ctx);
    let bottom = prod(&[k.j1 - k.m1, k.j2 + k.m2, k.j1 + k.j2 + k.j + 1, k.j1 + k.j2 - k.j], ctx);
    let pre = &standard_power(k, 1, ctx) * &(&top / &bottom).sqrt();
    let spec = HyperSeriesSpec::new(
        vec![k.j - k.j1 - k.j2, k.m1 - k.j1, -k.m2 - k.j2],
        vec![k.j - k.j2 + k.m1 + 1, k.j - k.j1 - k.m2 + 1],
        -(k.j1 + k.j2 + k.j + 1),
    );
    Ok(&pre * &eval_regularized(&spec, ctx)?)
}

/// (-1)^(j1-m1) q^(j1 m + j m1 + m1 - (j1+j-j2)(j1+j2+j+1)/2) [2j]![j1+j-m2]!
///   / √([j1+m1]![j1-m1]![j+m]![j2-m2]![j-m]!)
///   · √([2j+1][j2+m2]![j1+j2-j]! / ([j1+j2+j+1]![j+j2-j1]![j1+j-j2]!))
///   · 3F2(j2-j1-j, m-j, -j-j1-j2-1; m2-j1-j, -2j | q^(j1-m1))
pub fn cgc_3f2_long_equiv(k: &CgcKey, ctx: &QContext) -> Result<QReal> {
    if !k.is_admissible() {
        return Ok(ctx.zero());
    }
    let e = x(k.j1) * x(k.m) + x(k.j) * x(k.m1) + x(k.m1)
        - x(k.j1 + k.j - k.j2) * x(k.j1 + k.j2 + k.j + 1) / 2;
    let outer = &fact(k.j * 2, ctx) * &fact(k.j1 + k.j - k.m2, ctx);
    let first = prod(&[k.j1 + k.m1, k.j1 - k.m1, k.j + k.m, k.j2 - k.m2, k.j - k.m], ctx).sqrt();
    let top = &qnum(k.j * 2 + 1, ctx) * &prod(&[k.j2 + k.m2, k.j1 + k.j2 - k.j], ctx);
    let bottom = prod(&[k.j1 + k.j2 + k.j + 1, k.j + k.j2 - k.j1, k.j1 + k.j - k.j2], ctx);
    let pre = &(&(&qpow(e, ctx) * &outer) / &first) * &(&top / &bottom).sqrt();
    let spec = HyperSeriesSpec::new(
        vec![k.j2 - k.j1 - k.j, k.m - k.j, -k.j - k.j1 - k.j2 - 1],
        vec![k.m2 - k.j1 - k.j, -k.j * 2],
        k.j1 - k.m1,
    );
    Ok(&pre * &eval_terminating(&spec, ctx)? * sign(int(k.j1 - k.m1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repsu::OracleTable;

    type Form = fn(&CgcKey, &QContext) -> Result<QReal>;

    const FORMS: [(&str, Form); 8] = [
        ("racah", cgc_racah),
        ("binomial", cgc_racah_binomial),
        ("sum", cgc_sum),
        ("sum_alt", cgc_sum_alt),
        ("3f2", cgc_3f2),
        ("rw1", cgc_3f2_rw1),
        ("rw2", cgc_3f2_rw2),
        ("long", cgc_3f2_long_equiv),
    ];

    #[test]
    fn all_forms_match_oracle() {
        for q in ["0.5", "0.9"] {
            let c = QContext::new(q, 50).unwrap();
            for (t1, t2) in [(1, 1), (2, 2), (3, 1), (2, 3)] {
                let (j1, j2) = (HalfInt::from_twice(t1), HalfInt::from_twice(t2));
                let table = OracleTable::projector(j1, j2, &c);
                for k in CgcKey::all_for(j1, j2) {
                    let expect = table.get(&k, &c);
                    for (name, f) in FORMS {
                        let v = f(&k, &c).unwrap();
                        assert!((&v - &expect).abs() < c.tolerance(), "{} {} q={}: {} vs {}", name, k, q, v, expect);
                    }
                }
            }
        }
    }

    #[test]
    fn selection_failures_are_zero() {
        let c = QContext::new("0.5", 50).unwrap();
        let k = CgcKey::from_twice([1, 1, 1, 1, 2, 0]);
        for (_, f) in FORMS {
            assert!(f(&k, &c).unwrap().is_zero());
        }
    }

    #[test]
    fn classical_values() {
        let c = QContext::new("1", 50).unwrap();
        let k = CgcKey::from_twice([1, 1, 1, -1, 2, 0]);
        let half = c.real("0.5").unwrap().sqrt();
        for (_, f) in FORMS {
            assert!((&f(&k, &c).unwrap() - &half).abs() < c.tolerance());
        }
        // odd j1+j2+j with m = 0 vanishes exactly
        assert!(cgc_racah(&CgcKey::from_twice([2, 0, 2, 0, 2, 0]), &c).unwrap().is_zero());
    }
}
