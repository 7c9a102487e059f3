use num_rational::Ratio;
use rug::ops::Pow;
use rug::Float;

use super::context::QContext;
use super::halfint::HalfInt;
use super::primitives::{q_factorial, q_pochhammer, qpow, qpow_real};
use super::real::QReal;
use crate::{Error, Result};

const MAX_FACTORS: usize = 50_000_000;

fn is_pole(s: &Float) -> bool {
    s.is_integer() && *s <= 0
}

/// Γ_p(s) = (1-p)^(1-s) Π_k (1-p^(k+1))/(1-p^(k+s)) for 0 < p < 1.
///
/// With `depth = None` the product stops once the remaining tail can move the
/// value by less than 10^-(digits+5).
fn gamma_product(bits: u32, digits: u32, p: &Float, s: &Float, depth: Option<usize>) -> Result<Float> {
    let one_minus_p = Float::with_val(bits, 1 - p);
    let eps = Float::with_val(bits, 10).pow(-(digits as i32 + 5));
    let mut pk1 = Float::with_val(bits, p);
    let mut pks = Float::with_val(bits, p.pow(s));
    let mut prod = Float::with_val(bits, 1);
    let limit = depth.unwrap_or(MAX_FACTORS);
    for _ in 0..limit {
        let num = Float::with_val(bits, 1 - &pk1);
        let den = Float::with_val(bits, 1 - &pks);
        prod *= &num;
        prod /= &den;
        if depth.is_none() {
            let dev = Float::with_val(bits, &pks - &pk1).abs() / &den / &one_minus_p;
            if dev.abs() < eps {
                break;
            }
        }
        pk1 *= p;
        pks *= p;
    }
    let expo = Float::with_val(bits, 1 - s);
    let lead = Float::with_val(bits, (&one_minus_p).pow(&expo));
    Ok(lead * prod)
}

fn check_classical_args(ctx: &QContext, s: &QReal) -> Result<()> {
    if is_pole(s.as_float()) {
        return Err(Error::Domain(format!("Gamma pole at s = {}", s.to_string_digits(10))));
    }
    if ctx.q_greater_than_one() {
        return Err(Error::Domain(
            "Gamma_q is defined here for 0 < q <= 1; use the reciprocal context".into(),
        ));
    }
    Ok(())
}

/// Classical Jackson q-Gamma Γ_q(s) in base q = ctx.q, 0 < q <= 1.
pub fn q_gamma_classical(s: &QReal, ctx: &QContext) -> Result<QReal> {
    check_classical_args(ctx, s)?;
    if ctx.is_classical() {
        return Ok(QReal::new(Float::with_val(ctx.bits(), s.as_float().gamma_ref())));
    }
    gamma_product(ctx.bits(), ctx.digits(), ctx.q_float(), s.as_float(), None).map(QReal::new)
}

/// Γ_q(s) from a fixed number of product factors; used to check convergence.
pub fn q_gamma_classical_truncated(s: &QReal, factors: usize, ctx: &QContext) -> Result<QReal> {
    check_classical_args(ctx, s)?;
    if ctx.is_classical() {
        return Err(Error::Domain("no product form at q = 1".into()));
    }
    gamma_product(ctx.bits(), ctx.digits(), ctx.q_float(), s.as_float(), Some(factors))
        .map(QReal::new)
}

/// Base for the product: q^2 when q < 1, q^-2 when q > 1 (Γ̃ is symmetric).
fn tilde_base(ctx: &QContext) -> Float {
    let q = ctx.q_float();
    let q = if ctx.q_greater_than_one() {
        Float::with_val(ctx.bits(), q.recip_ref())
    } else {
        q.clone()
    };
    q.square()
}

fn tilde_generic(s: &Float, ctx: &QContext) -> Result<Float> {
    if is_pole(s) {
        return Err(Error::Domain(format!("Gamma pole at s = {}", s.to_f64())));
    }
    if ctx.is_classical() {
        return Ok(Float::with_val(ctx.bits(), s.gamma_ref()));
    }
    let p = tilde_base(ctx);
    let g = gamma_product(ctx.bits(), ctx.digits(), &p, s, None)?;
    // q^{-(s-1)(s-2)/2}, with q replaced by 1/q above one
    let a = Float::with_val(ctx.bits(), s - 1u32);
    let b = Float::with_val(ctx.bits(), s - 2u32);
    let e = Float::with_val(ctx.bits(), a * b) / -2i32;
    let e = if ctx.q_greater_than_one() { -e } else { e };
    let pre = qpow_real(&QReal::new(e), ctx);
    Ok(pre.into_float() * g)
}

/// Symmetric q-Gamma Γ̃(s), with Γ̃(n+1) = [n]!.
pub fn q_gamma_tilde(s: HalfInt, ctx: &QContext) -> Result<QReal> {
    if s.is_nonpositive_integer() {
        return Err(Error::Domain(format!("Gamma pole at s = {}", s)));
    }
    if let Some(n) = s.to_int() {
        return q_factorial(n - 1, ctx);
    }
    let base = ctx.gamma_base_with(1, || {
        if ctx.is_classical() {
            let half = Float::with_val(ctx.bits(), 0.5);
            return Ok(Float::with_val(ctx.bits(), half.gamma_ref()));
        }
        let p = tilde_base(ctx);
        let half = Float::with_val(ctx.bits(), 0.5);
        let g = gamma_product(ctx.bits(), ctx.digits(), &p, &half, None)?;
        let e = if ctx.q_greater_than_one() { 3 } else { -3 };
        Ok(qpow(Ratio::new(e, 8), ctx).into_float() * g)
    })?;
    let base = QReal::new(base);
    // Γ̃(s+1) = [s] Γ̃(s)
    let k = (s - HalfInt::HALF).int_unchecked();
    if k >= 0 {
        Ok(&base * &q_pochhammer(HalfInt::HALF, k as usize, ctx))
    } else {
        let k = (-k) as usize;
        Ok(&base / &q_pochhammer(s, k, ctx))
    }
}

/// Γ̃(s) for a real argument.
pub fn q_gamma_tilde_real(s: &QReal, ctx: &QContext) -> Result<QReal> {
    let twice = Float::with_val(s.prec(), s.as_float() * 2u32);
    if twice.is_integer() {
        if let Some(t) = twice.to_integer().and_then(|i| i.to_i64()) {
            return q_gamma_tilde(HalfInt::from_twice(t), ctx);
        }
    }
    tilde_generic(s.as_float(), ctx).map(QReal::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &QReal, b: &QReal, c: &QContext) -> bool {
        a.rel_diff(b, &c.tolerance()) < c.tolerance()
    }

    #[test]
    fn tilde_matches_factorials() {
        for q in ["0.5", "2"] {
            let c = QContext::new(q, 50).unwrap();
            for n in 0..=10 {
                let g = q_gamma_tilde(HalfInt::int(n + 1), &c).unwrap();
                assert!(close(&g, &q_factorial(n, &c).unwrap(), &c));
                // the product route must agree with the factorial shortcut
                let s = QReal::from_f64(n as f64 + 1.0, c.bits());
                let r = tilde_generic(s.as_float(), &c).unwrap();
                assert!(close(&QReal::new(r), &g, &c), "n={} q={}", n, q);
            }
        }
    }

    #[test]
    fn half_integer_recursion_matches_product() {
        let c = QContext::new("0.7", 50).unwrap();
        for t in [-5, -3, -1, 1, 3, 5, 9] {
            let h = HalfInt::from_twice(t);
            let fast = q_gamma_tilde(h, &c).unwrap();
            let x = Float::with_val(c.bits(), t) / 2u32;
            let slow = tilde_generic(&x, &c).unwrap();
            assert!(close(&fast, &QReal::new(slow), &c), "twice={}", t);
        }
        assert!(q_gamma_tilde(HalfInt::ZERO, &c).is_err());
        assert!(q_gamma_tilde(HalfInt::int(-2), &c).is_err());
    }

    #[test]
    fn classical_gamma_converges() {
        let c = QContext::new("0.5", 50).unwrap();
        let s = c.real("2.5").unwrap();
        let g = q_gamma_classical(&s, &c).unwrap();
        assert!(g > 0);
        let a = q_gamma_classical_truncated(&s, 400, &c).unwrap();
        let b = q_gamma_classical_truncated(&s, 800, &c).unwrap();
        assert!(close(&a, &b, &c));
        assert!(close(&a, &g, &c));
        assert!(q_gamma_classical(&c.real("-1").unwrap(), &c).is_err());
        let big = QContext::new("2", 50).unwrap();
        assert!(q_gamma_classical(&s, &big).is_err());
    }

    #[test]
    fn q_one_is_euler_gamma() {
        let c = QContext::new("1", 50).unwrap();
        let g = q_gamma_tilde(HalfInt::HALF, &c).unwrap();
        let pi = Float::with_val(c.bits(), rug::float::Constant::Pi);
        assert!(close(&g, &QReal::new(pi.sqrt()), &c));
    }
}
