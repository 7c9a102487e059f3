//! Three-term relations in j and in (m1, m2).
//!
//! Both residuals are relative to the largest individual summand.

use num_rational::Ratio;

use crate::qcore::{qnum, qpow, HalfInt, QContext, QReal};
use crate::qhahn::{lattice_x, Raw};
use crate::Result;

use super::forms::cgc_racah;
use super::key::CgcKey;

fn relative(terms: &[QReal], ctx: &QContext) -> QReal {
    let mut sum = ctx.zero();
    let mut scale = ctx.zero();
    for t in terms {
        sum += t;
        scale = scale.max(t.abs());
    }
    if scale.is_zero() {
        ctx.zero()
    } else {
        &sum.abs() / &scale
    }
}

fn shifted(k: &CgcKey, dm1: i64, dm2: i64, dj: i64) -> CgcKey {
    CgcKey::new(k.j1, k.m1 + dm1, k.j2, k.m2 + dm2, k.j + dj, k.m)
}

/// √(α_n γ_{n+1}) C(j+1) + (β_n - x(j2-m2)) C(j) + √(α_{n-1} γ_n) C(j-1)
/// with n = j-m, N = j1+j2-m+1, α = m-j1+j2, β = m+j1-j2.
pub fn recurrence_j_residual(k: &CgcKey, ctx: &QContext) -> Result<QReal> {
    if !k.is_admissible() {
        return Ok(ctx.zero());
    }
    let raw = |n: i64| Raw {
        n,
        big_n: (k.j1 + k.j2 - k.m + 1).int_unchecked(),
        a: k.m - k.j1 + k.j2,
        b: k.m + k.j1 - k.j2,
    };
    let n = (k.j - k.m).int_unchecked();
    let c = cgc_racah(k, ctx)?;
    let mut terms = vec![
        &raw(n).beta_n(ctx) * &c,
        -(&lattice_x(k.j2 - k.m2, ctx) * &c),
    ];
    let up = shifted(k, 0, 0, 1);
    if up.is_admissible() {
        let coeff = (&raw(n).alpha_n(ctx) * &raw(n + 1).gamma_n(ctx)).sqrt();
        terms.push(&coeff * &cgc_racah(&up, ctx)?);
    }
    let down = shifted(k, 0, 0, -1);
    if down.is_admissible() {
        let coeff = (&raw(n - 1).alpha_n(ctx) * &raw(n).gamma_n(ctx)).sqrt();
        terms.push(&coeff * &cgc_racah(&down, ctx)?);
    }
    Ok(relative(&terms, ctx))
}

/// q^{m2-m1-1}√([j2-m2+1][j2+m2][j1+m1+1][j1-m1]) C(m1+1, m2-1)
/// + q^{m2-m1+1}√([j2+m2+1][j2-m2][j1-m1+1][j1+m1]) C(m1-1, m2+1)
/// + (q^{2m2}[j1-m1][j1+m1+1] + q^{-2m1}[j2-m2][j2+m2+1] + [m+1/2]² - [j+1/2]²) C
pub fn recurrence_m_residual(k: &CgcKey, ctx: &QContext) -> Result<QReal> {
    if !k.is_admissible() {
        return Ok(ctx.zero());
    }
    let qn = |h: HalfInt| qnum(h, ctx);
    let d = k.m2.to_ratio() - k.m1.to_ratio();
    let c = cgc_racah(k, ctx)?;
    let mut terms = vec![
        &(&qpow(k.m2.to_ratio() * 2, ctx) * &(&qn(k.j1 - k.m1) * &qn(k.j1 + k.m1 + 1))) * &c,
        &(&qpow(k.m1.to_ratio() * -2, ctx) * &(&qn(k.j2 - k.m2) * &qn(k.j2 + k.m2 + 1))) * &c,
        &qn(k.m + HalfInt::HALF).square() * &c,
        -(&qn(k.j + HalfInt::HALF).square() * &c),
    ];
    let raise = shifted(k, 1, -1, 0);
    if raise.is_admissible() {
        let b = &(&qn(k.j2 - k.m2 + 1) * &qn(k.j2 + k.m2)) * &(&qn(k.j1 + k.m1 + 1) * &qn(k.j1 - k.m1));
        terms.push(&(&qpow(d - 1, ctx) * &b.sqrt()) * &cgc_racah(&raise, ctx)?);
    }
    let lower = shifted(k, -1, 1, 0);
    if lower.is_admissible() {
        let b = &(&qn(k.j2 + k.m2 + 1) * &qn(k.j2 - k.m2)) * &(&qn(k.j1 - k.m1 + 1) * &qn(k.j1 + k.m1));
        terms.push(&(&qpow(d + Ratio::from(1), ctx) * &b.sqrt()) * &cgc_racah(&lower, ctx)?);
    }
    Ok(relative(&terms, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_relations_vanish() {
        for q in ["0.5", "0.7", "1.4", "1"] {
            let c = QContext::new(q, 40).unwrap();
            for k in CgcKey::all_up_to(HalfInt::int(2)) {
                assert!(recurrence_j_residual(&k, &c).unwrap() < c.tolerance(), "j {} q={}", k, q);
                assert!(recurrence_m_residual(&k, &c).unwrap() < c.tolerance(), "m {} q={}", k, q);
            }
        }
    }
}
