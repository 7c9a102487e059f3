//! q-Hahn polynomials on the lattice x(s) = (q^{2s}-1)/(q^2-1).

use std::fmt;

use num_rational::Ratio;

use crate::cgc::CgcKey;
use crate::qcore::{q_factorial, q_gamma_tilde, q_pochhammer, qnum, qpow, sign, HalfInt, QContext, QReal};
use crate::qhyper::{eval_terminating, HyperSeriesSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HahnParams {
    pub n: usize,
    pub big_n: usize,
    pub alpha: HalfInt,
    pub beta: HalfInt,
}

impl HahnParams {
    pub fn new(n: usize, big_n: usize, alpha: HalfInt, beta: HalfInt) -> Result<Self> {
        if big_n < 1 {
            return Err(Error::Domain("q-Hahn: N must be at least 1".into()));
        }
        if n >= big_n {
            return Err(Error::Domain(format!("q-Hahn: degree {} exceeds N-1 = {}", n, big_n - 1)));
        }
        if alpha <= HalfInt::int(-1) || beta <= HalfInt::int(-1) {
            return Err(Error::Domain(format!("q-Hahn: need alpha, beta > -1, got {}, {}", alpha, beta)));
        }
        Ok(HahnParams { n, big_n, alpha, beta })
    }

    pub fn with_degree(&self, n: usize) -> Result<Self> {
        Self::new(n, self.big_n, self.alpha, self.beta)
    }

    fn check_s(&self, s: i64) -> Result<()> {
        if s < 0 || s >= self.big_n as i64 {
            return Err(Error::Domain(format!("q-Hahn: s = {} outside 0..{}", s, self.big_n - 1)));
        }
        Ok(())
    }

    fn raw(&self) -> Raw {
        Raw { n: self.n as i64, big_n: self.big_n as i64, a: self.alpha, b: self.beta }
    }
}

impl fmt::Display for HahnParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} N={} alpha={} beta={}", self.n, self.big_n, self.alpha, self.beta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HahnForm {
    A,
    B,
}

/// A point of the lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticePoint {
    pub s: i64,
    pub x: QReal,
}

impl LatticePoint {
    pub fn new(s: i64, ctx: &QContext) -> Self {
        LatticePoint { s, x: lattice_x(HalfInt::int(s), ctx) }
    }
}

pub fn lattice_x(s: HalfInt, ctx: &QContext) -> QReal {
    if ctx.is_classical() {
        return QReal::new(rug::Float::with_val(ctx.bits(), s.to_ratio().numer()))
            / &ctx.int(*s.to_ratio().denom());
    }
    let q2 = ctx.q().square();
    &(&qpow(s.to_ratio() * 2, ctx) - &ctx.one()) / &(&q2 - &ctx.one())
}

/// x(s+1/2) - x(s-1/2)
pub fn delta_x_half(s: i64, ctx: &QContext) -> QReal {
    let s = HalfInt::int(s);
    &lattice_x(s + HalfInt::HALF, ctx) - &lattice_x(s - HalfInt::HALF, ctx)
}

fn r(h: HalfInt) -> Ratio<i64> {
    h.to_ratio()
}

/// Unvalidated parameters, also used by the coupling-coefficient recurrences.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Raw {
    pub n: i64,
    pub big_n: i64,
    pub a: HalfInt,
    pub b: HalfInt,
}

impl Raw {
    fn qn(&self, h: HalfInt, ctx: &QContext) -> QReal {
        qnum(h, ctx)
    }

    fn ab(&self) -> HalfInt {
        self.a + self.b
    }

    pub fn alpha_n(&self, ctx: &QContext) -> QReal {
        let (n, nn, ab) = (self.n, self.big_n, self.ab());
        let e = Ratio::from(nn) - Ratio::new(3, 2) + Ratio::new(n, 2) + (r(self.a) - r(self.b)) / 2;
        let num = &self.qn(HalfInt::int(n + 1), ctx) * &self.qn(ab + (n + 1), ctx);
        let den = &self.qn(ab + (2 * n + 2), ctx) * &self.qn(ab + (2 * n + 1), ctx);
        &qpow(e, ctx) * &(&num / &den)
    }

    pub fn gamma_n(&self, ctx: &QContext) -> QReal {
        let (n, nn, ab) = (self.n, self.big_n, self.ab());
        let e = Ratio::from(nn - 2) - Ratio::new(n, 2) + (r(self.a) - r(self.b)) / 2;
        let num = &(&self.qn(self.a + n, ctx) * &self.qn(self.b + n, ctx))
            * &(&self.qn(ab + (n + nn), ctx) * &self.qn(HalfInt::int(nn - n), ctx));
        let den = &self.qn(ab + (2 * n + 1), ctx) * &self.qn(ab + 2 * n, ctx);
        &qpow(e, ctx) * &(&num / &den)
    }

    pub fn beta_n(&self, ctx: &QContext) -> QReal {
        let (n, nn, ab) = (self.n, self.big_n, self.ab());
        let num = &(&self.qn(ab + (n + 1), ctx) * &self.qn(self.b + (n + 1), ctx))
            * &self.qn(HalfInt::int(nn - 1 - n), ctx);
        let den = &self.qn(ab + (2 * n + 2), ctx) * &self.qn(ab + (2 * n + 1), ctx);
        let mut v = &qpow(Ratio::from(nn - 1 + n) + r(self.a), ctx) * &(&num / &den);
        if n > 0 {
            let num = &(&self.qn(HalfInt::int(n), ctx) * &self.qn(self.a + n, ctx))
                * &self.qn(ab + (n + nn), ctx);
            let den = &self.qn(ab + (2 * n + 1), ctx) * &self.qn(ab + 2 * n, ctx);
            v += &qpow(Ratio::from(nn - 2 - n) - r(self.b), ctx) * &(&num / &den);
        }
        v
    }

    fn eval(&self, s: i64, form: HahnForm, ctx: &QContext) -> Result<QReal> {
        let (n, nn, a, b) = (self.n, self.big_n, self.a, self.b);
        let poch_b = q_pochhammer(b + 1, n as usize, ctx);
        match form {
            HahnForm::A => {
                let e = Ratio::new(n, 2) * (r(a + b) + Ratio::new(n + 1, 2));
                let binom = &q_factorial(nn - 1, ctx)?
                    / &(&q_factorial(n, ctx)? * &q_factorial(nn - 1 - n, ctx)?);
                let spec = HyperSeriesSpec::new(
                    vec![HalfInt::int(-n), HalfInt::int(-s), a + b + (n + 1)],
                    vec![b + 1, HalfInt::int(1 - nn)],
                    HalfInt::int(s - nn) - a,
                );
                let pre = &(&qpow(e, ctx) * &poch_b) * &binom;
                Ok(&pre * &eval_terminating(&spec, ctx)? * sign(n))
            }
            HahnForm::B => {
                let e = Ratio::new(-3 * n * (n - 1), 4) - Ratio::from(n) * (r(a + b) + 3) / 2;
                let poch_n = q_pochhammer(a + b + (nn + 1), n as usize, ctx);
                let spec = HyperSeriesSpec::new(
                    vec![HalfInt::int(-n), b + (s + 1), a + b + (n + 1)],
                    vec![b + 1, a + b + (nn + 1)],
                    HalfInt::int(s - nn + 1),
                );
                let pre = &(&qpow(e, ctx) * &(&poch_b * &poch_n)) / &q_factorial(n, ctx)?;
                Ok(&pre * &eval_terminating(&spec, ctx)? * sign(n))
            }
        }
    }

    fn weight(&self, s: i64, ctx: &QContext) -> Result<QReal> {
        let (nn, a, b) = (self.big_n, self.a, self.b);
        let num = &q_gamma_tilde(b + (s + 1), ctx)? * &q_gamma_tilde(a + (nn - s), ctx)?;
        let den = &q_gamma_tilde(HalfInt::int(s + 1), ctx)? * &q_gamma_tilde(HalfInt::int(nn - s), ctx)?;
        Ok(&qpow(r(a + b) * s, ctx) * &(&num / &den))
    }

    fn norm_sq(&self, ctx: &QContext) -> Result<QReal> {
        let (n, nn, a, b) = (self.n, self.big_n, self.a, self.b);
        let e = Ratio::from(nn - 1) * (r(b) + 1) - 1 - Ratio::new(n * (n + 1), 2);
        let num = &(&q_gamma_tilde(a + (n + 1), ctx)? * &q_gamma_tilde(b + (n + 1), ctx)?)
            * &q_gamma_tilde(a + b + (n + nn + 1), ctx)?;
        let den = &(&qnum(a + b + (2 * n + 1), ctx) * &q_factorial(n, ctx)?)
            * &(&q_factorial(nn - n - 1, ctx)? * &q_gamma_tilde(a + b + (n + 1), ctx)?);
        Ok(&qpow(e, ctx) * &(&num / &den))
    }
}

pub fn hahn_eval(p: &HahnParams, s: i64, ctx: &QContext, form: HahnForm) -> Result<QReal> {
    p.check_s(s)?;
    p.raw().eval(s, form, ctx)
}

/// ρ(s)
pub fn hahn_weight(p: &HahnParams, s: i64, ctx: &QContext) -> Result<QReal> {
    p.check_s(s)?;
    p.raw().weight(s, ctx)
}

/// d_n²
pub fn hahn_norm_sq(p: &HahnParams, ctx: &QContext) -> Result<QReal> {
    p.raw().norm_sq(ctx)
}

/// (α_n, β_n, γ_n) of x(s)h_n = α_n h_{n+1} + β_n h_n + γ_n h_{n-1}.
pub fn hahn_ttrr_coefficients(p: &HahnParams, ctx: &QContext) -> (QReal, QReal, QReal) {
    let raw = p.raw();
    (raw.alpha_n(ctx), raw.beta_n(ctx), raw.gamma_n(ctx))
}

fn scaled(terms: &[QReal], ctx: &QContext) -> QReal {
    let mut sum = ctx.zero();
    let mut scale = ctx.zero();
    for t in terms {
        sum += t;
        scale = scale.max(t.abs());
    }
    if scale.is_zero() {
        return ctx.zero();
    }
    &sum.abs() / &scale
}

/// Residual of the three-term recurrence relative to its largest term; needs n ≤ N-2.
pub fn hahn_ttrr_residual(p: &HahnParams, s: i64, ctx: &QContext) -> Result<QReal> {
    p.check_s(s)?;
    if p.n + 2 > p.big_n {
        return Err(Error::Domain("q-Hahn recurrence needs n <= N-2".into()));
    }
    let raw = p.raw();
    let (a, b, g) = (raw.alpha_n(ctx), raw.beta_n(ctx), raw.gamma_n(ctx));
    let h = |n: i64| Raw { n, ..raw }.eval(s, HahnForm::A, ctx);
    let hn = h(raw.n)?;
    let mut terms = vec![&lattice_x(HalfInt::int(s), ctx) * &hn, -(&a * &h(raw.n + 1)?), -(&b * &hn)];
    if raw.n > 0 {
        terms.push(-(&g * &h(raw.n - 1)?));
    }
    Ok(scaled(&terms, ctx))
}

/// (σ(s), σ(s)+τ(s)Δx(s-1/2), λ_n)
pub fn hahn_difference_data(p: &HahnParams, s: i64, ctx: &QContext) -> (QReal, QReal, QReal) {
    let raw = p.raw();
    let (nn, a, b, n) = (raw.big_n, raw.a, raw.b, raw.n);
    let xs = lattice_x(HalfInt::int(s), ctx);
    let sigma = &(&qpow(Ratio::new(1, 2) - nn - r(a), ctx) * &xs.square()) * -1i64
        + &(&qpow(Ratio::new(-1, 2), ctx) * &qnum(a + nn, ctx)) * &xs;
    let st = &qpow(r(a + b) + 2 * s + Ratio::new(1, 2), ctx)
        * &(&qnum(b + (s + 1), ctx) * &qnum(HalfInt::int(nn - 1 - s), ctx));
    let lambda = &qpow(r(b) - nn + Ratio::new(5, 2), ctx)
        * &(&qnum(HalfInt::int(n), ctx) * &qnum(a + b + (n + 1), ctx));
    (sigma, st, lambda)
}

/// Residual of ξ(s)y(s+1) + (λ_n - ζ(s) - ξ(s))y(s) + ζ(s)y(s-1) relative to its largest term.
pub fn hahn_difference_residual(p: &HahnParams, s: i64, ctx: &QContext) -> Result<QReal> {
    p.check_s(s)?;
    let raw = p.raw();
    let (sigma, st, lambda) = hahn_difference_data(p, s, ctx);
    let x = |t: i64| lattice_x(HalfInt::int(t), ctx);
    let dxh = delta_x_half(s, ctx);
    let xi = &st / &(&dxh * &(&x(s + 1) - &x(s)));
    let zeta = &sigma / &(&dxh * &(&x(s) - &x(s - 1)));
    let y = |t: i64| -> Result<QReal> {
        if t < 0 || t >= raw.big_n {
            Ok(ctx.zero())
        } else {
            raw.eval(t, HahnForm::A, ctx)
        }
    };
    let ys = y(s)?;
    let terms = [
        &xi * &y(s + 1)?,
        &lambda * &ys,
        -(&zeta * &ys),
        -(&xi * &ys),
        &zeta * &y(s - 1)?,
    ];
    Ok(scaled(&terms, ctx))
}

/// G[n][k] = Σ_s h_n h_k ρ(s) Δx(s-1/2) over the lattice of `p`.
pub fn hahn_gram(p: &HahnParams, ctx: &QContext) -> Result<Vec<Vec<QReal>>> {
    let nn = p.big_n as i64;
    let raw = p.raw();
    let mut w = Vec::new();
    let mut h = vec![Vec::new(); p.big_n];
    for s in 0..nn {
        w.push(&raw.weight(s, ctx)? * &delta_x_half(s, ctx));
        for (n, row) in h.iter_mut().enumerate() {
            row.push(Raw { n: n as i64, ..raw }.eval(s, HahnForm::A, ctx)?);
        }
    }
    let mut g = vec![vec![ctx.zero(); p.big_n]; p.big_n];
    for a in 0..p.big_n {
        for b in 0..p.big_n {
            let mut acc = ctx.zero();
            for s in 0..p.big_n {
                acc += &(&h[a][s] * &h[b][s]) * &w[s];
            }
            g[a][b] = acc;
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HahnRoute {
    J1,
    J2,
}

impl fmt::Display for HahnRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HahnRoute::J1 => "J1",
            HahnRoute::J2 => "J2",
        })
    }
}

/// Substituted parameters, lattice point and sign of a route.
pub fn hahn_substitution(k: &CgcKey, route: HahnRoute) -> Result<(HahnParams, i64, i64)> {
    if !k.is_admissible() {
        return Err(Error::Domain(format!("{} fails the selection rules", k)));
    }
    let n = (k.j - k.m).int_unchecked();
    let big_n = (k.j1 + k.j2 - k.m + 1).int_unchecked();
    let (s, a, b, phase) = match route {
        HahnRoute::J2 => (k.j2 - k.m2, k.m - k.j1 + k.j2, k.m + k.j1 - k.j2, k.j1 - k.m1),
        HahnRoute::J1 => (k.j1 - k.m1, k.m + k.j1 - k.j2, k.m - k.j1 + k.j2, k.j1 - k.m1 + k.j - k.m),
    };
    if a <= HalfInt::int(-1) || b <= HalfInt::int(-1) {
        return Err(Error::Inapplicable(format!(
            "route {} for {}: alpha = {}, beta = {}",
            route, k, a, b
        )));
    }
    assert!(a.is_integer() && b.is_integer(), "integral Hahn parameters for admissible keys");
    let p = HahnParams::new(n as usize, big_n as usize, a, b)?;
    Ok((p, s.int_unchecked(), sign(phase.int_unchecked())))
}

/// Coupling coefficient from √(ρ(s)Δx(s-1/2)/d_n²)·h_n(x(s)); route J1 works in base 1/q.
pub fn cgc_from_hahn(k: &CgcKey, ctx: &QContext, route: HahnRoute) -> Result<QReal> {
    let (p, s, phase) = hahn_substitution(k, route)?;
    let flipped;
    let base = match route {
        HahnRoute::J2 => ctx,
        HahnRoute::J1 => {
            flipped = ctx.reciprocal();
            &flipped
        }
    };
    let w = &(&hahn_weight(&p, s, base)? * &delta_x_half(s, base)) / &hahn_norm_sq(&p, base)?;
    Ok(&w.sqrt() * &hahn_eval(&p, s, base, HahnForm::A)? * phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgc::cgc_racah;

    fn params(n: usize, big_n: usize, a2: i64, b2: i64) -> HahnParams {
        HahnParams::new(n, big_n, HalfInt::from_twice(a2), HalfInt::from_twice(b2)).unwrap()
    }

    #[test]
    fn lattice() {
        let c = QContext::new("0.5", 30).unwrap();
        assert!(lattice_x(HalfInt::ZERO, &c).is_zero());
        assert!((&lattice_x(HalfInt::ONE, &c) - &c.one()).abs() < c.tolerance());
        let one = QContext::new("1", 30).unwrap();
        assert!((&lattice_x(HalfInt::int(3), &one) - &one.int(3)).abs() < one.tolerance());
        assert!((&delta_x_half(2, &one) - &one.one()).abs() < one.tolerance());
    }

    #[test]
    fn forms_agree() {
        for q in ["0.5", "0.9", "1"] {
            let c = QContext::new(q, 40).unwrap();
            for (nn, a2, b2) in [(5, 2, 2), (6, 1, 3), (4, 0, 4)] {
                for n in 0..nn {
                    let p = params(n, nn, a2, b2);
                    for s in 0..nn as i64 {
                        let a = hahn_eval(&p, s, &c, HahnForm::A).unwrap();
                        let b = hahn_eval(&p, s, &c, HahnForm::B).unwrap();
                        assert!((&a - &b).abs() < &c.tolerance() * &a.abs().max(c.one()), "{} s={} q={}", p, s, q);
                    }
                }
            }
        }
    }

    #[test]
    fn gram_is_diagonal() {
        for q in ["0.5", "0.9"] {
            let c = QContext::new(q, 40).unwrap();
            for (nn, a2, b2) in [(4, 2, 2), (5, 2, 4), (6, 1, 3)] {
                let p = params(0, nn, a2, b2);
                let g = hahn_gram(&p, &c).unwrap();
                for n in 0..nn {
                    let d = hahn_norm_sq(&p.with_degree(n).unwrap(), &c).unwrap();
                    for k in 0..nn {
                        let expect = if n == k { d.clone() } else { c.zero() };
                        assert!((&g[n][k] - &expect).abs() < &c.tolerance() * &d, "{} n={} k={}", p, n, k);
                    }
                }
            }
        }
    }

    #[test]
    fn recurrences() {
        for q in ["0.7", "1.3", "1"] {
            let c = QContext::new(q, 40).unwrap();
            for (nn, a2, b2) in [(6, 2, 2), (5, 2, 4), (6, 1, 3)] {
                for n in 0..nn {
                    let p = params(n, nn, a2, b2);
                    for s in 0..nn as i64 {
                        if n + 2 <= nn {
                            assert!(hahn_ttrr_residual(&p, s, &c).unwrap() < c.tolerance(), "ttrr {} s={}", p, s);
                        }
                        assert!(hahn_difference_residual(&p, s, &c).unwrap() < c.tolerance(), "diff {} s={}", p, s);
                    }
                }
            }
        }
    }

    #[test]
    fn connection_routes() {
        let c = QContext::new("0.7", 40).unwrap();
        let mut used = 0;
        for k in CgcKey::all_up_to(HalfInt::int(2)) {
            let v = cgc_racah(&k, &c).unwrap();
            for route in [HahnRoute::J1, HahnRoute::J2] {
                match cgc_from_hahn(&k, &c, route) {
                    Ok(h) => {
                        used += 1;
                        assert!((&h - &v).abs() < c.tolerance(), "{} {}", route, k);
                    }
                    Err(Error::Inapplicable(_)) => {}
                    Err(e) => panic!("{}", e),
                }
            }
        }
        assert!(used > 100);
    }

    #[test]
    fn invalid_params() {
        assert!(HahnParams::new(3, 3, HalfInt::ONE, HalfInt::ONE).is_err());
        assert!(HahnParams::new(0, 3, HalfInt::int(-1), HalfInt::ONE).is_err());
    }
}
