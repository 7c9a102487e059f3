//! Closed-form values of the coefficients on special label patterns.

use std::fmt;

use rug::{Integer, Rational};

use crate::qcore::{qnum, qpow, sign, HalfInt, QContext, QReal};
use crate::qhyper::{eval_regularized, HyperSeriesSpec};

use super::forms::{exact_to_real, fact, prod, rat_fact, standard_power, x};
use super::key::CgcKey;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialKind {
    /// j = 0
    Singlet,
    /// j = j1 + j2
    Stretched,
    /// j = j1 - j2 with j1 ≥ j2
    Antistretched,
    /// j = j1 + j2 - 1
    SubStretched,
    /// m = j
    Highest,
    /// m1 = j1
    M1Top,
    /// m2 = j2
    M2Top,
    /// m1 = -j1
    M1Bottom,
    /// m2 = -j2
    M2Bottom,
    /// m1 = m2 = 0
    AllZero,
}

impl SpecialKind {
    /// In dispatch priority order.
    pub const ALL: [SpecialKind; 10] = [
        SpecialKind::Singlet,
        SpecialKind::Stretched,
        SpecialKind::Antistretched,
        SpecialKind::SubStretched,
        SpecialKind::Highest,
        SpecialKind::M1Top,
        SpecialKind::M2Top,
        SpecialKind::M1Bottom,
        SpecialKind::M2Bottom,
        SpecialKind::AllZero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecialKind::Singlet => "j=0",
            SpecialKind::Stretched => "j=j1+j2",
            SpecialKind::Antistretched => "j=j1-j2",
            SpecialKind::SubStretched => "j=j1+j2-1",
            SpecialKind::Highest => "m=j",
            SpecialKind::M1Top => "m1=j1",
            SpecialKind::M2Top => "m2=j2",
            SpecialKind::M1Bottom => "m1=-j1",
            SpecialKind::M2Bottom => "m2=-j2",
            SpecialKind::AllZero => "m=0",
        }
    }

    /// Whether an admissible key lies in this pattern class.
    pub fn matches(self, k: &CgcKey) -> bool {
        if !k.is_admissible() {
            return false;
        }
        match self {
            SpecialKind::Singlet => k.j == HalfInt::ZERO,
            SpecialKind::Stretched => k.j == k.j1 + k.j2,
            SpecialKind::Antistretched => k.j1 >= k.j2 && k.j == k.j1 - k.j2,
            SpecialKind::SubStretched => {
                k.j1 > HalfInt::ZERO && k.j2 > HalfInt::ZERO && k.j == k.j1 + k.j2 - 1
            }
            SpecialKind::Highest => k.m == k.j,
            SpecialKind::M1Top => k.m1 == k.j1,
            SpecialKind::M2Top => k.m2 == k.j2,
            SpecialKind::M1Bottom => k.m1 == -k.j1,
            SpecialKind::M2Bottom => k.m2 == -k.j2,
            SpecialKind::AllZero => k.m1 == HalfInt::ZERO && k.m2 == HalfInt::ZERO,
        }
    }

    /// Evaluates the pattern formula; `None` when the key is outside the class.
    pub fn eval(self, k: &CgcKey, ctx: &QContext) -> Option<QReal> {
        if !self.matches(k) {
            return None;
        }
        let half = |h: HalfInt| x(h);
        let nn = x(k.j1 + k.j2 - k.j) * x(k.j1 + k.j2 + k.j + 1) / 2;
        let ratio = |top: &[HalfInt], bottom: &[HalfInt]| &prod(top, ctx) / &prod(bottom, ctx);
        let v = match self {
            SpecialKind::Singlet => {
                let d = qnum(k.j1 * 2 + 1, ctx).sqrt();
                &qpow(half(k.m1), ctx) / &d * sign(int(k.j1 - k.m1))
            }
            SpecialKind::Stretched => {
                let r = ratio(
                    &[k.j1 * 2, k.j2 * 2, k.j1 + k.j2 + k.m, k.j1 + k.j2 - k.m],
                    &[(k.j1 + k.j2) * 2, k.j1 + k.m1, k.j1 - k.m1, k.j2 + k.m2, k.j2 - k.m2],
                );
                &standard_power(k, 0, ctx) * &r.sqrt()
            }
            SpecialKind::Antistretched => {
                let r = ratio(
                    &[(k.j1 - k.j2) * 2 + 1, k.j2 * 2, k.j1 + k.m1, k.j1 - k.m1],
                    &[k.j1 * 2 + 1, k.j1 - k.j2 - k.m, k.j1 - k.j2 + k.m, k.j2 + k.m2, k.j2 - k.m2],
                );
                let e = -half(k.j1) * half(k.m2) - half(k.j2) * half(k.m1) - half(k.m2);
                &qpow(e, ctx) * &r.sqrt() * sign(int(k.j2 + k.m2))
            }
            SpecialKind::SubStretched => {
                let s = k.j1 + k.j2;
                let bracket = &(&(&qnum(s * 2, ctx) * &qnum(k.j2 - k.m2, ctx))
                    * &qpow(half(k.j1 + k.m1), ctx))
                    - &(&qnum(k.j2 * 2, ctx) * &qnum(s - k.m, ctx));
                let r = &qnum(s * 2 - 1, ctx)
                    * &ratio(
                        &[k.j1 * 2 - 1, k.j2 * 2 - 1, s + k.m - 1, s - k.m - 1],
                        &[s * 2, k.j1 + k.m1, k.j1 - k.m1, k.j2 + k.m2, k.j2 - k.m2],
                    );
                let e = half(k.j1) * half(k.m2) - half(k.j2) * half(k.m1) - half(s);
                &(&qpow(e, ctx) * &bracket) * &r.sqrt()
            }
            SpecialKind::Highest => {
                let r = ratio(
                    &[k.j * 2 + 1, k.j1 + k.m1, k.j2 + k.m2, k.j1 + k.j2 - k.j],
                    &[
                        k.j1 - k.j2 + k.j, k.j2 - k.j1 + k.j, k.j1 + k.j2 + k.j + 1,
                        k.j1 - k.m1, k.j2 - k.m2,
                    ],
                );
                let e = half(k.j1 + k.j2 - k.j) * half(k.j + k.j2 - k.j1 + 1) / 2
                    - half(k.j + 1) * half(k.j1 - k.m1);
                &qpow(e, ctx) * &r.sqrt() * sign(int(k.j1 - k.m1))
            }
            SpecialKind::M1Top => {
                let r = &qnum(k.j * 2 + 1, ctx)
                    * &ratio(
                        &[k.j + k.j2 - k.j1, k.j + k.m, k.j2 - k.m2, k.j1 * 2],
                        &[k.j1 + k.j2 + k.j + 1, k.j1 + k.j2 - k.j, k.j + k.j1 - k.j2, k.j - k.m, k.j2 + k.m2],
                    );
                let e = -half(k.j1) * half(k.j2 - k.m2) + nn;
                &qpow(e, ctx) * &r.sqrt()
            }
            SpecialKind::M2Top => {
                let r = &qnum(k.j * 2 + 1, ctx)
                    * &ratio(
                        &[k.j + k.j1 - k.j2, k.j + k.m, k.j1 - k.m1, k.j2 * 2],
                        &[k.j1 + k.j2 + k.j + 1, k.j1 + k.j2 - k.j, k.j + k.j2 - k.j1, k.j - k.m, k.j1 + k.m1],
                    );
                let e = half(k.j2) * half(k.j1 - k.m1) - nn;
                &qpow(e, ctx) * &r.sqrt() * sign(k.n())
            }
            SpecialKind::M1Bottom => {
                let r = &qnum(k.j * 2 + 1, ctx)
                    * &ratio(
                        &[k.j1 * 2, k.j2 + k.m2, k.j - k.m, k.j + k.j2 - k.j1],
                        &[k.j1 + k.j2 + k.j + 1, k.j + k.j1 - k.j2, k.j1 + k.j2 - k.j, k.j + k.m, k.j2 - k.m2],
                    );
                let e = half(k.j1) * half(k.j2 + k.m2) - nn;
                &qpow(e, ctx) * &r.sqrt() * sign(k.n())
            }
            SpecialKind::M2Bottom => {
                let r = &qnum(k.j * 2 + 1, ctx)
                    * &ratio(
                        &[k.j2 * 2, k.j1 + k.m1, k.j - k.m, k.j + k.j1 - k.j2],
                        &[k.j1 + k.j2 + k.j + 1, k.j + k.j2 - k.j1, k.j1 + k.j2 - k.j, k.j + k.m, k.j1 - k.m1],
                    );
                let e = -half(k.j2) * half(k.j1 + k.m1) + nn;
                &qpow(e, ctx) * &r.sqrt()
            }
            SpecialKind::AllZero => {
                let r = &qnum(k.j * 2 + 1, ctx)
                    * &ratio(
                        &[k.j + k.j1 - k.j2, k.j + k.j2 - k.j1],
                        &[k.j1 + k.j2 + k.j + 1, k.j1 + k.j2 - k.j],
                    );
                let spec = HyperSeriesSpec::new(
                    vec![k.j - k.j1 - k.j2, -k.j1, -k.j2],
                    vec![k.j - k.j1 + 1, k.j - k.j2 + 1],
                    k.j1 + k.j2 + k.j + 1,
                );
                let series = eval_regularized(&spec, ctx).ok()?;
                let pre = &(&r.sqrt() * &qpow(-nn, ctx)) * &fact(k.j, ctx);
                &pre * &series * sign(k.n())
            }
        };
        Some(v)
    }
}

impl fmt::Display for SpecialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn int(h: HalfInt) -> i64 {
    h.int_unchecked()
}

/// First matching pattern in priority order, with its value.
pub fn special_value(k: &CgcKey, ctx: &QContext) -> Option<(SpecialKind, QReal)> {
    SpecialKind::ALL
        .iter()
        .find_map(|kind| kind.eval(k, ctx).map(|v| (*kind, v)))
}

/// ⟨j1 0, j2 0 | j 0⟩ at q = 1 from Dixon's sum, exactly: `s·√radicand`.
/// Odd j1+j2+j gives `s = 0`.
pub fn dixon_classical_exact(j1: i64, j2: i64, j: i64) -> Option<(Rational, Rational)> {
    if j1 < 0 || j2 < 0 || j < (j1 - j2).abs() || j > j1 + j2 {
        return None;
    }
    let total = j1 + j2 + j;
    if total % 2 == 1 {
        return Some((Rational::new(), Rational::new()));
    }
    let k = total / 2;
    let s = Rational::from((
        rat_fact(k) * sign(k - j),
        rat_fact(k - j1) * rat_fact(k - j2) * rat_fact(k - j),
    ));
    let radicand = Rational::from((
        Integer::from(2 * j + 1) * rat_fact(2 * k - 2 * j1) * rat_fact(2 * k - 2 * j2) * rat_fact(2 * k - 2 * j),
        rat_fact(2 * k + 1),
    ));
    Some((s, radicand))
}

pub fn dixon_classical(j1: i64, j2: i64, j: i64, ctx: &QContext) -> Option<QReal> {
    dixon_classical_exact(j1, j2, j).map(|(s, r)| exact_to_real(&s, &r, ctx))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgc::{cgc_racah, cgc_racah_exact};

    #[test]
    fn every_pattern_matches_racah() {
        for q in ["0.5", "1.7"] {
            let c = QContext::new(q, 40).unwrap();
            let keys = CgcKey::all_up_to(HalfInt::int(2));
            for kind in SpecialKind::ALL {
                let mut seen = 0;
                for k in &keys {
                    if let Some(v) = kind.eval(k, &c) {
                        seen += 1;
                        let r = cgc_racah(k, &c).unwrap();
                        assert!((&v - &r).abs() < c.tolerance(), "{} {}: {} vs {}", kind, k, v, r);
                    }
                }
                assert!(seen > 0, "{}", kind);
            }
        }
    }

    #[test]
    fn examples() {
        let c = QContext::new("0.5", 40).unwrap();
        let k = CgcKey::from_twice([2, 2, 2, 0, 4, 2]);
        let (kind, v) = special_value(&k, &c).unwrap();
        assert_eq!(kind, SpecialKind::Stretched);
        assert!((&v - &cgc_racah(&k, &c).unwrap()).abs() < c.tolerance());
        // interior key with no pattern
        let k = CgcKey::from_twice([4, 0, 4, 2, 4, 2]);
        assert!(special_value(&k, &c).is_none());
    }

    #[test]
    fn dixon_matches_classical_racah_exactly() {
        for j1 in 0i64..=4 {
            for j2 in 0..=4 {
                for j in (j1 - j2).abs()..=j1 + j2 {
                    let (s, r) = dixon_classical_exact(j1, j2, j).unwrap();
                    let k = CgcKey::from_twice([2 * j1, 0, 2 * j2, 0, 2 * j, 0]);
                    let (s2, r2) = cgc_racah_exact(&k).unwrap();
                    assert_eq!(s.clone().signum(), s2.clone().signum());
                    assert_eq!(Rational::from(&s * &s) * &r, Rational::from(&s2 * &s2) * &r2);
                }
            }
        }
    }
}
