use crate::qcore::{q_pochhammer, qpow_half, HalfInt, QContext, QReal};
use crate::{Error, Result};

use super::series::{HyperSeriesSpec, Sign};

/// q^power · Π(x|q)_n over numerator x / Π(y|q)_n over denominator y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prefactor {
    pub q_power: HalfInt,
    pub n: usize,
    pub numerator: Vec<HalfInt>,
    pub denominator: Vec<HalfInt>,
}

impl Prefactor {
    pub fn eval(&self, ctx: &QContext) -> Result<QReal> {
        let mut v = qpow_half(self.q_power, ctx);
        for x in &self.numerator {
            v *= q_pochhammer(*x, self.n, ctx);
        }
        for y in &self.denominator {
            let d = q_pochhammer(*y, self.n, ctx);
            if d.is_zero() {
                return Err(Error::Domain(format!("prefactor ({}|q)_{} vanishes", y, self.n)));
            }
            v = &v / &d;
        }
        Ok(v)
    }
}

struct Pattern {
    n: i64,
    a: HalfInt,
    b: HalfInt,
    d: HalfInt,
    e: HalfInt,
    sign: Sign,
}

/// Matches 3F2(-n, a, b; d, e | q^(±(a+b-n-d-e+1))).
fn match_pattern(spec: &HyperSeriesSpec) -> Result<Pattern> {
    let bad = |why: &str| Error::Pattern(format!("{}: {}", why, spec));
    if spec.numerator.len() != 3 || spec.denominator.len() != 2 {
        return Err(bad("expected a 3F2"));
    }
    let m = spec.numerator[0];
    if !m.is_nonpositive_integer() {
        return Err(bad("first numerator parameter must be -n"));
    }
    let n = -m.int_unchecked();
    let (a, b) = (spec.numerator[1], spec.numerator[2]);
    let (d, e) = (spec.denominator[0], spec.denominator[1]);
    let balance = a + b - n - d - e + 1;
    let z = spec.z_exponent();
    let sign = if z == balance {
        Sign::Plus
    } else if z == -balance {
        Sign::Minus
    } else {
        return Err(bad("argument exponent inconsistent with parameters"));
    };
    Ok(Pattern { n, a, b, d, e, sign })
}

fn in_window(x: HalfInt, n: i64) -> bool {
    x.is_nonpositive_integer() && x.twice() > -2 * n
}

/// Whether both transformations apply as polynomial identities: a, b are not
/// terminating before -n, and no denominator (on either side) vanishes.
pub fn transform_admissible(spec: &HyperSeriesSpec) -> bool {
    let Ok(p) = match_pattern(spec) else {
        return false;
    };
    let n = p.n;
    ![p.a, p.b, p.d, p.e, p.a - p.d - n + 1, p.a - p.e - n + 1]
        .iter()
        .any(|x| in_window(*x, n))
}

/// 3F2(-n,a,b; d,e | q^(±(a+b-n-d-e+1)))
///   = q^(±an) (e-a|q)_n/(e|q)_n · 3F2(-n, a, d-b; d, a-e-n+1 | q^(±(b-e)))
pub fn transform_142(spec: &HyperSeriesSpec) -> Result<(HyperSeriesSpec, Prefactor)> {
    let Pattern { n, a, b, d, e, sign } = match_pattern(spec)?;
    let out = HyperSeriesSpec::new(
        vec![HalfInt::int(-n), a, d - b],
        vec![d, a - e - n + 1],
        sign.apply(b - e),
    );
    let pre = Prefactor {
        q_power: sign.apply(a * n),
        n: n as usize,
        numerator: vec![e - a],
        denominator: vec![e],
    };
    Ok((out, pre))
}

/// 3F2(-n,a,b; d,e | q^(±(a+b-n-d-e+1)))
///   = (d-a|q)_n (e-a|q)_n/((d|q)_n (e|q)_n)
///     · 3F2(-n, a, a+b-d-e-n+1; a-d-n+1, a-e-n+1 | q^(±b))
pub fn transform_141(spec: &HyperSeriesSpec) -> Result<(HyperSeriesSpec, Prefactor)> {
    let Pattern { n, a, b, d, e, sign } = match_pattern(spec)?;
    let out = HyperSeriesSpec::new(
        vec![HalfInt::int(-n), a, a + b - d - e - n + 1],
        vec![a - d - n + 1, a - e - n + 1],
        sign.apply(b),
    );
    let pre = Prefactor {
        q_power: HalfInt::ZERO,
        n: n as usize,
        numerator: vec![d - a, e - a],
        denominator: vec![d, e],
    };
    Ok((out, pre))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qhyper::eval_terminating;

    fn spec(n: i64, a: i64, b: i64, d: i64, e: i64, sign: Sign) -> HyperSeriesSpec {
        // parameters given doubled
        let balance = HalfInt::from_twice(a + b - 2 * n - d - e + 2);
        HyperSeriesSpec::new(
            vec![HalfInt::int(-n), HalfInt::from_twice(a), HalfInt::from_twice(b)],
            vec![HalfInt::from_twice(d), HalfInt::from_twice(e)],
            sign.apply(balance),
        )
    }

    #[test]
    fn n_zero_is_trivial() {
        let c = QContext::new("0.5", 50).unwrap();
        let s = spec(0, 3, 5, 7, 9, Sign::Plus);
        for t in [transform_142, transform_141] {
            let (s2, pre) = t(&s).unwrap();
            assert_eq!(pre.eval(&c).unwrap(), 1);
            assert_eq!(eval_terminating(&s2, &c).unwrap(), 1);
        }
    }

    #[test]
    fn pattern_mismatch() {
        let mut s = spec(2, 3, 5, 7, 9, Sign::Plus);
        s.arg_exponent = s.arg_exponent + 1;
        assert!(matches!(transform_142(&s), Err(Error::Pattern(_))));
        let s = HyperSeriesSpec::from_twice(&[-2, 3], &[5], 0);
        assert!(transform_141(&s).is_err());
    }

    #[test]
    fn value_preserved() {
        let c = QContext::new("0.7", 50).unwrap();
        let tol = c.tolerance();
        for sign in [Sign::Plus, Sign::Minus] {
            let s = spec(3, 3, 5, 9, 13, sign);
            assert!(transform_admissible(&s));
            let lhs = eval_terminating(&s, &c).unwrap();
            for t in [transform_142, transform_141] {
                let (s2, pre) = t(&s).unwrap();
                let rhs = &pre.eval(&c).unwrap() * &eval_terminating(&s2, &c).unwrap();
                assert!(lhs.rel_diff(&rhs, &tol) < tol);
            }
        }
    }
}
