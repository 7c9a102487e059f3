use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::real::QReal;
use crate::Error;

/// Extra bits carried on top of the requested decimal precision.
pub const GUARD_BITS: u32 = 40;

pub const DEFAULT_DIGITS: u32 = 50;

/// Where the value of q comes from. Kept exact so that a context can be
/// rebuilt at a higher working precision without inheriting rounding error.
#[derive(Clone, Debug, PartialEq)]
enum QSource {
    Exact(Rational),
    SqrtOf(Rational),
}

impl QSource {
    fn eval(&self, bits: u32) -> Float {
        match self {
            QSource::Exact(r) => Float::with_val(bits, r),
            QSource::SqrtOf(r) => Float::with_val(bits, r).sqrt(),
        }
    }

    fn recip(&self) -> QSource {
        match self {
            QSource::Exact(r) => QSource::Exact(r.clone().recip()),
            QSource::SqrtOf(r) => QSource::SqrtOf(r.clone().recip()),
        }
    }

    fn is_one(&self) -> bool {
        match self {
            QSource::Exact(r) | QSource::SqrtOf(r) => *r == 1,
        }
    }

    fn greater_than_one(&self) -> bool {
        match self {
            QSource::Exact(r) | QSource::SqrtOf(r) => *r > 1,
        }
    }
}

#[derive(Default)]
struct Caches {
    roots: HashMap<u32, Float>,
    factorials: Vec<Float>,
    pochhammer: HashMap<i64, Vec<Float>>,
    gamma_base: HashMap<i64, Float>,
    widened: HashMap<u32, Arc<QContext>>,
}

/// Deformation parameter q, working precision and memo tables.
///
/// The context is immutable apart from its caches, which sit behind a mutex
/// so a context can be shared between threads.
pub struct QContext {
    source: QSource,
    label: String,
    q: Float,
    digits: u32,
    bits: u32,
    classical: bool,
    memo: bool,
    caches: Mutex<Caches>,
}

impl fmt::Debug for QContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QContext")
            .field("q", &self.label)
            .field("digits", &self.digits)
            .field("bits", &self.bits)
            .finish()
    }
}

fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
}

/// Parse a plain decimal literal ("0.5", "-1.25e-3", "7") into an exact rational.
pub fn parse_decimal(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("not a decimal number: {:?}", s));
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{}{}", int_part, frac_part);
    let mut num = Integer::from_str_radix(if digits.is_empty() { "0" } else { &digits }, 10)
        .map_err(|_| bad())?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = Integer::from(10);
    let r = if scale >= 0 {
        Rational::from(num * Integer::from((&ten).pow(scale as u32)))
    } else {
        Rational::from((num, Integer::from((&ten).pow((-scale) as u32))))
    };
    Ok(r)
}

impl QContext {
    /// Context for q given as a decimal string, at `digits` significant digits.
    pub fn new(q: &str, digits: u32) -> Result<Self, Error> {
        let r = parse_decimal(q)?;
        if r <= 0 {
            return Err(Error::Domain(format!("q must be positive, got {}", q)));
        }
        Self::from_source(QSource::Exact(r), q.trim().to_string(), digits, None)
    }

    /// Context at the default precision of 50 digits.
    pub fn with_q(q: &str) -> Result<Self, Error> {
        Self::new(q, DEFAULT_DIGITS)
    }

    fn from_source(
        source: QSource,
        label: String,
        digits: u32,
        bits: Option<u32>,
    ) -> Result<Self, Error> {
        if digits < 30 {
            return Err(Error::Domain(format!(
                "precision must be at least 30 digits, got {}",
                digits
            )));
        }
        let bits = bits.unwrap_or_else(|| bits_for_digits(digits));
        let q = source.eval(bits);
        let classical = source.is_one();
        Ok(QContext {
            source,
            label,
            q,
            digits,
            bits,
            classical,
            memo: true,
            caches: Mutex::new(Caches::default()),
        })
    }

    /// Same precision with q replaced by 1/q.
    pub fn reciprocal(&self) -> QContext {
        let label = match self.label.strip_prefix("1/") {
            Some(inner) => inner.to_string(),
            None => format!("1/{}", self.label),
        };
        let mut c = Self::from_source(self.source.recip(), label, self.digits, Some(self.bits))
            .expect("valid context");
        c.memo = self.memo;
        c
    }

    /// Context whose q is the square root of this one.
    pub fn sqrt_base(&self) -> Result<QContext, Error> {
        match &self.source {
            QSource::Exact(r) => Self::from_source(
                QSource::SqrtOf(r.clone()),
                format!("sqrt({})", self.label),
                self.digits,
                Some(self.bits),
            ),
            QSource::SqrtOf(_) => Err(Error::Domain("nested square-root base".into())),
        }
    }

    /// Copy with `extra` more working bits; q is recomputed exactly.
    pub fn widened(&self, extra: u32) -> QContext {
        let mut c = Self::from_source(
            self.source.clone(),
            self.label.clone(),
            self.digits,
            Some(self.bits + extra),
        )
        .expect("valid context");
        c.memo = self.memo;
        c
    }

    /// Shared widened copy, so repeated re-evaluation reuses its caches.
    /// `extra` is rounded up to a multiple of 64 bits.
    pub fn widened_shared(&self, extra: u32) -> Arc<QContext> {
        let extra = extra.div_ceil(64) * 64;
        if !self.memo {
            return Arc::new(self.widened(extra));
        }
        if let Some(c) = self.caches.lock().unwrap().widened.get(&extra) {
            return c.clone();
        }
        let c = Arc::new(self.widened(extra));
        self.caches
            .lock()
            .unwrap()
            .widened
            .entry(extra)
            .or_insert(c)
            .clone()
    }

    /// Copy at a different decimal precision.
    pub fn with_precision(&self, digits: u32) -> Result<QContext, Error> {
        Self::from_source(self.source.clone(), self.label.clone(), digits, None)
    }

    /// Copy with memoization switched off.
    pub fn without_memo(&self) -> QContext {
        let mut c = Self::from_source(
            self.source.clone(),
            self.label.clone(),
            self.digits,
            Some(self.bits),
        )
        .expect("valid context");
        c.memo = false;
        c
    }

    pub fn q(&self) -> QReal {
        QReal::new(self.q.clone())
    }

    pub(crate) fn q_float(&self) -> &Float {
        &self.q
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_classical(&self) -> bool {
        self.classical
    }

    pub fn q_greater_than_one(&self) -> bool {
        self.source.greater_than_one()
    }

    pub fn memo_enabled(&self) -> bool {
        self.memo
    }

    pub fn zero(&self) -> QReal {
        QReal::zero(self.bits)
    }

    pub fn one(&self) -> QReal {
        QReal::one(self.bits)
    }

    pub fn int(&self, v: i64) -> QReal {
        QReal::from_i64(v, self.bits)
    }

    /// Parse a decimal string at working precision.
    pub fn real(&self, s: &str) -> Result<QReal, Error> {
        QReal::parse(s, self.bits).ok_or_else(|| Error::Parse(format!("bad number {:?}", s)))
    }

    /// Identity tolerance 10^-(digits-10).
    pub fn tolerance(&self) -> QReal {
        let t = Float::with_val(self.bits, 10);
        QReal::new(Float::with_val(self.bits, t.pow(-(self.digits as i32 - 10))))
    }

    /// q^(1/d), cached per d.
    pub(crate) fn root(&self, d: u32) -> Float {
        if d == 1 {
            return self.q.clone();
        }
        if self.memo {
            let mut c = self.caches.lock().unwrap();
            c.roots
                .entry(d)
                .or_insert_with(|| self.compute_root(d))
                .clone()
        } else {
            self.compute_root(d)
        }
    }

    fn compute_root(&self, d: u32) -> Float {
        if d == 2 {
            self.q.clone().sqrt()
        } else {
            self.q.clone().root(d)
        }
    }

    /// [n]! through the prefix cache. `step(k)` yields [k].
    pub(crate) fn factorial_with<F: Fn(i64) -> Float>(&self, n: usize, step: F) -> Float {
        if !self.memo {
            let mut acc = Float::with_val(self.bits, 1);
            for k in 1..=n {
                acc *= step(k as i64);
            }
            return acc;
        }
        let (start, mut acc) = {
            let mut c = self.caches.lock().unwrap();
            if c.factorials.is_empty() {
                c.factorials.push(Float::with_val(self.bits, 1));
            }
            if c.factorials.len() > n {
                return c.factorials[n].clone();
            }
            (c.factorials.len(), c.factorials.last().unwrap().clone())
        };
        // computed outside the lock: step() may itself consult the caches
        let mut fresh = Vec::with_capacity(n + 1 - start);
        for k in start..=n {
            acc = Float::with_val(self.bits, &acc * step(k as i64));
            fresh.push(acc.clone());
        }
        let mut c = self.caches.lock().unwrap();
        if c.factorials.len() == start {
            c.factorials.extend(fresh);
        }
        acc
    }

    /// (a|q)_n through a per-a prefix cache. `step(m)` yields [a+m].
    pub(crate) fn pochhammer_with<F: Fn(i64) -> Float>(
        &self,
        key: i64,
        n: usize,
        step: F,
    ) -> Float {
        if !self.memo {
            let mut acc = Float::with_val(self.bits, 1);
            for m in 0..n {
                acc *= step(m as i64);
            }
            return acc;
        }
        let (start, mut acc) = {
            let mut c = self.caches.lock().unwrap();
            let v = c
                .pochhammer
                .entry(key)
                .or_insert_with(|| vec![Float::with_val(self.bits, 1)]);
            if v.len() > n {
                return v[n].clone();
            }
            (v.len() - 1, v.last().unwrap().clone())
        };
        let mut fresh = Vec::with_capacity(n - start);
        for m in start..n {
            acc = Float::with_val(self.bits, &acc * step(m as i64));
            fresh.push(acc.clone());
        }
        let mut c = self.caches.lock().unwrap();
        let v = c.pochhammer.get_mut(&key).unwrap();
        if v.len() == start + 1 {
            v.extend(fresh);
        }
        acc
    }

    /// Cached base value for the Gamma function, keyed by twice the argument.
    pub(crate) fn gamma_base_with<F: FnOnce() -> Result<Float, Error>>(
        &self,
        key: i64,
        compute: F,
    ) -> Result<Float, Error> {
        if !self.memo {
            return compute();
        }
        if let Some(v) = self.caches.lock().unwrap().gamma_base.get(&key) {
            return Ok(v.clone());
        }
        let v = compute()?;
        self.caches
            .lock()
            .unwrap()
            .gamma_base
            .insert(key, v.clone());
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_decimal("0.5").unwrap(), Rational::from((1, 2)));
        assert_eq!(parse_decimal("-1.25e-1").unwrap(), Rational::from((-1, 8)));
        assert_eq!(parse_decimal("3").unwrap(), Rational::from(3));
        assert_eq!(parse_decimal(".3").unwrap(), Rational::from((3, 10)));
        assert_eq!(parse_decimal("2e3").unwrap(), Rational::from(2000));
        assert!(parse_decimal("abc").is_err());
        assert!(parse_decimal("").is_err());
        assert!(parse_decimal("1.2.3").is_err());
    }

    #[test]
    fn rejects_bad_contexts() {
        assert!(QContext::new("0", 50).is_err());
        assert!(QContext::new("-0.5", 50).is_err());
        assert!(QContext::new("0.5", 10).is_err());
        assert!(QContext::new("1", 50).unwrap().is_classical());
    }

    #[test]
    fn reciprocal_keeps_precision_and_inverts() {
        let c = QContext::new("0.3", 60).unwrap();
        let r = c.reciprocal();
        assert_eq!(r.bits(), c.bits());
        assert_eq!(r.digits(), 60);
        let prod = &c.q() * &r.q();
        assert!((prod - c.one()).abs() < c.tolerance());
        assert!(r.q_greater_than_one());
        assert_eq!(r.reciprocal().label(), "0.3");
    }

    #[test]
    fn widened_context_recomputes_q() {
        let c = QContext::new("0.3", 50).unwrap();
        let w = c.widened(200);
        assert_eq!(w.bits(), c.bits() + 200);
        // 0.3 is not dyadic, so the wider value differs from the narrow one
        let narrow = c.q().with_prec(w.bits());
        assert!(narrow != w.q());
    }
}
