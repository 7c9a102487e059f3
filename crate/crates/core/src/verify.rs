//! Identity sweeps shared by the acceptance target and the command-line verifier.
//!
//! Every sweep returns [`Tally`]s: the number of checks, the largest residual
//! and the check that produced it.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rug::Rational;

use crate::cgc::{
    apply_symmetry, cgc_racah, cgc_racah_exact, dixon_classical_exact, recurrence_j_residual,
    recurrence_m_residual, CgcKey, SpecialKind, SymmetryId, SymmetryRelation, CLOSED_FORMS,
};
use crate::qcore::{qnum, HalfInt, QContext, QReal};
use crate::qhahn::{
    cgc_from_hahn, hahn_difference_residual, hahn_eval, hahn_gram, hahn_norm_sq,
    hahn_ttrr_residual, HahnForm, HahnParams, HahnRoute,
};
use crate::qhyper::{
    basic_to_symmetric, closed_rsum_negative, closed_rsum_positive, closed_sum_dixon,
    closed_sum_negative, closed_sum_positive, closed_sum_vandermonde, dixon_spec, eval_basic,
    eval_terminating, negative_spec, rsum_negative, rsum_positive, transform_141, transform_142,
    transform_admissible, vandermonde_spec, BasicSeriesSpec, HyperSeriesSpec, Sign,
};
use crate::repsu::{
    coproduct_operators, irrep_operators, lemma1_suite, projector_extremal, projector_general,
    OracleTable, TensorBasis,
};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct Tally {
    pub checks: usize,
    pub skipped: usize,
    pub max: QReal,
    pub worst: String,
}

impl Default for Tally {
    fn default() -> Self {
        Tally { checks: 0, skipped: 0, max: QReal::zero(64), worst: String::new() }
    }
}

impl Tally {
    pub fn record(&mut self, r: QReal, what: impl FnOnce() -> String) {
        self.checks += 1;
        if r > self.max || !r.is_finite() {
            self.max = r;
            self.worst = what();
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn merge(&mut self, other: Tally) {
        self.checks += other.checks;
        self.skipped += other.skipped;
        if other.max > self.max || !other.max.is_finite() {
            self.max = other.max;
            self.worst = other.worst;
        }
    }

    /// At least one check ran and every residual is below `tol`.
    pub fn within(&self, tol: &QReal) -> bool {
        self.checks > 0 && self.max.is_finite() && self.max < *tol
    }
}

/// |a-b| / max(|a|, |b|), zero when both vanish.
pub fn rel(a: &QReal, b: &QReal) -> QReal {
    let scale = a.abs().max(b.abs());
    if scale.is_zero() {
        return scale;
    }
    &(a - b).abs() / &scale
}

fn spins(cap: HalfInt) -> Vec<(HalfInt, HalfInt)> {
    let mut out = Vec::new();
    for t1 in 0..=cap.twice() {
        for t2 in 0..=cap.twice() {
            out.push((HalfInt::from_twice(t1), HalfInt::from_twice(t2)));
        }
    }
    out
}

/// Spread (max - min)/max|v| of all closed forms on every key up to `cap`.
pub fn cross_formula(cap: HalfInt, ctxs: &[QContext]) -> Result<Tally> {
    let mut t = Tally::default();
    let keys = CgcKey::all_up_to(cap);
    for c in ctxs {
        for k in &keys {
            let mut vals = Vec::with_capacity(CLOSED_FORMS.len());
            for (_, f) in CLOSED_FORMS {
                vals.push(f(k, c)?);
            }
            let mut lo = vals[0].clone();
            let mut hi = vals[0].clone();
            let mut big = c.zero();
            for v in &vals {
                if *v < lo {
                    lo = v.clone();
                }
                if *v > hi {
                    hi = v.clone();
                }
                big = big.max(v.abs());
            }
            let r = if big.is_zero() { big } else { &(&hi - &lo) / &big };
            t.record(r, || format!("{} q={}", k, c.label()));
        }
    }
    Ok(t)
}

/// |racah - oracle| against the projector and the lowering oracles.
pub fn oracle(cap: HalfInt, ctxs: &[QContext]) -> Result<(Tally, Tally)> {
    let mut proj = Tally::default();
    let mut low = Tally::default();
    for c in ctxs {
        for (j1, j2) in spins(cap) {
            let a = OracleTable::projector(j1, j2, c);
            let b = OracleTable::lowering(j1, j2, c);
            for k in CgcKey::all_for(j1, j2) {
                let v = cgc_racah(&k, c)?;
                proj.record((&v - &a.get(&k, c)).abs(), || format!("{} q={}", k, c.label()));
                low.record((&v - &b.get(&k, c)).abs(), || format!("{} q={}", k, c.label()));
            }
        }
    }
    Ok((proj, low))
}

/// Row and column orthonormality of each weight block.
pub fn unitarity(cap: HalfInt, ctxs: &[QContext]) -> Result<Tally> {
    let mut t = Tally::default();
    for c in ctxs {
        for (j1, j2) in spins(cap) {
            let mut m = -(j1 + j2);
            while m <= j1 + j2 {
                let mut m1s = Vec::new();
                let mut x = -j1;
                while x <= j1 {
                    if (m - x).abs() <= j2 {
                        m1s.push(x);
                    }
                    x = x + 1;
                }
                let mut js = Vec::new();
                let mut j = (j1 - j2).abs();
                while j <= j1 + j2 {
                    if m.abs() <= j {
                        js.push(j);
                    }
                    j = j + 1;
                }
                let mut mat = Vec::new();
                for m1 in &m1s {
                    let mut row = Vec::new();
                    for j in &js {
                        row.push(cgc_racah(&CgcKey::new(j1, *m1, j2, m - *m1, *j, m), c)?);
                    }
                    mat.push(row);
                }
                let n = m1s.len();
                for a in 0..n {
                    for b in 0..n {
                        let mut rows = c.zero();
                        let mut cols = c.zero();
                        for i in 0..n {
                            rows += &mat[a][i] * &mat[b][i];
                            cols += &mat[i][a] * &mat[i][b];
                        }
                        let delta = if a == b { c.one() } else { c.zero() };
                        let label = || format!("j1={} j2={} m={} q={}", j1, j2, m, c.label());
                        t.record((&rows - &delta).abs(), label);
                        t.record((&cols - &delta).abs(), label);
                    }
                }
                m = m + 1;
            }
        }
    }
    Ok(t)
}

/// One relation at one key, in base `c`.
pub fn symmetry_residual(k: &CgcKey, rel_: &SymmetryRelation, c: &QContext) -> Result<QReal> {
    let img = apply_symmetry(k, rel_)
        .ok_or_else(|| Error::Domain(format!("{} maps {} outside the half-integers", rel_.id, k)))?;
    if !img.key.is_admissible() {
        return Err(Error::Domain(format!("{} maps {} to inadmissible {}", rel_.id, k, img.key)));
    }
    let flipped = c.reciprocal();
    let other = if img.q_flip { &flipped } else { c };
    let rhs = &img.prefactor(c) * &cgc_racah(&img.key, other)?;
    Ok(rel(&cgc_racah(k, c)?, &rhs))
}

/// Each relation on `per_relation` random keys up to `cap`, at q and at 1/q.
pub fn symmetry(per_relation: usize, cap: HalfInt, ctxs: &[QContext], seed: u64) -> Result<Vec<(SymmetryId, Tally)>> {
    let keys = CgcKey::all_up_to(cap);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    for relation in SymmetryRelation::all() {
        let mut t = Tally::default();
        for _ in 0..per_relation {
            let k = keys[rng.gen_range(0..keys.len())];
            for c in ctxs {
                for base in [c.reciprocal(), c.with_precision(c.digits())?] {
                    let r = symmetry_residual(&k, &relation, &base)?;
                    t.record(r, || format!("{} q={}", k, base.label()));
                }
            }
        }
        out.push((relation.id, t));
    }
    Ok(out)
}

/// Each special-value formula against the Racah sum on its whole pattern class.
pub fn special(cap: HalfInt, ctxs: &[QContext]) -> Result<Vec<(SpecialKind, Tally)>> {
    let keys = CgcKey::all_up_to(cap);
    let mut out = Vec::new();
    for kind in SpecialKind::ALL {
        let mut t = Tally::default();
        for c in ctxs {
            for k in &keys {
                if let Some(v) = kind.eval(k, c) {
                    t.record(rel(&v, &cgc_racah(k, c)?), || format!("{} q={}", k, c.label()));
                }
            }
        }
        out.push((kind, t));
    }
    Ok(out)
}

/// Dixon's q = 1 value against the exact Racah sum; residual 0 on exact agreement.
pub fn dixon_exact(cap: i64) -> Tally {
    let mut t = Tally::default();
    for j1 in 0..=cap {
        for j2 in 0..=cap {
            for j in (j1 - j2).abs()..=j1 + j2 {
                let k = CgcKey::from_twice([2 * j1, 0, 2 * j2, 0, 2 * j, 0]);
                let (Some((s, r)), Some((s2, r2))) = (dixon_classical_exact(j1, j2, j), cgc_racah_exact(&k)) else {
                    t.record(QReal::one(64), || format!("{} missing", k));
                    continue;
                };
                let same_sign = s.cmp0() == s2.cmp0();
                let same_sq = Rational::from(&s * &s) * &r == Rational::from(&s2 * &s2) * &r2;
                let odd_zero = (j1 + j2 + j) % 2 == 0 || (s == 0 && s2 == 0);
                let ok = same_sign && same_sq && odd_zero;
                t.record(if ok { QReal::zero(64) } else { QReal::one(64) }, || format!("{}", k));
            }
        }
    }
    t
}

/// (j-relation, m-relation) relative residuals.
pub fn recurrence(cap: HalfInt, ctxs: &[QContext]) -> Result<(Tally, Tally)> {
    let mut tj = Tally::default();
    let mut tm = Tally::default();
    for c in ctxs {
        for k in CgcKey::all_up_to(cap) {
            tj.record(recurrence_j_residual(&k, c)?, || format!("{} q={}", k, c.label()));
            tm.record(recurrence_m_residual(&k, c)?, || format!("{} q={}", k, c.label()));
        }
    }
    Ok((tj, tm))
}

#[derive(Debug, Clone, Default)]
pub struct HahnTallies {
    pub gram: Tally,
    pub ttrr: Tally,
    pub difference: Tally,
    pub forms: Tally,
}

/// Gram matrix against d_n², both recurrences and the two hypergeometric forms.
pub fn hahn(sets: &[(usize, HalfInt, HalfInt)], ctxs: &[QContext]) -> Result<HahnTallies> {
    let mut out = HahnTallies::default();
    for c in ctxs {
        for &(big_n, a, b) in sets {
            let base = HahnParams::new(0, big_n, a, b)?;
            let label = |extra: String| format!("N={} alpha={} beta={} {} q={}", big_n, a, b, extra, c.label());
            let g = hahn_gram(&base, c)?;
            let d: Vec<QReal> = (0..big_n)
                .map(|n| hahn_norm_sq(&base.with_degree(n)?, c))
                .collect::<Result<_>>()?;
            for n in 0..big_n {
                for k in 0..big_n {
                    let expect = if n == k { d[n].clone() } else { c.zero() };
                    let r = &(&g[n][k] - &expect).abs() / &(&d[n] * &d[k]).sqrt();
                    out.gram.record(r, || label(format!("G[{}][{}]", n, k)));
                }
            }
            for n in 0..big_n {
                let p = base.with_degree(n)?;
                for s in 0..big_n as i64 {
                    if n + 2 <= big_n {
                        out.ttrr.record(hahn_ttrr_residual(&p, s, c)?, || label(format!("n={} s={}", n, s)));
                    }
                    out.difference
                        .record(hahn_difference_residual(&p, s, c)?, || label(format!("n={} s={}", n, s)));
                    let fa = hahn_eval(&p, s, c, HahnForm::A)?;
                    let fb = hahn_eval(&p, s, c, HahnForm::B)?;
                    out.forms.record(rel(&fa, &fb), || label(format!("n={} s={}", n, s)));
                }
            }
        }
    }
    Ok(out)
}

/// |route value - racah| for both routes; inapplicable keys are counted as skipped.
pub fn connection(cap: HalfInt, ctxs: &[QContext]) -> Result<(Tally, Tally)> {
    let mut t1 = Tally::default();
    let mut t2 = Tally::default();
    for c in ctxs {
        for k in CgcKey::all_up_to(cap) {
            let v = cgc_racah(&k, c)?;
            for (route, t) in [(HahnRoute::J1, &mut t1), (HahnRoute::J2, &mut t2)] {
                match cgc_from_hahn(&k, c, route) {
                    Ok(h) => t.record((&h - &v).abs(), || format!("{} q={}", k, c.label())),
                    Err(Error::Inapplicable(_)) => t.skip(),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok((t1, t2))
}

#[derive(Debug, Clone, Default)]
pub struct IdentityTallies {
    pub vandermonde: Tally,
    pub summation: Tally,
    pub dixon: Tally,
    pub transformation: Tally,
    pub basic: Tally,
}

/// Relative above magnitude 1, absolute below: closed forms that vanish
/// exactly are compared with series whose terms cancel.
fn urel(a: &QReal, b: &QReal) -> QReal {
    a.rel_diff(b, &QReal::one(a.prec()))
}

fn h2(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

/// Closed sums against their series, transformations on random instances and
/// the basic-series connection.
pub fn identities(ctxs: &[QContext], random: usize, seed: u64) -> Result<IdentityTallies> {
    let mut out = IdentityTallies::default();
    let mut rng = StdRng::seed_from_u64(seed);
    for c in ctxs {
        let q = c.label().to_string();
        for sign in [Sign::Plus, Sign::Minus] {
            for n in 0..=5 {
                for b in -9..=9 {
                    for cc in -9..=9 {
                        let Ok(closed) = closed_sum_vandermonde(n, h2(b), h2(cc), sign, c) else { continue };
                        let Ok(series) = eval_terminating(&vandermonde_spec(n, h2(b), h2(cc), sign), c) else {
                            out.vandermonde.skip();
                            continue;
                        };
                        out.vandermonde.record(urel(&closed, &series), || format!("n={} b={} c={} q={}", n, h2(b), h2(cc), q));
                    }
                }
            }
            for b in 1..=6 {
                for cc in b + 1..=9 {
                    for n in 0..b {
                        let series = eval_terminating(&vandermonde_spec(n, HalfInt::int(b), HalfInt::int(cc), sign), c)?;
                        let label = || format!("positive n={} b={} c={} q={}", n, b, cc, q);
                        out.summation.record(urel(&series, &closed_sum_positive(n, b, cc, sign, c)?), label);
                        let r = urel(&rsum_positive(n, b, cc, sign, c)?, &closed_rsum_positive(n, b, cc, sign, c)?);
                        out.summation.record(r, label);
                    }
                }
            }
            for b in 2..=9 {
                for cc in 1..b {
                    for n in 0..=cc {
                        let series = eval_terminating(&negative_spec(n, b, cc, sign), c)?;
                        let label = || format!("negative n={} b={} c={} q={}", n, b, cc, q);
                        out.summation.record(urel(&series, &closed_sum_negative(n, b, cc, sign, c)?), label);
                        let r = urel(&rsum_negative(n, b, cc, sign, c)?, &closed_rsum_negative(n, b, cc, sign, c)?);
                        out.summation.record(r, label);
                    }
                }
            }
        }
        for n in 0..=4 {
            for b in 1..=9 {
                for cc in 1..=9 {
                    let Ok(closed) = closed_sum_dixon(n, h2(b), h2(cc), c) else {
                        out.dixon.skip();
                        continue;
                    };
                    let series = eval_terminating(&dixon_spec(n, h2(b), h2(cc)), c)?;
                    out.dixon.record(urel(&closed, &series), || format!("n={} b={} c={} q={}", n, h2(b), h2(cc), q));
                }
            }
        }
        let mut done = 0;
        while done < random {
            let n = rng.gen_range(0..=5);
            let [a, b, d, e] = [0; 4].map(|_| h2(rng.gen_range(-18..=18)));
            let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            let spec = HyperSeriesSpec::new(vec![HalfInt::int(-n), a, b], vec![d, e], sign.apply(a + b - n - d - e + 1));
            if !transform_admissible(&spec) {
                continue;
            }
            done += 1;
            let lhs = eval_terminating(&spec, c)?;
            for t in [transform_142, transform_141] {
                let (rhs_spec, pre) = t(&spec)?;
                let rhs = &pre.eval(c)? * &eval_terminating(&rhs_spec, c)?;
                out.transformation.record(urel(&lhs, &rhs), || format!("{} q={}", spec, q));
            }
        }
        if !c.is_classical() {
            let half = c.sqrt_base()?;
            for _ in 0..random.div_ceil(4) {
                let n = rng.gen_range(0..=5);
                let num = vec![HalfInt::int(-n), h2(rng.gen_range(-10..=10)), h2(rng.gen_range(-10..=10))];
                let den = vec![h2(rng.gen_range(1..=12)), h2(rng.gen_range(1..=12))];
                let ze = h2(rng.gen_range(-6..=6));
                let z = crate::qcore::qpow_half(ze, c);
                let basic = eval_basic(&BasicSeriesSpec { numerator: num.clone(), denominator: den.clone(), z }, c)?;
                let sym = eval_terminating(&basic_to_symmetric(&num, &den, ze), &half)?;
                out.basic.record(urel(&basic, &sym), || format!("num={:?} den={:?} ze={} q={}", num, den, ze, q));
            }
        }
    }
    Ok(out)
}

/// Operator identities on irreps and tensor products up to `cap`.
pub fn lemma1(cap: HalfInt, max_r: u32, ctxs: &[QContext]) -> Tally {
    let mut t = Tally::default();
    for c in ctxs {
        for (j1, j2) in spins(cap) {
            let g = coproduct_operators(j1, j2, c);
            for (name, r) in lemma1_suite(&g, max_r, c).entries {
                t.record(r, || format!("{} j1={} j2={} q={}", name, j1, j2, c.label()));
            }
        }
        let mut j = HalfInt::ZERO;
        while j <= cap {
            for (name, r) in lemma1_suite(&irrep_operators(j, c), max_r, c).entries {
                t.record(r, || format!("{} j={} q={}", name, j, c.label()));
            }
            j = j + HalfInt::HALF;
        }
    }
    t
}

/// Symmetry, idempotence and orthogonality of projection operators on weight spaces.
pub fn projector_laws(cap: HalfInt, ctxs: &[QContext]) -> Tally {
    let mut t = Tally::default();
    for c in ctxs {
        for (j1, j2) in spins(cap) {
            let basis = TensorBasis::new(j1, j2);
            let dim = basis.dim();
            let mut j = (j1 - j2).abs();
            while j <= j1 + j2 {
                let label = || format!("j1={} j2={} j={} q={}", j1, j2, j, c.label());
                let p = projector_extremal(j, &basis, c);
                t.record(p.rel_residual(&p.transpose()), label);
                if j > HalfInt::ZERO {
                    let pg = projector_general(j, j - 1, j, &basis, c);
                    let pt = projector_general(j, j, j - 1, &basis, c);
                    t.record(pg.transpose().rel_residual(&pt), label);
                }
                let mut jp = (j1 - j2).abs();
                while jp <= j1 + j2 {
                    let top = j.min(jp);
                    let mut m = -top;
                    while m <= top {
                        let a = projector_general(j, m, m, &basis, c);
                        let b = projector_general(jp, m, m, &basis, c);
                        let ab = &a * &b;
                        for i in 0..dim {
                            let (m1, m2) = basis.labels(i);
                            if m1 + m2 != m {
                                continue;
                            }
                            let v = basis.unit(m1, m2, c);
                            let (abv, av) = (ab.apply(&v), a.apply(&v));
                            for (x, y) in abv.iter().zip(&av) {
                                let r = if j == jp { (x - y).abs() } else { x.abs() };
                                t.record(r, || format!("j1={} j2={} j={} j'={} m={} q={}", j1, j2, j, jp, m, c.label()));
                            }
                        }
                        m = m + 1;
                    }
                    jp = jp + 1;
                }
                j = j + 1;
            }
        }
    }
    t
}

/// (coefficients, [x]) deviations at q = 1 - 10^-k from the q = 1 branch.
pub fn classical_limit(cap: HalfInt, k: u32, digits: u32) -> Result<(Tally, Tally)> {
    let near = QContext::new(&limit_q(k), digits)?;
    let one = QContext::new("1", digits)?;
    let mut cg = Tally::default();
    for key in CgcKey::all_up_to(cap) {
        let a = cgc_racah(&key, &near)?;
        let b = cgc_racah(&key, &one)?;
        cg.record((&a.with_prec(one.bits()) - &b).abs(), || format!("{}", key));
    }
    let mut qn = Tally::default();
    for t in -10..=10 {
        let x = HalfInt::from_twice(t);
        let v = qnum(x, &near);
        let exact = &one.int(t) / &one.int(2);
        qn.record((&v.with_prec(one.bits()) - &exact).abs(), || format!("[{}]", x));
    }
    Ok((cg, qn))
}

/// "1 - 10^-k" as an exact decimal string.
pub fn limit_q(k: u32) -> String {
    format!("0.{}", "9".repeat(k as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        let c = [QContext::new("0.6", 40).unwrap()];
        let tol = c[0].tolerance();
        assert!(cross_formula(HalfInt::ONE, &c).unwrap().within(&tol));
        assert!(unitarity(HalfInt::ONE, &c).unwrap().within(&tol));
        assert!(dixon_exact(2).within(&QReal::from_f64(0.5, 64)));
        let (a, b) = connection(HalfInt::ONE, &c).unwrap();
        assert!(a.within(&tol) && b.within(&tol));
        assert!(lemma1(HalfInt::HALF, 2, &c).within(&tol));
        let p = projector_laws(HalfInt::ONE, &c);
        assert!(p.within(&tol), "{} {}", p.max.to_f64(), p.worst);
    }

    #[test]
    fn tally_tracks_worst() {
        let mut t = Tally::default();
        t.record(QReal::from_f64(1e-3, 64), || "a".into());
        t.record(QReal::from_f64(1e-5, 64), || "b".into());
        assert_eq!(t.worst, "a");
        assert_eq!(t.checks, 2);
        assert!(!Tally::default().within(&QReal::one(64)));
    }

    #[test]
    fn limit_string() {
        assert_eq!(limit_q(3), "0.999");
    }
}
