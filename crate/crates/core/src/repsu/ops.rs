use crate::qcore::{q_binomial, q_factorial, qnum, qnum_real, qpow_real, HalfInt, QContext, QReal};

use super::matrix::OperatorMatrix;

/// Basis |j m⟩ of D^j, ordered m = -j, ..., j.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IrrepBasis {
    pub j: HalfInt,
}

impl IrrepBasis {
    pub fn new(j: HalfInt) -> Self {
        assert!(j.twice() >= 0, "negative spin {}", j);
        IrrepBasis { j }
    }

    pub fn dim(&self) -> usize {
        self.j.twice() as usize + 1
    }

    pub fn m(&self, i: usize) -> HalfInt {
        -self.j + i as i64
    }

    pub fn index(&self, m: HalfInt) -> Option<usize> {
        if m.abs() > self.j || !(self.j - m).is_integer() {
            return None;
        }
        Some((m + self.j).int_unchecked() as usize)
    }
}

/// Basis |j1 m1⟩|j2 m2⟩, lexicographic in (m1, m2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorBasis {
    pub first: IrrepBasis,
    pub second: IrrepBasis,
}

impl TensorBasis {
    pub fn new(j1: HalfInt, j2: HalfInt) -> Self {
        TensorBasis { first: IrrepBasis::new(j1), second: IrrepBasis::new(j2) }
    }

    pub fn dim(&self) -> usize {
        self.first.dim() * self.second.dim()
    }

    pub fn index(&self, m1: HalfInt, m2: HalfInt) -> Option<usize> {
        Some(self.first.index(m1)? * self.second.dim() + self.second.index(m2)?)
    }

    pub fn labels(&self, i: usize) -> (HalfInt, HalfInt) {
        let d2 = self.second.dim();
        (self.first.m(i / d2), self.second.m(i % d2))
    }

    /// Basis vector |j1 m1⟩|j2 m2⟩.
    pub fn unit(&self, m1: HalfInt, m2: HalfInt, ctx: &QContext) -> Vec<QReal> {
        let mut v = vec![ctx.zero(); self.dim()];
        v[self.index(m1, m2).expect("label inside the basis")] = ctx.one();
        v
    }
}

/// The generators J0, J+, J- on some representation space.
#[derive(Clone, Debug)]
pub struct Generators {
    pub j0: OperatorMatrix,
    pub jplus: OperatorMatrix,
    pub jminus: OperatorMatrix,
}

/// J0, J+ and J- on D^j.
pub fn irrep_operators(j: HalfInt, ctx: &QContext) -> Generators {
    let b = IrrepBasis::new(j);
    let n = b.dim();
    let j0 = OperatorMatrix::diagonal((0..n).map(|i| QReal::from_f64(b.m(i).to_f64(), ctx.bits())).collect(), ctx);
    let mut jplus = OperatorMatrix::zeros(n, n, ctx);
    let mut jminus = OperatorMatrix::zeros(n, n, ctx);
    for i in 0..n {
        let m = b.m(i);
        if i + 1 < n {
            // J+|jm⟩ = √([j-m][j+m+1]) |j m+1⟩
            jplus.set(i + 1, i, (&qnum(j - m, ctx) * &qnum(j + m + 1, ctx)).sqrt());
        }
        if i > 0 {
            // J-|jm⟩ = √([j+m][j-m+1]) |j m-1⟩
            jminus.set(i - 1, i, (&qnum(j + m, ctx) * &qnum(j - m + 1, ctx)).sqrt());
        }
    }
    Generators { j0, jplus, jminus }
}

/// [x·J0 + y] for a diagonal J0.
pub fn qnum_of_diag(j0: &OperatorMatrix, x: &QReal, y: &QReal, ctx: &QContext) -> OperatorMatrix {
    j0.map_diagonal(|d| qnum_real(&(&(x * d) + y), ctx))
}

/// q^(a·J0) for a diagonal J0.
pub fn qpow_of_diag(j0: &OperatorMatrix, a: &QReal, ctx: &QContext) -> OperatorMatrix {
    j0.map_diagonal(|d| qpow_real(&(a * d), ctx))
}

/// C = J-J+ + [J0 + 1/2]^2
pub fn casimir(g: &Generators, ctx: &QContext) -> OperatorMatrix {
    let half = ctx.real("0.5").unwrap();
    let b = qnum_of_diag(&g.j0, &ctx.one(), &half, ctx);
    &(&g.jminus * &g.jplus) + &(&b * &b)
}

/// Largest deviation between J±^r computed by repeated products and the
/// closed-form coefficients √([j∓m]![j±m+r]!/([j±m]![j∓m-r]!)).
pub fn operator_power_check(j: HalfInt, r: u32, ctx: &QContext) -> QReal {
    let g = irrep_operators(j, ctx);
    let b = IrrepBasis::new(j);
    let n = b.dim();
    let f = |x: HalfInt| q_factorial(x.int_unchecked(), ctx).unwrap();
    let rr = r as i64;
    let mut lower = OperatorMatrix::zeros(n, n, ctx);
    let mut raise = OperatorMatrix::zeros(n, n, ctx);
    for i in 0..n {
        let m = b.m(i);
        if let Some(t) = b.index(m - rr) {
            let v = &(&f(j + m) * &f(j - m + rr)) / &(&f(j - m) * &f(j + m - rr));
            lower.set(t, i, v.sqrt());
        }
        if let Some(t) = b.index(m + rr) {
            let v = &(&f(j - m) * &f(j + m + rr)) / &(&f(j + m) * &f(j - m - rr));
            raise.set(t, i, v.sqrt());
        }
    }
    let dl = g.jminus.pow(r, ctx).max_abs_diff(&lower);
    let dr = g.jplus.pow(r, ctx).max_abs_diff(&raise);
    dl.max(dr)
}

/// J0(12) = J0⊗1 + 1⊗J0 and J±(12) = J±⊗q^J0 + q^-J0⊗J±.
pub fn coproduct_operators(j1: HalfInt, j2: HalfInt, ctx: &QContext) -> Generators {
    let a = irrep_operators(j1, ctx);
    let b = irrep_operators(j2, ctx);
    let ia = OperatorMatrix::identity(a.j0.rows(), ctx);
    let ib = OperatorMatrix::identity(b.j0.rows(), ctx);
    let one = ctx.one();
    let qa = qpow_of_diag(&a.j0, &-one.clone(), ctx);
    let qb = qpow_of_diag(&b.j0, &one, ctx);
    let j0 = &OperatorMatrix::kron(&a.j0, &ib) + &OperatorMatrix::kron(&ia, &b.j0);
    let jplus = &OperatorMatrix::kron(&a.jplus, &qb) + &OperatorMatrix::kron(&qa, &b.jplus);
    let jminus = &OperatorMatrix::kron(&a.jminus, &qb) + &OperatorMatrix::kron(&qa, &b.jminus);
    Generators { j0, jplus, jminus }
}

/// Σ_ℓ [r ℓ] (J±^ℓ(1) q^{-(r-ℓ)J0(1)}) ⊗ (J±^{r-ℓ}(2) q^{ℓJ0(2)}); `raising`
/// selects J+.
pub fn binomial_expansion(j1: HalfInt, j2: HalfInt, r: u32, raising: bool, ctx: &QContext) -> OperatorMatrix {
    let a = irrep_operators(j1, ctx);
    let b = irrep_operators(j2, ctx);
    let (ja, jb) = if raising { (&a.jplus, &b.jplus) } else { (&a.jminus, &b.jminus) };
    let n = a.j0.rows() * b.j0.rows();
    let mut acc = OperatorMatrix::zeros(n, n, ctx);
    for l in 0..=r {
        let left = &ja.pow(l, ctx) * &qpow_of_diag(&a.j0, &ctx.int(-((r - l) as i64)), ctx);
        let right = &jb.pow(r - l, ctx) * &qpow_of_diag(&b.j0, &ctx.int(l as i64), ctx);
        let term = OperatorMatrix::kron(&left, &right).scale(&q_binomial(r as i64, l as i64, ctx));
        acc = &acc + &term;
    }
    acc
}

/// Residuals of the operator-algebra identities on one representation.
#[derive(Clone, Debug)]
pub struct Lemma1Report {
    pub entries: Vec<(String, QReal)>,
}

impl Lemma1Report {
    pub fn max_residual(&self) -> QReal {
        self.entries
            .iter()
            .map(|(_, r)| r.clone())
            .fold(QReal::zero(64), |a, b| a.max(b))
    }
}

/// Checks, for r = 1..=max_r and both signs,
///   B^r A = A (B ± 1)^r,
///   [νB+η] A^r = A^r [νB+η±νr]  for (ν,η) in {(1,0),(2,1),(1/2,-1)},
///   [B, A^r] = ±r A^r,
///   [A±, A∓^r] = ±A∓^{r-1}[r][2B∓(r-1)]  with A± = J±,
///   [A±, A∓^r] = ∓A∓^{r-1}[r][2B∓(r-1)]  with A+ = J+, A- = -J-,
/// with B = J0, each as a relative matrix residual.
pub fn lemma1_suite(g: &Generators, max_r: u32, ctx: &QContext) -> Lemma1Report {
    let n = g.j0.rows();
    let id = OperatorMatrix::identity(n, ctx);
    let b = &g.j0;
    let mut entries = Vec::new();
    let pairs = [("1", "0"), ("2", "1"), ("0.5", "-1")];
    let neg_jminus = g.jminus.scale(&ctx.int(-1));
    for upper in [true, false] {
        let s: i64 = if upper { 1 } else { -1 };
        let tag = if upper { "+" } else { "-" };
        let a = if upper { &g.jplus } else { &g.jminus };
        let shifted = &(b * &id) + &id.scale(&ctx.int(s));
        for r in 1..=max_r {
            let ar = a.pow(r, ctx);
            let lhs = &b.pow(r, ctx) * a;
            let rhs = a * &shifted.pow(r, ctx);
            entries.push((format!("lem1 {} r={}", tag, r), lhs.rel_residual(&rhs)));

            for (nu, eta) in pairs {
                let nu_r = ctx.real(nu).unwrap();
                let eta_r = ctx.real(eta).unwrap();
                let lhs = &qnum_of_diag(b, &nu_r, &eta_r, ctx) * &ar;
                let shift = &eta_r + &(&nu_r * (s * r as i64));
                let rhs = &ar * &qnum_of_diag(b, &nu_r, &shift, ctx);
                entries.push((format!("lem2 {} r={} nu={} eta={}", tag, r, nu, eta), lhs.rel_residual(&rhs)));
            }

            let lhs = OperatorMatrix::commutator(b, &ar);
            let rhs = ar.scale(&ctx.int(s * r as i64));
            entries.push((format!("lem3 {} r={}", tag, r), lhs.rel_residual(&rhs)));

            // [A±, A∓^r] with A∓^{r-1}[r][2B ∓ (r-1)]
            let (ap, am) = if upper { (&g.jplus, &g.jminus) } else { (&g.jminus, &g.jplus) };
            let tail = |am: &OperatorMatrix| {
                let shift = ctx.int(-s * (r as i64 - 1));
                (&am.pow(r - 1, ctx) * &qnum_of_diag(b, &ctx.int(2), &shift, ctx))
                    .scale(&qnum(HalfInt::int(r as i64), ctx))
            };
            let lhs = OperatorMatrix::commutator(ap, &am.pow(r, ctx));
            let rhs = tail(am).scale(&ctx.int(s));
            entries.push((format!("lem4 {} r={}", tag, r), lhs.rel_residual(&rhs)));

            let (ap5, am5) = if upper { (&g.jplus, &neg_jminus) } else { (&neg_jminus, &g.jplus) };
            let lhs = OperatorMatrix::commutator(ap5, &am5.pow(r, ctx));
            let rhs = tail(am5).scale(&ctx.int(-s));
            entries.push((format!("lem5 {} r={}", tag, r), lhs.rel_residual(&rhs)));
        }
    }
    Lemma1Report { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: &str) -> QContext {
        QContext::new(q, 50).unwrap()
    }

    fn small(x: &QReal, c: &QContext) -> bool {
        *x < c.tolerance()
    }

    #[test]
    fn spin_half_and_one() {
        let c = ctx("0.5");
        let g = irrep_operators(HalfInt::HALF, &c);
        assert_eq!(*g.jplus.get(1, 0), 1);
        assert_eq!(*g.jminus.get(0, 1), 1);
        let g = irrep_operators(HalfInt::ONE, &c);
        let r = c.real("2.5").unwrap().sqrt();
        assert!(small(&(&r - g.jminus.get(0, 1)).abs(), &c));
        assert!(small(&(&r - g.jminus.get(1, 2)).abs(), &c));
        assert_eq!(g.jplus.transpose(), g.jminus);
    }

    #[test]
    fn commutators_and_casimir() {
        let c = ctx("0.7");
        for t in 0..=6 {
            let j = HalfInt::from_twice(t);
            let g = irrep_operators(j, &c);
            let two = c.int(2);
            let rhs = qnum_of_diag(&g.j0, &two, &c.zero(), &c);
            let lhs = OperatorMatrix::commutator(&g.jplus, &g.jminus);
            assert!(small(&lhs.rel_residual(&rhs), &c));
            let lhs = OperatorMatrix::commutator(&g.j0, &g.jplus);
            assert!(small(&lhs.rel_residual(&g.jplus), &c));
            let cas = casimir(&g, &c);
            let ev = qnum(j + HalfInt::HALF, &c).square();
            let expect = OperatorMatrix::identity(g.j0.rows(), &c).scale(&ev);
            assert!(small(&cas.rel_residual(&expect), &c));
            assert!(small(&OperatorMatrix::commutator(&cas, &g.jminus).max_abs(), &c));
        }
    }

    #[test]
    fn powers() {
        let c = ctx("0.5");
        for t in 0..=5 {
            for r in 0..=(t as u32 + 1) {
                assert!(small(&operator_power_check(HalfInt::from_twice(t), r, &c), &c));
            }
        }
    }

    #[test]
    fn coproduct_algebra_and_binomial() {
        let c = ctx("0.5");
        let (j1, j2) = (HalfInt::ONE, HalfInt::from_twice(3));
        let g = coproduct_operators(j1, j2, &c);
        let rhs = qnum_of_diag(&g.j0, &c.int(2), &c.zero(), &c);
        assert!(small(&OperatorMatrix::commutator(&g.jplus, &g.jminus).rel_residual(&rhs), &c));
        assert_eq!(g.jplus.transpose(), g.jminus);
        for r in 0..=3 {
            for raising in [true, false] {
                let power = if raising { g.jplus.pow(r, &c) } else { g.jminus.pow(r, &c) };
                let expansion = binomial_expansion(j1, j2, r, raising, &c);
                assert!(small(&power.rel_residual(&expansion), &c));
            }
        }
        // highest weight is annihilated
        let tb = TensorBasis::new(HalfInt::HALF, HalfInt::HALF);
        let g = coproduct_operators(HalfInt::HALF, HalfInt::HALF, &c);
        let v = tb.unit(HalfInt::HALF, HalfInt::HALF, &c);
        assert!(g.jplus.apply(&v).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn lemma_identities() {
        let c = ctx("0.7");
        let g = irrep_operators(HalfInt::from_twice(3), &c);
        let rep = lemma1_suite(&g, 4, &c);
        assert!(small(&rep.max_residual(), &c), "{:?}", rep.entries);
        let g = coproduct_operators(HalfInt::HALF, HalfInt::ONE, &c);
        assert!(small(&lemma1_suite(&g, 3, &c).max_residual(), &c));
    }
}
