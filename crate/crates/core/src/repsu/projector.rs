use std::collections::HashMap;

use crate::cgc::CgcKey;
use crate::qcore::{q_factorial, sign, HalfInt, QContext, QReal};

use super::matrix::OperatorMatrix;
use super::ops::{coproduct_operators, Generators, TensorBasis};

const ORACLE_EXTRA_BITS: u32 = 64;

fn fact(n: i64, ctx: &QContext) -> QReal {
    q_factorial(n, ctx).expect("nonnegative")
}

/// c_r = (-1)^r [2j+1]! / ([r]! [2j+r+1]!)
fn projector_coefficient(j: HalfInt, r: i64, ctx: &QContext) -> QReal {
    let tj = j.twice();
    let v = &fact(tj + 1, ctx) / &(&fact(r, ctx) * &fact(tj + r + 1, ctx));
    v * sign(r)
}

/// √([j+m]! / ([2j]! [j-m]!))
fn lowering_norm(j: HalfInt, m: HalfInt, ctx: &QContext) -> QReal {
    let v = &fact((j + m).int_unchecked(), ctx)
        / &(&fact(j.twice(), ctx) * &fact((j - m).int_unchecked(), ctx));
    v.sqrt()
}

fn highest_power(basis: &TensorBasis) -> u32 {
    (basis.first.j + basis.second.j).twice() as u32
}

/// P^j_jj = Σ_r c_r J-^r J+^r on the tensor space.
pub fn projector_extremal(j: HalfInt, basis: &TensorBasis, ctx: &QContext) -> OperatorMatrix {
    let g = coproduct_operators(basis.first.j, basis.second.j, ctx);
    extremal_from(&g, j, highest_power(basis), ctx)
}

fn extremal_from(g: &Generators, j: HalfInt, rmax: u32, ctx: &QContext) -> OperatorMatrix {
    let n = g.j0.rows();
    let mut acc = OperatorMatrix::zeros(n, n, ctx);
    let mut up = OperatorMatrix::identity(n, ctx);
    let mut down = OperatorMatrix::identity(n, ctx);
    for r in 0..=rmax {
        if r > 0 {
            up = &g.jplus * &up;
            down = &down * &g.jminus;
        }
        let term = (&down * &up).scale(&projector_coefficient(j, r as i64, ctx));
        acc = &acc + &term;
    }
    acc
}

/// P^j_mm' = N(m) J-^{j-m} P^j_jj J+^{j-m'} N(m'), N(x) = √([j+x]!/([2j]![j-x]!)).
pub fn projector_general(
    j: HalfInt,
    m: HalfInt,
    mprime: HalfInt,
    basis: &TensorBasis,
    ctx: &QContext,
) -> OperatorMatrix {
    assert!(m.abs() <= j && mprime.abs() <= j, "projections must satisfy |m| <= j");
    let g = coproduct_operators(basis.first.j, basis.second.j, ctx);
    let p = extremal_from(&g, j, highest_power(basis), ctx);
    let left = g.jminus.pow((j - m).int_unchecked() as u32, ctx);
    let right = g.jplus.pow((j - mprime).int_unchecked() as u32, ctx);
    let scale = &lowering_norm(j, m, ctx) * &lowering_norm(j, mprime, ctx);
    (&(&left * &p) * &right).scale(&scale)
}

fn dot(a: &[QReal], b: &[QReal], ctx: &QContext) -> QReal {
    let mut acc = ctx.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

fn is_zero_vec(v: &[QReal]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Coupled states |j1 j2 : j m⟩ expanded in the tensor basis.
#[derive(Clone, Debug)]
pub struct OracleTable {
    basis: TensorBasis,
    states: HashMap<(i64, i64), Vec<QReal>>,
    bits: u32,
}

impl OracleTable {
    /// States from the projection operator applied to |j1 j1⟩|j2 j-j1⟩.
    pub fn projector(j1: HalfInt, j2: HalfInt, ctx: &QContext) -> Self {
        let mut j = (j1 - j2).abs();
        let mut t = OracleTable::empty(j1, j2, ctx);
        while j <= j1 + j2 {
            t.add_projected(j, ctx);
            j = j + 1;
        }
        t
    }

    fn empty(j1: HalfInt, j2: HalfInt, ctx: &QContext) -> Self {
        OracleTable { basis: TensorBasis::new(j1, j2), states: HashMap::new(), bits: ctx.bits() }
    }

    fn add_projected(&mut self, j: HalfInt, ctx: &QContext) {
        let w = ctx.widened(ORACLE_EXTRA_BITS);
        let g = coproduct_operators(self.basis.first.j, self.basis.second.j, &w);
        let j1 = self.basis.first.j;
        let v = self.basis.unit(j1, j - j1, &w);
        // P^j_jj v through vector products
        let mut proj = vec![w.zero(); v.len()];
        let mut up = v.clone();
        let mut r = 0i64;
        while !is_zero_vec(&up) {
            let mut down = up.clone();
            for _ in 0..r {
                down = g.jminus.apply(&down);
            }
            let c = projector_coefficient(j, r, &w);
            for (p, d) in proj.iter_mut().zip(&down) {
                *p += &c * d;
            }
            up = g.jplus.apply(&up);
            r += 1;
        }
        let norm = dot(&v, &proj, &w).sqrt();
        let mut state: Vec<QReal> = proj.iter().map(|x| x / &norm).collect();
        let mut m = j;
        loop {
            let scale = lowering_norm(j, m, &w);
            let s: Vec<QReal> = state.iter().map(|x| (x * &scale).with_prec(self.bits)).collect();
            self.states.insert((j.twice(), m.twice()), s);
            if m == -j {
                break;
            }
            state = g.jminus.apply(&state);
            m = m - 1;
        }
    }

    /// States from Gram-Schmidt on each highest weight followed by lowering
    /// with explicit normalization.
    pub fn lowering(j1: HalfInt, j2: HalfInt, ctx: &QContext) -> Self {
        let w = ctx.widened(ORACLE_EXTRA_BITS);
        let mut t = OracleTable::empty(j1, j2, ctx);
        let g = coproduct_operators(j1, j2, &w);
        let mut wide: HashMap<(i64, i64), Vec<QReal>> = HashMap::new();
        let mut j = j1 + j2;
        while j >= (j1 - j2).abs() {
            let anchor = t.basis.unit(j1, j - j1, &w);
            let mut cand = anchor.clone();
            let mut jj = j + 1;
            while jj <= j1 + j2 {
                let other = &wide[&(jj.twice(), j.twice())];
                let ov = dot(other, &cand, &w);
                for (c, o) in cand.iter_mut().zip(other) {
                    *c -= &ov * o;
                }
                jj = jj + 1;
            }
            let mut norm = dot(&cand, &cand, &w).sqrt();
            if dot(&anchor, &cand, &w) < 0i64 {
                norm = -norm;
            }
            let mut state: Vec<QReal> = cand.iter().map(|x| x / &norm).collect();
            let mut m = j;
            loop {
                wide.insert((j.twice(), m.twice()), state.clone());
                if m == -j {
                    break;
                }
                let lowered = g.jminus.apply(&state);
                let n = dot(&lowered, &lowered, &w).sqrt();
                state = lowered.iter().map(|x| x / &n).collect();
                m = m - 1;
            }
            j = j - 1;
        }
        t.states = wide
            .into_iter()
            .map(|(k, v)| (k, v.into_iter().map(|x| x.with_prec(ctx.bits())).collect()))
            .collect();
        t
    }

    /// ⟨j1 m1, j2 m2 | j m⟩, exactly 0 for keys failing the selection rules.
    pub fn get(&self, key: &CgcKey, ctx: &QContext) -> QReal {
        if !key.is_admissible() || key.j1 != self.basis.first.j || key.j2 != self.basis.second.j {
            return ctx.zero();
        }
        let state = &self.states[&(key.j.twice(), key.m.twice())];
        let i = self.basis.index(key.m1, key.m2).expect("admissible label");
        state[i].with_prec(ctx.bits())
    }

    /// The coupled state |j m⟩ as a vector over the tensor basis.
    pub fn state(&self, j: HalfInt, m: HalfInt) -> Option<&[QReal]> {
        self.states.get(&(j.twice(), m.twice())).map(|v| v.as_slice())
    }

    pub fn basis(&self) -> &TensorBasis {
        &self.basis
    }
}

/// CGC from the projection operator:
/// ⟨j1m1,j2m2| P^j_mj |j1 j1⟩|j2 j-j1⟩ / ‖P^j_mj |j1 j1⟩|j2 j-j1⟩‖.
pub fn oracle_cgc(key: &CgcKey, ctx: &QContext) -> QReal {
    if !key.is_admissible() {
        return ctx.zero();
    }
    let mut t = OracleTable::empty(key.j1, key.j2, ctx);
    t.add_projected(key.j, ctx);
    t.get(key, ctx)
}

/// CGC from the Gram-Schmidt and lowering construction.
pub fn oracle_cgc_lowering(key: &CgcKey, ctx: &QContext) -> QReal {
    if !key.is_admissible() {
        return ctx.zero();
    }
    OracleTable::lowering(key.j1, key.j2, ctx).get(key, ctx)
}
