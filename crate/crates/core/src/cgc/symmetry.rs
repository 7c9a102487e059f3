//! Symmetry relations stored as data.
//!
//! A relation states `C_q(key) = (-1)^phase · q^power · √Π([2a+1]/[2b+1]) · C_q'(key')`
//! with `q' = 1/q` when `q_flip` is set. Every label of `key'`, the phase and
//! the power are linear forms in the six labels of `key`.

use std::fmt;

use num_rational::Ratio;

use crate::qcore::{qnum, qpow, sign, HalfInt, QContext, QReal};

use super::key::CgcKey;

/// Σ c_i·label_i over (j1, m1, j2, m2, j, m).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Linear(pub [Ratio<i64>; 6]);

impl Linear {
    fn ints(c: [i64; 6]) -> Self {
        Linear(c.map(Ratio::from))
    }

    fn halves(c: [i64; 6]) -> Self {
        Linear(c.map(|v| Ratio::new(v, 2)))
    }

    /// Picks label `i` unchanged (negated when `neg`).
    fn label(i: usize, neg: bool) -> Self {
        let mut c = [0; 6];
        c[i] = if neg { -1 } else { 1 };
        Linear::ints(c)
    }

    pub fn zero() -> Self {
        Linear::ints([0; 6])
    }

    pub fn eval(&self, k: &CgcKey) -> Ratio<i64> {
        let labels = labels(k);
        self.0
            .iter()
            .zip(labels.iter())
            .fold(Ratio::from(0), |acc, (c, l)| acc + c * l)
    }

    /// This form applied to the image of a key map.
    fn after(&self, map: &[Linear; 6]) -> Linear {
        let mut out = [Ratio::from(0); 6];
        for (ci, mi) in self.0.iter().zip(map.iter()) {
            for (o, m) in out.iter_mut().zip(mi.0.iter()) {
                *o += ci * m;
            }
        }
        Linear(out)
    }

    fn plus(&self, other: &Linear, s: i64) -> Linear {
        let mut out = self.0;
        for (o, v) in out.iter_mut().zip(other.0.iter()) {
            *o += v * s;
        }
        Linear(out)
    }
}

fn labels(k: &CgcKey) -> [Ratio<i64>; 6] {
    [k.j1, k.m1, k.j2, k.m2, k.j, k.m].map(|h| h.to_ratio())
}

fn to_half(r: Ratio<i64>) -> Option<HalfInt> {
    let t = r * 2;
    t.is_integer().then(|| HalfInt::from_twice(t.to_integer()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryId {
    Swap12,
    NegateM,
    JJ1,
    JJ1Composed,
    JJ2,
    RoseJJ2,
    Regge,
    Composed,
}

impl SymmetryId {
    pub fn name(self) -> &'static str {
        match self {
            SymmetryId::Swap12 => "swap12",
            SymmetryId::NegateM => "negate_m",
            SymmetryId::JJ1 => "j<->j1",
            SymmetryId::JJ1Composed => "j<->j1_composed",
            SymmetryId::JJ2 => "j<->j2",
            SymmetryId::RoseJJ2 => "rose_jj2",
            SymmetryId::Regge => "regge",
            SymmetryId::Composed => "composed",
        }
    }
}

impl fmt::Display for SymmetryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryRelation {
    pub id: SymmetryId,
    pub map: [Linear; 6],
    pub q_flip: bool,
    pub phase: Linear,
    pub q_power: Linear,
    /// Pairs (a, b) contributing √([2a+1]/[2b+1]).
    pub norm: Vec<(Linear, Linear)>,
}

/// Label indices.
const J1: usize = 0;
const M1: usize = 1;
const J2: usize = 2;
const M2: usize = 3;
const J: usize = 4;
const M: usize = 5;

fn perm(spec: [(usize, bool); 6]) -> [Linear; 6] {
    spec.map(|(i, neg)| Linear::label(i, neg))
}

impl SymmetryRelation {
    pub fn swap12() -> Self {
        SymmetryRelation {
            id: SymmetryId::Swap12,
            map: perm([(J2, false), (M2, false), (J1, false), (M1, false), (J, false), (M, false)]),
            q_flip: true,
            phase: Linear::ints([1, 0, 1, 0, -1, 0]),
            q_power: Linear::zero(),
            norm: vec![],
        }
    }

    pub fn negate_m() -> Self {
        SymmetryRelation {
            id: SymmetryId::NegateM,
            map: perm([(J1, false), (M1, true), (J2, false), (M2, true), (J, false), (M, true)]),
            q_flip: true,
            phase: Linear::ints([1, 0, 1, 0, -1, 0]),
            q_power: Linear::zero(),
            norm: vec![],
        }
    }

    fn j1_family(id: SymmetryId, map: [Linear; 6]) -> Self {
        SymmetryRelation {
            id,
            map,
            q_flip: true,
            phase: Linear::ints([0, 0, 1, 1, 0, 0]),
            q_power: Linear::ints([0, 0, 0, -1, 0, 0]),
            norm: vec![(Linear::label(J, false), Linear::label(J1, false))],
        }
    }

    fn j2_family(id: SymmetryId, map: [Linear; 6]) -> Self {
        SymmetryRelation {
            id,
            map,
            q_flip: true,
            phase: Linear::ints([1, -1, 0, 0, 0, 0]),
            q_power: Linear::ints([0, 1, 0, 0, 0, 0]),
            norm: vec![(Linear::label(J, false), Linear::label(J2, false))],
        }
    }

    pub fn jj1() -> Self {
        Self::j1_family(
            SymmetryId::JJ1,
            perm([(J, false), (M, true), (J2, false), (M2, false), (J1, false), (M1, true)]),
        )
    }

    pub fn jj1_composed() -> Self {
        Self::j1_family(
            SymmetryId::JJ1Composed,
            perm([(J2, false), (M2, true), (J, false), (M, false), (J1, false), (M1, false)]),
        )
    }

    pub fn jj2() -> Self {
        Self::j2_family(
            SymmetryId::JJ2,
            perm([(J, false), (M, false), (J1, false), (M1, true), (J2, false), (M2, false)]),
        )
    }

    pub fn rose_jj2() -> Self {
        Self::j2_family(
            SymmetryId::RoseJJ2,
            perm([(J1, false), (M1, false), (J, false), (M, true), (J2, false), (M2, true)]),
        )
    }

    pub fn regge() -> Self {
        SymmetryRelation {
            id: SymmetryId::Regge,
            map: [
                Linear::halves([1, 1, 1, 1, 0, 0]),
                Linear::halves([1, 1, -1, -1, 0, 0]),
                Linear::halves([1, -1, 1, -1, 0, 0]),
                Linear::halves([1, -1, -1, 1, 0, 0]),
                Linear::label(J, false),
                Linear::ints([1, 0, -1, 0, 0, 0]),
            ],
            q_flip: false,
            phase: Linear::zero(),
            q_power: Linear::zero(),
            norm: vec![],
        }
    }

    /// The seven basic relations.
    pub fn all() -> Vec<SymmetryRelation> {
        vec![
            Self::swap12(),
            Self::negate_m(),
            Self::jj1(),
            Self::jj1_composed(),
            Self::jj2(),
            Self::rose_jj2(),
            Self::regge(),
        ]
    }

    pub fn by_name(name: &str) -> Option<SymmetryRelation> {
        Self::all().into_iter().find(|r| r.id.name() == name)
    }

    /// `self` followed by `next` applied to the image key.
    pub fn then(&self, next: &SymmetryRelation) -> SymmetryRelation {
        let s = if self.q_flip { -1 } else { 1 };
        let mut norm = self.norm.clone();
        norm.extend(next.norm.iter().map(|(a, b)| (a.after(&self.map), b.after(&self.map))));
        SymmetryRelation {
            id: SymmetryId::Composed,
            map: next.map.map(|l| l.after(&self.map)),
            q_flip: self.q_flip ^ next.q_flip,
            phase: self.phase.plus(&next.phase.after(&self.map), 1),
            q_power: self.q_power.plus(&next.q_power.after(&self.map), s),
            norm,
        }
    }
}

/// Evaluated descriptor of one relation at one key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryImage {
    pub key: CgcKey,
    pub q_flip: bool,
    pub phase: i64,
    pub q_power: Ratio<i64>,
    pub norm_ratio: Vec<(HalfInt, HalfInt)>,
}

impl SymmetryImage {
    /// (-1)^phase q^power √Π([2a+1]/[2b+1]) in base q of `ctx`.
    pub fn prefactor(&self, ctx: &QContext) -> QReal {
        let mut v = qpow(self.q_power, ctx) * sign(self.phase);
        for (a, b) in &self.norm_ratio {
            v = &v * &(&qnum(*a * 2 + 1, ctx) / &qnum(*b * 2 + 1, ctx)).sqrt();
        }
        v
    }

    /// Whether the descriptor is the identity.
    pub fn is_trivial(&self, original: &CgcKey) -> bool {
        self.key == *original
            && !self.q_flip
            && self.phase % 2 == 0
            && self.q_power == Ratio::from(0)
            && self.norm_ratio.iter().all(|(a, b)| a == b)
    }
}

pub fn apply_symmetry(k: &CgcKey, rel: &SymmetryRelation) -> Option<SymmetryImage> {
    let image: Option<Vec<HalfInt>> = rel.map.iter().map(|l| to_half(l.eval(k))).collect();
    let image = image?;
    let key = CgcKey::new(image[0], image[1], image[2], image[3], image[4], image[5]);
    let phase = rel.phase.eval(k);
    if !phase.is_integer() {
        return None;
    }
    let norm_ratio: Option<Vec<(HalfInt, HalfInt)>> = rel
        .norm
        .iter()
        .map(|(a, b)| Some((to_half(a.eval(k))?, to_half(b.eval(k))?)))
        .collect();
    let mut norm_ratio = norm_ratio?;
    norm_ratio.retain(|(a, b)| a != b);
    Some(SymmetryImage {
        key,
        q_flip: rel.q_flip,
        phase: phase.to_integer(),
        q_power: rel.q_power.eval(k),
        norm_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgc::cgc_racah;

    #[test]
    fn relations_hold() {
        let c = QContext::new("0.6", 40).unwrap();
        let r = c.reciprocal();
        for rel in SymmetryRelation::all() {
            for k in CgcKey::all_up_to(HalfInt::from_twice(3)) {
                let img = apply_symmetry(&k, &rel).unwrap();
                assert!(img.key.is_admissible(), "{} {}", rel.id, k);
                let other = if img.q_flip { &r } else { &c };
                let rhs = &img.prefactor(&c) * &cgc_racah(&img.key, other).unwrap();
                let lhs = cgc_racah(&k, &c).unwrap();
                assert!((&lhs - &rhs).abs() < c.tolerance(), "{} {}", rel.id, k);
            }
        }
    }

    #[test]
    fn involutions_are_trivial() {
        for rel in [SymmetryRelation::swap12(), SymmetryRelation::negate_m(), SymmetryRelation::regge()] {
            let twice = rel.then(&rel);
            for k in CgcKey::all_up_to(HalfInt::int(2)) {
                assert!(apply_symmetry(&k, &twice).unwrap().is_trivial(&k), "{} {}", rel.id, k);
            }
        }
    }

    #[test]
    fn composition_is_a_symmetry() {
        let c = QContext::new("0.7", 40).unwrap();
        let rels = SymmetryRelation::all();
        for a in &rels {
            for b in &rels {
                let comp = a.then(b);
                for k in CgcKey::all_for(HalfInt::ONE, HalfInt::from_twice(3)) {
                    let img = apply_symmetry(&k, &comp).unwrap();
                    let flipped = c.reciprocal();
                    let other = if img.q_flip { &flipped } else { &c };
                    let rhs = &img.prefactor(&c) * &cgc_racah(&img.key, other).unwrap();
                    assert!((&cgc_racah(&k, &c).unwrap() - &rhs).abs() < c.tolerance());
                }
            }
        }
    }

    #[test]
    fn regge_fixes_example() {
        let k = CgcKey::from_twice([2, 0, 2, 0, 4, 0]);
        assert!(apply_symmetry(&k, &SymmetryRelation::regge()).unwrap().is_trivial(&k));
    }
}
