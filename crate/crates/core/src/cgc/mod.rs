//! Clebsch-Gordan coefficients of su_q(2).

use std::fmt;

use crate::qcore::{QContext, QReal};
use crate::Result;

mod forms;
mod key;
mod recurrence;
mod special;
mod symmetry;

pub use forms::{
    cgc_3f2, cgc_3f2_long_equiv, cgc_3f2_rw1, cgc_3f2_rw2, cgc_racah, cgc_racah_binomial,
    cgc_racah_exact, cgc_sum, cgc_sum_alt,
};
pub use key::{selection_rules, CgcKey};
pub use recurrence::{recurrence_j_residual, recurrence_m_residual};
pub use special::{dixon_classical, dixon_classical_exact, special_value, SpecialKind};
pub use symmetry::{apply_symmetry, Linear, SymmetryId, SymmetryImage, SymmetryRelation};

/// Which path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    Racah,
    RacahBinomial,
    Sum,
    SumAlt,
    Hyper3F2,
    Hyper3F2Rw1,
    Hyper3F2Rw2,
    Hyper3F2Long,
    /// Racah sum in exact rationals at q = 1.
    ClassicalRacah,
    Special(SpecialKind),
    /// Exact zero from a failed selection rule.
    Selection(&'static str),
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Racah => f.write_str("racah"),
            Formula::RacahBinomial => f.write_str("racah-binomial"),
            Formula::Sum => f.write_str("sum"),
            Formula::SumAlt => f.write_str("sum-alt"),
            Formula::Hyper3F2 => f.write_str("3f2"),
            Formula::Hyper3F2Rw1 => f.write_str("3f2-rw1"),
            Formula::Hyper3F2Rw2 => f.write_str("3f2-rw2"),
            Formula::Hyper3F2Long => f.write_str("3f2-long"),
            Formula::ClassicalRacah => f.write_str("racah-exact"),
            Formula::Special(k) => write!(f, "special[{}]", k),
            Formula::Selection(why) => f.write_str(why),
        }
    }
}

pub type FormFn = fn(&CgcKey, &QContext) -> Result<QReal>;

/// Every general closed form with its tag.
pub const CLOSED_FORMS: [(Formula, FormFn); 8] = [
    (Formula::Racah, cgc_racah),
    (Formula::RacahBinomial, cgc_racah_binomial),
    (Formula::Sum, cgc_sum),
    (Formula::SumAlt, cgc_sum_alt),
    (Formula::Hyper3F2, cgc_3f2),
    (Formula::Hyper3F2Rw1, cgc_3f2_rw1),
    (Formula::Hyper3F2Rw2, cgc_3f2_rw2),
    (Formula::Hyper3F2Long, cgc_3f2_long_equiv),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Default,
    Crosscheck,
}

#[derive(Debug, Clone)]
pub struct Crosscheck {
    pub values: Vec<(Formula, QReal)>,
    /// max - min over `values`
    pub max_deviation: QReal,
}

#[derive(Debug, Clone)]
pub struct CgcValue {
    pub value: QReal,
    pub formula: Formula,
    pub digits: u32,
    pub crosscheck: Option<Crosscheck>,
}

/// Default path is the Racah sum; crosscheck mode also evaluates every other form.
pub fn compute(k: &CgcKey, ctx: &QContext, mode: Mode) -> Result<CgcValue> {
    if let Some(why) = k.selection_failure() {
        return Ok(CgcValue {
            value: ctx.zero(),
            formula: Formula::Selection(why),
            digits: ctx.digits(),
            crosscheck: None,
        });
    }
    let formula = if ctx.is_classical() { Formula::ClassicalRacah } else { Formula::Racah };
    let value = cgc_racah(k, ctx)?;
    let crosscheck = match mode {
        Mode::Default => None,
        Mode::Crosscheck => {
            let mut values = vec![(formula, value.clone())];
            for (tag, f) in CLOSED_FORMS.iter().skip(1) {
                values.push((*tag, f(k, ctx)?));
            }
            if let Some((kind, v)) = special_value(k, ctx) {
                values.push((Formula::Special(kind), v));
            }
            let mut lo = value.clone();
            let mut hi = value.clone();
            for (_, v) in &values {
                if *v < lo {
                    lo = v.clone();
                }
                if *v > hi {
                    hi = v.clone();
                }
            }
            Some(Crosscheck { values, max_deviation: &hi - &lo })
        }
    };
    Ok(CgcValue { value, formula, digits: ctx.digits(), crosscheck })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::HalfInt;

    #[test]
    fn crosscheck_full_table() {
        let c = QContext::new("0.5", 50).unwrap();
        for k in CgcKey::all_for(HalfInt::int(2), HalfInt::int(2)) {
            let v = compute(&k, &c, Mode::Crosscheck).unwrap();
            let x = v.crosscheck.unwrap();
            assert!(x.values.len() >= 8);
            assert!(x.max_deviation < c.tolerance(), "{}", k);
        }
    }

    #[test]
    fn selection_failure_tag() {
        let c = QContext::new("0.5", 30).unwrap();
        let k = CgcKey::from_twice([1, 1, 1, 1, 2, 0]);
        let v = compute(&k, &c, Mode::Default).unwrap();
        assert!(v.value.is_zero());
        assert_eq!(v.formula.to_string(), "selection: m ≠ m1+m2");
    }

    #[test]
    fn classical_route() {
        let c = QContext::new("1", 30).unwrap();
        let k = CgcKey::from_twice([2, 0, 2, 0, 2, 0]);
        let v = compute(&k, &c, Mode::Default).unwrap();
        assert_eq!(v.formula, Formula::ClassicalRacah);
        assert!(v.value.is_zero());
    }
}
