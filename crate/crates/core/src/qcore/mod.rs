//! Half-integers, the precision context and the symmetric q-primitives.

mod context;
mod gamma;
mod halfint;
mod primitives;
mod real;

pub use context::{parse_decimal, QContext, DEFAULT_DIGITS, GUARD_BITS};
pub use gamma::{q_gamma_classical, q_gamma_classical_truncated, q_gamma_tilde, q_gamma_tilde_real};
pub use halfint::HalfInt;
pub use primitives::{
    guarded_sum, qnum, qnum_real, qpow, qpow_half, qpow_real, q_binomial, q_factorial,
    q_pochhammer, q_pochhammer_real, sign,
};
pub use real::QReal;
