//! Matrix model of su_q(2): irreps, the coproduct on tensor products,
//! projection operators and two brute-force CGC oracles.

mod matrix;
mod ops;
mod projector;

pub use matrix::OperatorMatrix;
pub use ops::{
    binomial_expansion, casimir, coproduct_operators, irrep_operators, lemma1_suite,
    operator_power_check, qnum_of_diag, qpow_of_diag, Generators, IrrepBasis, Lemma1Report,
    TensorBasis,
};
pub use projector::{
    oracle_cgc, oracle_cgc_lowering, projector_extremal, projector_general, OracleTable,
};
