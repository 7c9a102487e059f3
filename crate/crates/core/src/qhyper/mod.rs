//! Terminating symmetric q-hypergeometric series, basic series, the two
//! ₃F₂ transformations and the closed summation formulas.

mod series;
mod sums;
mod transform;

pub use series::{
    basic_to_symmetric, eval_basic, eval_regularized, eval_terminating, BasicSeriesSpec,
    HyperSeriesSpec, Sign,
};
pub use sums::{
    closed_rsum_negative, closed_rsum_positive, closed_sum_dixon, closed_sum_negative,
    closed_sum_positive, closed_sum_vandermonde, dixon_spec, negative_spec, rsum_negative,
    rsum_positive, vandermonde_spec,
};
pub use transform::{transform_141, transform_142, transform_admissible, Prefactor};
