//! Symmetric q-calculus, su_q(2) representation matrices, Clebsch-Gordan
//! coefficients of su_q(2) and q-Hahn polynomials, all at arbitrary precision.
//!
//! Every numeric routine takes a [`QContext`] carrying q and the working
//! precision. Spins and series parameters are exact [`HalfInt`]s.

pub mod cgc;
pub mod qcore;
pub mod qhahn;
pub mod qhyper;
pub mod repsu;
pub mod verify;

pub use cgc::CgcKey;
pub use qcore::{HalfInt, QContext, QReal};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("series ill-posed: denominator vanishes at index {index}")]
    IllPosed { index: usize },
    #[error("pattern mismatch: {0}")]
    Pattern(String),
    #[error("route inapplicable: {0}")]
    Inapplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
