//! Exact scalars: rationals, simple number fields `Q[t]/m(t)`, univariate
//! polynomials (used both for moduli and for the central parameter `L`), and
//! dense matrices over any of these rings.

mod field;
mod matrix;
mod poly;
mod qpoly;
mod scalar;

pub use field::{FieldSpec, NumberField};
pub use matrix::{mat_inv, nullspace, rank, Matrix};
pub use poly::{CentralPoly, UniPoly};
pub use scalar::{Rational, Ring, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("modulus must be monic of degree >= 1, got {0}")]
    NotMonic(String),
    #[error("reducible: {0}")]
    Reducible(String),
    #[error("irreducibility of {0} could not be verified by the bounded factor search; assert it explicitly")]
    Undecided(String),
    #[error("matrix is singular: no pivot in column {stage}")]
    Singular { stage: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}
