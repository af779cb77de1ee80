use thiserror::Error;

use crate::exactnum::Poly;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division is not exact: remainder {remainder}")]
    Division { remainder: Poly },

    #[error("root finder did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),

    #[error("normalization constant has a pole at n = {n}")]
    PoleInC { n: usize },

    #[error("result is not a polynomial (residual shift {shift})")]
    NotPolynomial { shift: String },

    #[error("root {index} of eta12 is not simple (|eta12'| = {derivative:e})")]
    MultipleRoot { index: usize, derivative: f64 },

    #[error("identity `{identity}` failed")]
    IdentityFailure { identity: String, residual: Option<Poly> },

    #[error("tail bound {bound:e} exceeds tolerance {tol:e} at radius {radius}")]
    TailBoundExceeded { bound: f64, tol: f64, radius: f64 },

    #[error("weight is not regular: {0}")]
    WeightNotRegular(String),

    #[error("potential has a pole on the positive axis")]
    PoleOnAxis,

    #[error("parse error: {0}")]
    Parse(String),
}
