//! Two-step exceptional Laguerre polynomials in exact rational arithmetic.
//!
//! The polynomials are built from Wronskians of classical Laguerre
//! polynomials, and every structural identity around them is checked
//! exactly: the eigenvalue equation, the two-step factorization chain
//! from the classical Laguerre operator, the intertwining relations, and
//! weight regularity via Sturm chains. Orthogonality, the root constraints
//! and the isospectral Schrödinger potentials are checked numerically.

pub mod error;
pub mod exactnum;
pub mod factorization;
pub mod laguerre;
pub mod quadrature;
pub mod schrodinger;
pub mod xcore;

pub use error::{Error, Result};
pub use exactnum::{Poly, Rat, RatFunc};
