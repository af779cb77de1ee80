//! Exact scalars, polynomials, rational functions and the root machinery
//! built on them.

pub mod poly;
pub mod random;
pub mod rat;
pub mod ratfunc;
pub mod roots;
pub mod shifted;
pub mod sturm;

pub use poly::Poly;
pub use random::{random_poly, seeded_rng, DEFAULT_SEED};
pub use rat::{format_rat, parse_rat, rat, rat_int, Rat};
pub use ratfunc::RatFunc;
pub use roots::{complex_roots, DEFAULT_ROOT_TOL};
pub use shifted::{wronskian, wronskian_poly, QuasiRational, ShiftedPoly};
pub use sturm::sturm_nonneg_root_count;
