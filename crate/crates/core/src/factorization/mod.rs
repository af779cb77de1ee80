//! Differential operators, the two-step factorization chain, and exact
//! verification of the identities built on it.

pub mod chain;
pub mod operator;
pub mod verify;

pub use chain::{exceptional_operator, make_step1, make_step2, phi, phi12, FactorizationChain, FactorizationStep};
pub use operator::{FirstOrderOp, SecondOrderOp};
pub use verify::{
    constraint_check, eigen_residual, verify_chain, verify_eigen, verify_eigen_for, verify_intertwining, verify_suite,
    verify_t2_eigen, weight_certificate, Certificate, ConstraintReport, Residual, Status, SuiteOptions,
    DEFAULT_CONSTRAINT_TOL,
};
