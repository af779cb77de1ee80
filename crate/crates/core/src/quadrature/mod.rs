//! Numerical inner products on the half-line.

pub mod gauss;
pub mod gram;
pub mod integrate;

pub use gauss::GaussLegendre;
pub use gram::{
    adjoint_boundary_check, chain_weights, diagnose, expected_norm, gram_matrix, gram_of, inner, partner_weight,
    AdjointResidual, GramDiagnosis, GramReport, Weight, WeightKind,
};
pub use integrate::{integrate, Estimate, ExpIntegrand, QuadConfig};
