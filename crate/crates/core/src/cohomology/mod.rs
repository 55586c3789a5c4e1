//! Scalar 2-cocycles: explicit cocycles and their lifts, coboundaries,
//! axiom residuals, normalization, and linear (non)triviality probes.

mod explicit;
mod form;
mod lift;
mod linsolve;
mod normalize;
mod probe;
mod residuals;

pub use explicit::{phi0_falling, phi_gamma_value};
pub use form::{coboundary_eval, BilinearForm, CocycleHandle, CocycleKind, FunctionTable};
pub use lift::{lift_cocycle, p_functional, split_monomial, PTable};
pub use linsolve::{rank, solve_exact_linear, LinearSolution, SparseRow};
pub use normalize::{
    normalization_probes, normalized_check, NormalizationSession, NormalizedForm, Violation,
    DEFAULT_DEPTH_LIMIT,
};
pub use probe::{triviality_probe, LinearProbe, ProbeRow, ProbeVerdict, Truncation, DEFAULT_UNKNOWN_CAP};
pub use residuals::{cocycle_residuals, cyclic_residual};

#[cfg(test)]
mod tests;
