//! The optimality matrix `M_d`, its eigenvalues, and the criteria built on them.
//!
//! For `r <= v - 1` the nonzero information eigenvalues are `v - r - 1`
//! copies of `r` plus `r - v e_h / p` for the eigenvalues `e_h` of `M_d`, so
//! every criterion here is computed from an `r x r` eigenproblem.

mod bounds;
mod compare;
mod criteria;
mod matrix;
mod theta;

pub use bounds::{eigen_bounds, eigen_bounds_from, EigenBounds};
pub(crate) use bounds::projected_spectrum;
pub use compare::{schur_compare, schur_compare_spectra, SchurOrder};
pub use criteria::{
    criterion_a, criterion_e, criterion_f, criterion_psi, e_reciprocal, trace_sq, trace_sq_direct,
    trace_sq_spectral, CriterionValue,
};
pub use matrix::{
    m_spectrum, optimality_matrix, optimality_matrix_from_phi, primal_from_m, primal_spectrum,
    DiscrepancyMatrix, OptimalityMatrix,
};
pub use theta::{gamma_closed_form, theta_params, ThetaParams};
