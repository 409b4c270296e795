//! Concurrence classes, group-affine structure and optimality verdicts.

mod class;
mod group;
mod verdict;

pub use class::{
    ecd_eigenvalues,
    classify, classify_full, classify_phi, exact_e1, exact_m_eigenvalues, Classification,
    DesignClass,
};
pub use group::{
    detect_group_affine, group_pattern, h_matrix, h_spectrum, h_spectrum_direct,
    h_spectrum_reduced, h_spectrum_secular, pap_nonpositive, GroupAffineStructure,
};
pub use verdict::{
    all_verdicts, e_schur_verdict, e_verdict, f_verdict, headline, schur_verdict, type1_verdict,
    Criterion, OptimalityVerdict, Status, DOMINATION_CAVEAT,
};
