//! Resolvable designs with two blocks per replicate and the matrices derived
//! from them.
//!
//! Treatments are 1-based (`1..=v`) everywhere in the public surface.

mod format;
mod matrices;
mod resolvable;
mod setting;

pub use format::{format_design, parse_design};
pub use matrices::{
    concurrences, dual_matrix, incidence, information_matrix, ConcurrenceMatrix, IncidenceSet,
};
pub use resolvable::{validate_design, Replicate, ResolvableDesign};
pub use setting::DesignSetting;
