//! Resolvable block designs with two blocks per replicate.
//!
//! The crate builds, classifies and certifies designs in the class
//! `D(v, r; k1, k2)`: `r` replicates, each splitting the `v` treatments into a
//! block of size `k1` and a block of size `k2 = v - k1`.
//!
//! Everything runs through the `r x r` optimality matrix `M_d`, whose entries
//! are adjusted block concurrences. Its eigenvalues determine the non-trivial
//! spectrum of the treatment information matrix, so optimality questions for
//! `r <= v - 1` reduce to questions about small symmetric matrices.
//!
//! Module map:
//!
//! - [`numerics`]: exact rationals, a Jacobi eigensolver, majorization.
//! - [`design`]: validated designs, incidence, concurrences, information matrices.
//! - [`optimality`]: `M_d`, discrepancies, criteria (A, E, F, psi), eigenvalue bounds.
//! - [`classify`]: ECD / AECD / UCD classes, group-affine structure, verdicts.
//! - [`hadamard`]: Sylvester and Paley matrices, standardization, submatrix search.
//! - [`constructions`]: balanced arrays and the Hadamard-based design recipes.
//! - [`search`]: exhaustive enumeration oracle and interchange heuristic.
//! - [`report`]: stable text / key-value rendering used by the CLI.

pub mod classify;
pub mod constructions;
pub mod design;
pub mod error;
pub mod fixtures;
pub mod hadamard;
pub mod numerics;
pub mod optimality;
pub mod report;
pub mod search;

pub use error::{Error, Result};
