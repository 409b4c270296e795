//! Exact rationals, dense matrices, a cyclic Jacobi eigensolver and
//! majorization utilities.

mod eigen;
mod majorization;
mod matrix;
mod rational;

pub use eigen::{symmetric_eigen, symmetric_eigen_with_vectors, Spectrum, DEFAULT_TOL};
pub use majorization::{
    affine_transform_majorization_check, compare_majorization, majorizes, multiset_eq,
    MajorizationOrder,
};
pub use matrix::{Matrix, RationalMatrix};
pub use rational::{fmt_f64, fmt_rational, rat, rat_floor, rat_to_f64, ratio, Rational};
