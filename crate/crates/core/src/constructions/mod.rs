//! Two-symbol balanced arrays and the Hadamard-based recipes.
//!
//! Rows are treatments and columns are replicates. Symbol `0` marks the
//! block of size `k1`, so every column holds exactly `k1` zeros and the
//! `(0,0)` count of a column pair is the block concurrence `phi`.

mod array;
mod bibd;
mod recipes;

pub use array::{
    array_to_design, design_to_array, parse_array, verify_ba, verify_gba, ArrayFile, BaCheck,
    BalancedArray, BinaryArray, GbaCheck, GroupedBalancedArray,
};
pub use bibd::bibd_complement;
pub use recipes::{
    construct_t25, construct_t26, construct_t27, construct_t28, construct_t29, construct_t30,
    Constructed,
};
