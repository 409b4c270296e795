//! Majorization of real vectors.
//!
//! `y` majorizes `x` (written `y ≻ x`) when both have the same sum and every
//! prefix sum of `y`, sorted descending, is at least the matching prefix sum
//! of `x`. Comparisons treat differences within the tolerance as ties.

use crate::error::{Error, Result};

fn sorted_desc(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn scale(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .chain(y)
        .fold(1.0_f64, |m, v| m.max(v.abs()))
}

/// `true` iff `y ≻ x` within relative tolerance `tol`.
pub fn majorizes(y: &[f64], x: &[f64], tol: f64) -> Result<bool> {
    if y.len() != x.len() {
        return Err(Error::LengthMismatch(y.len(), x.len()));
    }
    let eps = tol * scale(x, y) * (x.len().max(1) as f64);
    let sy: f64 = y.iter().sum();
    let sx: f64 = x.iter().sum();
    if (sy - sx).abs() > eps {
        return Err(Error::SumMismatch(sy, sx));
    }
    let ys = sorted_desc(y);
    let xs = sorted_desc(x);
    let mut py = 0.0;
    let mut px = 0.0;
    for (a, b) in ys.iter().zip(&xs) {
        py += a;
        px += b;
        if py < px - eps {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Same multiset within tolerance.
pub fn multiset_eq(x: &[f64], y: &[f64], tol: f64) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let eps = tol * scale(x, y);
    sorted_desc(x)
        .iter()
        .zip(sorted_desc(y))
        .all(|(a, b)| (a - b).abs() <= eps)
}

/// Relation between two equal-sum vectors under majorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MajorizationOrder {
    /// Same multiset (within tolerance).
    Equal,
    /// The first argument majorizes the second, strictly.
    Majorizes,
    /// The second argument majorizes the first, strictly.
    MajorizedBy,
    Incomparable,
}

pub fn compare_majorization(a: &[f64], b: &[f64], tol: f64) -> Result<MajorizationOrder> {
    if multiset_eq(a, b, tol) {
        return Ok(MajorizationOrder::Equal);
    }
    let ab = majorizes(a, b, tol)?;
    let ba = majorizes(b, a, tol)?;
    Ok(match (ab, ba) {
        // Both directions within tolerance but not elementwise equal can only
        // happen through accumulated rounding; treat as a tie.
        (true, true) => MajorizationOrder::Equal,
        (true, false) => MajorizationOrder::Majorizes,
        (false, true) => MajorizationOrder::MajorizedBy,
        (false, false) => MajorizationOrder::Incomparable,
    })
}

/// Given `y ≻ x`, checks that `{a - y_i/b} ≻ {a - x_i/b}`.
///
/// Returns `false` when the inputs are not comparable at all (length or sum
/// mismatch) or when `b == 0`.
pub fn affine_transform_majorization_check(x: &[f64], y: &[f64], a: f64, b: f64) -> bool {
    if b == 0.0 {
        return false;
    }
    let tx: Vec<f64> = x.iter().map(|v| a - v / b).collect();
    let ty: Vec<f64> = y.iter().map(|v| a - v / b).collect();
    majorizes(&ty, &tx, super::DEFAULT_TOL).unwrap_or(false)
}
