use std::fmt;

use num_traits::{One, Zero};

use super::matrix::{m_spectrum, optimality_matrix, primal_from_m};
use super::theta::theta_params;
use crate::design::{information_matrix, DesignSetting, ResolvableDesign};
use crate::error::{Error, Result};
use crate::numerics::{fmt_f64, fmt_rational, rat, rat_to_f64, ratio, Rational, Spectrum};

/// A criterion value: exact when a closed form applies, a float otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum CriterionValue {
    Exact(Rational),
    Approx(f64),
}

impl CriterionValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            CriterionValue::Exact(q) => rat_to_f64(q),
            CriterionValue::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CriterionValue::Exact(_))
    }
}

impl fmt::Display for CriterionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriterionValue::Exact(q) => f.write_str(&fmt_rational(q)),
            CriterionValue::Approx(x) => f.write_str(&fmt_f64(*x)),
        }
    }
}

const CONNECTED_TOL: f64 = 1e-9;

fn z_of(setting: &DesignSetting, e: f64) -> f64 {
    setting.r() as f64 - setting.v() as f64 * e / setting.p() as f64
}

fn z_exact(setting: &DesignSetting, e: &Rational) -> Rational {
    rat(setting.r() as i64) - ratio(setting.v() as i64, setting.p() as i64) * e
}

fn check_connected(setting: &DesignSetting, m: &Spectrum) -> Result<()> {
    let z_min = z_of(setting, m.max());
    if z_min <= CONNECTED_TOL * setting.r() as f64 {
        return Err(Error::Disconnected(z_min));
    }
    Ok(())
}

/// Index of the smallest `M_d` eigenvalue that maps to a nonzero information
/// eigenvalue (`r - 1`, or `v - 2` when `r >= v`).
fn last_kept(setting: &DesignSetting) -> usize {
    setting.r().min(setting.v() - 1) - 1
}

/// E-criterion in its `M_d` form: the largest eigenvalue `e_1`, to be minimized.
pub fn criterion_e(d: &ResolvableDesign) -> Result<CriterionValue> {
    let s = d.setting();
    let m = m_spectrum(d)?;
    check_connected(&s, &m)?;
    if let Some(e1) = crate::classify::exact_e1(d) {
        return Ok(CriterionValue::Exact(e1));
    }
    Ok(CriterionValue::Approx(m.max()))
}

/// `1 / z_min`, the classical E-criterion value.
pub fn e_reciprocal(d: &ResolvableDesign) -> Result<f64> {
    let s = d.setting();
    let m = m_spectrum(d)?;
    check_connected(&s, &m)?;
    Ok(1.0 / z_of(&s, m.max()))
}

/// F-criterion: the largest information eigenvalue not fixed at `r`.
pub fn criterion_f(d: &ResolvableDesign) -> Result<CriterionValue> {
    let s = d.setting();
    let m = m_spectrum(d)?;
    check_connected(&s, &m)?;
    if let Some(exact) = crate::classify::exact_m_eigenvalues(d) {
        return Ok(CriterionValue::Exact(z_exact(&s, &exact[last_kept(&s)])));
    }
    Ok(CriterionValue::Approx(z_of(&s, m.values()[last_kept(&s)])))
}

/// `sum f(z_i)` over the `v - 1` nonzero information eigenvalues.
///
/// The structurally fixed copies of `r` are counted without eigensolving.
/// The caller vouches that `f` is a sensible criterion function.
pub fn criterion_psi(d: &ResolvableDesign, f: impl Fn(f64) -> f64) -> Result<f64> {
    let s = d.setting();
    let m = m_spectrum(d)?;
    check_connected(&s, &m)?;
    let fixed = (s.v() - 1).saturating_sub(s.r());
    let mut total = fixed as f64 * f(s.r() as f64);
    for e in &m.values()[..=last_kept(&s)] {
        let z = z_of(&s, *e);
        if z <= 0.0 {
            return Err(Error::NonPositiveEigenvalue(z));
        }
        total += f(z);
    }
    Ok(total)
}

/// A-criterion `sum 1/z_i`.
pub fn criterion_a(d: &ResolvableDesign) -> Result<CriterionValue> {
    let s = d.setting();
    let approx = criterion_psi(d, |z| 1.0 / z)?;
    if let Some(exact) = crate::classify::exact_m_eigenvalues(d) {
        let fixed = (s.v() - 1).saturating_sub(s.r()) as i64;
        let mut total = ratio(fixed, s.r() as i64);
        for e in &exact[..=last_kept(&s)] {
            let z = z_exact(&s, e);
            if z <= Rational::zero() {
                return Err(Error::NonPositiveEigenvalue(rat_to_f64(&z)));
            }
            total += Rational::one() / z;
        }
        debug_assert!((rat_to_f64(&total) - approx).abs() <= 1e-8 * approx.max(1.0));
        return Ok(CriterionValue::Exact(total));
    }
    Ok(CriterionValue::Approx(approx))
}

/// `tr C_d^2` from the discrepancies:
/// `(v - 3) r^2 + r + (2 v^2 / p^2) sum_{h<h'} (delta - gamma)^2`.
///
/// Checked against the exact sum of squared entries of `C_d`.
pub fn trace_sq(d: &ResolvableDesign) -> Rational {
    let closed = trace_sq_closed(d);
    assert_eq!(closed, trace_sq_direct(d), "trace formula disagrees with C_d");
    closed
}

fn trace_sq_closed(d: &ResolvableDesign) -> Rational {
    let s = d.setting();
    let params = theta_params(&s);
    let (_, delta) = optimality_matrix(d);
    let (v, r, p) = (s.v() as i64, s.r() as i64, s.p() as i64);
    let dev: Rational = delta
        .pairs()
        .map(|(_, _, x)| {
            let t = rat(x) - &params.gamma;
            &t * &t
        })
        .sum();
    rat((v - 3) * r * r + r) + ratio(2 * v * v, p * p) * dev
}

/// `tr C_d^2` as the sum of squared entries of the exact `C_d`.
pub fn trace_sq_direct(d: &ResolvableDesign) -> Rational {
    information_matrix(d).sum_of_squares()
}

/// `sum z_i^2` over the information spectrum obtained through `M_d`.
pub fn trace_sq_spectral(d: &ResolvableDesign) -> Result<f64> {
    let z = primal_from_m(&d.setting(), &m_spectrum(d)?);
    Ok(z.values().iter().map(|x| x * x).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ecd4() -> ResolvableDesign {
        let s = DesignSetting::new(9, 4, 6, 3).unwrap();
        ResolvableDesign::from_block1(
            s,
            vec![
                vec![1, 2, 3, 4, 5, 6],
                vec![1, 2, 3, 4, 7, 8],
                vec![1, 2, 5, 6, 7, 8],
                vec![3, 4, 5, 6, 7, 8],
            ],
        )
        .unwrap()
    }

    #[test]
    fn ecd4_values() {
        let d = ecd4();
        assert_eq!(criterion_e(&d).unwrap(), CriterionValue::Exact(rat(2)));
        assert_eq!(criterion_f(&d).unwrap(), CriterionValue::Exact(rat(3)));
        assert_eq!(criterion_a(&d).unwrap(), CriterionValue::Exact(ratio(7, 3)));
        assert!((criterion_psi(&d, |_| 1.0).unwrap() - 8.0).abs() < 1e-12);
        assert_eq!(trace_sq(&d), rat(100));
        assert!((trace_sq_spectral(&d).unwrap() - 100.0).abs() < 1e-8);
        assert!((e_reciprocal(&d).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn psi_square_matches_trace() {
        let d = ecd4();
        let sq = criterion_psi(&d, |z| z * z).unwrap();
        assert!((sq - rat_to_f64(&trace_sq(&d))).abs() < 1e-8);
    }

    #[test]
    fn identical_replicates_are_disconnected() {
        let s = DesignSetting::new(5, 3, 3, 2).unwrap();
        let d = ResolvableDesign::from_block1(s, vec![vec![1, 2, 3]; 3]).unwrap();
        assert!(matches!(criterion_e(&d), Err(Error::Disconnected(_))));
        assert!(matches!(criterion_a(&d), Err(Error::Disconnected(_))));
    }

    #[test]
    fn display() {
        assert_eq!(CriterionValue::Exact(ratio(26, 9)).to_string(), "26/9");
        assert_eq!(CriterionValue::Approx(2.5).to_string(), "2.5");
    }
}
