use super::matrix::m_spectrum;
use crate::design::{DesignSetting, ResolvableDesign};
use crate::error::{Error, Result};
use crate::numerics::{compare_majorization, MajorizationOrder, Spectrum, DEFAULT_TOL};

/// Schur ordering of two designs in the same setting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchurOrder {
    FirstBetter,
    SecondBetter,
    Equal,
    Incomparable,
}

impl SchurOrder {
    pub fn as_str(&self) -> &'static str {
        match self {
            SchurOrder::FirstBetter => "first-better",
            SchurOrder::SecondBetter => "second-better",
            SchurOrder::Equal => "equal",
            SchurOrder::Incomparable => "incomparable",
        }
    }
}

/// Compares `M_d` spectra: the design whose eigenvalues are majorized is better.
///
/// Only the eigenvalues that map to nonzero information eigenvalues take part,
/// which is all of them when `r <= v - 1`.
pub fn schur_compare_spectra(setting: &DesignSetting, a: &Spectrum, b: &Spectrum) -> Result<SchurOrder> {
    let keep = setting.r().min(setting.v() - 1);
    let order = compare_majorization(&a.values()[..keep], &b.values()[..keep], DEFAULT_TOL)?;
    Ok(match order {
        MajorizationOrder::Equal => SchurOrder::Equal,
        MajorizationOrder::Majorizes => SchurOrder::SecondBetter,
        MajorizationOrder::MajorizedBy => SchurOrder::FirstBetter,
        MajorizationOrder::Incomparable => SchurOrder::Incomparable,
    })
}

pub fn schur_compare(d1: &ResolvableDesign, d2: &ResolvableDesign) -> Result<SchurOrder> {
    if d1.setting() != d2.setting() {
        return Err(Error::SettingMismatch(
            d1.setting().to_string(),
            d2.setting().to_string(),
        ));
    }
    schur_compare_spectra(&d1.setting(), &m_spectrum(d1)?, &m_spectrum(d2)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn design(v: usize, r: usize, k1: usize, blocks: Vec<Vec<usize>>) -> ResolvableDesign {
        let s = DesignSetting::new(v, r, k1, v - k1).unwrap();
        ResolvableDesign::from_block1(s, blocks).unwrap()
    }

    #[test]
    fn ecd_orders_follow_gamma() {
        // D(9,3;5,4): gamma = 7/9 >= 2/3, so ECD(3) beats ECD(2).
        // (No ECD(2) exists with four replicates.)
        let ecd2 = design(
            9,
            3,
            5,
            vec![vec![1, 2, 3, 4, 5], vec![1, 2, 6, 7, 8], vec![3, 4, 6, 7, 9]],
        );
        let ecd3 = design(
            9,
            3,
            5,
            vec![vec![1, 2, 3, 4, 5], vec![1, 2, 3, 6, 7], vec![1, 2, 4, 6, 8]],
        );
        let phi = crate::design::concurrences(&ecd3);
        assert!(phi.upper().iter().all(|&x| x == 3), "{:?}", phi.upper());
        let phi = crate::design::concurrences(&ecd2);
        assert!(phi.upper().iter().all(|&x| x == 2), "{:?}", phi.upper());
        assert_eq!(schur_compare(&ecd3, &ecd2).unwrap(), SchurOrder::FirstBetter);
        assert_eq!(schur_compare(&ecd2, &ecd2).unwrap(), SchurOrder::Equal);
    }

    #[test]
    fn mismatch() {
        let a = design(4, 2, 2, vec![vec![1, 2], vec![1, 3]]);
        let b = design(4, 3, 2, vec![vec![1, 2], vec![1, 3], vec![1, 4]]);
        assert!(matches!(schur_compare(&a, &b), Err(Error::SettingMismatch(..))));
    }
}
