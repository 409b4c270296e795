use super::matrix::{optimality_matrix, DiscrepancyMatrix};
use super::theta::theta_params;
use crate::design::{DesignSetting, ResolvableDesign};
use crate::error::Result;
use crate::numerics::{rat, rat_to_f64, symmetric_eigen, Matrix, Rational, Spectrum, DEFAULT_TOL};

/// Interlacing bounds on the extreme eigenvalues of `M_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenBounds {
    /// Pair `(h, h')` (0-based) maximizing `|delta - gamma|`.
    pub pair: (usize, usize),
    /// `p/v + |delta - gamma|` from the 2x2 principal minor of that pair.
    pub lemma9_e1_lower: Rational,
    /// `p/v - |delta - gamma|`.
    pub lemma9_er_upper: Rational,
    /// Extreme eigenvalues of `P Delta P` with `P = I - J/r`.
    pub u1: f64,
    pub ur: f64,
    /// `p/v + gamma + u1`, only when `u1 > 0`.
    pub lemma17_e1_lower: Option<f64>,
    /// `p/v + gamma + ur`.
    pub lemma17_er_upper: f64,
    /// The actual extremes, for checking.
    pub e1: f64,
    pub er: f64,
}

impl EigenBounds {
    /// Descriptions of any bound the actual spectrum violates beyond `tol`.
    pub fn violations(&self, tol: f64) -> Vec<String> {
        let slack = tol * self.e1.abs().max(1.0);
        let mut out = Vec::new();
        let l9 = rat_to_f64(&self.lemma9_e1_lower);
        if self.e1 < l9 - slack {
            out.push(format!("e1 = {} below pair bound {l9}", self.e1));
        }
        let u9 = rat_to_f64(&self.lemma9_er_upper);
        if self.er > u9 + slack {
            out.push(format!("er = {} above pair bound {u9}", self.er));
        }
        if let Some(l17) = self.lemma17_e1_lower {
            if self.e1 < l17 - slack {
                out.push(format!("e1 = {} below projection bound {l17}", self.e1));
            }
        }
        if self.er > self.lemma17_er_upper + slack {
            out.push(format!(
                "er = {} above projection bound {}",
                self.er, self.lemma17_er_upper
            ));
        }
        out
    }
}

/// Eigenvalues of `P A P` for `P = I - J/r`.
pub(crate) fn projected_spectrum(a: &Matrix<f64>) -> Result<Spectrum> {
    let r = a.rows();
    let rf = r as f64;
    let row: Vec<f64> = (0..r).map(|i| a.row(i).iter().sum::<f64>() / rf).collect();
    let total: f64 = row.iter().sum::<f64>() / rf;
    // (PAP)_{ij} = a_ij - rowmean_i - colmean_j + grandmean; a is symmetric.
    let pap = Matrix::from_fn(r, r, |i, j| a[(i, j)] - row[i] - row[j] + total);
    symmetric_eigen(&pap)
}

/// Pair bounds and projection bounds from `Delta_d` and the `M_d` spectrum.
pub fn eigen_bounds_from(
    setting: &DesignSetting,
    delta: &DiscrepancyMatrix,
    m: &Spectrum,
) -> Result<EigenBounds> {
    let params = theta_params(setting);
    let pv = params.p_over_v(setting.v());
    let mut best: Option<((usize, usize), Rational)> = None;
    for (h, g, x) in delta.pairs() {
        let dev = rat(x) - &params.gamma;
        let dev = if dev < rat(0) { -dev } else { dev };
        if best.as_ref().is_none_or(|(_, b)| dev > *b) {
            best = Some(((h, g), dev));
        }
    }
    let (pair, dev) = best.expect("r >= 2 guarantees a pair");
    let u = projected_spectrum(&delta.to_f64())?;
    let (u1, ur) = (u.max(), u.min());
    let base = rat_to_f64(&pv) + rat_to_f64(&params.gamma);
    let bounds = EigenBounds {
        pair,
        lemma9_e1_lower: &pv + &dev,
        lemma9_er_upper: &pv - &dev,
        u1,
        ur,
        lemma17_e1_lower: (u1 > DEFAULT_TOL).then_some(base + u1),
        lemma17_er_upper: base + ur,
        e1: m.max(),
        er: m.min(),
    };
    Ok(bounds)
}

/// Bounds for `d`; debug builds assert that none is violated.
pub fn eigen_bounds(d: &ResolvableDesign) -> Result<EigenBounds> {
    let (m, delta) = optimality_matrix(d);
    let bounds = eigen_bounds_from(&d.setting(), &delta, &m.spectrum()?)?;
    debug_assert!(bounds.violations(1e-9).is_empty(), "{:?}", bounds.violations(1e-9));
    Ok(bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    #[test]
    fn negative_discrepancy_pair() {
        // D(9,3;5,4): theta_bar = 2, so phi_12 = 1 gives delta_12 = -1.
        let s = DesignSetting::new(9, 3, 5, 4).unwrap();
        let d = ResolvableDesign::from_block1(
            s,
            vec![vec![1, 2, 3, 4, 5], vec![5, 6, 7, 8, 9], vec![1, 2, 6, 7, 9]],
        )
        .unwrap();
        let b = eigen_bounds(&d).unwrap();
        assert_eq!(b.pair, (0, 1));
        // p/v + gamma + 1 = 20/9 + 7/9 + 1.
        assert_eq!(b.lemma9_e1_lower, ratio(20, 9) + ratio(7, 9) + rat(1));
        assert!(b.violations(1e-9).is_empty());
    }

    #[test]
    fn zero_discrepancy_collapses() {
        let s = DesignSetting::new(9, 4, 6, 3).unwrap();
        let d = ResolvableDesign::from_block1(
            s,
            vec![
                vec![1, 2, 3, 4, 5, 6],
                vec![1, 2, 3, 4, 7, 8],
                vec![1, 2, 5, 6, 7, 8],
                vec![3, 4, 5, 6, 7, 8],
            ],
        )
        .unwrap();
        let b = eigen_bounds(&d).unwrap();
        assert!(b.u1.abs() < 1e-12 && b.ur.abs() < 1e-12);
        assert_eq!(b.lemma17_e1_lower, None);
        assert!((b.lemma17_er_upper - 2.0).abs() < 1e-12);
        assert_eq!(b.lemma9_e1_lower, rat(2));
    }
}
