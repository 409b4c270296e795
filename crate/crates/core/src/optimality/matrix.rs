use super::theta::{theta_params, ThetaParams};
use crate::design::{concurrences, ConcurrenceMatrix, DesignSetting, ResolvableDesign};
use crate::error::Result;
use crate::numerics::{rat, symmetric_eigen, Matrix, RationalMatrix, Spectrum, DEFAULT_TOL};

/// `delta[h][h'] = phi[h][h'] - theta_bar` off the diagonal, zero on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscrepancyMatrix {
    delta: Matrix<i64>,
}

impl DiscrepancyMatrix {
    pub fn from_phi(phi: &ConcurrenceMatrix, theta_bar: i64) -> Self {
        let r = phi.r();
        DiscrepancyMatrix {
            delta: Matrix::from_fn(r, r, |h, g| if h == g { 0 } else { phi.get(h, g) - theta_bar }),
        }
    }

    pub fn matrix(&self) -> &Matrix<i64> {
        &self.delta
    }

    pub fn r(&self) -> usize {
        self.delta.rows()
    }

    pub fn get(&self, h: usize, g: usize) -> i64 {
        self.delta[(h, g)]
    }

    /// Off-diagonal `(h, h', delta)` triples with `h < h'`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        let r = self.r();
        (0..r).flat_map(move |h| (h + 1..r).map(move |g| (h, g, self.delta[(h, g)])))
    }

    /// Smallest and largest off-diagonal entry (`(0, 0)` when `r < 2`).
    pub fn range(&self) -> (i64, i64) {
        self.pairs()
            .map(|(_, _, x)| x)
            .fold(None, |acc: Option<(i64, i64)>, x| {
                Some(acc.map_or((x, x), |(lo, hi)| (lo.min(x), hi.max(x))))
            })
            .unwrap_or((0, 0))
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.delta.map(|&x| x as f64)
    }
}

/// `M_d` together with the setting's concurrence parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct OptimalityMatrix {
    m: RationalMatrix,
    params: ThetaParams,
}

impl OptimalityMatrix {
    pub fn matrix(&self) -> &RationalMatrix {
        &self.m
    }

    pub fn params(&self) -> &ThetaParams {
        &self.params
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        symmetric_eigen(&self.m.to_f64())
    }
}

/// Builds `M_d` both entrywise (`phi - k1^2/v` off the diagonal, `p/v` on it)
/// and as `(p/v) I - gamma (J - I) + Delta`, and checks the two agree.
pub fn optimality_matrix_from_phi(
    setting: &DesignSetting,
    phi: &ConcurrenceMatrix,
) -> (OptimalityMatrix, DiscrepancyMatrix) {
    let params = theta_params(setting);
    let r = phi.r();
    let v = setting.v();
    let pv = params.p_over_v(v);
    let k1sq = params.k1_sq_over_v();
    let direct = Matrix::from_fn(r, r, |h, g| {
        if h == g {
            pv.clone()
        } else {
            rat(phi.get(h, g)) - &k1sq
        }
    });
    let delta = DiscrepancyMatrix::from_phi(phi, params.theta_bar);
    let via_delta = Matrix::from_fn(r, r, |h, g| {
        if h == g {
            pv.clone()
        } else {
            rat(delta.get(h, g)) - &params.gamma
        }
    });
    assert_eq!(direct, via_delta, "the two forms of M_d disagree");
    (OptimalityMatrix { m: direct, params }, delta)
}

pub fn optimality_matrix(d: &ResolvableDesign) -> (OptimalityMatrix, DiscrepancyMatrix) {
    optimality_matrix_from_phi(&d.setting(), &concurrences(d))
}

/// Eigenvalues `e_1 >= ... >= e_r` of `M_d`.
pub fn m_spectrum(d: &ResolvableDesign) -> Result<Spectrum> {
    optimality_matrix(d).0.spectrum()
}

/// Information eigenvalues from the `M_d` spectrum.
///
/// With `r <= v - 1` this is `{0}`, `v - r - 1` copies of `r`, and
/// `r - v e_h / p`. For `r >= v` the matrix `M_d` is positive semidefinite
/// with at least `r - v + 1` zero eigenvalues; only the `v - 1` largest `e_h`
/// map to nonzero information eigenvalues.
pub fn primal_from_m(setting: &DesignSetting, m: &Spectrum) -> Spectrum {
    let (v, r) = (setting.v(), setting.r());
    let scale = v as f64 / setting.p() as f64;
    let rf = r as f64;
    let mut z = vec![0.0];
    z.extend(std::iter::repeat_n(rf, (v - 1).saturating_sub(r)));
    z.extend(m.values().iter().take(v - 1).map(|e| rf - scale * e));
    Spectrum::new(z, DEFAULT_TOL)
}

pub fn primal_spectrum(d: &ResolvableDesign) -> Result<Spectrum> {
    Ok(primal_from_m(&d.setting(), &m_spectrum(d)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::information_matrix;
    use crate::numerics::ratio;

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
    fn ecd4_is_scalar() {
        let (m, delta) = optimality_matrix(&ecd4());
        assert_eq!(m.matrix(), &Matrix::from_fn(4, 4, |h, g| if h == g { rat(2) } else { rat(0) }));
        assert_eq!(delta.range(), (0, 0));
        assert_eq!(m.matrix().trace(), ratio(18 * 4, 9));
    }

    #[test]
    fn ecd4_primal_matches_direct() {
        let d = ecd4();
        let lemma = primal_spectrum(&d).unwrap();
        let direct = symmetric_eigen(&information_matrix(&d).to_f64()).unwrap();
        assert!(lemma.approx_eq(&direct, 1e-9));
        assert_eq!(lemma.values(), &[4.0, 4.0, 4.0, 4.0, 3.0, 3.0, 3.0, 3.0, 0.0]);
    }

    #[test]
    fn large_r_drops_null_directions() {
        // All 2-subsets of {1,2,3,4}: r = 6 >= v = 4.
        let s = DesignSetting::new(4, 6, 2, 2).unwrap();
        let blocks = vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]];
        let d = ResolvableDesign::from_block1(s, blocks).unwrap();
        let lemma = primal_spectrum(&d).unwrap();
        let direct = symmetric_eigen(&information_matrix(&d).to_f64()).unwrap();
        assert_eq!(lemma.len(), 4);
        assert!(lemma.approx_eq(&direct, 1e-9), "{lemma:?} vs {direct:?}");
    }
}
