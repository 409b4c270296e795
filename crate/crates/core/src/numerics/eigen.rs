use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Relative tolerance used for eigenvalue comparisons throughout the crate.
pub const DEFAULT_TOL: f64 = 1e-9;

const SYMMETRY_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Real eigenvalues of a symmetric matrix, sorted in descending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    tol: f64,
}

impl Spectrum {
    /// Wraps arbitrary values; they are sorted descending here.
    pub fn new(mut values: Vec<f64>, tol: f64) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values, tol }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn ascending(&self) -> Vec<f64> {
        self.values.iter().rev().copied().collect()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn min(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Tolerance scaled to the magnitude of the values.
    pub fn scaled_tol(&self) -> f64 {
        self.tol * self.values.iter().fold(1.0_f64, |m, x| m.max(x.abs()))
    }

    /// Elementwise agreement of the sorted values within `tol` (absolute).
    pub fn approx_eq(&self, other: &Spectrum, tol: f64) -> bool {
        self.len() == other.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn symmetric_eigen(a: &Matrix<f64>) -> Result<Spectrum> {
    let (values, _) = jacobi(a, false)?;
    Ok(Spectrum::new(values, DEFAULT_TOL))
}

/// Eigenvalues and eigenvectors. Column `k` of the returned matrix is the
/// eigenvector of `values[k]`; values are in no particular order.
pub fn symmetric_eigen_with_vectors(a: &Matrix<f64>) -> Result<(Vec<f64>, Matrix<f64>)> {
    let (values, vectors) = jacobi(a, true)?;
    Ok((values, vectors.expect("vectors requested")))
}

fn check_symmetric(a: &Matrix<f64>) -> Result<()> {
    if !a.is_square() {
        return Err(Error::BadParams(format!(
            "eigensolver needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    for i in 0..n {
        for j in 0..i {
            let gap = (a[(i, j)] - a[(j, i)]).abs();
            if gap > SYMMETRY_TOL || gap.is_nan() {
                return Err(Error::NotSymmetric {
                    row: i,
                    col: j,
                    gap,
                });
            }
        }
    }
    Ok(())
}

fn jacobi(a: &Matrix<f64>, want_vectors: bool) -> Result<(Vec<f64>, Option<Matrix<f64>>)> {
    check_symmetric(a)?;
    let n = a.rows();
    let mut m = a.clone();
    // Symmetrize exactly so rotations see a consistent matrix.
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
    let mut v = want_vectors.then(|| Matrix::<f64>::identity(n));
    let norm = m.frobenius_norm();
    if norm == 0.0 {
        return Ok((vec![0.0; n], v));
    }
    let threshold = OFF_DIAGONAL_TOL * norm;

    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) < threshold {
            let values = (0..n).map(|i| m[(i, i)]).collect();
            return Ok((values, v));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = m[(p, p)];
                let aqq = m[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                // theta == 0 gives signum 1.0, i.e. a 45 degree rotation.
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                m[(p, p)] = app - t * apq;
                m[(q, q)] = aqq + t * apq;
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = m[(r, p)];
                    let arq = m[(r, q)];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    m[(r, p)] = new_rp;
                    m[(p, r)] = new_rp;
                    m[(r, q)] = new_rq;
                    m[(q, r)] = new_rq;
                }
                if let Some(v) = v.as_mut() {
                    for r in 0..n {
                        let vrp = v[(r, p)];
                        let vrq = v[(r, q)];
                        v[(r, p)] = c * vrp - s * vrq;
                        v[(r, q)] = s * vrp + c * vrq;
                    }
                }
            }
        }
    }
    if off_diagonal_norm(&m) < threshold {
        let values = (0..n).map(|i| m[(i, i)]).collect();
        return Ok((values, v));
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

fn off_diagonal_norm(m: &Matrix<f64>) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)] * m[(i, j)];
            }
        }
    }
    s.sqrt()
}
