use super::resolvable::ResolvableDesign;
use crate::numerics::{rat, Matrix, Rational, RationalMatrix};

/// Treatment-block incidence `N` (`v x 2r`) with block sizes `Ds`.
///
/// Column `2h` is block1 of replicate `h` (0-based), column `2h + 1` its block2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceSet {
    pub n: Matrix<i64>,
    pub ds: Vec<usize>,
}

pub fn incidence(d: &ResolvableDesign) -> IncidenceSet {
    let s = d.setting();
    let member = d.membership();
    let n = Matrix::from_fn(s.v(), 2 * d.r(), |t, c| {
        let inb1 = member[c / 2][t];
        i64::from(inb1 == (c % 2 == 0))
    });
    let ds = (0..2 * d.r())
        .map(|c| if c % 2 == 0 { s.k1() } else { s.k2() })
        .collect();
    IncidenceSet { n, ds }
}

/// Block concurrences `phi[h][h'] = |block1(h) ∩ block1(h')|`, diagonal `k1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConcurrenceMatrix {
    phi: Matrix<i64>,
    k1: i64,
}

impl ConcurrenceMatrix {
    pub fn from_matrix(phi: Matrix<i64>, k1: usize) -> Self {
        ConcurrenceMatrix { phi, k1: k1 as i64 }
    }

    pub fn matrix(&self) -> &Matrix<i64> {
        &self.phi
    }

    pub fn r(&self) -> usize {
        self.phi.rows()
    }

    pub fn get(&self, h: usize, g: usize) -> i64 {
        self.phi[(h, g)]
    }

    /// Off-diagonal entries in row-major upper-triangular order.
    pub fn upper(&self) -> Vec<i64> {
        let r = self.r();
        let mut out = Vec::with_capacity(r * (r - 1) / 2);
        for h in 0..r {
            for g in h + 1..r {
                out.push(self.phi[(h, g)]);
            }
        }
        out
    }

    /// Concurrences after swapping the two blocks of each flagged replicate.
    ///
    /// Only meaningful when `k1 == k2`: a pair with exactly one flipped
    /// replicate goes to `k1 - phi`.
    pub fn switched(&self, flips: &[bool]) -> Self {
        assert_eq!(flips.len(), self.r());
        let k1 = self.k1;
        let phi = Matrix::from_fn(self.r(), self.r(), |h, g| {
            let x = self.phi[(h, g)];
            if h != g && flips[h] != flips[g] {
                k1 - x
            } else {
                x
            }
        });
        ConcurrenceMatrix { phi, k1 }
    }

    pub fn permuted(&self, order: &[usize]) -> Self {
        ConcurrenceMatrix {
            phi: self.phi.permuted(order),
            k1: self.k1,
        }
    }
}

pub fn concurrences(d: &ResolvableDesign) -> ConcurrenceMatrix {
    let member = d.membership();
    let r = d.r();
    let k1 = d.setting().k1();
    let phi = Matrix::from_fn(r, r, |h, g| {
        if h == g {
            k1 as i64
        } else {
            member[h]
                .iter()
                .zip(&member[g])
                .filter(|(a, b)| **a && **b)
                .count() as i64
        }
    });
    ConcurrenceMatrix::from_matrix(phi, k1)
}

/// `C_d = r I - N Ds^{-1} N'`, exact.
pub fn information_matrix(d: &ResolvableDesign) -> RationalMatrix {
    let inc = incidence(d);
    let v = d.v();
    let r = d.r() as i64;
    let inv: Vec<Rational> = inc.ds.iter().map(|&k| Rational::new(1.into(), (k as i64).into())).collect();
    Matrix::from_fn(v, v, |i, j| {
        let mut acc = if i == j { rat(r) } else { rat(0) };
        for (c, w) in inv.iter().enumerate() {
            if inc.n[(i, c)] == 1 && inc.n[(j, c)] == 1 {
                acc -= w;
            }
        }
        acc
    })
}

/// `C_dual = Ds - N'N / r`, exact (`2r x 2r`).
pub fn dual_matrix(d: &ResolvableDesign) -> RationalMatrix {
    let inc = incidence(d);
    let b = inc.ds.len();
    let v = d.v();
    let r = d.r() as i64;
    Matrix::from_fn(b, b, |a, c| {
        let nn: i64 = (0..v).map(|t| inc.n[(t, a)] * inc.n[(t, c)]).sum();
        let diag = if a == c { rat(inc.ds[a] as i64) } else { rat(0) };
        diag - Rational::new(nn.into(), r.into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::DesignSetting;
    use crate::numerics::{ratio, symmetric_eigen};

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
    fn incidence_margins() {
        let d = ecd4();
        let inc = incidence(&d);
        for t in 0..9 {
            assert_eq!(inc.n.row(t).iter().sum::<i64>(), 4);
        }
        for c in 0..8 {
            let col: i64 = (0..9).map(|t| inc.n[(t, c)]).sum();
            assert_eq!(col as usize, inc.ds[c]);
        }
    }

    #[test]
    fn ecd4_concurrences() {
        let phi = concurrences(&ecd4());
        assert!(phi.upper().iter().all(|&x| x == 4));
        assert_eq!(phi.get(2, 2), 6);
    }

    #[test]
    fn identical_replicates() {
        let s = DesignSetting::new(5, 3, 3, 2).unwrap();
        let d = ResolvableDesign::from_block1(s, vec![vec![1, 2, 3]; 3]).unwrap();
        assert!(concurrences(&d).upper().iter().all(|&x| x == 3));
        let dual = dual_matrix(&d);
        // N'N has its largest possible off-diagonal entries: k between matching blocks.
        assert_eq!(dual[(0, 2)], ratio(-3, 3));
        assert_eq!(dual[(1, 3)], ratio(-2, 3));
    }

    #[test]
    fn ecd4_information_spectrum() {
        let c = information_matrix(&ecd4());
        for i in 0..9 {
            let s: Rational = c.row(i).iter().sum();
            assert_eq!(s, rat(0));
        }
        let spec = symmetric_eigen(&c.to_f64()).unwrap();
        let want = [4.0, 4.0, 4.0, 4.0, 3.0, 3.0, 3.0, 3.0, 0.0];
        for (a, b) in spec.values().iter().zip(want) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn small_trace_by_hand() {
        // Each diagonal entry is r - sum over the blocks holding t of 1/k = 2 - 1/2 - 1/2 = 1.
        let s = DesignSetting::new(4, 2, 2, 2).unwrap();
        let d = ResolvableDesign::from_block1(s, vec![vec![1, 2], vec![1, 3]]).unwrap();
        assert_eq!(information_matrix(&d).trace(), rat(4));
    }

    #[test]
    fn switching_matches_relabeled_blocks() {
        let s = DesignSetting::new(6, 3, 3, 3).unwrap();
        let d = ResolvableDesign::from_block1(s, vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 4, 5]])
            .unwrap();
        let phi = concurrences(&d);
        let sw = phi.switched(&[false, true, false]);
        // block2 of replicate 2 is {3,5,6}.
        assert_eq!(sw.get(0, 1), 1);
        assert_eq!(sw.get(1, 2), 1);
        assert_eq!(sw.get(0, 2), phi.get(0, 2));
    }
}
