use num_traits::One;

use super::class::classify_full;
use crate::design::ResolvableDesign;
use crate::error::Result;
use crate::numerics::{rat_to_f64, symmetric_eigen, Matrix, Rational, RationalMatrix, Spectrum, DEFAULT_TOL};
use crate::optimality::{projected_spectrum, DiscrepancyMatrix};

/// Replicate groups of a group-affine design: concurrence `theta_bar` inside a
/// group, `theta_bar + 1` across groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAffineStructure {
    /// 0-based replicate indices per group, ordered by size then first member.
    pub groups: Vec<Vec<usize>>,
    /// Group sizes, ascending.
    pub t: Vec<usize>,
    pub n: usize,
    /// Group sizes differ by at most one.
    pub uniform: bool,
    /// `t` left-padded with zeros to length `n_gamma` (unpadded when `n >= n_gamma`).
    pub t_padded: Vec<usize>,
}

impl GroupAffineStructure {
    /// Structure with contiguous groups of the given sizes.
    pub fn from_sizes(t: &[usize], n_gamma: i64) -> Self {
        let mut next = 0;
        let groups = t
            .iter()
            .map(|&k| {
                let g: Vec<usize> = (next..next + k).collect();
                next += k;
                g
            })
            .collect();
        Self::from_groups(groups, n_gamma)
    }

    fn from_groups(mut groups: Vec<Vec<usize>>, n_gamma: i64) -> Self {
        for g in &mut groups {
            g.sort_unstable();
        }
        groups.sort_by_key(|g| (g.len(), g[0]));
        let t: Vec<usize> = groups.iter().map(Vec::len).collect();
        let n = t.len();
        let uniform = t.last().unwrap_or(&0) - t.first().unwrap_or(&0) <= 1;
        let width = (n_gamma.max(0) as usize).max(n);
        let mut t_padded = vec![0; width - n];
        t_padded.extend(&t);
        GroupAffineStructure {
            groups,
            t,
            n,
            uniform,
            t_padded,
        }
    }

    pub fn r(&self) -> usize {
        self.t.iter().sum()
    }

    /// Group index of every replicate.
    pub fn membership(&self) -> Vec<usize> {
        let mut out = vec![0; self.r()];
        for (i, g) in self.groups.iter().enumerate() {
            for &h in g {
                out[h] = i;
            }
        }
        out
    }
}

/// For a 0/1 adjacency matrix: groups of the complement graph, provided every
/// pair in different groups is adjacent and every pair in the same group is not.
pub fn group_pattern(adj: &Matrix<i64>) -> Option<Vec<Vec<usize>>> {
    let r = adj.rows();
    let mut comp = vec![usize::MAX; r];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for start in 0..r {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut stack = vec![start];
        comp[start] = id;
        let mut members = Vec::new();
        while let Some(h) = stack.pop() {
            members.push(h);
            for g in 0..r {
                if g != h && adj[(h, g)] == 0 && comp[g] == usize::MAX {
                    comp[g] = id;
                    stack.push(g);
                }
            }
        }
        groups.push(members);
    }
    for h in 0..r {
        for g in h + 1..r {
            let want = i64::from(comp[h] != comp[g]);
            if adj[(h, g)] != want {
                return None;
            }
        }
    }
    Some(groups)
}

pub(crate) fn group_structure_from_delta(
    delta: &DiscrepancyMatrix,
    n_gamma: i64,
) -> Option<GroupAffineStructure> {
    if delta.pairs().any(|(_, _, x)| !(0..=1).contains(&x)) {
        return None;
    }
    group_pattern(delta.matrix()).map(|g| GroupAffineStructure::from_groups(g, n_gamma))
}

/// Group-affine structure of `d` (after the block switching chosen by classification).
pub fn detect_group_affine(d: &ResolvableDesign) -> Option<GroupAffineStructure> {
    classify_full(d).group
}

/// `P A P` nonpositive definite (largest eigenvalue at most `1e-9`), `P = I - J/r`.
pub fn pap_nonpositive(adj: &Matrix<i64>) -> Result<bool> {
    let u = projected_spectrum(&adj.map(|&x| x as f64))?;
    Ok(u.max() <= DEFAULT_TOL)
}

/// `H_d`: `gamma` within groups (diagonal included), `gamma - 1` across, in
/// original replicate order.
pub fn h_matrix(s: &GroupAffineStructure, gamma: &Rational) -> RationalMatrix {
    let grp = s.membership();
    let across = gamma - Rational::one();
    Matrix::from_fn(s.r(), s.r(), |h, g| {
        if grp[h] == grp[g] {
            gamma.clone()
        } else {
            across.clone()
        }
    })
}

pub fn h_spectrum_direct(s: &GroupAffineStructure, gamma: &Rational) -> Result<Spectrum> {
    symmetric_eigen(&h_matrix(s, gamma).to_f64())
}

/// `r - n` zeros plus the eigenvalues of `D_t^{1/2} (I - (1 - gamma) J) D_t^{1/2}`.
pub fn h_spectrum_reduced(s: &GroupAffineStructure, gamma: &Rational) -> Result<Spectrum> {
    let c = 1.0 - rat_to_f64(gamma);
    let t: Vec<f64> = s.t.iter().map(|&x| x as f64).collect();
    let red = Matrix::from_fn(s.n, s.n, |i, j| {
        let e = if i == j { 1.0 - c } else { -c };
        (t[i] * t[j]).sqrt() * e
    });
    let mut values = symmetric_eigen(&red)?.values().to_vec();
    values.extend(std::iter::repeat_n(0.0, s.r() - s.n));
    Ok(Spectrum::new(values, DEFAULT_TOL))
}

/// Eigenvalues of `D_t - (1 - gamma) 1 t'` via its secular equation
/// `1 = (1 - gamma) sum_i t_i / (t_i - lambda)`, plus `r - n` zeros.
///
/// A size shared by `m` groups contributes itself `m - 1` times; the remaining
/// roots are one below the smallest size and one in each gap between
/// consecutive distinct sizes, found by bisection.
pub fn h_spectrum_secular(s: &GroupAffineStructure, gamma: &Rational) -> Spectrum {
    let c = 1.0 - rat_to_f64(gamma);
    let mut distinct: Vec<(f64, f64)> = Vec::new(); // (size, size * multiplicity)
    for &t in &s.t {
        let t = t as f64;
        match distinct.last_mut() {
            Some((x, w)) if *x == t => *w += t,
            _ => distinct.push((t, t)),
        }
    }
    let mut values: Vec<f64> = Vec::with_capacity(s.r());
    for (x, w) in &distinct {
        let m = (w / x).round() as usize;
        values.extend(std::iter::repeat_n(*x, m - 1));
    }
    let f = |lambda: f64| 1.0 - c * distinct.iter().map(|(x, w)| w / (x - lambda)).sum::<f64>();
    let bisect = |mut lo: f64, mut hi: f64| {
        // f is decreasing on each interval: f(lo) > 0 > f(hi).
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    if c == 0.0 {
        // E = I: the eigenvalues are the sizes themselves.
        values.extend(distinct.iter().map(|(x, _)| *x));
    } else {
        let first = distinct[0].0;
        let mut lo = first - 1.0;
        while f(lo) <= 0.0 {
            lo = first - 2.0 * (first - lo);
        }
        values.push(bisect(lo, first));
        for pair in distinct.windows(2) {
            values.push(bisect(pair[0].0, pair[1].0));
        }
    }
    values.extend(std::iter::repeat_n(0.0, s.r() - s.n));
    Spectrum::new(values, DEFAULT_TOL)
}

/// Spectrum of `H_d`, computed three ways and checked to agree within `1e-8`.
pub fn h_spectrum(s: &GroupAffineStructure, gamma: &Rational) -> Result<Spectrum> {
    let reduced = h_spectrum_reduced(s, gamma)?;
    let direct = h_spectrum_direct(s, gamma)?;
    let secular = h_spectrum_secular(s, gamma);
    let tol = 1e-8 * reduced.values().iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    assert!(reduced.approx_eq(&direct, tol), "H_d: {reduced:?} vs direct {direct:?}");
    assert!(reduced.approx_eq(&secular, tol), "H_d: {reduced:?} vs secular {secular:?}");
    Ok(reduced)
}
