use std::fmt;

use super::group::{group_structure_from_delta, GroupAffineStructure};
use crate::design::{concurrences, ConcurrenceMatrix, DesignSetting, ResolvableDesign};
use crate::numerics::{rat, Rational};
use crate::optimality::{theta_params, DiscrepancyMatrix, ThetaParams};

/// Concurrence class of a design.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DesignClass {
    /// All off-diagonal concurrences equal this value.
    Ecd(i64),
    /// Every discrepancy in `{0, 1}`, both present.
    Aecd,
    Ucd,
}

impl fmt::Display for DesignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignClass::Ecd(t) => write!(f, "ECD({t})"),
            DesignClass::Aecd => f.write_str("AECD"),
            DesignClass::Ucd => f.write_str("UCD"),
        }
    }
}

/// Everything classification derives from the concurrences.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub setting: DesignSetting,
    pub params: ThetaParams,
    pub class: DesignClass,
    /// Concurrences after block switching (equal to the canonical ones unless `k1 == k2`).
    pub phi: ConcurrenceMatrix,
    pub delta: DiscrepancyMatrix,
    /// Replicates (1-based) whose two blocks were exchanged.
    pub switched: Vec<usize>,
    pub group: Option<GroupAffineStructure>,
}

impl Classification {
    pub fn is_ecd_bar(&self) -> bool {
        self.class == DesignClass::Ecd(self.params.theta_bar)
    }

    pub fn is_ecd_bar_plus_one(&self) -> bool {
        self.class == DesignClass::Ecd(self.params.theta_bar + 1)
    }

    /// Some discrepancy outside `{0, 1}`: a UCD, or an ECD far from `theta_bar`.
    pub fn has_far_discrepancy(&self) -> bool {
        let (lo, hi) = self.delta.range();
        lo < 0 || hi > 1
    }
}

fn class_of(delta: &DiscrepancyMatrix, theta_bar: i64) -> DesignClass {
    let mut values = delta.pairs().map(|(_, _, x)| x);
    let Some(first) = values.next() else {
        return DesignClass::Ecd(theta_bar);
    };
    let (lo, hi) = delta.range();
    if lo == hi {
        DesignClass::Ecd(theta_bar + first)
    } else if lo == 0 && hi == 1 {
        DesignClass::Aecd
    } else {
        DesignClass::Ucd
    }
}

const FULL_SWITCH_SEARCH_MAX_R: usize = 16;

/// Ranking used to choose among switchings: lower is preferred.
fn rank(class: DesignClass, group: &Option<GroupAffineStructure>, theta_bar: i64) -> (u8, usize) {
    match (class, group) {
        (DesignClass::Ecd(t), _) if t == theta_bar => (0, 0),
        (DesignClass::Ecd(t), _) if t == theta_bar + 1 => (1, 0),
        (_, Some(g)) => (2, g.n),
        (DesignClass::Aecd, None) => (3, 0),
        (DesignClass::Ecd(_), None) => (4, 0),
        (DesignClass::Ucd, None) => (5, 0),
    }
}

fn evaluate(
    params: &ThetaParams,
    phi: &ConcurrenceMatrix,
) -> (DesignClass, DiscrepancyMatrix, Option<GroupAffineStructure>) {
    let delta = DiscrepancyMatrix::from_phi(phi, params.theta_bar);
    let class = class_of(&delta, params.theta_bar);
    let group = group_structure_from_delta(&delta, params.n_gamma);
    (class, delta, group)
}

/// Classifies from concurrences.
///
/// When `k1 == k2` the two blocks of a replicate are interchangeable, and
/// exchanging them sends `phi` to `k1 - phi` against every other replicate.
/// The `M_d` spectrum does not change (it is a signature similarity), but the
/// class can. Among all switchings fixing replicate 1 (or, for large `r`, those
/// suggested by replicate 1's row) the most structured one is reported:
/// `ECD(theta_bar)`, then `ECD(theta_bar + 1)`, then group-affine with fewest
/// groups, then AECD; the canonical labeling wins ties.
pub fn classify_phi(setting: &DesignSetting, phi: &ConcurrenceMatrix) -> Classification {
    let params = theta_params(setting);
    let r = phi.r();
    let mut best_flips = vec![false; r];
    let (mut class, mut delta, mut group) = evaluate(&params, phi);
    let mut best_phi = phi.clone();

    if setting.equal_blocks() && r > 1 {
        let mut best_rank = rank(class, &group, params.theta_bar);
        let mut consider = |flips: Vec<bool>| {
            let cand = phi.switched(&flips);
            let (c, dl, g) = evaluate(&params, &cand);
            let rk = rank(c, &g, params.theta_bar);
            if rk < best_rank {
                best_rank = rk;
                best_flips = flips;
                class = c;
                delta = dl;
                group = g;
                best_phi = cand;
            }
        };
        if r <= FULL_SWITCH_SEARCH_MAX_R {
            for mask in 1u32..(1 << (r - 1)) {
                consider((0..r).map(|h| h > 0 && mask >> (h - 1) & 1 == 1).collect());
            }
        } else {
            let k1 = setting.k1() as i64;
            for target in [params.theta_bar, params.theta_bar + 1] {
                let flips = (0..r)
                    .map(|h| h > 0 && phi.get(0, h) != target && k1 - phi.get(0, h) == target)
                    .collect();
                consider(flips);
            }
        }
    }

    let switched = best_flips
        .iter()
        .enumerate()
        .filter(|(_, f)| **f)
        .map(|(h, _)| h + 1)
        .collect();
    Classification {
        setting: *setting,
        params,
        class,
        phi: best_phi,
        delta,
        switched,
        group,
    }
}

pub fn classify_full(d: &ResolvableDesign) -> Classification {
    classify_phi(&d.setting(), &concurrences(d))
}

pub fn classify(d: &ResolvableDesign) -> DesignClass {
    classify_full(d).class
}

/// Closed-form `M_d` eigenvalues (descending) of an ECD:
/// `p/v - c` with multiplicity `r - 1` and `p/v + (r - 1) c`, where `c = theta - k1^2/v`.
pub fn ecd_eigenvalues(setting: &DesignSetting, theta: i64) -> Vec<Rational> {
    let params = theta_params(setting);
    let pv = params.p_over_v(setting.v());
    let c = rat(theta) - params.k1_sq_over_v();
    let r = setting.r() as i64;
    let mut out = vec![&pv - &c; setting.r() - 1];
    out.push(&pv + &(rat(r - 1) * &c));
    out.sort_by(|a, b| b.cmp(a));
    out
}

pub(crate) fn exact_m_eigenvalues_of(c: &Classification) -> Option<Vec<Rational>> {
    match c.class {
        DesignClass::Ecd(theta) => Some(ecd_eigenvalues(&c.setting, theta)),
        _ => None,
    }
}

/// Exact `M_d` eigenvalues when the design is (after switching) an ECD.
pub fn exact_m_eigenvalues(d: &ResolvableDesign) -> Option<Vec<Rational>> {
    exact_m_eigenvalues_of(&classify_full(d))
}

pub(crate) fn exact_e1_of(c: &Classification) -> Option<Rational> {
    if let Some(e) = exact_m_eigenvalues_of(c) {
        return e.into_iter().next();
    }
    // Group-affine with n <= n_gamma and n < r: H_d is nonnegative definite
    // with a zero eigenvalue, so e_1 = p/v + gamma.
    let g = c.group.as_ref()?;
    let r = c.setting.r();
    if (g.n as i64) <= c.params.n_gamma && g.n < r {
        return Some(c.params.p_over_v(c.setting.v()) + &c.params.gamma);
    }
    None
}

/// Exact `e_1` for ECDs and for group-affine designs with `n <= n_gamma`, `n < r`.
pub fn exact_e1(d: &ResolvableDesign) -> Option<Rational> {
    exact_e1_of(&classify_full(d))
}
