use num_traits::{One, Zero};

use crate::design::DesignSetting;
use crate::numerics::{rat, rat_floor, ratio, Rational};

/// Concurrence parameters of a setting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaParams {
    /// `int(k1^2 / v)`.
    pub theta_bar: i64,
    /// Block discordancy coefficient `k1^2 / v - theta_bar`, in `[0, 1)`.
    pub gamma: Rational,
    /// `k1^2 / v`, present only when it is an integer.
    pub theta_star: Option<Rational>,
    pub p: i64,
    /// `int(1 / (1 - gamma))`.
    pub n_gamma: i64,
}

impl ThetaParams {
    /// `p / v`, the diagonal of `M_d`.
    pub fn p_over_v(&self, v: usize) -> Rational {
        ratio(self.p, v as i64)
    }

    /// `k1^2 / v = theta_bar + gamma`.
    pub fn k1_sq_over_v(&self) -> Rational {
        rat(self.theta_bar) + &self.gamma
    }
}

pub fn theta_params(s: &DesignSetting) -> ThetaParams {
    let k1 = s.k1() as i64;
    let v = s.v() as i64;
    let q = ratio(k1 * k1, v);
    let theta_bar = rat_floor(&q);
    let gamma = q.clone() - rat(theta_bar);
    let theta_star = gamma.is_zero().then(|| q.clone());
    let n_gamma = rat_floor(&(Rational::one() / (Rational::one() - &gamma)));
    let params = ThetaParams {
        theta_bar,
        gamma,
        theta_star,
        p: (s.k1() * s.k2()) as i64,
        n_gamma,
    };
    if let Some(g) = gamma_closed_form(s) {
        assert_eq!(g, params.gamma, "closed-form gamma disagrees for {s}");
    }
    params
}

/// Closed forms for `gamma` when `k1 - k2 <= 2`.
pub fn gamma_closed_form(s: &DesignSetting) -> Option<Rational> {
    let v = s.v() as i64;
    let even = s.k1().is_multiple_of(2);
    match s.k1() - s.k2() {
        0 if even => Some(rat(0)),
        0 => Some(ratio(1, 2)),
        1 if even => Some(ratio(v + 1, 4 * v)),
        1 => Some(ratio(3 * v + 1, 4 * v)),
        2 if even => Some(ratio(v + 2, 2 * v)),
        2 => Some(ratio(1, v)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(k1: usize, k2: usize) -> ThetaParams {
        theta_params(&DesignSetting::new(k1 + k2, 3, k1, k2).unwrap())
    }

    #[test]
    fn affine_case() {
        let t = tp(6, 3);
        assert_eq!(t.theta_star, Some(rat(4)));
        assert_eq!(t.gamma, rat(0));
        assert_eq!(t.n_gamma, 1);
    }

    #[test]
    fn nearly_equal_blocks() {
        let t = tp(5, 4);
        assert_eq!((t.theta_bar, t.gamma.clone(), t.n_gamma), (2, ratio(7, 9), 4));
        assert_eq!(t.theta_star, None);
        let t = tp(5, 5);
        assert_eq!((t.theta_bar, t.gamma), (2, ratio(1, 2)));
        let t = tp(7, 5);
        assert_eq!((t.theta_bar, t.gamma), (4, ratio(1, 12)));
    }

    #[test]
    fn closed_forms_hold_widely() {
        // theta_params asserts the closed forms internally.
        for k2 in 2..40 {
            for m in 0..=2 {
                let _ = tp(k2 + m, k2);
            }
        }
        assert_eq!(gamma_closed_form(&DesignSetting::new(10, 2, 7, 3).unwrap()), None);
    }
}
