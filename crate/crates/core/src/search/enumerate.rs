//! Exhaustive enumeration of `D(v, r; k1, k2)`.
//!
//! Block-1 sets are `k1`-subsets as bitmasks in colexicographic order (when
//! `k1 = k2`, only those containing treatment 1). Candidates are tuples of
//! such subsets indexed in mixed radix, the last replicate varying fastest,
//! so any index range can be scanned independently. Workers tally
//! concurrence matrices into private maps that are merged at the end.

use std::collections::HashMap;

use rayon::prelude::*;

use super::census::{CensusEntry, SearchCriterion, SearchResult};
use crate::design::{DesignSetting, ResolvableDesign};
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u128 = 10_000_000;
/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "RESOLVD_BUDGET";

/// `RESOLVD_BUDGET` if set to a number, else the default.
pub fn budget_from_env() -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Debug)]
pub struct EnumerationSpec {
    pub setting: DesignSetting,
    /// Replicate 1 is `({1..k1}, {k1+1..v})`; loses no optima by relabeling.
    pub fix_first_replicate: bool,
    pub criterion: SearchCriterion,
    /// Visit at most this many candidates.
    pub limit: Option<u128>,
    pub budget: u128,
    /// Run even when the estimate exceeds the budget.
    pub force: bool,
    /// Worker cap; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl EnumerationSpec {
    pub fn new(setting: DesignSetting, criterion: SearchCriterion) -> Self {
        EnumerationSpec {
            setting,
            fix_first_replicate: true,
            criterion,
            limit: None,
            budget: budget_from_env(),
            force: false,
            jobs: None,
        }
    }

    fn free_replicates(&self) -> u32 {
        let r = self.setting.r() as u32;
        if self.fix_first_replicate {
            r - 1
        } else {
            r
        }
    }

    /// `C(v, k1)^(r-1)` (or `^r`), with `C(v, k1)` halved when `k1 = k2`.
    pub fn estimated_candidates(&self) -> u128 {
        let c = subset_count(&self.setting);
        c.checked_pow(self.free_replicates()).unwrap_or(u128::MAX)
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

fn subset_count(s: &DesignSetting) -> u128 {
    let c = binomial(s.v() as u128, s.k1() as u128);
    if s.equal_blocks() {
        c / 2
    } else {
        c
    }
}

/// Block-1 masks in colexicographic order.
fn block_masks(s: &DesignSetting) -> Vec<u64> {
    let (v, k) = (s.v(), s.k1());
    let mut out = Vec::new();
    let mut m: u64 = (1u64 << k) - 1;
    while m < (1u64 << v) {
        if !s.equal_blocks() || m & 1 == 1 {
            out.push(m);
        }
        // Next mask with the same popcount.
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

type Key = [u64; 4];

struct Scanner {
    masks: Vec<u64>,
    first: Option<u64>,
    free: usize,
    r: usize,
    bits: u32,
}

impl Scanner {
    fn replicate_masks(&self, idx: u128, out: &mut [u64]) {
        let c = self.masks.len() as u128;
        let mut rest = idx;
        let offset = self.r - self.free;
        for pos in (0..self.free).rev() {
            out[offset + pos] = self.masks[(rest % c) as usize];
            rest /= c;
        }
        if let Some(f) = self.first {
            out[0] = f;
        }
    }

    fn key(&self, reps: &[u64]) -> Key {
        let mut key = [0u64; 4];
        let mut bit = 0u32;
        for h in 0..self.r {
            for g in h + 1..self.r {
                let phi = u64::from((reps[h] & reps[g]).count_ones());
                let (word, off) = ((bit / 64) as usize, bit % 64);
                key[word] |= phi << off;
                if off + self.bits > 64 {
                    key[word + 1] |= phi >> (64 - off);
                }
                bit += self.bits;
            }
        }
        key
    }

    /// Tallies candidates `lo..hi`: key -> (count, first index).
    fn scan(&self, lo: u128, hi: u128) -> HashMap<Key, (u128, u128)> {
        let mut map: HashMap<Key, (u128, u128)> = HashMap::new();
        if lo >= hi {
            return map;
        }
        let c = self.masks.len();
        let offset = self.r - self.free;
        let mut reps = vec![0u64; self.r];
        self.replicate_masks(lo, &mut reps);
        let mut digits: Vec<usize> = (0..self.free)
            .map(|pos| self.masks.binary_search(&reps[offset + pos]).unwrap())
            .collect();
        let mut idx = lo;
        loop {
            let key = self.key(&reps);
            map.entry(key)
                .and_modify(|e| e.0 += 1)
                .or_insert((1, idx));
            idx += 1;
            if idx == hi {
                break;
            }
            // Odometer step, last replicate fastest.
            let mut pos = self.free - 1;
            loop {
                digits[pos] += 1;
                if digits[pos] < c {
                    reps[offset + pos] = self.masks[digits[pos]];
                    break;
                }
                digits[pos] = 0;
                reps[offset + pos] = self.masks[0];
                pos -= 1;
            }
        }
        map
    }
}

fn merge(
    mut a: HashMap<Key, (u128, u128)>,
    b: HashMap<Key, (u128, u128)>,
) -> HashMap<Key, (u128, u128)> {
    for (k, (n, first)) in b {
        a.entry(k)
            .and_modify(|e| {
                e.0 += n;
                e.1 = e.1.min(first);
            })
            .or_insert((n, first));
    }
    a
}

/// Visits every candidate (up to the limit) and returns exact optima.
pub fn enumerate(spec: &EnumerationSpec) -> Result<SearchResult> {
    let s = spec.setting;
    if s.v() > 63 {
        return Err(Error::BadParams(format!("v = {} too large to enumerate", s.v())));
    }
    let estimated = spec.estimated_candidates();
    let visited = spec.limit.map_or(estimated, |l| l.min(estimated));
    if visited > spec.budget && !spec.force {
        return Err(Error::BudgetExceeded {
            estimated: visited,
            budget: spec.budget,
        });
    }
    let r = s.r();
    let bits = 64 - (s.k1() as u64).leading_zeros();
    if r * (r - 1) / 2 * bits as usize > 256 {
        return Err(Error::BadParams(format!("r = {r} too large to enumerate")));
    }
    let masks = block_masks(&s);
    let scanner = Scanner {
        first: spec.fix_first_replicate.then(|| (1u64 << s.k1()) - 1),
        free: spec.free_replicates() as usize,
        masks,
        r,
        bits,
    };

    let run = || -> Result<Vec<CensusEntry>> {
        let chunks = visited.clamp(1, 4096);
        let tally = (0..chunks)
            .into_par_iter()
            .map(|i| scanner.scan(i * visited / chunks, (i + 1) * visited / chunks))
            .reduce(HashMap::new, merge);
        let mut keys: Vec<(u128, u128)> = tally.into_values().map(|(n, first)| (first, n)).collect();
        keys.sort_unstable();
        keys.into_par_iter()
            .map(|(first, n)| {
                let mut reps = vec![0u64; r];
                scanner.replicate_masks(first, &mut reps);
                let d = ResolvableDesign::from_masks(s, &reps)?;
                CensusEntry::evaluate(d, n)
            })
            .collect()
    };
    let census = match spec.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::BadParams(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    Ok(SearchResult::from_census(
        s,
        spec.criterion,
        census,
        visited,
        visited < estimated,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::DesignClass;

    fn setting(v: usize, r: usize, k1: usize) -> DesignSetting {
        DesignSetting::new(v, r, k1, v - k1).unwrap()
    }

    #[test]
    fn colex_masks() {
        let m = block_masks(&setting(5, 2, 3));
        assert_eq!(m.len(), 10);
        assert_eq!(&m[..4], &[0b00111, 0b01011, 0b01101, 0b01110]);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        let half = block_masks(&setting(6, 2, 3));
        assert_eq!(half.len(), 10);
        assert!(half.iter().all(|x| x & 1 == 1));
    }

    #[test]
    fn smallest_case() {
        let spec = EnumerationSpec::new(setting(4, 2, 2), SearchCriterion::A);
        assert_eq!(spec.estimated_candidates(), 3);
        let res = enumerate(&spec).unwrap();
        assert_eq!(res.count, 3);
        assert_eq!(res.census.iter().map(|e| e.count).sum::<u128>(), 3);
        // Identical replicates are disconnected; the other two are ECD(1).
        assert_eq!(res.tallies.ecd, 3);
        let opt: Vec<_> = res.optimal_entries().collect();
        assert_eq!(opt.len(), 1);
        assert_eq!(opt[0].class, DesignClass::Ecd(1));
        assert_eq!(opt[0].count, 2);
    }

    #[test]
    fn chunking_and_workers_do_not_change_tallies() {
        let s = setting(7, 3, 4);
        let mut spec = EnumerationSpec::new(s, SearchCriterion::E);
        spec.jobs = Some(1);
        let one = enumerate(&spec).unwrap();
        spec.jobs = Some(4);
        let four = enumerate(&spec).unwrap();
        assert_eq!(one.count, 35 * 35);
        assert_eq!(one.tallies, four.tallies);
        assert_eq!(one.optimizers, four.optimizers);
    }

    #[test]
    fn fixing_the_first_replicate_keeps_the_optimum() {
        for (v, r, k1) in [(6, 3, 3), (7, 3, 4), (8, 3, 5)] {
            for c in [SearchCriterion::E, SearchCriterion::A, SearchCriterion::F] {
                let mut spec = EnumerationSpec::new(setting(v, r, k1), c);
                let fixed = enumerate(&spec).unwrap();
                spec.fix_first_replicate = false;
                let free = enumerate(&spec).unwrap();
                assert!((fixed.best_f64() - free.best_f64()).abs() < 1e-9, "{v} {r} {k1} {c}");
            }
        }
    }

    #[test]
    fn witnesses_reproduce_the_best_value() {
        let res = enumerate(&EnumerationSpec::new(setting(8, 3, 5), SearchCriterion::A)).unwrap();
        for w in &res.witnesses {
            let v = SearchCriterion::A.evaluate(w).unwrap().unwrap();
            assert!((v.to_f64() - res.best_f64()).abs() <= 1e-9);
        }
    }

    #[test]
    fn budget_and_limit() {
        let mut spec = EnumerationSpec::new(setting(10, 4, 5), SearchCriterion::E);
        spec.budget = 1000;
        assert!(matches!(enumerate(&spec), Err(Error::BudgetExceeded { .. })));
        spec.limit = Some(500);
        let res = enumerate(&spec).unwrap();
        assert!(res.truncated);
        assert_eq!(res.count, 500);
    }
}
