use super::setting::DesignSetting;
use crate::error::{Error, Result};

/// One replicate: the size-`k1` block and its complement, both sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Replicate {
    block1: Vec<usize>,
    block2: Vec<usize>,
}

impl Replicate {
    pub fn block1(&self) -> &[usize] {
        &self.block1
    }

    pub fn block2(&self) -> &[usize] {
        &self.block2
    }
}

/// A validated design in `D(v, r; k1, k2)` with canonical block labeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResolvableDesign {
    setting: DesignSetting,
    replicates: Vec<Replicate>,
}

/// Validates raw `(block, block)` pairs and fixes the labeling: the block of
/// size `k1` comes first, and when `k1 == k2` the block holding treatment 1.
pub fn validate_design(
    setting: DesignSetting,
    raw: Vec<(Vec<usize>, Vec<usize>)>,
) -> Result<ResolvableDesign> {
    if raw.len() != setting.r() {
        return Err(Error::BadSetting(format!(
            "{setting} needs {} replicates, got {}",
            setting.r(),
            raw.len()
        )));
    }
    let v = setting.v();
    let mut replicates = Vec::with_capacity(raw.len());
    for (h, (a, b)) in raw.into_iter().enumerate() {
        let replicate = h + 1;
        let mut seen = vec![false; v + 1];
        for &t in a.iter().chain(&b) {
            if t == 0 || t > v {
                return Err(Error::NotAPartition {
                    replicate,
                    v,
                    detail: format!("treatment {t} out of range"),
                });
            }
            if seen[t] {
                return Err(Error::NotAPartition {
                    replicate,
                    v,
                    detail: format!("treatment {t} repeated"),
                });
            }
            seen[t] = true;
        }
        if let Some(t) = (1..=v).find(|&t| !seen[t]) {
            return Err(Error::NotAPartition {
                replicate,
                v,
                detail: format!("treatment {t} missing"),
            });
        }
        let (mut a, mut b) = (a, b);
        a.sort_unstable();
        b.sort_unstable();
        let (k1, k2) = (setting.k1(), setting.k2());
        let (block1, block2) = match (a.len(), b.len()) {
            (x, y) if x == k1 && y == k2 && k1 != k2 => (a, b),
            (x, y) if x == k2 && y == k1 && k1 != k2 => (b, a),
            (x, y) if x == k1 && y == k1 && k1 == k2 => {
                if a.first() == Some(&1) {
                    (a, b)
                } else {
                    (b, a)
                }
            }
            found => {
                return Err(Error::WrongBlockSize {
                    replicate,
                    found,
                    k1,
                    k2,
                })
            }
        };
        replicates.push(Replicate { block1, block2 });
    }
    Ok(ResolvableDesign {
        setting,
        replicates,
    })
}

impl ResolvableDesign {
    /// Builds a design from the size-`k1` blocks; block2 is the complement.
    pub fn from_block1(setting: DesignSetting, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let v = setting.v();
        let raw = blocks
            .into_iter()
            .map(|b| {
                let mut inb = vec![false; v + 1];
                for &t in &b {
                    if (1..=v).contains(&t) {
                        inb[t] = true;
                    }
                }
                let rest = (1..=v).filter(|&t| !inb[t]).collect();
                (b, rest)
            })
            .collect();
        // Duplicates inside `b` surface as a missing treatment in the pair.
        validate_design(setting, raw)
    }

    /// From per-replicate bitmasks of block1 (bit `t - 1` set for treatment `t`).
    pub fn from_masks(setting: DesignSetting, masks: &[u64]) -> Result<Self> {
        let blocks = masks
            .iter()
            .map(|&m| (1..=setting.v()).filter(|t| m >> (t - 1) & 1 == 1).collect())
            .collect();
        Self::from_block1(setting, blocks)
    }

    pub fn setting(&self) -> DesignSetting {
        self.setting
    }

    pub fn replicates(&self) -> &[Replicate] {
        &self.replicates
    }

    pub fn r(&self) -> usize {
        self.replicates.len()
    }

    pub fn v(&self) -> usize {
        self.setting.v()
    }

    /// Membership table: `m[h][t - 1]` is true iff `t` lies in block1 of replicate `h`.
    pub fn membership(&self) -> Vec<Vec<bool>> {
        self.replicates
            .iter()
            .map(|rep| {
                let mut row = vec![false; self.v()];
                for &t in &rep.block1 {
                    row[t - 1] = true;
                }
                row
            })
            .collect()
    }

    /// Block1 of each replicate as a bitmask. Only for `v <= 64`.
    pub fn block1_masks(&self) -> Option<Vec<u64>> {
        if self.v() > 64 {
            return None;
        }
        Some(
            self.replicates
                .iter()
                .map(|rep| rep.block1.iter().fold(0u64, |m, &t| m | 1 << (t - 1)))
                .collect(),
        )
    }

    /// Renames treatment `t` to `perm[t - 1]`; `perm` is a permutation of `1..=v`.
    pub fn relabel_treatments(&self, perm: &[usize]) -> Result<Self> {
        let raw = self
            .replicates
            .iter()
            .map(|rep| {
                let map = |b: &[usize]| b.iter().map(|&t| perm[t - 1]).collect::<Vec<_>>();
                (map(&rep.block1), map(&rep.block2))
            })
            .collect();
        validate_design(self.setting, raw)
    }

    /// Reorders replicates so that new replicate `i` is old replicate `order[i]` (0-based).
    pub fn permute_replicates(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.r());
        ResolvableDesign {
            setting: self.setting,
            replicates: order.iter().map(|&i| self.replicates[i].clone()).collect(),
        }
    }
}
