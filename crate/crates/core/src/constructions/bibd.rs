use crate::design::{DesignSetting, ResolvableDesign};
use crate::error::{Error, Result};

/// Pairs every block of a BIBD with its complement, one replicate per block.
///
/// The input is checked to be a BIBD on `1..=v`: equal block sizes, equal
/// replication, and a constant pairwise treatment concurrence.
pub fn bibd_complement(v: usize, blocks: &[Vec<usize>]) -> Result<ResolvableDesign> {
    let not = |m: String| Error::NotABibd(m);
    if blocks.len() < 2 {
        return Err(not(format!("{} block(s); need at least two", blocks.len())));
    }
    let k = blocks[0].len();
    let mut inc = vec![vec![false; v]; blocks.len()];
    for (b, block) in blocks.iter().enumerate() {
        if block.len() != k {
            return Err(not(format!("block {} has size {}, expected {k}", b + 1, block.len())));
        }
        for &t in block {
            if t == 0 || t > v {
                return Err(not(format!("block {} contains {t}, outside 1..={v}", b + 1)));
            }
            if std::mem::replace(&mut inc[b][t - 1], true) {
                return Err(not(format!("block {} repeats treatment {t}", b + 1)));
            }
        }
    }
    let reps: Vec<usize> = (0..v).map(|t| inc.iter().filter(|row| row[t]).count()).collect();
    if reps.iter().any(|&x| x != reps[0]) {
        return Err(not(format!("replication numbers differ: {reps:?}")));
    }
    let mut lambda = None;
    for s in 0..v {
        for t in s + 1..v {
            let l = inc.iter().filter(|row| row[s] && row[t]).count();
            match lambda {
                None => lambda = Some(l),
                Some(x) if x != l => {
                    return Err(not(format!(
                        "treatments {} and {} concur {l} times, others {x}",
                        s + 1,
                        t + 1
                    )))
                }
                _ => {}
            }
        }
    }
    let (k1, k2) = (k.max(v - k), k.min(v - k));
    let setting = DesignSetting::new(v, blocks.len(), k1, k2)?;
    let big: Vec<Vec<usize>> = inc
        .iter()
        .map(|row| {
            let want = k == k1;
            (1..=v).filter(|&t| row[t - 1] == want).collect()
        })
        .collect();
    ResolvableDesign::from_block1(setting, big)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_plane() {
        let fano: Vec<Vec<usize>> = vec![
            vec![1, 2, 3],
            vec![1, 4, 5],
            vec![1, 6, 7],
            vec![2, 4, 6],
            vec![2, 5, 7],
            vec![3, 4, 7],
            vec![3, 5, 6],
        ];
        let d = bibd_complement(7, &fano).unwrap();
        assert_eq!(d.setting(), DesignSetting::new(7, 7, 4, 3).unwrap());
        assert_eq!(d.replicates()[0].block2(), &[1, 2, 3]);
    }

    #[test]
    fn all_pairs_of_four() {
        let pairs: Vec<Vec<usize>> = vec![
            vec![1, 2],
            vec![1, 3],
            vec![1, 4],
            vec![2, 3],
            vec![2, 4],
            vec![3, 4],
        ];
        let d = bibd_complement(4, &pairs).unwrap();
        assert_eq!(d.setting(), DesignSetting::new(4, 6, 2, 2).unwrap());
    }

    #[test]
    fn uneven_concurrence_is_rejected() {
        let blocks = vec![vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 2]];
        assert!(matches!(bibd_complement(4, &blocks), Err(Error::NotABibd(_))));
    }
}
