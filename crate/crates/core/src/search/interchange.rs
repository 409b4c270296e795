//! Hill climbing by swapping one treatment between the blocks of a replicate.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::census::{float_value, CensusEntry, SearchCriterion, SearchResult};
use crate::design::{DesignSetting, ResolvableDesign};
use crate::error::Result;
use crate::optimality::m_spectrum;

#[derive(Clone, Copy, Debug)]
pub struct InterchangeSpec {
    pub setting: DesignSetting,
    pub criterion: SearchCriterion,
    pub seed: u64,
    /// Maximum accepted moves per restart.
    pub iterations: usize,
    pub restarts: usize,
}

impl InterchangeSpec {
    pub fn new(setting: DesignSetting, criterion: SearchCriterion, seed: u64) -> Self {
        InterchangeSpec {
            setting,
            criterion,
            seed,
            iterations: 10_000,
            restarts: 10,
        }
    }
}

fn value(d: &ResolvableDesign, c: SearchCriterion) -> Result<f64> {
    Ok(float_value(&d.setting(), &m_spectrum(d)?, c))
}

fn random_design(s: DesignSetting, rng: &mut ChaCha8Rng) -> Result<ResolvableDesign> {
    let mut treatments: Vec<usize> = (1..=s.v()).collect();
    let blocks = (0..s.r())
        .map(|_| {
            treatments.shuffle(rng);
            treatments[..s.k1()].to_vec()
        })
        .collect();
    ResolvableDesign::from_block1(s, blocks)
}

/// First-improvement descent from `start`; returns the local optimum, its
/// value and the number of evaluations.
fn descend(
    start: ResolvableDesign,
    c: SearchCriterion,
    iterations: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(ResolvableDesign, f64, u128)> {
    let s = start.setting();
    let mut blocks: Vec<Vec<usize>> = start
        .replicates()
        .iter()
        .map(|rep| rep.block1().to_vec())
        .collect();
    let mut current = start;
    let mut best = value(&current, c)?;
    let mut evals = 1u128;
    for _ in 0..iterations {
        let mut moves: Vec<(usize, usize, usize)> = Vec::new();
        for (h, rep) in current.replicates().iter().enumerate() {
            for i in 0..rep.block1().len() {
                for &t in rep.block2() {
                    moves.push((h, i, t));
                }
            }
        }
        moves.shuffle(rng);
        let mut improved = false;
        for (h, i, t) in moves {
            let old = blocks[h][i];
            blocks[h][i] = t;
            let cand = ResolvableDesign::from_block1(s, blocks.clone())?;
            let x = value(&cand, c)?;
            evals += 1;
            if x < best - 1e-12 * best.abs().max(1.0) {
                best = x;
                current = cand;
                blocks = current
                    .replicates()
                    .iter()
                    .map(|rep| rep.block1().to_vec())
                    .collect();
                improved = true;
                break;
            }
            blocks[h][i] = old;
        }
        if !improved {
            break;
        }
    }
    Ok((current, best, evals))
}

fn finish(s: DesignSetting, c: SearchCriterion, best: ResolvableDesign, evals: u128) -> Result<SearchResult> {
    let entry = CensusEntry::evaluate(best, 1)?;
    let mut res = SearchResult::from_census(s, c, vec![entry], evals, false);
    res.census.clear();
    Ok(res)
}

/// Random restarts, each descending to a local optimum. Deterministic in the seed.
pub fn interchange_search(spec: &InterchangeSpec) -> Result<SearchResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut best: Option<(ResolvableDesign, f64)> = None;
    let mut evals = 0u128;
    for _ in 0..spec.restarts.max(1) {
        let start = random_design(spec.setting, &mut rng)?;
        let (d, x, n) = descend(start, spec.criterion, spec.iterations, &mut rng)?;
        evals += n;
        if best.as_ref().is_none_or(|(_, b)| x < *b - 1e-12 * b.abs().max(1.0)) {
            best = Some((d, x));
        }
    }
    let (d, _) = best.expect("at least one restart");
    let mut res = finish(spec.setting, spec.criterion, d, evals)?;
    res.tallies = Default::default();
    Ok(res)
}

/// Descent from a given design.
pub fn interchange_from(
    start: &ResolvableDesign,
    criterion: SearchCriterion,
    seed: u64,
    iterations: usize,
) -> Result<SearchResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (d, _, evals) = descend(start.clone(), criterion, iterations, &mut rng)?;
    let mut res = finish(start.setting(), criterion, d, evals)?;
    res.tallies = Default::default();
    Ok(res)
}
