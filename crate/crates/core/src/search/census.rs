//! Per-concurrence-matrix records of an enumeration.
//!
//! Every criterion depends on a design only through its concurrence matrix,
//! so each distinct matrix is evaluated once and weighted by its count.

use std::fmt;
use std::str::FromStr;

use crate::classify::{classify_full, DesignClass};
use crate::design::{concurrences, ConcurrenceMatrix, DesignSetting, ResolvableDesign};
use crate::error::{Error, Result};
use crate::numerics::{fmt_f64, Spectrum};
use crate::optimality::{criterion_a, criterion_e, criterion_f, m_spectrum, CriterionValue};

/// Scalar criterion minimized by a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchCriterion {
    /// Largest `M_d` eigenvalue `e_1`.
    E,
    /// `sum 1/z_i`.
    A,
    /// Largest information eigenvalue not fixed at `r`.
    F,
}

impl SearchCriterion {
    pub fn as_str(&self) -> &'static str {
        match self {
            SearchCriterion::E => "E",
            SearchCriterion::A => "A",
            SearchCriterion::F => "F",
        }
    }

    /// Exact-when-possible value for a design; `None` if disconnected.
    pub fn evaluate(&self, d: &ResolvableDesign) -> Result<Option<CriterionValue>> {
        let v = match self {
            SearchCriterion::E => criterion_e(d),
            SearchCriterion::A => criterion_a(d),
            SearchCriterion::F => criterion_f(d),
        };
        match v {
            Ok(x) => Ok(Some(x)),
            Err(Error::Disconnected(_)) | Err(Error::NonPositiveEigenvalue(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

impl FromStr for SearchCriterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "E" => Ok(SearchCriterion::E),
            "A" => Ok(SearchCriterion::A),
            "F" => Ok(SearchCriterion::F),
            _ => Err(Error::BadParams(format!("unknown criterion {s:?} (expected E, A or F)"))),
        }
    }
}

impl fmt::Display for SearchCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Float criterion value from an `M_d` spectrum; infinite when disconnected.
pub fn float_value(s: &DesignSetting, m: &Spectrum, c: SearchCriterion) -> f64 {
    let (r, v, p) = (s.r() as f64, s.v() as f64, s.p() as f64);
    let z = |e: f64| r - v * e / p;
    if z(m.max()) <= 1e-9 * r {
        return f64::INFINITY;
    }
    let last = s.r().min(s.v() - 1) - 1;
    match c {
        SearchCriterion::E => m.max(),
        SearchCriterion::F => z(m.values()[last]),
        SearchCriterion::A => {
            let fixed = (s.v() - 1).saturating_sub(s.r()) as f64;
            fixed / r + m.values()[..=last].iter().map(|&e| 1.0 / z(e)).sum::<f64>()
        }
    }
}

/// Deduplication key: sorted off-diagonal concurrences and the sorted
/// `M_d` spectrum in units of `1e-9`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub phi: Vec<i64>,
    pub spectrum: Vec<i64>,
}

impl Fingerprint {
    pub fn new(phi: &ConcurrenceMatrix, m: &Spectrum) -> Self {
        let mut p = phi.upper();
        p.sort_unstable();
        Fingerprint {
            phi: p,
            spectrum: m.values().iter().map(|x| (x * 1e9).round() as i64).collect(),
        }
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let phi: Vec<String> = self.phi.iter().map(i64::to_string).collect();
        let m: Vec<String> = self.spectrum.iter().map(|&x| fmt_f64(x as f64 * 1e-9)).collect();
        write!(f, "phi=[{}] m=[{}]", phi.join(","), m.join(","))
    }
}

/// One distinct concurrence matrix seen during enumeration.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub phi: ConcurrenceMatrix,
    /// Candidates with this matrix.
    pub count: u128,
    /// First candidate (in enumeration order) with this matrix.
    pub witness: ResolvableDesign,
    pub fingerprint: Fingerprint,
    pub class: DesignClass,
    /// Group sizes when group-affine.
    pub group: Option<Vec<usize>>,
    pub m: Spectrum,
    pub e: Option<CriterionValue>,
    pub a: Option<CriterionValue>,
    pub f: Option<CriterionValue>,
}

impl CensusEntry {
    pub fn evaluate(witness: ResolvableDesign, count: u128) -> Result<Self> {
        let c = classify_full(&witness);
        let m = m_spectrum(&witness)?;
        let phi = concurrences(&witness);
        Ok(CensusEntry {
            fingerprint: Fingerprint::new(&phi, &m),
            e: SearchCriterion::E.evaluate(&witness)?,
            a: SearchCriterion::A.evaluate(&witness)?,
            f: SearchCriterion::F.evaluate(&witness)?,
            phi,
            count,
            class: c.class,
            group: c.group.map(|g| g.t),
            m,
            witness,
        })
    }

    pub fn value(&self, c: SearchCriterion) -> Option<&CriterionValue> {
        match c {
            SearchCriterion::E => self.e.as_ref(),
            SearchCriterion::A => self.a.as_ref(),
            SearchCriterion::F => self.f.as_ref(),
        }
    }

    /// Float value, `+inf` when disconnected.
    pub fn value_f64(&self, c: SearchCriterion) -> f64 {
        self.value(c).map_or(f64::INFINITY, CriterionValue::to_f64)
    }

    pub fn is_group_affine(&self) -> bool {
        self.group.is_some()
    }

    /// Number of groups, when group-affine.
    pub fn n_groups(&self) -> Option<usize> {
        self.group.as_ref().map(Vec::len)
    }
}

/// Candidate counts per class; group-affine overlaps ECD and AECD.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassTallies {
    pub ecd: u128,
    pub aecd: u128,
    pub ucd: u128,
    pub group_affine: u128,
}

impl ClassTallies {
    pub fn add(&mut self, e: &CensusEntry) {
        match e.class {
            DesignClass::Ecd(_) => self.ecd += e.count,
            DesignClass::Aecd => self.aecd += e.count,
            DesignClass::Ucd => self.ucd += e.count,
        }
        if e.is_group_affine() {
            self.group_affine += e.count;
        }
    }
}

/// Outcome of an enumeration or an interchange search.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub setting: DesignSetting,
    pub criterion: SearchCriterion,
    /// Best value, re-evaluated on the first witness.
    pub best: Option<CriterionValue>,
    /// Distinct optimizer fingerprints, sorted.
    pub optimizers: Vec<Fingerprint>,
    /// One witness per optimizer fingerprint, same order.
    pub witnesses: Vec<ResolvableDesign>,
    /// Candidates visited (enumeration) or designs evaluated (interchange).
    pub count: u128,
    pub tallies: ClassTallies,
    /// Empty for interchange searches.
    pub census: Vec<CensusEntry>,
    /// The candidate limit cut the enumeration short.
    pub truncated: bool,
}

/// Relative tie tolerance on criterion values.
pub(crate) const TIE_TOL: f64 = 1e-9;

pub(crate) fn ties(a: f64, best: f64) -> bool {
    a <= best + TIE_TOL * best.abs().max(1.0)
}

impl SearchResult {
    pub fn best_f64(&self) -> f64 {
        self.best.as_ref().map_or(f64::INFINITY, CriterionValue::to_f64)
    }

    /// Census entries attaining the optimum.
    pub fn optimal_entries(&self) -> impl Iterator<Item = &CensusEntry> {
        let best = self.best_f64();
        let c = self.criterion;
        self.census
            .iter()
            .filter(move |e| best.is_finite() && ties(e.value_f64(c), best))
    }

    pub(crate) fn from_census(
        setting: DesignSetting,
        criterion: SearchCriterion,
        census: Vec<CensusEntry>,
        count: u128,
        truncated: bool,
    ) -> Self {
        let mut tallies = ClassTallies::default();
        census.iter().for_each(|e| tallies.add(e));
        let best = census
            .iter()
            .map(|e| e.value_f64(criterion))
            .fold(f64::INFINITY, f64::min);
        let mut opt: Vec<(Fingerprint, ResolvableDesign, Option<CriterionValue>)> = Vec::new();
        if best.is_finite() {
            for e in census.iter().filter(|e| ties(e.value_f64(criterion), best)) {
                if !opt.iter().any(|(f, _, _)| *f == e.fingerprint) {
                    opt.push((e.fingerprint.clone(), e.witness.clone(), e.value(criterion).cloned()));
                }
            }
        }
        // Prefer an exact representative for the reported best value.
        let best_value = opt
            .iter()
            .filter_map(|(_, _, v)| v.clone())
            .find(CriterionValue::is_exact)
            .or_else(|| opt.first().and_then(|(_, _, v)| v.clone()));
        opt.sort_by(|a, b| a.0.cmp(&b.0));
        SearchResult {
            setting,
            criterion,
            best: best_value,
            optimizers: opt.iter().map(|(f, _, _)| f.clone()).collect(),
            witnesses: opt.into_iter().map(|(_, w, _)| w).collect(),
            count,
            tallies,
            census,
            truncated,
        }
    }
}
