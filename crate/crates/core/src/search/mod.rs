//! Exhaustive enumeration (the independent oracle) and interchange search.

mod census;
mod enumerate;
mod interchange;
mod theorems;

pub use census::{float_value, CensusEntry, ClassTallies, Fingerprint, SearchCriterion, SearchResult};
pub use enumerate::{budget_from_env, enumerate, EnumerationSpec, BUDGET_ENV, DEFAULT_BUDGET};
pub use interchange::{interchange_from, interchange_search, InterchangeSpec};
pub use theorems::{check_theorem, verify_theorem, TheoremCheck, TheoremReport, THEOREM_IDS};
