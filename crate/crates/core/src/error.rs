use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bad setting: {0}")]
    BadSetting(String),
    #[error("replicate {replicate} is not a partition of 1..={v}: {detail}")]
    NotAPartition {
        replicate: usize,
        v: usize,
        detail: String,
    },
    #[error("replicate {replicate} has blocks of sizes {found:?}, expected ({k1}, {k2})")]
    WrongBlockSize {
        replicate: usize,
        found: (usize, usize),
        k1: usize,
        k2: usize,
    },
    #[error("matrix is not symmetric (|a[{row}][{col}] - a[{col}][{row}]| = {gap:e})")]
    NotSymmetric { row: usize, col: usize, gap: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("vectors have different sums ({0} vs {1})")]
    SumMismatch(f64, f64),
    #[error("design is disconnected (smallest nonzero information eigenvalue {0:e})")]
    Disconnected(f64),
    #[error("criterion function requires positive eigenvalues, got {0:e}")]
    NonPositiveEigenvalue(f64),
    #[error("designs belong to different settings: {0} vs {1}")]
    SettingMismatch(String, String),
    #[error("setting out of scope for optimality verdicts: {0}")]
    SettingOutOfScope(String),
    #[error("design is not E-optimal: {0}")]
    NotEOptimal(String),
    #[error("order {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("no Paley construction for order {0}")]
    NoPaleyConstruction(usize),
    #[error("not a Hadamard matrix: {0}")]
    NotHadamard(String),
    #[error("no Hadamard matrix of order {0} available")]
    NoHadamard(usize),
    #[error("no Theorem-28 submatrix supporting r = {r} in the order-{order} matrix")]
    NoSubmatrixFound { order: usize, r: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("array columns do not all contain {expected} zeros (column {column} has {found})")]
    BadColumnCounts {
        column: usize,
        expected: usize,
        found: usize,
    },
    #[error("not a BIBD: {0}")]
    NotABibd(String),
    #[error("enumeration needs {estimated} candidates, budget is {budget}")]
    BudgetExceeded { estimated: u128, budget: u128 },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown theorem identifier {0:?}")]
    UnknownTheorem(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
